#ifndef HERALDNET_HERALDING_HPP
#define HERALDNET_HERALDING_HPP

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "heraldnet/fock.hpp"
#include "heraldnet/schemes.hpp"

namespace heraldnet {

/// Raised for heralding efficiency when nothing ever heralds (eta = 0).
class UndefinedMetricError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// One click per station. Outcome 0 is the first output of the basis (H or
/// D), outcome 1 the second (V or A).
struct HeraldPattern {
  DetectionBasis basis = DetectionBasis::hv;
  std::vector<std::uint8_t> outcomes;

  std::string to_string() const;
  int second_count() const;

  friend bool operator==(const HeraldPattern&, const HeraldPattern&) = default;
};

HeraldPattern parse_pattern(std::string_view text);

/// All 2^N patterns; station 1 is the most significant position and the first
/// output sorts before the second.
std::vector<HeraldPattern> enumerate_patterns(int stations, DetectionBasis basis);
std::vector<HeraldPattern> enumerate_patterns(const SchemeSpec& spec);

/// Rewrites the detector modes in the basis the detectors resolve: identity
/// for H/V, a D/A analyzer on every station otherwise.
PhotonicState detection_frame(const PhotonicState& evolved, const SchemeSpec& spec);

/// Unnormalized conditional state for `pattern`. Environment and retained
/// modes are left unconstrained. Detector modes are in the detection frame.
PhotonicState pattern_projection(const PhotonicState& evolved, const SchemeSpec& spec, const HeraldPattern& pattern);

/// Per-pattern quantities, all from a single pass over the evolved state.
struct PatternOutcome {
  HeraldPattern pattern;
  /// Probability of the click pattern, true and false heralds alike.
  double probability = 0.0;
  /// Overlaps of the environment-vacuum conditional with the two GHZ product
  /// states (Fock-normalized).
  Amplitude ghz_first{};
  Amplitude ghz_second{};
  /// max over phi of |<GHZ(phi)|v>|^2 = (|x| + |y|)^2 / 2.
  double success = 0.0;
  /// Probability mass of the pattern by number of photons lost to the
  /// environment.
  std::map<std::uint32_t, double> environment_histogram;
};

struct HeraldAnalysis {
  std::vector<PatternOutcome> patterns;
  double herald_probability = 0.0;
  double success_probability = 0.0;
};

HeraldAnalysis analyze(const PhotonicState& evolved, const SchemeSpec& spec);

double herald_probability(const PhotonicState& evolved, const SchemeSpec& spec);
double success_probability(const PhotonicState& evolved, const SchemeSpec& spec);
/// Throws UndefinedMetricError when the herald probability is zero.
double heralding_efficiency(const PhotonicState& evolved, const SchemeSpec& spec);

/// Relative phase phi in [0, 2pi) that maximizes the GHZ overlap of the
/// pattern, i.e. the correction the parties apply. Empty when either GHZ
/// component vanishes.
std::optional<double> feedforward_phase(const PatternOutcome& outcome);
std::optional<double> feedforward_phase(const PhotonicState& evolved, const SchemeSpec& spec,
                                        const HeraldPattern& pattern);

/// Closed-form correction rule: pi times the parity of second-output clicks
/// (V or A), plus N for the centralized schemes.
double feedforward_rule(const SchemeSpec& spec, const HeraldPattern& pattern);

struct FalseHeraldRow {
  HeraldPattern pattern;
  double probability = 0.0;
  double success = 0.0;
  /// success / probability; empty when the pattern never fires.
  std::optional<double> fidelity;
  std::map<std::uint32_t, double> environment_histogram;
};

std::vector<FalseHeraldRow> false_herald_breakdown(const PhotonicState& evolved, const SchemeSpec& spec);

enum class Provenance { analytic, simulated };
std::string_view to_string(Provenance p);

struct Metrics {
  double p_suc = 0.0;
  double p_hr = 0.0;
  double h_eff = 0.0;
  Provenance provenance = Provenance::simulated;
};

/// Throws UndefinedMetricError when p_hr is zero.
Metrics make_metrics(double p_suc, double p_hr, Provenance provenance);

/// Evolves the instance and evaluates all three metrics by enumeration.
Metrics simulate_metrics(const SchemeInstance& instance, std::size_t term_cap = kDefaultTermCap);

}  // namespace heraldnet

#endif  // HERALDNET_HERALDING_HPP
