#include "heraldnet/heralding.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "heraldnet/linear_optics.hpp"

namespace heraldnet {

namespace {

constexpr double kComponentFloor = 1e-13;

char outcome_char(DetectionBasis basis, std::uint8_t outcome) {
  if (basis == DetectionBasis::hv) return outcome == 0 ? 'H' : 'V';
  return outcome == 0 ? 'D' : 'A';
}

std::vector<ModeId> detector_ids(const SchemeSpec& spec) {
  std::vector<ModeId> ids;
  for (const auto& s : spec.detector_stations) {
    ids.push_back(s.h.id);
    ids.push_back(s.v.id);
  }
  std::sort(ids.begin(), ids.end());
  return ids;
}

/// Index of the pattern a term heralds, or -1 when some station does not see
/// exactly one photon.
long pattern_index(const Monomial& m, const SchemeSpec& spec) {
  long index = 0;
  for (const auto& station : spec.detector_stations) {
    const auto first = m.count(station.h.id);
    const auto second = m.count(station.v.id);
    if (first + second != 1) return -1;
    index = (index << 1) | static_cast<long>(second);
  }
  return index;
}

}  // namespace

std::string HeraldPattern::to_string() const {
  std::string out;
  for (auto o : outcomes) out += outcome_char(basis, o);
  return out;
}

int HeraldPattern::second_count() const {
  return static_cast<int>(std::count(outcomes.begin(), outcomes.end(), std::uint8_t{1}));
}

HeraldPattern parse_pattern(std::string_view text) {
  HeraldPattern p;
  if (text.empty()) throw std::invalid_argument("empty herald pattern");
  const bool hv = text.front() == 'H' || text.front() == 'V';
  p.basis = hv ? DetectionBasis::hv : DetectionBasis::da;
  for (char c : text) {
    if (hv && (c == 'H' || c == 'V')) {
      p.outcomes.push_back(c == 'V');
    } else if (!hv && (c == 'D' || c == 'A')) {
      p.outcomes.push_back(c == 'A');
    } else {
      throw std::invalid_argument("invalid herald pattern '" + std::string(text) + "'");
    }
  }
  return p;
}

std::vector<HeraldPattern> enumerate_patterns(int stations, DetectionBasis basis) {
  if (stations < 1 || stations > 30) throw std::invalid_argument("station count out of range");
  std::vector<HeraldPattern> out;
  const long count = 1L << stations;
  out.reserve(static_cast<std::size_t>(count));
  for (long index = 0; index < count; ++index) {
    HeraldPattern p;
    p.basis = basis;
    for (int k = stations - 1; k >= 0; --k) p.outcomes.push_back(static_cast<std::uint8_t>((index >> k) & 1));
    out.push_back(std::move(p));
  }
  return out;
}

std::vector<HeraldPattern> enumerate_patterns(const SchemeSpec& spec) {
  return enumerate_patterns(static_cast<int>(spec.detector_stations.size()), spec.detection_basis);
}

PhotonicState detection_frame(const PhotonicState& evolved, const SchemeSpec& spec) {
  if (spec.detection_basis == DetectionBasis::hv) return evolved;
  std::vector<LinearMap> analyzers;
  for (const auto& station : spec.detector_stations) analyzers.push_back(da_analyzer(station));
  return apply(parallel(analyzers, "detector analyzers"), evolved);
}

PhotonicState pattern_projection(const PhotonicState& evolved, const SchemeSpec& spec, const HeraldPattern& pattern) {
  if (pattern.outcomes.size() != spec.detector_stations.size()) {
    throw std::invalid_argument("pattern length does not match the number of detector stations");
  }
  std::vector<ModeId> measured;
  std::vector<std::uint32_t> occupation;
  for (std::size_t k = 0; k < pattern.outcomes.size(); ++k) {
    const auto& station = spec.detector_stations[k];
    measured.push_back(station.h.id);
    occupation.push_back(pattern.outcomes[k] == 0 ? 1 : 0);
    measured.push_back(station.v.id);
    occupation.push_back(pattern.outcomes[k] == 0 ? 0 : 1);
  }
  return project_pattern(detection_frame(evolved, spec), measured, occupation);
}

HeraldAnalysis analyze(const PhotonicState& evolved, const SchemeSpec& spec) {
  const PhotonicState frame = detection_frame(evolved, spec);
  const auto& registry = *frame.registry();
  const auto detectors = detector_ids(spec);
  const auto patterns = enumerate_patterns(spec);

  HeraldAnalysis out;
  out.patterns.resize(patterns.size());
  std::vector<std::vector<PhotonicState::Term>> success_terms(patterns.size());
  for (std::size_t i = 0; i < patterns.size(); ++i) out.patterns[i].pattern = patterns[i];

  for (const auto& term : frame.terms()) {
    const long index = pattern_index(term.monomial, spec);
    if (index < 0) continue;
    auto& outcome = out.patterns[static_cast<std::size_t>(index)];
    const double weight = std::norm(term.amplitude) * term.monomial.factorial_weight();
    outcome.probability += weight;
    const auto lost = photons_with_role(term.monomial, registry, ModeRole::environment);
    outcome.environment_histogram[lost] += weight;
    if (lost == 0) {
      success_terms[static_cast<std::size_t>(index)].push_back({term.monomial.without(detectors), term.amplitude});
    }
  }

  for (std::size_t i = 0; i < patterns.size(); ++i) {
    auto& outcome = out.patterns[i];
    const auto conditional = PhotonicState::from_terms(frame.registry(), std::move(success_terms[i]));
    outcome.ghz_first = inner_product(spec.ghz_basis[0], conditional);
    outcome.ghz_second = inner_product(spec.ghz_basis[1], conditional);
    const double s = std::abs(outcome.ghz_first) + std::abs(outcome.ghz_second);
    outcome.success = 0.5 * s * s;
    out.herald_probability += outcome.probability;
    out.success_probability += outcome.success;
  }
  return out;
}

double herald_probability(const PhotonicState& evolved, const SchemeSpec& spec) {
  return analyze(evolved, spec).herald_probability;
}

double success_probability(const PhotonicState& evolved, const SchemeSpec& spec) {
  return analyze(evolved, spec).success_probability;
}

double heralding_efficiency(const PhotonicState& evolved, const SchemeSpec& spec) {
  const auto a = analyze(evolved, spec);
  return make_metrics(a.success_probability, a.herald_probability, Provenance::simulated).h_eff;
}

std::optional<double> feedforward_phase(const PatternOutcome& outcome) {
  if (std::abs(outcome.ghz_first) < kComponentFloor || std::abs(outcome.ghz_second) < kComponentFloor) {
    return std::nullopt;
  }
  double phi = std::arg(outcome.ghz_second) - std::arg(outcome.ghz_first);
  const double two_pi = 2.0 * std::numbers::pi;
  phi = std::fmod(phi, two_pi);
  if (phi < 0.0) phi += two_pi;
  if (two_pi - phi < 1e-9) phi = 0.0;
  return phi;
}

std::optional<double> feedforward_phase(const PhotonicState& evolved, const SchemeSpec& spec,
                                        const HeraldPattern& pattern) {
  const auto a = analyze(evolved, spec);
  for (const auto& outcome : a.patterns) {
    if (outcome.pattern == pattern) return feedforward_phase(outcome);
  }
  throw std::invalid_argument("pattern " + pattern.to_string() + " does not belong to this scheme");
}

double feedforward_rule(const SchemeSpec& spec, const HeraldPattern& pattern) {
  int parity = pattern.second_count();
  if (spec.scheme != Scheme::sd) parity += spec.parties;
  return (parity % 2 == 0) ? 0.0 : std::numbers::pi;
}

std::vector<FalseHeraldRow> false_herald_breakdown(const PhotonicState& evolved, const SchemeSpec& spec) {
  const auto a = analyze(evolved, spec);
  std::vector<FalseHeraldRow> rows;
  rows.reserve(a.patterns.size());
  for (const auto& outcome : a.patterns) {
    FalseHeraldRow row;
    row.pattern = outcome.pattern;
    row.probability = outcome.probability;
    row.success = outcome.success;
    if (outcome.probability > 0.0) row.fidelity = outcome.success / outcome.probability;
    row.environment_histogram = outcome.environment_histogram;
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string_view to_string(Provenance p) { return p == Provenance::analytic ? "analytic" : "simulated"; }

Metrics make_metrics(double p_suc, double p_hr, Provenance provenance) {
  if (!(p_hr > 0.0)) throw UndefinedMetricError("heralding efficiency undefined at eta=0 (nothing heralds)");
  return {p_suc, p_hr, p_suc / p_hr, provenance};
}

Metrics simulate_metrics(const SchemeInstance& instance, std::size_t term_cap) {
  const auto evolved = apply(instance.circuit, instance.initial, term_cap);
  const auto a = analyze(evolved, instance.spec);
  return make_metrics(a.success_probability, a.herald_probability, Provenance::simulated);
}

}  // namespace heraldnet
