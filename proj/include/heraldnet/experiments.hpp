#ifndef HERALDNET_EXPERIMENTS_HPP
#define HERALDNET_EXPERIMENTS_HPP

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "heraldnet/analytic.hpp"
#include "heraldnet/heralding.hpp"
#include "heraldnet/schemes.hpp"

namespace heraldnet {

/// Twelve significant digits, the precision of every file this library writes.
std::string format_number(double value);

struct SweepRecord {
  Scheme scheme = Scheme::bc;
  int parties = 0;
  double radius_km = 0.0;
  double alpha = kDefaultAlpha;
  double eta = 1.0;
  double p_suc = 0.0;
  double p_hr = 0.0;
  double h_eff = 0.0;
  double h_th = 0.0;
  Provenance source = Provenance::analytic;
};

inline constexpr const char* kSweepCsvHeader = "scheme,N,R_km,alpha,eta,p_suc,p_hr,h_eff,h_th,source";

/// start, start + step, ... up to stop inclusive (within 1e-9 of a step).
std::vector<double> radius_grid(double start, double stop, double step);

/// Analytic records ordered by scheme, then N, then R.
std::vector<SweepRecord> sweep_vs_radius(std::span<const Scheme> schemes, std::span<const int> parties,
                                         std::span<const double> radii, double alpha = kDefaultAlpha);

void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records);
std::string sweep_csv_row(const SweepRecord& record);

struct CrossoverRow {
  int parties = 0;
  double radius_km = 0.0;
  double chord_km = 0.0;
};

std::vector<CrossoverRow> crossover_curve(int min_parties, int max_parties, double alpha = kDefaultAlpha,
                                          double tol = 1e-6);

struct VerificationRow {
  std::string case_id;
  Scheme scheme = Scheme::bc;
  int parties = 0;
  double eta = 1.0;
  std::string metric;
  double analytic = 0.0;
  std::optional<double> simulated;
  double abs_diff = 0.0;
  bool pass = false;
  /// sc p_hr rows only: literal_sc_p_hr, for comparison.
  std::optional<double> literal_analytic;
  /// p_hr and h_eff rows: the term-by-term closed form (enumerated_p_hr /
  /// enumerated_h_eff), which the simulation should match in every scheme.
  std::optional<double> enumerated_analytic;
  /// Why the case could not be evaluated, if it could not.
  std::optional<std::string> error;
};

struct VerificationOptions {
  double tol = kProbabilityTolerance;
  /// Compare sc p_hr against literal_sc_p_hr instead of closed_p_hr.
  bool literal_sc_p_hr = false;
  std::size_t term_cap = kDefaultTermCap;
  unsigned workers = 1;
};

inline constexpr int kOracleMaxParties = 6;

/// Builds every (scheme, N, eta) case, evaluates the three metrics by
/// enumeration and compares them with the closed forms. Rows are ordered by
/// scheme, N, the given eta order, then p_suc/p_hr/h_eff.
std::vector<VerificationRow> verify_suite(std::span<const int> parties, std::span<const double> etas,
                                          const VerificationOptions& options = {});

struct VerificationSummary {
  std::size_t total = 0;
  std::size_t passed = 0;
  std::size_t failed = 0;
};

VerificationSummary summarize(std::span<const VerificationRow> rows);
nlohmann::json to_json(const VerificationRow& row);
nlohmann::json verification_report(std::span<const VerificationRow> rows);

}  // namespace heraldnet

#endif  // HERALDNET_EXPERIMENTS_HPP
