#include "heraldnet/experiments.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "heraldnet/linear_optics.hpp"
#include "heraldnet/parallel.hpp"

namespace heraldnet {

std::string format_number(double value) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", value);
  return buf;
}

namespace {

double rounded(double value) { return std::stod(format_number(value)); }

nlohmann::json number_or_null(const std::optional<double>& v) {
  return v ? nlohmann::json(rounded(*v)) : nlohmann::json(nullptr);
}

}  // namespace

std::vector<double> radius_grid(double start, double stop, double step) {
  if (!(step > 0.0)) throw std::invalid_argument("radius grid step must be positive");
  if (!(start >= 0.0) || !(stop >= start)) throw std::invalid_argument("radius grid needs 0 <= start <= stop");
  const auto count = static_cast<std::size_t>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> grid;
  grid.reserve(count);
  for (std::size_t i = 0; i < count; ++i) grid.push_back(start + static_cast<double>(i) * step);
  return grid;
}

std::vector<SweepRecord> sweep_vs_radius(std::span<const Scheme> schemes, std::span<const int> parties,
                                         std::span<const double> radii, double alpha) {
  if (radii.empty()) throw std::invalid_argument("radius grid is empty");
  for (std::size_t i = 1; i < radii.size(); ++i) {
    if (!(radii[i] > radii[i - 1])) throw std::invalid_argument("radius grid must be strictly ascending");
  }
  std::vector<SweepRecord> out;
  out.reserve(schemes.size() * parties.size() * radii.size());
  for (Scheme scheme : schemes) {
    for (int n : parties) {
      const double h_th = lhv_threshold(n);
      for (double r : radii) {
        const double eta = eta_for_geometry(scheme, {n, r, alpha});
        const auto m = closed_metrics(scheme, n, eta);
        out.push_back({scheme, n, r, alpha, eta, m.p_suc, m.p_hr, m.h_eff, h_th, Provenance::analytic});
      }
    }
  }
  return out;
}

std::string sweep_csv_row(const SweepRecord& r) {
  std::string row;
  row += to_string(r.scheme);
  row += ',' + std::to_string(r.parties);
  // NaN marks a column that does not apply (no geometry behind an explicit eta).
  for (double v : {r.radius_km, r.alpha, r.eta, r.p_suc, r.p_hr, r.h_eff, r.h_th}) {
    row += ',';
    if (!std::isnan(v)) row += format_number(v);
  }
  row += ',';
  row += to_string(r.source);
  return row;
}

void write_sweep_csv(std::ostream& os, std::span<const SweepRecord> records) {
  os << kSweepCsvHeader << '\n';
  for (const auto& r : records) os << sweep_csv_row(r) << '\n';
}

std::vector<CrossoverRow> crossover_curve(int min_parties, int max_parties, double alpha, double tol) {
  if (min_parties < 2 || max_parties < min_parties) throw std::invalid_argument("need 2 <= N_min <= N_max");
  std::vector<CrossoverRow> out;
  for (int n = min_parties; n <= max_parties; ++n) {
    const double r = crossover_radius(n, alpha, tol);
    out.push_back({n, r, 2.0 * r * std::sin(std::numbers::pi / n)});
  }
  return out;
}

namespace {

struct CaseResult {
  std::optional<double> p_suc;
  std::optional<double> p_hr;
  std::optional<double> h_eff;
  std::optional<std::string> error;
};

CaseResult run_case(Scheme scheme, int parties, double eta, std::size_t term_cap) {
  CaseResult out;
  try {
    const auto instance = build_scheme(scheme, parties, eta);
    const auto evolved = apply(instance.circuit, instance.initial, term_cap);
    const auto a = analyze(evolved, instance.spec);
    out.p_suc = a.success_probability;
    out.p_hr = a.herald_probability;
    if (a.herald_probability > 0.0) out.h_eff = a.success_probability / a.herald_probability;
  } catch (const TermLimitExceeded& e) {
    out.error = std::string("aborted: ") + e.what();
  }
  return out;
}

std::string case_id(Scheme scheme, int parties, double eta) {
  return std::string(to_string(scheme)) + "-N" + std::to_string(parties) + "-eta" + format_number(eta);
}

}  // namespace

std::vector<VerificationRow> verify_suite(std::span<const int> parties, std::span<const double> etas,
                                          const VerificationOptions& options) {
  for (int n : parties) {
    if (n < 2 || n > kOracleMaxParties) {
      throw std::invalid_argument("oracle verification is limited to 2 <= N <= " + std::to_string(kOracleMaxParties) +
                                  ", got N=" + std::to_string(n));
    }
  }
  struct Job {
    Scheme scheme;
    int parties;
    double eta;
  };
  std::vector<Job> jobs;
  for (Scheme s : kAllSchemes) {
    for (int n : parties) {
      for (double eta : etas) jobs.push_back({s, n, eta});
    }
  }
  const auto results = parallel_map(
      jobs.size(), [&](std::size_t i) { return run_case(jobs[i].scheme, jobs[i].parties, jobs[i].eta, options.term_cap); },
      options.workers);

  std::vector<VerificationRow> rows;
  for (std::size_t i = 0; i < jobs.size(); ++i) {
    const auto& job = jobs[i];
    const auto& res = results[i];
    const std::string id = case_id(job.scheme, job.parties, job.eta);

    auto add = [&](std::string metric, std::optional<double> analytic, std::optional<double> simulated,
                   std::optional<std::string> error) {
      VerificationRow row;
      row.case_id = id;
      row.scheme = job.scheme;
      row.parties = job.parties;
      row.eta = job.eta;
      row.metric = std::move(metric);
      row.simulated = simulated;
      row.error = res.error ? res.error : error;
      row.analytic = analytic.value_or(std::nan(""));
      if (analytic && simulated && !row.error) {
        row.abs_diff = std::abs(*analytic - *simulated);
        row.pass = row.abs_diff <= options.tol;
      } else {
        row.abs_diff = std::nan("");
        row.pass = false;
      }
      rows.push_back(std::move(row));
    };

    add("p_suc", closed_p_suc(job.scheme, job.parties, job.eta), res.p_suc, std::nullopt);

    double phr_analytic = closed_p_hr(job.scheme, job.parties, job.eta);
    if (job.scheme == Scheme::sc && options.literal_sc_p_hr) phr_analytic = literal_sc_p_hr(job.parties, job.eta);
    add("p_hr", phr_analytic, res.p_hr, std::nullopt);
    if (job.scheme == Scheme::sc) rows.back().literal_analytic = literal_sc_p_hr(job.parties, job.eta);
    rows.back().enumerated_analytic = enumerated_p_hr(job.scheme, job.parties, job.eta);

    if (job.eta > 0.0) {
      add("h_eff", closed_h_eff(job.scheme, job.parties, job.eta), res.h_eff, std::nullopt);
      rows.back().enumerated_analytic = enumerated_h_eff(job.scheme, job.parties, job.eta);
    } else {
      add("h_eff", std::nullopt, std::nullopt, "heralding efficiency undefined at eta=0");
    }
  }
  return rows;
}

VerificationSummary summarize(std::span<const VerificationRow> rows) {
  VerificationSummary s;
  s.total = rows.size();
  for (const auto& r : rows) (r.pass ? s.passed : s.failed)++;
  return s;
}

nlohmann::json to_json(const VerificationRow& row) {
  nlohmann::json j = {
      {"case_id", row.case_id},
      {"scheme", std::string(to_string(row.scheme))},
      {"N", row.parties},
      {"eta", rounded(row.eta)},
      {"metric", row.metric},
      {"analytic", std::isnan(row.analytic) ? nlohmann::json(nullptr) : nlohmann::json(rounded(row.analytic))},
      {"simulated", number_or_null(row.simulated)},
      {"abs_diff", std::isnan(row.abs_diff) ? nlohmann::json(nullptr) : nlohmann::json(rounded(row.abs_diff))},
      {"pass", row.pass},
  };
  if (row.literal_analytic) j["literal_analytic"] = rounded(*row.literal_analytic);
  if (row.enumerated_analytic) j["enumerated_analytic"] = rounded(*row.enumerated_analytic);
  if (row.error) j["error"] = *row.error;
  return j;
}

nlohmann::json verification_report(std::span<const VerificationRow> rows) {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& r : rows) arr.push_back(to_json(r));
  const auto s = summarize(rows);
  return {{"rows", std::move(arr)}, {"summary", {{"total", s.total}, {"passed", s.passed}, {"failed", s.failed}}}};
}

}  // namespace heraldnet
