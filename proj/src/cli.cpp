#include "heraldnet/cli.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "heraldnet/analytic.hpp"
#include "heraldnet/experiments.hpp"
#include "heraldnet/heralding.hpp"
#include "heraldnet/parallel.hpp"
#include "heraldnet/schemes.hpp"

namespace heraldnet {

namespace {

class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

int parse_int(std::string_view text) {
  int v = 0;
  const auto* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) throw UsageError("not an integer: '" + std::string(text) + "'");
  return v;
}

double parse_double(const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) throw UsageError("not a number: '" + text + "'");
  return v;
}

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream is(text);
  while (std::getline(is, cur, sep)) parts.push_back(cur);
  if (!text.empty() && text.back() == sep) parts.emplace_back();
  return parts;
}

// Everything a run can be configured with. Bound to the option parser and
// echoed by --dump-config.
struct RunConfig {
  std::string scheme;  // empty: the command's default set
  std::string parties;
  std::optional<double> radius;
  std::string radius_grid;
  double alpha = kDefaultAlpha;
  std::optional<double> eta;
  std::vector<double> etas;
  std::string out;
  std::string format = "csv";
  double tol = kProbabilityTolerance;
  bool literal_sc_p_hr = false;
  std::size_t term_cap = kDefaultTermCap;
};

std::vector<Scheme> selected_schemes(const std::string& text, std::span<const Scheme> fallback) {
  if (text.empty()) return {fallback.begin(), fallback.end()};
  if (text == "all") return {kAllSchemes.begin(), kAllSchemes.end()};
  return {parse_scheme(text)};
}

// Writes to --out when given, otherwise to `out`.
template <typename Fn>
void emit(const std::string& path, std::ostream& out, Fn&& write) {
  if (path.empty()) {
    write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary | std::ios::trunc);
  if (!file) throw std::runtime_error("cannot open output file '" + path + "' for writing");
  write(file);
  file.flush();
  if (!file) throw std::runtime_error("failed writing output file '" + path + "'");
}

nlohmann::json record_json(const SweepRecord& r) {
  auto num = [](double v) {
    return std::isnan(v) ? nlohmann::json(nullptr) : nlohmann::json(std::stod(format_number(v)));
  };
  return {{"scheme", std::string(to_string(r.scheme))},
          {"N", r.parties},
          {"R_km", num(r.radius_km)},
          {"alpha", num(r.alpha)},
          {"eta", num(r.eta)},
          {"p_suc", num(r.p_suc)},
          {"p_hr", num(r.p_hr)},
          {"h_eff", num(r.h_eff)},
          {"h_th", num(r.h_th)},
          {"source", std::string(to_string(r.source))}};
}

void write_records(std::ostream& os, const std::string& format, std::span<const SweepRecord> records) {
  if (format == "json") {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& r : records) arr.push_back(record_json(r));
    os << arr.dump(2) << '\n';
  } else {
    write_sweep_csv(os, records);
  }
}

int cmd_simulate(const RunConfig& cfg, std::ostream& out) {
  if (cfg.eta && cfg.radius) throw UsageError("supply either --eta or --radius, not both");
  if (!cfg.eta && !cfg.radius) throw UsageError("simulate needs --eta or --radius");
  const auto schemes = selected_schemes(cfg.scheme, kAllSchemes);
  const auto parties = parse_party_spec(cfg.parties.empty() ? "2" : cfg.parties);
  for (int n : parties) {
    if (n < 2) throw UsageError("party count must be at least 2, got N=" + std::to_string(n));
    if (n > kOracleMaxParties) {
      throw UsageError("simulation is limited to N <= " + std::to_string(kOracleMaxParties) +
                       " (oracle cap), got N=" + std::to_string(n));
    }
  }

  std::vector<SweepRecord> records;
  for (Scheme s : schemes) {
    for (int n : parties) {
      SweepRecord base;
      base.scheme = s;
      base.parties = n;
      base.h_th = lhv_threshold(n);
      if (cfg.eta) {
        base.radius_km = std::numeric_limits<double>::quiet_NaN();
        base.alpha = std::numeric_limits<double>::quiet_NaN();
        base.eta = *cfg.eta;
      } else {
        const NetworkGeometry g{n, *cfg.radius, cfg.alpha};
        validate(g);
        base.radius_km = g.radius_km;
        base.alpha = g.alpha;
        base.eta = eta_for_geometry(s, g);
      }
      const Metrics analytic = closed_metrics(s, n, base.eta);
      const Metrics simulated = simulate_metrics(build_scheme(s, n, base.eta), cfg.term_cap);

      SweepRecord a = base;
      a.p_suc = analytic.p_suc;
      a.p_hr = analytic.p_hr;
      a.h_eff = analytic.h_eff;
      a.source = Provenance::analytic;
      SweepRecord b = base;
      b.p_suc = simulated.p_suc;
      b.p_hr = simulated.p_hr;
      b.h_eff = simulated.h_eff;
      b.source = Provenance::simulated;
      records.push_back(a);
      records.push_back(b);
    }
  }
  emit(cfg.out, out, [&](std::ostream& os) { write_records(os, cfg.format, records); });
  return kExitOk;
}

int cmd_sweep(const RunConfig& cfg, std::ostream& out) {
  if (cfg.eta) throw UsageError("sweep derives eta from the radius grid; --eta is not accepted");
  if (cfg.radius && !cfg.radius_grid.empty()) throw UsageError("supply either --radius or --radius-grid, not both");
  static constexpr std::array<Scheme, 2> kDefaultSchemes{Scheme::sc, Scheme::sd};
  const auto schemes = selected_schemes(cfg.scheme, kDefaultSchemes);
  const auto parties = parse_party_spec(cfg.parties.empty() ? "4,6,8,13" : cfg.parties);
  std::vector<double> radii;
  if (cfg.radius) {
    radii = {*cfg.radius};
  } else {
    radii = parse_radius_grid(cfg.radius_grid.empty() ? "0:50:0.5" : cfg.radius_grid);
  }
  const auto records = sweep_vs_radius(schemes, parties, radii, cfg.alpha);
  emit(cfg.out, out, [&](std::ostream& os) { write_records(os, cfg.format, records); });
  return kExitOk;
}

int cmd_crossover(const RunConfig& cfg, std::ostream& out) {
  const auto parties = parse_party_spec(cfg.parties.empty() ? "2..30" : cfg.parties);
  const auto [lo, hi] = std::minmax_element(parties.begin(), parties.end());
  if (*lo < 2) throw UsageError("party count must be at least 2");
  const auto rows = crossover_curve(*lo, *hi, cfg.alpha);
  const auto limit = asymptotic_chord(cfg.alpha);
  emit(cfg.out, out, [&](std::ostream& os) {
    if (cfg.format == "json") {
      nlohmann::json arr = nlohmann::json::array();
      for (const auto& r : rows) {
        arr.push_back({{"N", r.parties},
                       {"R_c_km", std::stod(format_number(r.radius_km))},
                       {"l_c_km", std::stod(format_number(r.chord_km))}});
      }
      nlohmann::json doc = {
          {"alpha", std::stod(format_number(cfg.alpha))},
          {"rows", arr},
          {"asymptote",
           {{"analytic_km", std::stod(format_number(limit.analytic_km))},
            {"numeric_N", limit.numeric_parties},
            {"numeric_km", std::stod(format_number(limit.numeric_km))},
            {"reference_km", limit.reference_km},
            {"note", "the reference value does not follow from the cross-over condition at this alpha"}}}};
      os << doc.dump(2) << '\n';
      return;
    }
    os << "N,R_c_km,l_c_km\n";
    for (const auto& r : rows) {
      os << r.parties << ',' << format_number(r.radius_km) << ',' << format_number(r.chord_km) << '\n';
    }
    os << "# chord limit ln2/(2 alpha) = " << format_number(limit.analytic_km) << " km\n";
    os << "# chord at N=" << limit.numeric_parties << " = " << format_number(limit.numeric_km) << " km\n";
    os << "# reference value " << format_number(limit.reference_km)
       << " km does not follow from the cross-over condition at alpha = " << format_number(cfg.alpha) << '\n';
  });
  return kExitOk;
}

int cmd_verify(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
  if (cfg.radius || !cfg.radius_grid.empty()) throw UsageError("verify takes --eta values, not a geometry");
  const auto parties = parse_party_spec(cfg.parties.empty() ? "2..4" : cfg.parties);
  for (int n : parties) {
    if (n < 2 || n > kOracleMaxParties) {
      throw UsageError("oracle verification is limited to 2 <= N <= " + std::to_string(kOracleMaxParties) +
                       " (oracle cap), got N=" + std::to_string(n));
    }
  }
  std::vector<double> etas = cfg.etas;
  if (etas.empty()) etas = {1.0, 0.9, 0.7, 0.5};
  VerificationOptions opts;
  opts.tol = cfg.tol;
  opts.literal_sc_p_hr = cfg.literal_sc_p_hr;
  opts.term_cap = cfg.term_cap;
  opts.workers = worker_count();
  const auto rows = verify_suite(parties, etas, opts);
  const auto report = verification_report(rows);
  emit(cfg.out, out, [&](std::ostream& os) { os << report.dump(2) << '\n'; });

  const auto summary = summarize(rows);
  err << "verify: " << summary.passed << "/" << summary.total << " rows pass\n";
  for (const auto& r : rows) {
    if (r.pass) continue;
    err << "FAIL " << r.case_id << ' ' << r.metric << ": analytic=" << format_number(r.analytic)
        << " simulated=" << (r.simulated ? format_number(*r.simulated) : std::string("n/a"));
    if (r.error) err << " (" << *r.error << ')';
    err << '\n';
  }
  return summary.failed == 0 ? kExitOk : kExitFailedChecks;
}

void add_common(CLI::App* sub, RunConfig& cfg) {
  sub->add_option("--scheme", cfg.scheme, "bc, sc, sd or all")
      ->check(CLI::IsMember({"bc", "sc", "sd", "all"}));
  sub->add_option("--parties", cfg.parties, "N, MIN..MAX or a comma list");
  sub->add_option("--alpha", cfg.alpha, "fiber attenuation per km")->check(CLI::PositiveNumber);
  sub->add_option("--out", cfg.out, "output file (default stdout)");
  sub->add_option("--format", cfg.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
  sub->add_option("--tol", cfg.tol, "comparison tolerance")->check(CLI::NonNegativeNumber);
  sub->add_option("--term-cap", cfg.term_cap, "abort an enumeration past this many terms");
}

// INI section for one subcommand: every option that was given or has a
// default. Re-reading it with --config reproduces the run.
std::string dump_config_section(const CLI::App& sub) {
  std::string text = "[" + sub.get_name() + "]\n";
  for (const CLI::Option* opt : sub.get_options()) {
    if (!opt->get_configurable() || opt->get_name().empty()) continue;
    std::vector<std::string> values = opt->results();
    if (values.empty()) {
      if (opt->get_default_str().empty()) continue;
      values = {opt->get_default_str()};
    }
    text += opt->get_single_name() + "=";
    if (values.size() > 1) text += "[";
    for (std::size_t i = 0; i < values.size(); ++i) {
      if (i) text += ",";
      text += '"' + values[i] + '"';
    }
    if (values.size() > 1) text += "]";
    text += "\n";
  }
  return text;
}

}  // namespace

std::vector<int> parse_party_spec(const std::string& text) {
  if (text.empty()) throw UsageError("empty party specification");
  std::vector<int> out;
  if (const auto dots = text.find(".."); dots != std::string::npos) {
    const int lo = parse_int(std::string_view(text).substr(0, dots));
    const int hi = parse_int(std::string_view(text).substr(dots + 2));
    if (lo > hi) throw UsageError("party range " + text + " is empty");
    for (int n = lo; n <= hi; ++n) out.push_back(n);
    return out;
  }
  for (const auto& part : split(text, ',')) out.push_back(parse_int(part));
  return out;
}

std::vector<double> parse_radius_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw UsageError("radius grid must be START:STOP:STEP, got '" + text + "'");
  const double start = parse_double(parts[0]);
  const double stop = parse_double(parts[1]);
  const double step = parse_double(parts[2]);
  if (!(step > 0.0) || stop < start || start < 0.0) throw UsageError("invalid radius grid '" + text + "'");
  return radius_grid(start, stop, step);
}

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Heralded GHZ distribution: simulation, closed forms, sweeps"};
  app.name("heraldnet");
  app.require_subcommand(1);
  app.set_config("--config", "", "read options from an INI/TOML file");
  bool dump_config = false;
  app.add_flag("--dump-config", dump_config, "print the resolved configuration and exit")->configurable(false);

  RunConfig cfg;
  app.option_defaults()->always_capture_default();

  auto* simulate = app.add_subcommand("simulate", "closed-form and enumerated metrics");
  add_common(simulate, cfg);
  simulate->add_option("--eta", cfg.eta, "channel transmission")->check(CLI::Range(0.0, 1.0));
  simulate->add_option("--radius", cfg.radius, "network radius in km")->check(CLI::NonNegativeNumber);

  auto* sweep = app.add_subcommand("sweep", "closed-form metrics over a radius grid (CSV)");
  add_common(sweep, cfg);
  sweep->add_option("--eta", cfg.eta, "not accepted; eta follows from the geometry");
  sweep->add_option("--radius", cfg.radius, "single radius in km")->check(CLI::NonNegativeNumber);
  sweep->add_option("--radius-grid", cfg.radius_grid, "START:STOP:STEP in km");

  auto* crossover = app.add_subcommand("crossover", "cross-over radius and chord per N");
  add_common(crossover, cfg);

  auto* verify = app.add_subcommand("verify", "compare enumeration against the closed forms (JSON)");
  add_common(verify, cfg);
  verify->add_option("--eta", cfg.etas, "transmissions to test (comma separated)")
      ->delimiter(',')
      ->check(CLI::Range(0.0, 1.0));
  verify->add_flag("--paper-literal-sc-phr", cfg.literal_sc_p_hr,
                   "compare sc p_hr with the alternative literal form");

  for (auto* sub : {simulate, sweep, crossover, verify}) sub->configurable()->fallthrough();

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  if (dump_config) {
    for (auto* sub : {simulate, sweep, crossover, verify}) {
      if (sub->parsed()) out << dump_config_section(*sub);
    }
    return kExitOk;
  }

  try {
    if (simulate->parsed()) return cmd_simulate(cfg, out);
    if (sweep->parsed()) return cmd_sweep(cfg, out);
    if (crossover->parsed()) return cmd_crossover(cfg, out);
    return cmd_verify(cfg, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

}  // namespace heraldnet
