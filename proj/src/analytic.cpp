#include "heraldnet/analytic.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heraldnet {

namespace {

void check(int parties, double eta) {
  if (parties < 1) throw std::invalid_argument("party count must be positive");
  if (!(eta >= 0.0 && eta <= 1.0)) throw std::invalid_argument("transmission eta must lie in [0, 1]");
}

double pow2(int k) { return std::ldexp(1.0, k); }

}  // namespace

double closed_p_suc(Scheme scheme, int parties, double eta) {
  check(parties, eta);
  const int n = parties;
  switch (scheme) {
    case Scheme::bc: return std::pow(eta, 2 * n) / pow2(n - 1);
    case Scheme::sc: return std::pow(eta, 2 * n) / pow2(2 * n - 1);
    case Scheme::sd: return std::pow(eta, 4 * n) / pow2(2 * n - 1);
  }
  throw std::invalid_argument("unknown scheme");
}

double closed_p_hr(Scheme scheme, int parties, double eta) {
  check(parties, eta);
  const int n = parties;
  const double e2 = eta * eta;
  const double e4 = e2 * e2;
  switch (scheme) {
    case Scheme::bc: return std::pow(eta, 2 * n) / pow2(n - 1);
    case Scheme::sc: return (std::pow(e2, n) + std::pow(3.0 * e2 - 2.0 * e4, n)) / pow2(2 * n);
    case Scheme::sd: return (std::pow(2.0 * e2 - e4, n) + std::pow(e4, n)) / pow2(2 * n);
  }
  throw std::invalid_argument("unknown scheme");
}

double closed_h_eff(Scheme scheme, int parties, double eta) {
  check(parties, eta);
  if (eta == 0.0) throw UndefinedMetricError("heralding efficiency undefined at eta=0 (nothing heralds)");
  const int n = parties;
  const double e2 = eta * eta;
  switch (scheme) {
    case Scheme::bc: return 1.0;
    case Scheme::sc: return 2.0 / (1.0 + std::pow(3.0 - 2.0 * e2, n));
    case Scheme::sd: return 2.0 * std::pow(e2, n) / (std::pow(2.0 - e2, n) + std::pow(e2, n));
  }
  throw std::invalid_argument("unknown scheme");
}

Metrics closed_metrics(Scheme scheme, int parties, double eta) {
  return {closed_p_suc(scheme, parties, eta), closed_p_hr(scheme, parties, eta), closed_h_eff(scheme, parties, eta),
          Provenance::analytic};
}

double literal_sc_p_hr(int parties, double eta) {
  check(parties, eta);
  const int n = parties;
  const double e2 = eta * eta;
  const double loss = 1.0 - e2;
  return (2.0 * std::pow(e2, n) + std::pow(2.0 * e2 * loss * loss + e2, n) - std::pow(e2, n)) / pow2(n);
}

double enumerated_p_hr(Scheme scheme, int parties, double eta) {
  check(parties, eta);
  if (scheme == Scheme::bc) return closed_p_hr(scheme, parties, eta);
  const double e2 = eta * eta;
  return 2.0 * std::pow(2.0 * e2 - e2 * e2, parties) / pow2(2 * parties);
}

double enumerated_h_eff(Scheme scheme, int parties, double eta) {
  check(parties, eta);
  if (eta == 0.0) throw UndefinedMetricError("heralding efficiency undefined at eta=0 (nothing heralds)");
  const double e2 = eta * eta;
  switch (scheme) {
    case Scheme::bc: return 1.0;
    case Scheme::sc: return std::pow(2.0 - e2, -parties);
    case Scheme::sd: return std::pow(e2 / (2.0 - e2), parties);
  }
  throw std::invalid_argument("unknown scheme");
}

double lhv_threshold(int parties) {
  if (parties < 2) throw std::invalid_argument("threshold needs at least 2 parties");
  return static_cast<double>(parties) / (2.0 * parties - 2.0);
}

double eta_of_length(double alpha, double length_km) {
  if (!(alpha > 0.0)) throw std::invalid_argument("attenuation alpha must be positive");
  if (!(length_km >= 0.0)) throw std::invalid_argument("channel length must be non-negative");
  return std::exp(-alpha * length_km);
}

double crossover_residual(int parties, double alpha, double radius_km) {
  const double s = std::sin(std::numbers::pi / parties);
  return std::exp(-2.0 * alpha * radius_km) + std::exp(4.0 * alpha * radius_km * s) - 2.0;
}

double crossover_radius(int parties, double alpha, double tol) {
  if (parties < 2) throw std::invalid_argument("cross-over needs at least 2 parties");
  if (!(alpha > 0.0)) throw std::invalid_argument("attenuation alpha must be positive");
  if (!(tol > 0.0)) throw std::invalid_argument("tolerance must be positive");

  // The residual starts at 0 with slope alpha (4 sin(pi/N) - 2); with a
  // non-negative slope it only grows, so sc wins everywhere.
  if (2.0 * std::sin(std::numbers::pi / parties) >= 1.0 - 1e-12) return 0.0;

  constexpr double kMaxRadius = 1e5;
  auto g = [&](double r) { return crossover_residual(parties, alpha, r); };

  double lo = 0.0;
  double hi = 1.0;
  if (g(hi) >= 0.0) {
    while (g(hi) >= 0.0) {
      hi *= 0.5;
      if (hi < 1e-12) throw std::runtime_error("cross-over radius: no sign change found near R = 0");
    }
    lo = hi;
    hi *= 2.0;
  } else {
    while (g(hi) < 0.0) {
      lo = hi;
      hi *= 2.0;
      if (hi > kMaxRadius) throw std::runtime_error("cross-over radius: no bracket found within 1e5 km");
    }
  }

  // Keep halving past `tol` until the residual itself is negligible; the
  // slope near the root can be small enough that 1e-6 km leaves g ~ 1e-9.
  constexpr double kResidualTol = 1e-12;
  while (hi - lo > tol || std::abs(g(0.5 * (lo + hi))) > kResidualTol) {
    const double mid = 0.5 * (lo + hi);
    if (mid <= lo || mid >= hi) break;
    if (g(mid) < 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

double crossover_chord(int parties, double alpha, double tol) {
  return 2.0 * crossover_radius(parties, alpha, tol) * std::sin(std::numbers::pi / parties);
}

AsymptoticChord asymptotic_chord(double alpha) {
  if (!(alpha > 0.0)) throw std::invalid_argument("attenuation alpha must be positive");
  AsymptoticChord out;
  out.analytic_km = std::numbers::ln2 / (2.0 * alpha);
  out.numeric_km = crossover_chord(out.numeric_parties, alpha, 1e-9);
  return out;
}

int p_suc_crossing_party_count() {
  // sc: exp(-2 N alpha R); sd: exp(-8 N alpha R sin(pi/N)). sd wins iff
  // sin(pi/N) < 1/4, independent of R and alpha.
  int n = 2;
  while (std::sin(std::numbers::pi / n) >= 0.25) ++n;
  return n;
}

}  // namespace heraldnet
