#ifndef HERALDNET_ANALYTIC_HPP
#define HERALDNET_ANALYTIC_HPP

#include "heraldnet/heralding.hpp"
#include "heraldnet/schemes.hpp"

namespace heraldnet {

/// Closed-form success probability.
///   bc: eta^2N / 2^(N-1)
///   sc: eta^2N / 2^(2N-1)
///   sd: eta^4N / 2^(2N-1)
double closed_p_suc(Scheme scheme, int parties, double eta);

/// Closed-form herald probability.
///   bc: eta^2N / 2^(N-1)
///   sc: (eta^2N + (3 eta^2 - 2 eta^4)^N) / 2^2N
///   sd: ((2 eta^2 - eta^4)^N + eta^4N) / 2^2N
double closed_p_hr(Scheme scheme, int parties, double eta);

/// Closed-form heralding efficiency. Throws UndefinedMetricError at eta = 0.
///   bc: 1
///   sc: 2 / (1 + (3 - 2 eta^2)^N)
///   sd: 2 eta^2N / ((2 - eta^2)^N + eta^2N)
double closed_h_eff(Scheme scheme, int parties, double eta);

Metrics closed_metrics(Scheme scheme, int parties, double eta);

/// Alternative literal form of the sc herald probability,
/// (2 eta^2N + (2 eta^2 (1 - eta^2)^2 + eta^2)^N - eta^2N) / 2^N.
/// It disagrees with enumeration (and gives h_eff = 2^-N at eta = 1); kept so
/// verification reports can show both side by side.
double literal_sc_p_hr(int parties, double eta);

/// Herald probability obtained by expanding the circuits term by term.
///   bc: same as closed_p_hr
///   sc, sd: 2 (2 eta^2 - eta^4)^N / 2^2N
/// For sc and sd this differs from closed_p_hr once two or more channels
/// lose a photon: every party must fall in the same detector branch, so a
/// false herald has weight 2 (one per branch), not 2^k or 1.
double enumerated_p_hr(Scheme scheme, int parties, double eta);

/// enumerated_p_suc / enumerated_p_hr. Throws UndefinedMetricError at eta = 0.
///   bc: 1
///   sc: (2 - eta^2)^-N
///   sd: (eta^2 / (2 - eta^2))^N
double enumerated_h_eff(Scheme scheme, int parties, double eta);

/// Heralding efficiency a local hidden variable model cannot reach: N/(2N-2).
double lhv_threshold(int parties);

/// Fiber transmission amplitude exp(-alpha l).
double eta_of_length(double alpha, double length_km);

/// e^(-2 alpha R) + e^(4 alpha R sin(pi/N)) - 2; zero where the sc and sd
/// heralding efficiencies cross.
double crossover_residual(int parties, double alpha, double radius_km);

/// Radius at which the sc and sd heralding efficiencies coincide. Zero for
/// N <= 6, where sc wins at every radius.
double crossover_radius(int parties, double alpha = kDefaultAlpha, double tol = 1e-6);

/// Chord between neighbours at the cross-over radius, 2 R_c sin(pi/N).
double crossover_chord(int parties, double alpha = kDefaultAlpha, double tol = 1e-6);

struct AsymptoticChord {
  /// ln 2 / (2 alpha), the large-N limit of the cross-over chord.
  double analytic_km = 0.0;
  int numeric_parties = 500;
  double numeric_km = 0.0;
  /// Reference value for this limit. It does not follow from the cross-over
  /// condition at alpha = 0.023 and is carried for reporting only.
  double reference_km = 15.71;
};

AsymptoticChord asymptotic_chord(double alpha = kDefaultAlpha);

/// Smallest N for which sd beats sc in success probability at every R > 0.
int p_suc_crossing_party_count();

}  // namespace heraldnet

#endif  // HERALDNET_ANALYTIC_HPP
