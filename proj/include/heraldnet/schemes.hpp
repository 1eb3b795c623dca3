#ifndef HERALDNET_SCHEMES_HPP
#define HERALDNET_SCHEMES_HPP

#include <array>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "heraldnet/fock.hpp"
#include "heraldnet/linear_optics.hpp"

namespace heraldnet {

/// bc: Bell-pair sources, central heralding station.
/// sc: single-photon sources, central heralding station.
/// sd: single-photon sources, heralding detectors spread over the parties.
enum class Scheme { bc, sc, sd };

inline constexpr std::array<Scheme, 3> kAllSchemes{Scheme::bc, Scheme::sc, Scheme::sd};

std::string_view to_string(Scheme s);
/// Accepts "bc", "sc", "sd" in any case.
Scheme parse_scheme(std::string_view text);

/// Polarization basis the heralding detectors resolve.
enum class DetectionBasis { hv, da };

/// Everything the heralding analysis needs to know about a built scheme.
struct SchemeSpec {
  Scheme scheme = Scheme::bc;
  int parties = 0;
  double eta = 1.0;
  std::vector<ModePair> detector_stations;
  std::vector<ModePair> retained_modes;
  std::vector<ModeId> environment_modes;
  DetectionBasis detection_basis = DetectionBasis::hv;
  /// The two N-fold product states whose equal superposition is the target
  /// GHZ state, over the retained modes.
  std::array<PhotonicState, 2> ghz_basis;
  std::array<std::string, 2> ghz_basis_names;
  bool phase_plate = false;
};

/// Initial state, circuit and metadata of one scheme at fixed (N, eta).
struct SchemeInstance {
  std::shared_ptr<ModeRegistry> registry;
  PhotonicState initial;
  Circuit circuit;
  SchemeSpec spec;
};

/// Ring network: N parties on a circle of radius R (km), fiber attenuation
/// alpha (1/km).
struct NetworkGeometry {
  int parties = 2;
  double radius_km = 0.0;
  double alpha = 0.023;
};

inline constexpr double kDefaultAlpha = 0.023;

/// (b_H c_V + b_V c_H)/sqrt(2) on the given labels.
PhotonicState bell_pair(const RegistryPtr& registry, std::string_view b_label, std::string_view c_label);

/// Product of N Bell pairs on labels b1..bN / c1..cN. The registry must hold
/// those modes.
PhotonicState bell_initial_state(const RegistryPtr& registry, int parties);

/// prod_i a_{i,H} a_{i,V} on labels a1..aN.
PhotonicState single_photon_initial_state(const RegistryPtr& registry, int parties, std::string_view label = "a");

struct BuildOptions {
  /// Only meaningful for bc: a pi phase on path c1 ahead of the loss.
  bool phase_plate = true;
};

SchemeInstance build_bc(int parties, double eta, BuildOptions options = {});
SchemeInstance build_sc(int parties, double eta);
SchemeInstance build_sd(int parties, double eta);
SchemeInstance build_scheme(Scheme scheme, int parties, double eta, BuildOptions options = {});

/// One-way fiber length per link: R for the centralized schemes, the ring
/// chord 2 R sin(pi/N) for sd.
double channel_length(Scheme scheme, const NetworkGeometry& geometry);
double eta_for_geometry(Scheme scheme, const NetworkGeometry& geometry);

void validate(const NetworkGeometry& geometry);

/// Label of party index i (0-based) for path letter `path`, e.g. ("b", 0) -> "b1".
std::string party_label(std::string_view path, int index);

}  // namespace heraldnet

#endif  // HERALDNET_SCHEMES_HPP
