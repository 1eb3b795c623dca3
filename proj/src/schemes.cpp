#include "heraldnet/schemes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace heraldnet {

std::string_view to_string(Scheme s) {
  switch (s) {
    case Scheme::bc: return "bc";
    case Scheme::sc: return "sc";
    case Scheme::sd: return "sd";
  }
  return "?";
}

Scheme parse_scheme(std::string_view text) {
  std::string lower(text);
  std::transform(lower.begin(), lower.end(), lower.begin(), [](unsigned char c) { return std::tolower(c); });
  if (lower == "bc") return Scheme::bc;
  if (lower == "sc") return Scheme::sc;
  if (lower == "sd") return Scheme::sd;
  throw std::invalid_argument("unknown scheme '" + std::string(text) + "' (expected bc, sc or sd)");
}

std::string party_label(std::string_view path, int index) { return std::string(path) + std::to_string(index + 1); }

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void check_inputs(int parties, double eta) {
  if (parties < 2) throw std::invalid_argument("a GHZ scheme needs at least 2 parties, got " + std::to_string(parties));
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("transmission eta must lie in [0, 1], got " + std::to_string(eta));
  }
}

void register_pair(ModeRegistry& reg, std::string_view path, int index, ModeRole role) {
  reg.register_mode(party_label(path, index), Polarization::H, role);
  reg.register_mode(party_label(path, index), Polarization::V, role);
}

ModePair pair_of(const ModeRegistry& reg, std::string_view path, int index) {
  return mode_pair(reg, party_label(path, index));
}

/// prod_i (x_H + sign * x_V)/sqrt(2), the all-D (sign +1) or all-A (sign -1)
/// product over the given pairs.
PhotonicState diagonal_product(const RegistryPtr& reg, const std::vector<ModePair>& pairs, double sign) {
  PhotonicState out = PhotonicState::vacuum(reg);
  for (const auto& p : pairs) {
    PhotonicState single = PhotonicState::from_terms(
        reg, {{Monomial::from_modes(std::array{p.h.id}), kInvSqrt2}, {Monomial::from_modes(std::array{p.v.id}), sign * kInvSqrt2}});
    out = tensor(out, single);
  }
  return out;
}

PhotonicState polarized_product(const RegistryPtr& reg, const std::vector<ModePair>& pairs, Polarization pol) {
  std::vector<ModeId> ids;
  for (const auto& p : pairs) ids.push_back(pol == Polarization::H ? p.h.id : p.v.id);
  return state_from_creation_product(reg, ids);
}

std::vector<ModePair> pairs_for(const ModeRegistry& reg, std::string_view path, int parties) {
  std::vector<ModePair> out;
  for (int i = 0; i < parties; ++i) out.push_back(pair_of(reg, path, i));
  return out;
}

std::vector<ModeId> environment_of(const ModeRegistry& reg) { return reg.modes_with_role(ModeRole::environment); }

/// Loss on both polarizations of `path` into `sink`, for every party.
LinearMap loss_stage(const ModeRegistry& reg, std::string_view path, std::string_view sink, int parties, double eta) {
  std::vector<LinearMap> elements;
  for (int i = 0; i < parties; ++i) {
    const auto in = pair_of(reg, path, i);
    const auto env = pair_of(reg, sink, i);
    elements.push_back(loss_channel(in.h, env.h, eta));
    elements.push_back(loss_channel(in.v, env.v, eta));
  }
  return parallel(elements, "loss " + std::string(path));
}

/// Central D/A PBS: D half of c_i to station i, A half to station i+1 (mod N).
LinearMap central_pbs_stage(const ModeRegistry& reg, int parties) {
  std::vector<LinearMap> elements;
  for (int i = 0; i < parties; ++i) {
    elements.push_back(pbs_da(pair_of(reg, "c", i), pair_of(reg, "d", i), pair_of(reg, "d", (i + 1) % parties)));
  }
  return parallel(elements, "pbs-da");
}

void fill_centralized_spec(SchemeSpec& spec, const RegistryPtr& reg, int parties) {
  spec.detector_stations = pairs_for(*reg, "d", parties);
  spec.retained_modes = pairs_for(*reg, "b", parties);
  spec.environment_modes = environment_of(*reg);
  spec.detection_basis = DetectionBasis::hv;
  spec.ghz_basis = {diagonal_product(reg, spec.retained_modes, 1.0), diagonal_product(reg, spec.retained_modes, -1.0)};
  spec.ghz_basis_names = {"prod b_D", "prod b_A"};
}

}  // namespace

PhotonicState bell_pair(const RegistryPtr& registry, std::string_view b_label, std::string_view c_label) {
  const auto b = mode_pair(*registry, b_label);
  const auto c = mode_pair(*registry, c_label);
  return PhotonicState::from_terms(registry, {{Monomial::from_modes(std::array{b.h.id, c.v.id}), kInvSqrt2},
                                              {Monomial::from_modes(std::array{b.v.id, c.h.id}), kInvSqrt2}});
}

PhotonicState bell_initial_state(const RegistryPtr& registry, int parties) {
  if (parties < 2) throw std::invalid_argument("a GHZ scheme needs at least 2 parties, got " + std::to_string(parties));
  PhotonicState out = PhotonicState::vacuum(registry);
  for (int i = 0; i < parties; ++i) out = tensor(out, bell_pair(registry, party_label("b", i), party_label("c", i)));
  return out;
}

PhotonicState single_photon_initial_state(const RegistryPtr& registry, int parties, std::string_view label) {
  if (parties < 2) throw std::invalid_argument("a GHZ scheme needs at least 2 parties, got " + std::to_string(parties));
  std::vector<ModeId> ids;
  for (int i = 0; i < parties; ++i) {
    const auto a = mode_pair(*registry, party_label(label, i));
    ids.push_back(a.h.id);
    ids.push_back(a.v.id);
  }
  return state_from_creation_product(registry, ids);
}

SchemeInstance build_bc(int parties, double eta, BuildOptions options) {
  check_inputs(parties, eta);
  auto reg = std::make_shared<ModeRegistry>();
  for (int i = 0; i < parties; ++i) {
    register_pair(*reg, "b", i, ModeRole::retained);
    register_pair(*reg, "c", i, ModeRole::internal);
    register_pair(*reg, "d", i, ModeRole::detector);
    register_pair(*reg, "f", i, ModeRole::environment);
  }

  SchemeInstance out;
  out.registry = reg;
  out.initial = bell_initial_state(reg, parties);
  if (options.phase_plate) {
    const auto c1 = pair_of(*reg, "c", 0);
    out.circuit.append(parallel({phase_plate(c1.h, std::numbers::pi), phase_plate(c1.v, std::numbers::pi)}, "phase c1"));
  }
  out.circuit.append(loss_stage(*reg, "c", "f", parties, eta));
  out.circuit.append(central_pbs_stage(*reg, parties));

  out.spec.scheme = Scheme::bc;
  out.spec.parties = parties;
  out.spec.eta = eta;
  out.spec.phase_plate = options.phase_plate;
  fill_centralized_spec(out.spec, reg, parties);
  return out;
}

SchemeInstance build_sc(int parties, double eta) {
  check_inputs(parties, eta);
  auto reg = std::make_shared<ModeRegistry>();
  for (int i = 0; i < parties; ++i) {
    register_pair(*reg, "a", i, ModeRole::internal);
    register_pair(*reg, "b", i, ModeRole::retained);
    register_pair(*reg, "c", i, ModeRole::internal);
    register_pair(*reg, "d", i, ModeRole::detector);
    register_pair(*reg, "f", i, ModeRole::environment);
  }

  SchemeInstance out;
  out.registry = reg;
  out.initial = single_photon_initial_state(reg, parties);

  std::vector<LinearMap> splitters;
  for (int i = 0; i < parties; ++i) {
    const auto a = pair_of(*reg, "a", i);
    const auto b = pair_of(*reg, "b", i);
    const auto c = pair_of(*reg, "c", i);
    splitters.push_back(bs_5050(a.h, b.h, c.h));
    splitters.push_back(bs_5050(a.v, b.v, c.v));
  }
  out.circuit.append(parallel(splitters, "bs"));
  out.circuit.append(loss_stage(*reg, "c", "f", parties, eta));
  out.circuit.append(central_pbs_stage(*reg, parties));

  out.spec.scheme = Scheme::sc;
  out.spec.parties = parties;
  out.spec.eta = eta;
  fill_centralized_spec(out.spec, reg, parties);
  return out;
}

SchemeInstance build_sd(int parties, double eta) {
  check_inputs(parties, eta);
  auto reg = std::make_shared<ModeRegistry>();
  for (int i = 0; i < parties; ++i) {
    register_pair(*reg, "a", i, ModeRole::internal);
    register_pair(*reg, "b", i, ModeRole::internal);
    register_pair(*reg, "c", i, ModeRole::internal);
    register_pair(*reg, "d", i, ModeRole::detector);
    register_pair(*reg, "e", i, ModeRole::retained);
    register_pair(*reg, "f", i, ModeRole::environment);
    register_pair(*reg, "g", i, ModeRole::environment);
  }

  SchemeInstance out;
  out.registry = reg;
  out.initial = single_photon_initial_state(reg, parties);

  std::vector<LinearMap> local_pbs;
  for (int i = 0; i < parties; ++i) {
    local_pbs.push_back(pbs_da(pair_of(*reg, "a", i), pair_of(*reg, "b", i), pair_of(*reg, "c", i)));
  }
  out.circuit.append(parallel(local_pbs, "pbs-da"));
  out.circuit.append(parallel({loss_stage(*reg, "b", "f", parties, eta), loss_stage(*reg, "c", "g", parties, eta)}, "loss"));

  std::map<std::string, std::string> shift;
  for (int i = 0; i < parties; ++i) shift[party_label("c", i)] = party_label("c", (i + 1) % parties);
  out.circuit.append(rewire(*reg, shift));

  std::vector<LinearMap> analyzers;
  for (int i = 0; i < parties; ++i) {
    analyzers.push_back(
        pbs_hv(pair_of(*reg, "b", i), pair_of(*reg, "c", i), pair_of(*reg, "e", i), pair_of(*reg, "d", i)));
  }
  out.circuit.append(parallel(analyzers, "pbs-hv"));

  out.spec.scheme = Scheme::sd;
  out.spec.parties = parties;
  out.spec.eta = eta;
  out.spec.detector_stations = pairs_for(*reg, "d", parties);
  out.spec.retained_modes = pairs_for(*reg, "e", parties);
  out.spec.environment_modes = environment_of(*reg);
  out.spec.detection_basis = DetectionBasis::da;
  out.spec.ghz_basis = {polarized_product(reg, out.spec.retained_modes, Polarization::H),
                        polarized_product(reg, out.spec.retained_modes, Polarization::V)};
  out.spec.ghz_basis_names = {"prod e_H", "prod e_V"};
  return out;
}

SchemeInstance build_scheme(Scheme scheme, int parties, double eta, BuildOptions options) {
  switch (scheme) {
    case Scheme::bc: return build_bc(parties, eta, options);
    case Scheme::sc: return build_sc(parties, eta);
    case Scheme::sd: return build_sd(parties, eta);
  }
  throw std::invalid_argument("unknown scheme");
}

void validate(const NetworkGeometry& geometry) {
  if (geometry.parties < 2) throw std::invalid_argument("geometry needs at least 2 parties");
  if (!(geometry.radius_km >= 0.0)) throw std::invalid_argument("ring radius must be non-negative");
  if (!(geometry.alpha > 0.0)) throw std::invalid_argument("attenuation alpha must be positive");
}

double channel_length(Scheme scheme, const NetworkGeometry& geometry) {
  validate(geometry);
  if (scheme == Scheme::sd) {
    return 2.0 * geometry.radius_km * std::sin(std::numbers::pi / geometry.parties);
  }
  return geometry.radius_km;
}

double eta_for_geometry(Scheme scheme, const NetworkGeometry& geometry) {
  return std::exp(-geometry.alpha * channel_length(scheme, geometry));
}

}  // namespace heraldnet
