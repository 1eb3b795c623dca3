#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "heraldnet/heralding.hpp"
#include "heraldnet/schemes.hpp"

using namespace heraldnet;

namespace {

std::shared_ptr<ModeRegistry> pair_registry(int parties) {
  auto reg = std::make_shared<ModeRegistry>();
  for (int i = 0; i < parties; ++i) {
    for (const char* path : {"b", "c"}) {
      for (auto p : {Polarization::H, Polarization::V}) reg->register_mode(party_label(path, i), p, ModeRole::internal);
    }
  }
  return reg;
}

}  // namespace

TEST(Labels, PartyLabel) {
  EXPECT_EQ(party_label("b", 0), "b1");
  EXPECT_EQ(party_label("g", 11), "g12");
}

TEST(Labels, ParseScheme) {
  EXPECT_EQ(parse_scheme("BC"), Scheme::bc);
  EXPECT_EQ(parse_scheme("sd"), Scheme::sd);
  EXPECT_THROW(parse_scheme("xy"), std::invalid_argument);
  for (Scheme s : kAllSchemes) EXPECT_EQ(parse_scheme(to_string(s)), s);
}

TEST(InitialStates, SingleBellPair) {
  auto reg = pair_registry(1);
  const auto s = bell_pair(reg, "b1", "c1");
  EXPECT_EQ(s.size(), 2u);
  EXPECT_NEAR(norm_squared(s), 1.0, 1e-15);
  const auto m = Monomial::from_modes(
      std::vector<ModeId>{reg->at("b1", Polarization::H).id, reg->at("c1", Polarization::V).id});
  EXPECT_NEAR(std::abs(s.amplitude(m) - Amplitude(1.0 / std::sqrt(2.0))), 0.0, 1e-15);
}

TEST(InitialStates, BellProducts) {
  EXPECT_THROW(bell_initial_state(pair_registry(1), 1), std::invalid_argument);
  const auto two = bell_initial_state(pair_registry(2), 2);
  EXPECT_EQ(two.size(), 4u);
  for (const auto& t : two.terms()) EXPECT_NEAR(std::abs(t.amplitude - Amplitude(0.5)), 0.0, 1e-15);
  const auto three = bell_initial_state(pair_registry(3), 3);
  EXPECT_EQ(three.size(), 8u);
  EXPECT_NEAR(norm_squared(three), 1.0, 1e-14);
}

TEST(InitialStates, SinglePhotons) {
  for (int n : {2, 3, 5}) {
    const auto inst = build_sc(n, 1.0);
    ASSERT_EQ(inst.initial.size(), 1u);
    EXPECT_EQ(inst.initial.terms()[0].monomial.total_photons(), static_cast<std::uint32_t>(2 * n));
    EXPECT_DOUBLE_EQ(norm_squared(inst.initial), 1.0);
  }
  const auto inst = build_sc(2, 1.0);
  const auto& reg = *inst.registry;
  const auto expected = Monomial::from_modes(std::vector<ModeId>{
      reg.at("a1", Polarization::H).id, reg.at("a1", Polarization::V).id, reg.at("a2", Polarization::H).id,
      reg.at("a2", Polarization::V).id});
  EXPECT_EQ(inst.initial.terms()[0].monomial, expected);
}

TEST(Builders, SpecShape) {
  for (Scheme s : kAllSchemes) {
    for (int n : {2, 3, 4}) {
      const auto inst = build_scheme(s, n, 0.9);
      EXPECT_EQ(inst.spec.parties, n);
      EXPECT_EQ(inst.spec.detector_stations.size(), static_cast<std::size_t>(n));
      EXPECT_EQ(inst.spec.retained_modes.size(), static_cast<std::size_t>(n));
      EXPECT_EQ(inst.spec.detection_basis, s == Scheme::sd ? DetectionBasis::da : DetectionBasis::hv);
      for (const auto& g : inst.spec.ghz_basis) EXPECT_NEAR(norm_squared(g), 1.0, 1e-14);
      EXPECT_NEAR(std::abs(inner_product(inst.spec.ghz_basis[0], inst.spec.ghz_basis[1])), 0.0, 1e-14);
      EXPECT_NEAR(norm_squared(inst.initial), 1.0, 1e-14);
    }
  }
  EXPECT_EQ(build_sd(3, 0.5).spec.environment_modes.size(), 12u);  // f and g
  EXPECT_EQ(build_sc(3, 0.5).spec.environment_modes.size(), 6u);
  EXPECT_THROW(build_sc(1, 0.5), std::invalid_argument);
  EXPECT_THROW(build_bc(2, 1.5), std::invalid_argument);
}

TEST(Builders, PhotonBudgetAndLosslessEnvironment) {
  for (Scheme s : kAllSchemes) {
    for (double eta : {0.5, 0.9, 1.0}) {
      const auto inst = build_scheme(s, 3, eta);
      const auto out = apply(inst.circuit, inst.initial);
      EXPECT_NEAR(norm_squared(out), 1.0, 1e-10);
      for (const auto& t : out.terms()) {
        EXPECT_EQ(t.monomial.total_photons(), 6u);
        if (eta == 1.0) EXPECT_EQ(photons_with_role(t.monomial, *inst.registry, ModeRole::environment), 0u);
      }
    }
  }
}

TEST(Builders, BellLosslessHeraldedSubstate) {
  // At eta = 1 the all-D and all-A detector products each carry the matching
  // retained product with weight (1/sqrt2)^N.
  const auto inst = build_bc(2, 1.0);
  const auto out = apply(inst.circuit, inst.initial);
  const auto& reg = *inst.registry;
  double weight_all_h = 0.0;
  const HeraldPattern hh{DetectionBasis::hv, {0, 0}};
  const auto proj = pattern_projection(out, inst.spec, hh);
  weight_all_h = norm_squared(proj);
  // four retained/detector patterns, total herald probability 1/2
  EXPECT_NEAR(weight_all_h, 0.125, 1e-12);
  EXPECT_NEAR(herald_probability(out, inst.spec), 0.5, 1e-12);
  (void)reg;
}

TEST(Builders, SdStageOneIsHongOuMandel) {
  for (double eta : {1.0, 0.6}) {
    const int n = 2;
    const auto inst = build_sd(n, eta);
    const auto after = apply(inst.circuit.stages().front(), inst.initial);
    const auto& reg = *inst.registry;
    const double r = 1.0 / std::sqrt(2.0);
    PhotonicState expected = PhotonicState::vacuum(inst.registry);
    for (int i = 0; i < n; ++i) {
      auto photon = [&](const std::string& label, double sign) {
        return Amplitude(r) * (state_from_creation_product(inst.registry,
                                                           std::vector<ModeId>{reg.at(label, Polarization::H).id}) +
                               Amplitude(sign) * state_from_creation_product(
                                                     inst.registry, std::vector<ModeId>{reg.at(label, Polarization::V).id}));
      };
      const auto bD = photon(party_label("b", i), 1.0);
      const auto cA = photon(party_label("c", i), -1.0);
      expected = tensor(expected, Amplitude(0.5) * (tensor(bD, bD) - tensor(cA, cA)));
    }
    EXPECT_LT(norm_squared(after - expected), 1e-24);
  }
}

TEST(Builders, SdLosslessHeraldedProducts) {
  // eta = 1, N = 2: only the two products (e_H d_V)(e_H d_V) and (d_H e_V)(d_H e_V)
  // survive the one-photon-per-station filter, each with weight 1/2^N.
  const auto inst = build_sd(2, 1.0);
  const auto out = apply(inst.circuit, inst.initial);
  const auto& reg = *inst.registry;
  auto id = [&](const char* l, Polarization p) { return reg.at(l, p).id; };
  const auto m1 = Monomial::from_modes(std::vector<ModeId>{id("e1", Polarization::H), id("d1", Polarization::V),
                                                           id("e2", Polarization::H), id("d2", Polarization::V)});
  const auto m2 = Monomial::from_modes(std::vector<ModeId>{id("d1", Polarization::H), id("e1", Polarization::V),
                                                           id("d2", Polarization::H), id("e2", Polarization::V)});
  EXPECT_NEAR(std::abs(out.amplitude(m1)), 0.25, 1e-12);
  EXPECT_NEAR(std::abs(out.amplitude(m2)), 0.25, 1e-12);
  double heralded = 0.0;
  for (const auto& t : out.terms()) {
    bool ok = true;
    for (const auto& st : inst.spec.detector_stations) ok &= t.monomial.count(st.h.id) + t.monomial.count(st.v.id) == 1;
    if (ok) heralded += std::norm(t.amplitude) * t.monomial.factorial_weight();
  }
  EXPECT_NEAR(heralded, 2.0 / 16.0, 1e-12);
}

TEST(Builders, ScFalseHeraldsNeedLoss) {
  for (double eta : {1.0, 0.8}) {
    const auto inst = build_sc(2, eta);
    const auto out = apply(inst.circuit, inst.initial);
    double lossy_herald = 0.0;
    for (const auto& t : out.terms()) {
      bool ok = true;
      for (const auto& st : inst.spec.detector_stations) ok &= t.monomial.count(st.h.id) + t.monomial.count(st.v.id) == 1;
      if (ok && photons_with_role(t.monomial, *inst.registry, ModeRole::environment) > 0)
        lossy_herald += std::norm(t.amplitude) * t.monomial.factorial_weight();
    }
    if (eta == 1.0) {
      EXPECT_EQ(lossy_herald, 0.0);
    } else {
      EXPECT_GT(lossy_herald, 0.0);
    }
  }
}

TEST(Geometry, Transmission) {
  const NetworkGeometry one_km{4, 1.0, 0.023};
  EXPECT_NEAR(std::pow(eta_for_geometry(Scheme::sc, one_km), 2), 0.955041962, 1e-9);
  const NetworkGeometry hex{6, 7.0, 0.023};
  EXPECT_NEAR(channel_length(Scheme::sd, hex), 7.0, 1e-12);
  const NetworkGeometry square{4, 10.0, 0.023};
  EXPECT_NEAR(channel_length(Scheme::sd, square), 14.142135623731, 1e-9);
  EXPECT_EQ(channel_length(Scheme::bc, square), 10.0);
  EXPECT_NEAR(eta_for_geometry(Scheme::sd, {2, 10.0, 0.023}), std::exp(-0.46), 1e-15);
  EXPECT_THROW(validate({1, 1.0, 0.023}), std::invalid_argument);
  EXPECT_THROW(validate({3, -1.0, 0.023}), std::invalid_argument);
  EXPECT_THROW(validate({3, 1.0, 0.0}), std::invalid_argument);
}
