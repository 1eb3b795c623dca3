#include "heraldnet/linear_optics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <set>
#include <stdexcept>

namespace heraldnet {

namespace {

const double kInvSqrt2 = 1.0 / std::numbers::sqrt2;

void require_pair(const ModePair& p) {
  if (p.h.spatial_label != p.v.spatial_label || p.h.polarization != Polarization::H ||
      p.v.polarization != Polarization::V) {
    throw std::invalid_argument("incomplete mode pair: expected the H and V modes of one path, got " + p.h.name() +
                                " and " + p.v.name());
  }
}

}  // namespace

ModePair mode_pair(const ModeRegistry& registry, std::string_view spatial_label) {
  return {registry.at(spatial_label, Polarization::H), registry.at(spatial_label, Polarization::V)};
}

void LinearMap::set_column(ModeId input, std::vector<OutputCoefficient> column) {
  if (!columns_.emplace(input, std::move(column)).second) {
    throw std::invalid_argument("linear map already has a column for mode id " + std::to_string(input));
  }
}

void LinearMap::claim_environment(ModeId mode) {
  if (std::find(environment_.begin(), environment_.end(), mode) != environment_.end()) {
    throw std::invalid_argument("environment mode id " + std::to_string(mode) + " is already used by a loss element");
  }
  environment_.push_back(mode);
}

const std::vector<OutputCoefficient>* LinearMap::column(ModeId input) const {
  auto it = columns_.find(input);
  return it == columns_.end() ? nullptr : &it->second;
}

std::vector<ModeId> LinearMap::inputs() const {
  std::vector<ModeId> out;
  out.reserve(columns_.size());
  for (const auto& [in, col] : columns_) out.push_back(in);
  return out;
}

std::vector<ModeId> LinearMap::outputs() const {
  std::vector<ModeId> out;
  for (const auto& [in, col] : columns_) {
    for (const auto& oc : col) out.push_back(oc.mode);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

Eigen::MatrixXcd LinearMap::gram() const {
  const auto ins = inputs();
  const auto outs = outputs();
  Eigen::MatrixXcd coeffs = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(outs.size()),
                                                   static_cast<Eigen::Index>(ins.size()));
  for (std::size_t j = 0; j < ins.size(); ++j) {
    for (const auto& oc : columns_.at(ins[j])) {
      auto row = std::lower_bound(outs.begin(), outs.end(), oc.mode) - outs.begin();
      coeffs(row, static_cast<Eigen::Index>(j)) += oc.coefficient;
    }
  }
  return coeffs.adjoint() * coeffs;
}

LinearMap parallel(const std::vector<LinearMap>& elements, std::string name) {
  LinearMap out(std::move(name));
  for (const auto& e : elements) {
    for (const auto& [in, col] : e.columns()) out.set_column(in, col);
    for (ModeId env : e.environment_modes()) out.claim_environment(env);
  }
  return out;
}

bool is_isometry(const LinearMap& map, double tol) {
  if (map.empty()) return true;
  const Eigen::MatrixXcd g = map.gram();
  return (g - Eigen::MatrixXcd::Identity(g.rows(), g.cols())).cwiseAbs().maxCoeff() <= tol;
}

LinearMap loss_channel(const Mode& in_mode, const Mode& env_mode, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("transmission eta must lie in [0, 1], got " + std::to_string(eta));
  }
  if (env_mode.role != ModeRole::environment) {
    throw std::invalid_argument("loss sink " + env_mode.name() + " does not have the environment role");
  }
  LinearMap map("loss " + in_mode.name());
  map.set_column(in_mode.id, {{in_mode.id, eta}, {env_mode.id, std::sqrt(1.0 - eta * eta)}});
  map.claim_environment(env_mode.id);
  return map;
}

LinearMap bs_5050(const Mode& in_mode, const Mode& out_mode_1, const Mode& out_mode_2) {
  if (in_mode.polarization != out_mode_1.polarization || in_mode.polarization != out_mode_2.polarization) {
    throw std::invalid_argument("beam splitter ports must share polarization: " + in_mode.name() + ", " +
                                out_mode_1.name() + ", " + out_mode_2.name());
  }
  LinearMap map("bs " + in_mode.name());
  map.set_column(in_mode.id, {{out_mode_1.id, kInvSqrt2}, {out_mode_2.id, kInvSqrt2}});
  return map;
}

LinearMap pbs_da(const ModePair& in, const ModePair& d_side, const ModePair& a_side) {
  require_pair(in);
  require_pair(d_side);
  require_pair(a_side);
  // H = (D + A)/sqrt2, V = (D - A)/sqrt2; D = (H + V)/sqrt2, A = (H - V)/sqrt2.
  LinearMap map("pbs-da " + in.h.spatial_label);
  map.set_column(in.h.id, {{d_side.h.id, 0.5}, {d_side.v.id, 0.5}, {a_side.h.id, 0.5}, {a_side.v.id, -0.5}});
  map.set_column(in.v.id, {{d_side.h.id, 0.5}, {d_side.v.id, 0.5}, {a_side.h.id, -0.5}, {a_side.v.id, 0.5}});
  return map;
}

LinearMap pbs_hv(const ModePair& in_b, const ModePair& in_c, const ModePair& out_e, const ModePair& out_d) {
  require_pair(in_b);
  require_pair(in_c);
  require_pair(out_e);
  require_pair(out_d);
  LinearMap map("pbs-hv " + in_b.h.spatial_label + "/" + in_c.h.spatial_label);
  map.set_column(in_b.h.id, {{out_e.h.id, 1.0}});
  map.set_column(in_b.v.id, {{out_d.v.id, 1.0}});
  map.set_column(in_c.h.id, {{out_d.h.id, 1.0}});
  map.set_column(in_c.v.id, {{out_e.v.id, 1.0}});
  return map;
}

LinearMap phase_plate(const Mode& mode, double phase) {
  LinearMap map("phase " + mode.name());
  map.set_column(mode.id, {{mode.id, std::polar(1.0, phase)}});
  return map;
}

LinearMap rewire(const ModeRegistry& registry, const std::map<std::string, std::string>& permutation) {
  std::set<std::string> domain;
  std::set<std::string> image;
  for (const auto& [from, to] : permutation) {
    domain.insert(from);
    image.insert(to);
  }
  if (image.size() != permutation.size() || image != domain) {
    throw std::invalid_argument("rewiring is not a bijection on its labels");
  }
  LinearMap map("rewire");
  for (const auto& [from, to] : permutation) {
    for (Polarization p : {Polarization::H, Polarization::V}) {
      map.set_column(registry.at(from, p).id, {{registry.at(to, p).id, 1.0}});
    }
  }
  return map;
}

LinearMap da_analyzer(const ModePair& pair) {
  require_pair(pair);
  LinearMap map("da-analyzer " + pair.h.spatial_label);
  map.set_column(pair.h.id, {{pair.h.id, kInvSqrt2}, {pair.v.id, kInvSqrt2}});
  map.set_column(pair.v.id, {{pair.h.id, kInvSqrt2}, {pair.v.id, -kInvSqrt2}});
  return map;
}

void Circuit::append(LinearMap stage) {
  for (ModeId env : stage.environment_modes()) {
    for (const auto& earlier : stages_) {
      const auto& owned = earlier.environment_modes();
      if (std::find(owned.begin(), owned.end(), env) != owned.end()) {
        throw std::invalid_argument("environment mode id " + std::to_string(env) +
                                    " is already used by a loss element in stage '" + earlier.name() + "'");
      }
    }
  }
  stages_.push_back(std::move(stage));
}

namespace {

using Partial = std::vector<PhotonicState::Term>;

void merge_like_terms(Partial& terms) {
  std::sort(terms.begin(), terms.end(),
            [](const PhotonicState::Term& a, const PhotonicState::Term& b) { return a.monomial < b.monomial; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (out > 0 && terms[out - 1].monomial == terms[i].monomial) {
      terms[out - 1].amplitude += terms[i].amplitude;
    } else {
      if (out != i) terms[out] = std::move(terms[i]);
      ++out;
    }
  }
  terms.resize(out);
}

}  // namespace

PhotonicState apply(const LinearMap& map, const PhotonicState& state, std::size_t term_cap) {
  if (map.empty()) return state;
  const auto outputs = map.outputs();
  TermAccumulator acc(term_cap);
  Partial partial;
  Partial next;
  for (const auto& term : state.terms()) {
    partial.assign(1, {Monomial{}, term.amplitude});
    for (const auto& [mode, count] : term.monomial.factors()) {
      const auto* col = map.column(mode);
      if (col == nullptr) {
        if (std::binary_search(outputs.begin(), outputs.end(), mode)) {
          const std::string name = state.registry() ? state.registry()->mode(mode).name() : std::to_string(mode);
          throw std::invalid_argument("occupied mode " + name + " is not mapped by '" + map.name() +
                                      "' but is also one of its outputs");
        }
        for (auto& p : partial) p.monomial.multiply(mode, count);
        continue;
      }
      for (std::uint32_t k = 0; k < count; ++k) {
        next.clear();
        for (const auto& p : partial) {
          for (const auto& oc : *col) {
            if (oc.coefficient == Amplitude{}) continue;
            Monomial m = p.monomial;
            m.multiply(oc.mode);
            next.push_back({std::move(m), p.amplitude * oc.coefficient});
          }
        }
        if (count > 1 || col->size() > 1) merge_like_terms(next);
        partial.swap(next);
      }
    }
    for (auto& p : partial) acc.add(std::move(p.monomial), p.amplitude);
  }
  return std::move(acc).finish(state.registry());
}

PhotonicState apply(const Circuit& circuit, const PhotonicState& state, std::size_t term_cap) {
  PhotonicState current = state;
  for (const auto& stage : circuit.stages()) current = apply(stage, current, term_cap);
  return current;
}

}  // namespace heraldnet
