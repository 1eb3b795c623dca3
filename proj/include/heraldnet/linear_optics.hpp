#ifndef HERALDNET_LINEAR_OPTICS_HPP
#define HERALDNET_LINEAR_OPTICS_HPP

#include <map>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "heraldnet/fock.hpp"

namespace heraldnet {

/// The H and V modes of one spatial label.
struct ModePair {
  Mode h;
  Mode v;
};

/// Looks up both polarizations of `spatial_label`.
ModePair mode_pair(const ModeRegistry& registry, std::string_view spatial_label);

struct OutputCoefficient {
  ModeId mode;
  Amplitude coefficient;
};

/// Linear substitution on creation operators. Each mapped input mode carries a
/// column of (output mode, coefficient) pairs; unmapped modes pass through.
class LinearMap {
 public:
  LinearMap() = default;
  explicit LinearMap(std::string name) : name_(std::move(name)) {}

  /// Throws if `input` already has a column.
  void set_column(ModeId input, std::vector<OutputCoefficient> column);
  /// Marks `mode` as an environment sink owned by this map.
  void claim_environment(ModeId mode);

  const std::vector<OutputCoefficient>* column(ModeId input) const;
  const std::map<ModeId, std::vector<OutputCoefficient>>& columns() const { return columns_; }
  const std::vector<ModeId>& environment_modes() const { return environment_; }

  std::vector<ModeId> inputs() const;
  /// Sorted, de-duplicated output modes over all columns.
  std::vector<ModeId> outputs() const;

  /// Gram matrix of the columns, indexed by `inputs()` order.
  Eigen::MatrixXcd gram() const;

  const std::string& name() const { return name_; }
  bool empty() const { return columns_.empty(); }

 private:
  std::string name_;
  std::map<ModeId, std::vector<OutputCoefficient>> columns_;
  std::vector<ModeId> environment_;
};

/// Places independent elements side by side in one stage. Input columns must
/// be disjoint and no environment mode may be claimed twice.
LinearMap parallel(const std::vector<LinearMap>& elements, std::string name = {});

bool is_isometry(const LinearMap& map, double tol = 1e-12);

/// c -> eta c + sqrt(1 - eta^2) env.
LinearMap loss_channel(const Mode& in_mode, const Mode& env_mode, double eta);

/// a -> (b + c)/sqrt(2), the second input port left in vacuum.
LinearMap bs_5050(const Mode& in_mode, const Mode& out_mode_1, const Mode& out_mode_2);

/// Diagonal/anti-diagonal polarizing beam splitter: the D component of the
/// input leaves on `d_side`, the A component on `a_side`. Outputs are written
/// in the H/V modes of each side.
LinearMap pbs_da(const ModePair& in, const ModePair& d_side, const ModePair& a_side);

/// H/V polarizing beam splitter with two inputs: b_H -> e_H, b_V -> d_V,
/// c_H -> d_H, c_V -> e_V.
LinearMap pbs_hv(const ModePair& in_b, const ModePair& in_c, const ModePair& out_e, const ModePair& out_d);

LinearMap phase_plate(const Mode& mode, double phase);

/// Relabels spatial paths; both polarizations follow their label. The map
/// must be a permutation of its key set.
LinearMap rewire(const ModeRegistry& registry, const std::map<std::string, std::string>& permutation);

/// Wave plate that rotates D/A onto H/V: H -> (H + V)/sqrt(2), V -> (H - V)/sqrt(2).
/// A photon detected in H afterwards was D before, V was A.
LinearMap da_analyzer(const ModePair& pair);

/// Ordered sequence of stages.
class Circuit {
 public:
  /// Throws when the stage claims an environment mode an earlier stage owns.
  void append(LinearMap stage);
  const std::vector<LinearMap>& stages() const { return stages_; }
  std::size_t size() const { return stages_.size(); }

 private:
  std::vector<LinearMap> stages_;
};

PhotonicState apply(const LinearMap& map, const PhotonicState& state, std::size_t term_cap = kDefaultTermCap);
PhotonicState apply(const Circuit& circuit, const PhotonicState& state, std::size_t term_cap = kDefaultTermCap);

}  // namespace heraldnet

#endif  // HERALDNET_LINEAR_OPTICS_HPP
