#ifndef HERALDNET_FOCK_HPP
#define HERALDNET_FOCK_HPP

#include <complex>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/container/small_vector.hpp>

namespace heraldnet {

using Amplitude = std::complex<double>;
using ModeId = std::uint32_t;

/// Amplitudes with magnitude below this are dropped from a state.
inline constexpr double kPruneTolerance = 1e-14;
/// Tolerance for comparing probabilities.
inline constexpr double kProbabilityTolerance = 1e-9;
/// Default cap on the number of distinct monomials a state may hold.
inline constexpr std::size_t kDefaultTermCap = 20'000'000;

class DuplicateModeError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class UnknownModeError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class RegistryMismatchError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class TermLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Polarization : std::uint8_t { H, V };
enum class ModeRole : std::uint8_t { retained, detector, environment, internal };

char to_char(Polarization p);
std::string_view to_string(ModeRole r);

/// One bosonic degree of freedom: a spatial path with an H or V polarization.
struct Mode {
  ModeId id = 0;
  std::string spatial_label;
  Polarization polarization = Polarization::H;
  ModeRole role = ModeRole::internal;

  std::string name() const { return spatial_label + to_char(polarization); }
};

/// Append-only table of modes. Ids are dense and stable.
class ModeRegistry {
 public:
  Mode register_mode(std::string spatial_label, Polarization polarization, ModeRole role);

  const Mode& mode(ModeId id) const;
  std::optional<ModeId> find(std::string_view spatial_label, Polarization polarization) const;
  /// Throws UnknownModeError when the mode is absent.
  const Mode& at(std::string_view spatial_label, Polarization polarization) const;

  std::size_t size() const { return modes_.size(); }
  bool contains(ModeId id) const { return id < modes_.size(); }
  std::vector<ModeId> modes_with_role(ModeRole role) const;

 private:
  std::vector<Mode> modes_;
  std::map<std::pair<std::string, Polarization>, ModeId, std::less<>> index_;
};

using RegistryPtr = std::shared_ptr<const ModeRegistry>;

/// Product of creation operators, stored as (mode, count) pairs sorted by mode
/// id. Zero counts are never stored.
class Monomial {
 public:
  using Factor = std::pair<ModeId, std::uint32_t>;
  using Storage = boost::container::small_vector<Factor, 8>;

  Monomial() = default;

  static Monomial from_modes(std::span<const ModeId> modes);

  /// Multiplies in `count` more creation operators on `mode`.
  void multiply(ModeId mode, std::uint32_t count = 1);
  Monomial operator*(const Monomial& other) const;

  std::uint32_t count(ModeId mode) const;
  std::uint32_t total_photons() const;
  /// Product of occupation factorials, i.e. the squared norm of the monomial
  /// acting on vacuum.
  double factorial_weight() const;
  bool is_vacuum() const { return factors_.empty(); }

  const Storage& factors() const { return factors_; }

  /// Restriction to the given modes (which must be sorted).
  Monomial restricted_to(std::span<const ModeId> sorted_modes) const;
  /// Copy with the given modes (sorted) removed.
  Monomial without(std::span<const ModeId> sorted_modes) const;

  friend bool operator==(const Monomial& a, const Monomial& b) { return a.factors_ == b.factors_; }
  friend bool operator<(const Monomial& a, const Monomial& b) { return a.factors_ < b.factors_; }

  std::size_t hash() const noexcept;
  std::string to_string(const ModeRegistry& registry) const;

 private:
  Storage factors_;
};

struct MonomialHash {
  std::size_t operator()(const Monomial& m) const noexcept { return m.hash(); }
};

/// Sparse superposition of Fock monomials with complex amplitudes. Terms are
/// kept sorted by monomial, so equal states have identical term lists.
class PhotonicState {
 public:
  struct Term {
    Monomial monomial;
    Amplitude amplitude;
  };

  PhotonicState() = default;
  explicit PhotonicState(RegistryPtr registry) : registry_(std::move(registry)) {}

  static PhotonicState vacuum(RegistryPtr registry);
  /// Builds a state from unordered terms: like terms are merged in input
  /// order and amplitudes below the prune tolerance are dropped.
  static PhotonicState from_terms(RegistryPtr registry, std::vector<Term> terms);

  const RegistryPtr& registry() const { return registry_; }
  const std::vector<Term>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }
  bool is_zero() const { return terms_.empty(); }

  Amplitude amplitude(const Monomial& m) const;

  std::string to_string() const;

 private:
  friend class TermAccumulator;

  RegistryPtr registry_;
  std::vector<Term> terms_;
};

/// Accumulates amplitudes keyed by monomial. Each key's sum is formed in
/// insertion order, so results are reproducible for a fixed input sequence.
class TermAccumulator {
 public:
  explicit TermAccumulator(std::size_t term_cap = kDefaultTermCap) : term_cap_(term_cap) {}

  void add(const Monomial& m, Amplitude a);
  void add(Monomial&& m, Amplitude a);
  std::size_t size() const { return index_.size(); }

  PhotonicState finish(RegistryPtr registry) &&;

 private:
  void check_cap() const;

  std::size_t term_cap_;
  std::unordered_map<Monomial, Amplitude, MonomialHash> index_;
};

PhotonicState state_from_creation_product(const RegistryPtr& registry, std::span<const ModeId> modes);

double norm_squared(const PhotonicState& state);
Amplitude inner_product(const PhotonicState& x, const PhotonicState& y);

PhotonicState operator+(const PhotonicState& a, const PhotonicState& b);
PhotonicState operator-(const PhotonicState& a, const PhotonicState& b);
PhotonicState operator*(Amplitude s, const PhotonicState& a);

/// Polynomial product of two states (the tensor product when their occupied
/// modes are disjoint).
PhotonicState tensor(const PhotonicState& a, const PhotonicState& b);

/// Keeps the terms whose occupation on `measured_modes` equals `pattern`.
/// Amplitudes are unchanged, so the result is unnormalized.
PhotonicState project_pattern(const PhotonicState& state, std::span<const ModeId> measured_modes,
                              std::span<const std::uint32_t> pattern);

/// Probability of observing `pattern` on `measured_modes`, summed over every
/// unmeasured mode. Assumes a normalized input.
double marginal_probability(const PhotonicState& state, std::span<const ModeId> measured_modes,
                            std::span<const std::uint32_t> pattern);

/// Number of photons the term carries in modes of the given role.
std::uint32_t photons_with_role(const Monomial& m, const ModeRegistry& registry, ModeRole role);

}  // namespace heraldnet

#endif  // HERALDNET_FOCK_HPP
