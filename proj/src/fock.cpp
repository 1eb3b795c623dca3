#include "heraldnet/fock.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include <boost/container_hash/hash.hpp>

namespace heraldnet {

char to_char(Polarization p) { return p == Polarization::H ? 'H' : 'V'; }

std::string_view to_string(ModeRole r) {
  switch (r) {
    case ModeRole::retained: return "retained";
    case ModeRole::detector: return "detector";
    case ModeRole::environment: return "environment";
    case ModeRole::internal: return "internal";
  }
  return "unknown";
}

Mode ModeRegistry::register_mode(std::string spatial_label, Polarization polarization, ModeRole role) {
  auto key = std::make_pair(spatial_label, polarization);
  if (index_.contains(key)) {
    throw DuplicateModeError("mode " + spatial_label + to_char(polarization) + " is already registered");
  }
  Mode m{static_cast<ModeId>(modes_.size()), std::move(spatial_label), polarization, role};
  index_.emplace(std::move(key), m.id);
  modes_.push_back(m);
  return m;
}

const Mode& ModeRegistry::mode(ModeId id) const {
  if (id >= modes_.size()) {
    throw UnknownModeError("mode id " + std::to_string(id) + " is not registered");
  }
  return modes_[id];
}

std::optional<ModeId> ModeRegistry::find(std::string_view spatial_label, Polarization polarization) const {
  auto it = index_.find(std::make_pair(std::string(spatial_label), polarization));
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Mode& ModeRegistry::at(std::string_view spatial_label, Polarization polarization) const {
  auto id = find(spatial_label, polarization);
  if (!id) {
    throw UnknownModeError("mode " + std::string(spatial_label) + to_char(polarization) + " is not registered");
  }
  return modes_[*id];
}

std::vector<ModeId> ModeRegistry::modes_with_role(ModeRole role) const {
  std::vector<ModeId> out;
  for (const auto& m : modes_) {
    if (m.role == role) out.push_back(m.id);
  }
  return out;
}

// ---------------------------------------------------------------------------

Monomial Monomial::from_modes(std::span<const ModeId> modes) {
  Monomial m;
  for (ModeId id : modes) m.multiply(id);
  return m;
}

void Monomial::multiply(ModeId mode, std::uint32_t count) {
  if (count == 0) return;
  auto it = std::lower_bound(factors_.begin(), factors_.end(), mode,
                             [](const Factor& f, ModeId id) { return f.first < id; });
  if (it != factors_.end() && it->first == mode) {
    it->second += count;
  } else {
    factors_.insert(it, Factor{mode, count});
  }
}

Monomial Monomial::operator*(const Monomial& other) const {
  Monomial out;
  out.factors_.reserve(factors_.size() + other.factors_.size());
  auto a = factors_.begin();
  auto b = other.factors_.begin();
  while (a != factors_.end() || b != other.factors_.end()) {
    if (b == other.factors_.end() || (a != factors_.end() && a->first < b->first)) {
      out.factors_.push_back(*a++);
    } else if (a == factors_.end() || b->first < a->first) {
      out.factors_.push_back(*b++);
    } else {
      out.factors_.emplace_back(a->first, a->second + b->second);
      ++a;
      ++b;
    }
  }
  return out;
}

std::uint32_t Monomial::count(ModeId mode) const {
  auto it = std::lower_bound(factors_.begin(), factors_.end(), mode,
                             [](const Factor& f, ModeId id) { return f.first < id; });
  return (it != factors_.end() && it->first == mode) ? it->second : 0;
}

std::uint32_t Monomial::total_photons() const {
  std::uint32_t n = 0;
  for (const auto& [mode, count] : factors_) n += count;
  return n;
}

double Monomial::factorial_weight() const {
  double w = 1.0;
  for (const auto& [mode, count] : factors_) {
    for (std::uint32_t k = 2; k <= count; ++k) w *= static_cast<double>(k);
  }
  return w;
}

Monomial Monomial::restricted_to(std::span<const ModeId> sorted_modes) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (std::binary_search(sorted_modes.begin(), sorted_modes.end(), f.first)) out.factors_.push_back(f);
  }
  return out;
}

Monomial Monomial::without(std::span<const ModeId> sorted_modes) const {
  Monomial out;
  for (const auto& f : factors_) {
    if (!std::binary_search(sorted_modes.begin(), sorted_modes.end(), f.first)) out.factors_.push_back(f);
  }
  return out;
}

std::size_t Monomial::hash() const noexcept {
  std::size_t seed = factors_.size();
  for (const auto& [mode, count] : factors_) {
    boost::hash_combine(seed, mode);
    boost::hash_combine(seed, count);
  }
  return seed;
}

std::string Monomial::to_string(const ModeRegistry& registry) const {
  if (factors_.empty()) return "vac";
  std::string out;
  for (const auto& [mode, count] : factors_) {
    if (!out.empty()) out += ' ';
    out += registry.mode(mode).name();
    if (count > 1) out += '^' + std::to_string(count);
  }
  return out;
}

// ---------------------------------------------------------------------------

PhotonicState PhotonicState::vacuum(RegistryPtr registry) {
  PhotonicState s(std::move(registry));
  s.terms_.push_back({Monomial{}, Amplitude{1.0, 0.0}});
  return s;
}

PhotonicState PhotonicState::from_terms(RegistryPtr registry, std::vector<Term> terms) {
  TermAccumulator acc(std::max<std::size_t>(terms.size(), 1));
  for (auto& t : terms) acc.add(std::move(t.monomial), t.amplitude);
  return std::move(acc).finish(std::move(registry));
}

Amplitude PhotonicState::amplitude(const Monomial& m) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), m,
                             [](const Term& t, const Monomial& key) { return t.monomial < key; });
  if (it != terms_.end() && it->monomial == m) return it->amplitude;
  return {};
}

std::string PhotonicState::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  os.precision(6);
  bool first = true;
  for (const auto& t : terms_) {
    if (!first) os << " + ";
    first = false;
    os << '(' << t.amplitude.real();
    if (t.amplitude.imag() != 0.0) os << (t.amplitude.imag() < 0 ? "" : "+") << t.amplitude.imag() << 'i';
    os << ")|" << (registry_ ? t.monomial.to_string(*registry_) : std::string("?")) << '>';
  }
  return os.str();
}

// ---------------------------------------------------------------------------

void TermAccumulator::check_cap() const {
  if (index_.size() > term_cap_) {
    throw TermLimitExceeded("state exceeds the term cap of " + std::to_string(term_cap_) + " monomials");
  }
}

void TermAccumulator::add(const Monomial& m, Amplitude a) {
  auto [it, inserted] = index_.try_emplace(m, a);
  if (!inserted) {
    it->second += a;
  } else {
    check_cap();
  }
}

void TermAccumulator::add(Monomial&& m, Amplitude a) {
  auto [it, inserted] = index_.try_emplace(std::move(m), a);
  if (!inserted) {
    it->second += a;
  } else {
    check_cap();
  }
}

PhotonicState TermAccumulator::finish(RegistryPtr registry) && {
  PhotonicState s(std::move(registry));
  s.terms_.reserve(index_.size());
  for (auto& [m, a] : index_) {
    if (std::abs(a) >= kPruneTolerance) s.terms_.push_back({m, a});
  }
  index_.clear();
  std::sort(s.terms_.begin(), s.terms_.end(),
            [](const PhotonicState::Term& x, const PhotonicState::Term& y) { return x.monomial < y.monomial; });
  return s;
}

// ---------------------------------------------------------------------------

namespace {

void require_same_registry(const PhotonicState& x, const PhotonicState& y) {
  if (x.registry() != y.registry()) {
    throw RegistryMismatchError("states are expressed over different mode registries");
  }
}

}  // namespace

PhotonicState state_from_creation_product(const RegistryPtr& registry, std::span<const ModeId> modes) {
  for (ModeId id : modes) {
    if (!registry || !registry->contains(id)) {
      throw UnknownModeError("mode id " + std::to_string(id) + " is not registered");
    }
  }
  return PhotonicState::from_terms(registry, {{Monomial::from_modes(modes), Amplitude{1.0, 0.0}}});
}

double norm_squared(const PhotonicState& state) {
  double sum = 0.0;
  for (const auto& t : state.terms()) sum += std::norm(t.amplitude) * t.monomial.factorial_weight();
  return sum;
}

Amplitude inner_product(const PhotonicState& x, const PhotonicState& y) {
  require_same_registry(x, y);
  Amplitude sum{};
  auto a = x.terms().begin();
  auto b = y.terms().begin();
  while (a != x.terms().end() && b != y.terms().end()) {
    if (a->monomial < b->monomial) {
      ++a;
    } else if (b->monomial < a->monomial) {
      ++b;
    } else {
      sum += std::conj(a->amplitude) * b->amplitude * a->monomial.factorial_weight();
      ++a;
      ++b;
    }
  }
  return sum;
}

namespace {

PhotonicState combine(const PhotonicState& a, Amplitude sa, const PhotonicState& b, Amplitude sb) {
  require_same_registry(a, b);
  TermAccumulator acc(a.size() + b.size() + 1);
  for (const auto& t : a.terms()) acc.add(t.monomial, sa * t.amplitude);
  for (const auto& t : b.terms()) acc.add(t.monomial, sb * t.amplitude);
  return std::move(acc).finish(a.registry());
}

}  // namespace

PhotonicState operator+(const PhotonicState& a, const PhotonicState& b) { return combine(a, 1.0, b, 1.0); }
PhotonicState operator-(const PhotonicState& a, const PhotonicState& b) { return combine(a, 1.0, b, -1.0); }

PhotonicState operator*(Amplitude s, const PhotonicState& a) {
  std::vector<PhotonicState::Term> terms;
  terms.reserve(a.size());
  for (const auto& t : a.terms()) terms.push_back({t.monomial, s * t.amplitude});
  return PhotonicState::from_terms(a.registry(), std::move(terms));
}

PhotonicState tensor(const PhotonicState& a, const PhotonicState& b) {
  require_same_registry(a, b);
  TermAccumulator acc(a.size() * b.size() + 1);
  for (const auto& ta : a.terms()) {
    for (const auto& tb : b.terms()) acc.add(ta.monomial * tb.monomial, ta.amplitude * tb.amplitude);
  }
  return std::move(acc).finish(a.registry());
}

PhotonicState project_pattern(const PhotonicState& state, std::span<const ModeId> measured_modes,
                              std::span<const std::uint32_t> pattern) {
  if (measured_modes.size() != pattern.size()) {
    throw std::invalid_argument("occupation pattern length does not match the measured modes");
  }
  std::vector<PhotonicState::Term> kept;
  for (const auto& t : state.terms()) {
    bool match = true;
    for (std::size_t k = 0; k < measured_modes.size() && match; ++k) {
      match = t.monomial.count(measured_modes[k]) == pattern[k];
    }
    if (match) kept.push_back(t);
  }
  return PhotonicState::from_terms(state.registry(), std::move(kept));
}

double marginal_probability(const PhotonicState& state, std::span<const ModeId> measured_modes,
                            std::span<const std::uint32_t> pattern) {
  return norm_squared(project_pattern(state, measured_modes, pattern));
}

std::uint32_t photons_with_role(const Monomial& m, const ModeRegistry& registry, ModeRole role) {
  std::uint32_t n = 0;
  for (const auto& [mode, count] : m.factors()) {
    if (registry.mode(mode).role == role) n += count;
  }
  return n;
}

}  // namespace heraldnet
