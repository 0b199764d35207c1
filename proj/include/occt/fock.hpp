// Sparse algebra of bosonic creation-operator polynomials.
//
// A multi-photon state is represented as a complex-weighted sum of
// creation-operator monomials acting on the vacuum,
//
//     |ψ⟩ = Σ_m c_m · (∏_k â†_{mode_k}) |vac⟩ ,
//
// where each monomial is a multiset of polarized spatial modes. Identical
// modes commute, so a monomial is stored as a sorted sequence; repeated
// modes encode multiple photons in one mode. Conversion to normalized Fock
// amplitudes multiplies each coefficient by √(∏_m n_m!) with n_m the
// occupation of mode m.
//
// States produced by the treated circuits have at most a few dozen terms
// over ~20 modes, so a sparse map is the natural shape; no dense Fock
// tensor is ever built.

#pragma once

#include <complex>
#include <compare>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace occt {

using Complex = std::complex<double>;

// Amplitudes with magnitude below this are dropped after every collection.
inline constexpr double kPruneTol = 1e-12;

enum class Pol : std::uint8_t { H = 0, V = 1 };

enum class ModeKind : std::uint8_t {
  Source = 0,   // a path photons are emitted into
  Output = 1,   // a path produced by an optical element
  Discard = 2,  // absorbed light; never observed by a detector
};

// A polarized spatial mode. (kind, path, pol) is the canonical ordering,
// with H < V.
struct Mode {
  ModeKind kind = ModeKind::Source;
  int path = 0;
  Pol pol = Pol::H;

  auto operator<=>(const Mode&) const = default;
};

char pol_char(Pol p);
std::string to_string(const Mode& m);

// Product of creation operators applied to the vacuum, kept as a sorted
// multiset of modes. Two monomials built from any permutation of the same
// modes compare equal. The empty monomial is the vacuum.
class Monomial {
 public:
  Monomial() = default;
  explicit Monomial(std::vector<Mode> modes);

  const std::vector<Mode>& modes() const { return modes_; }
  int degree() const { return static_cast<int>(modes_.size()); }
  bool is_vacuum() const { return modes_.empty(); }

  // Multiset union (operator product).
  static Monomial product(const Monomial& a, const Monomial& b);

  // ∏_m n_m! over the occupation of each distinct mode.
  double occupation_factorial() const;

  bool contains_kind(ModeKind k) const;

  auto operator<=>(const Monomial&) const = default;

  std::string str() const;

 private:
  std::vector<Mode> modes_;
};

// Complex-weighted sum of monomials. Immutable in spirit: all operations
// return fresh values. Terms are held in canonical monomial order, so the
// first term of a nonempty state is well defined.
class PolyState {
 public:
  using TermMap = std::map<Monomial, Complex>;

  PolyState() = default;

  static PolyState vacuum() { return single(Monomial{}, 1.0); }
  static PolyState single(Monomial m, Complex c);

  const TermMap& terms() const { return terms_; }
  bool empty() const { return terms_.empty(); }
  std::size_t term_count() const { return terms_.size(); }

  // Adds c·m, collecting with any existing identical monomial and pruning.
  void accumulate(const Monomial& m, Complex c);

  Complex coefficient(const Monomial& m) const;

  // Uniform photon count, or -1 when terms have mixed degree or the state
  // is empty.
  int degree() const;

 private:
  TermMap terms_;
};

PolyState poly_add(const PolyState& a, const PolyState& b);
PolyState poly_mul(const PolyState& a, const PolyState& b);
PolyState poly_scale(const PolyState& a, Complex c);

// Occupation-keyed normalized amplitudes: coefficient × √(∏ n_m!).
using FockAmplitudeMap = std::map<Monomial, Complex>;

FockAmplitudeMap to_fock_amplitudes(const PolyState& s);

// Σ |fock amplitude|² — the physical norm² of the state.
double fock_norm_sq(const PolyState& s);

// ⟨a|b⟩ over normalized Fock amplitudes (no normalization applied).
Complex fock_inner(const PolyState& a, const PolyState& b);

// |⟨a|b⟩|² with both sides normalized. Throws on a null state.
double fock_fidelity(const PolyState& a, const PolyState& b);

// Scales the state to Fock norm 1 and rotates the global phase so the
// first monomial in canonical order has a positive real coefficient.
PolyState normalize_fock(const PolyState& s);

}  // namespace occt
