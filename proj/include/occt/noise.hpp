// Collective and conjugate-representation noise on qutrit registers, plus
// the numerical machinery that certifies decoherence-free / noiseless
// behavior.
//
// Collective noise applies the same single-qutrit unitary to every tensor
// factor; a conjugation mask swaps chosen factors to the conjugate action
// conj(U). The invariant subspace containing a seed state is constructed
// by closing its orbit under the eight collective su(3) generator
// representations Σ_k I⊗…⊗λ_a⊗…⊗I with Gram–Schmidt at rank tolerance
// 1e−9. Noiseless-subsystem certification then checks, over seeded Haar
// draws, that the orbit spans of the two logical states stay orthogonal
// and closed.

#pragma once

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "occt/qutrit.hpp"

namespace occt {

// The eight standard traceless Hermitian generators of su(3), normalized
// so tr(λ_a λ_b) = 2 δ_ab.
std::array<Eigen::Matrix3cd, 8> gell_mann();

// Haar-distributed U(3) via QR of a complex Gaussian matrix with the
// R-diagonal phase fix, then rescaled into SU(3). Deterministic per rng
// state.
Eigen::Matrix3cd haar_su3(std::mt19937_64& rng);
Eigen::Matrix3cd haar_su3(std::uint64_t seed);

// Haar U(3) with the global phase kept. Collective action by such a
// unitary differs from its SU(3) projection only by a state-global phase.
Eigen::Matrix3cd haar_u3(std::mt19937_64& rng);

struct CollectiveChannel {
  Eigen::Matrix3cd unitary;
  int arity = 1;
  // Per-factor flag; true applies conj(U) on that factor. Empty = all
  // plain.
  std::vector<bool> conjugate;
};

QutritState apply_collective(const CollectiveChannel& ch,
                             const QutritState& s);
// U ⊗ … ⊗ U (all factors plain).
QutritState apply_collective(const Eigen::Matrix3cd& u, const QutritState& s);
// (U ⊗ conj(U)) on a two-qutrit state.
QutritState apply_conjugate_pair(const Eigen::Matrix3cd& u,
                                 const QutritState& s);

class OrbitBasis {
 public:
  OrbitBasis(int n, Eigen::MatrixXcd vectors)
      : n_(n), vectors_(std::move(vectors)) {}

  int n() const { return n_; }
  int dimension() const { return static_cast<int>(vectors_.cols()); }
  const Eigen::MatrixXcd& vectors() const { return vectors_; }

  // ‖v − P v‖ with P the orthogonal projector onto the span.
  double projection_defect(const Eigen::VectorXcd& v) const;

 private:
  int n_;
  Eigen::MatrixXcd vectors_;
};

// Smallest collective-invariant subspace containing the seed.
OrbitBasis lie_orbit_basis(const QutritState& seed, double rank_tol = 1e-9);

struct NsReport {
  int trials = 0;
  std::uint64_t seed = 0;
  double leakage_max = 0.0;      // max |⟨x|U^⊗n|y⟩|, x ∈ B0, y ∈ B1
  double norm_defect_max = 0.0;  // max orbit-span escape of U^⊗n|0L⟩,|1L⟩
  double span_overlap_max = 0.0; // max |⟨b0|b1⟩| over basis pairs
  int orbit_dim_zero = 0;
  int orbit_dim_one = 0;
  double tolerance = 1e-9;
  bool pass = false;
  bool vacuous = false;  // zero trials: maxima are not evidence

  std::string json() const;
};

// Certifies that the orbit sectors of the two encoded states neither
// overlap nor leak into each other under random collective noise.
// Throws on non-orthogonal or mismatched inputs.
NsReport certify_ns(const QutritState& zero, const QutritState& one,
                    int trials, std::uint64_t seed, double tolerance = 1e-9);

}  // namespace occt
