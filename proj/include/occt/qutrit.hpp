// Qutrit states and the photon-pair → qutrit decoding.
//
// A qutrit is carried by a pair of polarized photons through the fixed
// basis map
//
//     |0⟩ ≡ |VV⟩,   |1⟩ ≡ |VH⟩,   |2⟩ ≡ |HH⟩ ,
//
// read as (first photon of the pair, second photon). |HV⟩ has no image;
// decoding a monomial containing it is an error rather than a silent
// drop, since that always indicates a wiring bug upstream.
//
// n-qutrit states are dense complex vectors over the computational basis
// in big-endian ternary order: |ABC⟩ ↔ index 9A + 3B + C.

#pragma once

#include <Eigen/Dense>
#include <map>
#include <string>
#include <vector>

#include "occt/fock.hpp"

namespace occt {

struct DecodeError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

class QutritState {
 public:
  explicit QutritState(int n);
  QutritState(int n, Eigen::VectorXcd amps);

  int n() const { return n_; }
  int dim() const { return static_cast<int>(amps_.size()); }
  const Eigen::VectorXcd& amps() const { return amps_; }
  Complex amp(int index) const { return amps_(index); }

  double norm() const { return amps_.norm(); }
  QutritState normalized() const;

  // Index of |d_0 d_1 … d_{n-1}⟩ with digits in {0,1,2}, big-endian.
  static int index_of(const std::vector<int>& digits);

  std::string json() const;  // {"n":…, "amps":[[re,im],…]}

 private:
  int n_;
  Eigen::VectorXcd amps_;
};

// Pair grouping and the detector-path → photon-slot relabeling a circuit
// builder ships alongside its detectors. Slots are the emission labels;
// each (pair.first, pair.second) of slots forms one qutrit in order.
struct PairEncoding {
  std::vector<std::pair<int, int>> pairs{{1, 2}, {3, 4}, {5, 6}};
  // Detector path → photon slot. Empty means paths are already slots.
  std::map<int, int> path_to_slot;

  int slot_of(int path) const;
};

// Maps each monomial to a computational ket via the pair encoding and
// normalizes the result. Requires exactly one photon per slot; the pair
// polarizations must lie in {VV, VH, HH}.
QutritState decode(const PolyState& s, const PairEncoding& enc);

// (|011⟩ − |101⟩)/√2
QutritState logical_zero();
// (−|021⟩ + |120⟩ − |201⟩ + |210⟩)/2
QutritState logical_one();
// a·logical_zero + b·logical_one, normalized. normalized_input reports
// whether (a, b) already had unit norm.
QutritState encode_logical(Complex a, Complex b,
                           bool* normalized_input = nullptr);

// Totally antisymmetric three-qutrit state, six terms with permutation
// parity signs, weight 1/√6.
QutritState singlet3();
// (|00⟩ + |11⟩ + |22⟩)/√3
QutritState maxent2();

double fidelity(const QutritState& a, const QutritState& b);
bool phase_invariant_equal(const QutritState& a, const QutritState& b,
                           double tol);

}  // namespace occt
