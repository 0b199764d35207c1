#include "occt/qutrit.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

namespace occt {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

QutritState::QutritState(int n) : n_(n) {
  if (n < 1) throw std::invalid_argument("QutritState: n must be >= 1");
  amps_ = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(std::pow(3.0, n)));
}

QutritState::QutritState(int n, Eigen::VectorXcd amps)
    : n_(n), amps_(std::move(amps)) {
  Eigen::Index want = 1;
  for (int k = 0; k < n; ++k) want *= 3;
  if (amps_.size() != want)
    throw std::invalid_argument("QutritState: amplitude vector has wrong size");
}

QutritState QutritState::normalized() const {
  double nrm = norm();
  if (nrm <= 0.0) throw std::invalid_argument("QutritState: null state");
  return {n_, amps_ / nrm};
}

int QutritState::index_of(const std::vector<int>& digits) {
  int idx = 0;
  for (int d : digits) {
    if (d < 0 || d > 2)
      throw std::invalid_argument("QutritState: digit outside {0,1,2}");
    idx = idx * 3 + d;
  }
  return idx;
}

std::string QutritState::json() const {
  std::string s = "{\"n\":" + std::to_string(n_) + ",\"amps\":[";
  char buf[64];
  for (Eigen::Index i = 0; i < amps_.size(); ++i) {
    if (i) s += ',';
    double re = amps_(i).real(), im = amps_(i).imag();
    if (re == 0.0) re = 0.0;  // normalize -0
    if (im == 0.0) im = 0.0;
    std::snprintf(buf, sizeof buf, "[%.12g,%.12g]", re, im);
    s += buf;
  }
  s += "]}";
  return s;
}

int PairEncoding::slot_of(int path) const {
  if (path_to_slot.empty()) return path;
  auto it = path_to_slot.find(path);
  if (it == path_to_slot.end())
    throw DecodeError("decode: path " + std::to_string(path) +
                      " has no photon-slot assignment");
  return it->second;
}

QutritState decode(const PolyState& s, const PairEncoding& enc) {
  if (s.empty()) throw DecodeError("decode: empty state");
  const int n = static_cast<int>(enc.pairs.size());
  QutritState out(n);
  Eigen::VectorXcd amps = Eigen::VectorXcd::Zero(out.dim());

  for (const auto& [mono, coeff] : s.terms()) {
    std::map<int, Pol> slot_pol;
    for (const Mode& m : mono.modes()) {
      if (m.kind == ModeKind::Discard)
        throw DecodeError("decode: monomial contains a discard mode: " +
                          mono.str());
      int slot = enc.slot_of(m.path);
      if (!slot_pol.emplace(slot, m.pol).second)
        throw DecodeError("decode: two photons in slot " +
                          std::to_string(slot) + " in monomial " + mono.str());
    }
    if (static_cast<int>(slot_pol.size()) != 2 * n)
      throw DecodeError("decode: monomial has wrong photon count: " +
                        mono.str());

    std::vector<int> digits;
    digits.reserve(n);
    for (const auto& [first, second] : enc.pairs) {
      auto a = slot_pol.find(first);
      auto b = slot_pol.find(second);
      if (a == slot_pol.end() || b == slot_pol.end())
        throw DecodeError("decode: missing photon slot in monomial " +
                          mono.str());
      Pol pa = a->second, pb = b->second;
      if (pa == Pol::V && pb == Pol::V)
        digits.push_back(0);
      else if (pa == Pol::V && pb == Pol::H)
        digits.push_back(1);
      else if (pa == Pol::H && pb == Pol::H)
        digits.push_back(2);
      else
        throw DecodeError("decode: pair (" + std::to_string(first) + "," +
                          std::to_string(second) +
                          ") is HV, outside the encoding, in monomial " +
                          mono.str());
    }
    amps(QutritState::index_of(digits)) += coeff;
  }

  QutritState result(n, std::move(amps));
  return result.normalized();
}

QutritState logical_zero() {
  QutritState s(3);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(27);
  a(QutritState::index_of({0, 1, 1})) = kInvSqrt2;
  a(QutritState::index_of({1, 0, 1})) = -kInvSqrt2;
  return {3, std::move(a)};
}

QutritState logical_one() {
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(27);
  a(QutritState::index_of({0, 2, 1})) = -0.5;
  a(QutritState::index_of({1, 2, 0})) = 0.5;
  a(QutritState::index_of({2, 0, 1})) = -0.5;
  a(QutritState::index_of({2, 1, 0})) = 0.5;
  return {3, std::move(a)};
}

QutritState encode_logical(Complex a, Complex b, bool* normalized_input) {
  double nrm = std::sqrt(std::norm(a) + std::norm(b));
  if (nrm <= 0.0)
    throw std::invalid_argument("encode_logical: zero coefficients");
  if (normalized_input) *normalized_input = std::abs(nrm - 1.0) < 1e-12;
  Eigen::VectorXcd v =
      (a / nrm) * logical_zero().amps() + (b / nrm) * logical_one().amps();
  return {3, std::move(v)};
}

QutritState singlet3() {
  const double w = 1.0 / std::sqrt(6.0);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(27);
  a(QutritState::index_of({0, 1, 2})) = w;
  a(QutritState::index_of({1, 2, 0})) = w;
  a(QutritState::index_of({2, 0, 1})) = w;
  a(QutritState::index_of({1, 0, 2})) = -w;
  a(QutritState::index_of({0, 2, 1})) = -w;
  a(QutritState::index_of({2, 1, 0})) = -w;
  return {3, std::move(a)};
}

QutritState maxent2() {
  const double w = 1.0 / std::sqrt(3.0);
  Eigen::VectorXcd a = Eigen::VectorXcd::Zero(9);
  a(0) = w;  // |00⟩
  a(4) = w;  // |11⟩
  a(8) = w;  // |22⟩
  return {2, std::move(a)};
}

double fidelity(const QutritState& a, const QutritState& b) {
  if (a.n() != b.n())
    throw std::invalid_argument("fidelity: qutrit count mismatch");
  return std::norm(a.amps().dot(b.amps()));
}

bool phase_invariant_equal(const QutritState& a, const QutritState& b,
                           double tol) {
  if (a.n() != b.n()) return false;
  double na = a.norm(), nb = b.norm();
  if (na <= 0.0 || nb <= 0.0) return false;
  return fidelity(a.normalized(), b.normalized()) >= 1.0 - tol;
}

}  // namespace occt
