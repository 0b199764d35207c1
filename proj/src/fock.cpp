#include "occt/fock.hpp"

#include <algorithm>
#include <cmath>

namespace occt {

char pol_char(Pol p) { return p == Pol::H ? 'H' : 'V'; }

std::string to_string(const Mode& m) {
  std::string s = std::to_string(m.path);
  s += ':';
  s += pol_char(m.pol);
  if (m.kind == ModeKind::Discard) s += '!';
  return s;
}

Monomial::Monomial(std::vector<Mode> modes) : modes_(std::move(modes)) {
  std::sort(modes_.begin(), modes_.end());
}

Monomial Monomial::product(const Monomial& a, const Monomial& b) {
  Monomial out;
  out.modes_.resize(a.modes_.size() + b.modes_.size());
  std::merge(a.modes_.begin(), a.modes_.end(), b.modes_.begin(),
             b.modes_.end(), out.modes_.begin());
  return out;
}

double Monomial::occupation_factorial() const {
  double f = 1.0;
  std::size_t i = 0;
  while (i < modes_.size()) {
    std::size_t j = i + 1;
    int n = 1;
    while (j < modes_.size() && modes_[j] == modes_[i]) {
      ++n;
      f *= n;
      ++j;
    }
    i = j;
  }
  return f;
}

bool Monomial::contains_kind(ModeKind k) const {
  return std::any_of(modes_.begin(), modes_.end(),
                     [k](const Mode& m) { return m.kind == k; });
}

std::string Monomial::str() const {
  if (modes_.empty()) return "vac";
  std::string s;
  for (std::size_t i = 0; i < modes_.size(); ++i) {
    if (i) s += ' ';
    s += to_string(modes_[i]);
  }
  return s;
}

PolyState PolyState::single(Monomial m, Complex c) {
  PolyState s;
  s.accumulate(m, c);
  return s;
}

void PolyState::accumulate(const Monomial& m, Complex c) {
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) it->second += c;
  if (std::abs(it->second) < kPruneTol) terms_.erase(it);
}

Complex PolyState::coefficient(const Monomial& m) const {
  auto it = terms_.find(m);
  return it == terms_.end() ? Complex{0.0} : it->second;
}

int PolyState::degree() const {
  if (terms_.empty()) return -1;
  int d = terms_.begin()->first.degree();
  for (const auto& [m, c] : terms_)
    if (m.degree() != d) return -1;
  return d;
}

PolyState poly_add(const PolyState& a, const PolyState& b) {
  PolyState out = a;
  for (const auto& [m, c] : b.terms()) out.accumulate(m, c);
  return out;
}

PolyState poly_mul(const PolyState& a, const PolyState& b) {
  PolyState out;
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms())
      out.accumulate(Monomial::product(ma, mb), ca * cb);
  return out;
}

PolyState poly_scale(const PolyState& a, Complex c) {
  PolyState out;
  for (const auto& [m, amp] : a.terms()) out.accumulate(m, amp * c);
  return out;
}

FockAmplitudeMap to_fock_amplitudes(const PolyState& s) {
  FockAmplitudeMap out;
  for (const auto& [m, c] : s.terms())
    out.emplace(m, c * std::sqrt(m.occupation_factorial()));
  return out;
}

double fock_norm_sq(const PolyState& s) {
  double n = 0.0;
  for (const auto& [m, c] : s.terms())
    n += std::norm(c) * m.occupation_factorial();
  return n;
}

Complex fock_inner(const PolyState& a, const PolyState& b) {
  // Iterate over the smaller term map.
  const PolyState& small = a.term_count() <= b.term_count() ? a : b;
  const PolyState& large = a.term_count() <= b.term_count() ? b : a;
  const bool swapped = &small == &b;
  Complex acc = 0.0;
  for (const auto& [m, c] : small.terms()) {
    Complex other = large.coefficient(m);
    if (other == Complex{0.0}) continue;
    Complex ca = swapped ? other : c;
    Complex cb = swapped ? c : other;
    acc += std::conj(ca) * cb * m.occupation_factorial();
  }
  return acc;
}

double fock_fidelity(const PolyState& a, const PolyState& b) {
  double na = fock_norm_sq(a);
  double nb = fock_norm_sq(b);
  if (na <= 0.0 || nb <= 0.0)
    throw std::invalid_argument("fock_fidelity: null state");
  return std::norm(fock_inner(a, b)) / (na * nb);
}

PolyState normalize_fock(const PolyState& s) {
  double n = std::sqrt(fock_norm_sq(s));
  if (n <= 0.0) throw std::invalid_argument("normalize_fock: null state");
  Complex first = s.terms().begin()->second;
  Complex phase = first / std::abs(first);
  return poly_scale(s, std::conj(phase) / n);
}

}  // namespace occt
