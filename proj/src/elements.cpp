#include "occt/elements.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace occt {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

void require_distinct(std::initializer_list<int> paths, const char* what) {
  std::set<int> seen;
  for (int p : paths) {
    if (p == 0) continue;  // vacuum port
    if (!seen.insert(p).second)
      throw ConfigError(std::string(what) + ": duplicate path " +
                        std::to_string(p));
  }
}

Mode out(int path, Pol pol) { return Mode{ModeKind::Output, path, pol}; }
Mode disc(int path, Pol pol) { return Mode{ModeKind::Discard, path, pol}; }

}  // namespace

std::vector<int> Element::input_paths() const {
  std::vector<int> v;
  for (const auto& [in, _] : substitution.rules)
    if (v.empty() || v.back() != in.path) v.push_back(in.path);
  return v;
}

std::vector<int> Element::output_paths() const {
  std::set<int> s;
  for (const auto& [in, outs] : substitution.rules)
    for (const auto& [m, c] : outs)
      if (m.kind != ModeKind::Discard) s.insert(m.path);
  return {s.begin(), s.end()};
}

Element make_pbs(int in1, int in2, int out_t, int out_r,
                 Complex reflection_phase) {
  require_distinct({in1, in2, out_t, out_r}, "pbs");
  Element e;
  e.name = "pbs";
  e.ports = {in1, in2, out_t, out_r};
  auto& r = e.substitution.rules;
  if (in1 != 0) {
    r[{in1, Pol::H}] = {{out(out_t, Pol::H), 1.0}};
    r[{in1, Pol::V}] = {{out(out_r, Pol::V), reflection_phase}};
  }
  if (in2 != 0) {
    r[{in2, Pol::H}] = {{out(out_r, Pol::H), 1.0}};
    r[{in2, Pol::V}] = {{out(out_t, Pol::V), reflection_phase}};
  }
  return e;
}

Element make_bs(int in1, int in2, int out1, int out2,
                BsConvention convention) {
  require_distinct({in1, in2, out1, out2}, "bs");
  Element e;
  e.name = "bs";
  e.ports = {in1, in2, out1, out2};
  auto& r = e.substitution.rules;
  // Real convention: the second-port branch onto out2 carries the minus
  // sign. Imag convention: reflections carry i instead.
  const bool real = convention == BsConvention::Real;
  const Complex i{0.0, 1.0};
  const Complex t{kInvSqrt2};
  const Complex c12 = real ? t : i * kInvSqrt2;   // in1 → out2
  const Complex c21 = real ? t : i * kInvSqrt2;   // in2 → out1
  const Complex c22 = real ? -t : t;              // in2 → out2
  for (Pol pol : {Pol::H, Pol::V}) {
    if (in1 != 0) r[{in1, pol}] = {{out(out1, pol), t}, {out(out2, pol), c12}};
    if (in2 != 0)
      r[{in2, pol}] = {{out(out1, pol), c21}, {out(out2, pol), c22}};
  }
  return e;
}

Element make_x_plate(int path) {
  Element e;
  e.name = "x";
  e.ports = {path};
  e.substitution.rules[{path, Pol::H}] = {{out(path, Pol::V), 1.0}};
  e.substitution.rules[{path, Pol::V}] = {{out(path, Pol::H), 1.0}};
  return e;
}

Element make_hadamard_plate(int path) {
  Element e;
  e.name = "hadamard";
  e.ports = {path};
  e.substitution.rules[{path, Pol::H}] = {{out(path, Pol::H), kInvSqrt2},
                                          {out(path, Pol::V), kInvSqrt2}};
  e.substitution.rules[{path, Pol::V}] = {{out(path, Pol::H), kInvSqrt2},
                                          {out(path, Pol::V), -kInvSqrt2}};
  return e;
}

Element make_phase(int path, double phi) {
  Element e;
  e.name = "phase";
  e.ports = {path};
  e.param = phi;
  Complex f = std::polar(1.0, phi);
  e.substitution.rules[{path, Pol::H}] = {{out(path, Pol::H), f}};
  e.substitution.rules[{path, Pol::V}] = {{out(path, Pol::V), f}};
  return e;
}

Element make_trap(int path) {
  Element e;
  e.name = "trap";
  e.ports = {path};
  e.lossy = true;
  e.substitution.rules[{path, Pol::H}] = {{disc(path, Pol::H), 1.0}};
  e.substitution.rules[{path, Pol::V}] = {{disc(path, Pol::V), 1.0}};
  return e;
}

Element make_fig6_gate(int in, int out_a, int out_b) {
  require_distinct({in, out_a, out_b}, "fig6gate");
  Element e;
  e.name = "fig6gate";
  e.ports = {in, out_a, out_b};
  e.lossy = true;
  const int loss_hv = 600 + in;  // carries both polarizations
  const int loss_v = 500 + in;   // carries the √2/2 vertical component
  e.substitution.rules[{in, Pol::H}] = {{out(out_a, Pol::H), 0.5},
                                        {out(out_b, Pol::V), 0.5},
                                        {disc(loss_hv, Pol::V), 0.5},
                                        {disc(loss_hv, Pol::H), 0.5}};
  e.substitution.rules[{in, Pol::V}] = {{out(out_a, Pol::H), 0.5},
                                        {disc(loss_hv, Pol::H), 0.5},
                                        {disc(loss_v, Pol::V), 2.0 * kInvSqrt2 * 0.5}};
  return e;
}

PolyState apply(const Element& e, const PolyState& s) {
  const auto& rules = e.substitution.rules;
  PolyState result;

  for (const auto& [mono, coeff] : s.terms()) {
    const auto& modes = mono.modes();
    // One option list per photon; untouched photons keep their mode.
    std::vector<std::vector<std::pair<Mode, Complex>>> slots;
    slots.reserve(modes.size());
    for (const Mode& m : modes) {
      auto it = rules.find({m.path, m.pol});
      if (it == rules.end()) {
        slots.push_back({{m, 1.0}});
        continue;
      }
      if (m.kind == ModeKind::Discard)
        throw ConfigError("apply: element '" + e.name +
                          "' consumes discard mode " + to_string(m));
      slots.push_back(it->second);
    }
    // Distributive expansion over the slot choices.
    std::vector<std::size_t> idx(slots.size(), 0);
    while (true) {
      Complex c = coeff;
      std::vector<Mode> picked;
      picked.reserve(slots.size());
      for (std::size_t k = 0; k < slots.size(); ++k) {
        picked.push_back(slots[k][idx[k]].first);
        c *= slots[k][idx[k]].second;
      }
      result.accumulate(Monomial{std::move(picked)}, c);
      std::size_t k = 0;
      for (; k < slots.size(); ++k) {
        if (++idx[k] < slots[k].size()) break;
        idx[k] = 0;
      }
      if (k == slots.size()) break;
    }
  }
  return result;
}

UnitarityReport check_unitary(const Element& e) {
  // Gram matrix of the rule columns: S†S over consumed inputs must be I
  // for an isometry (square unitary when outputs span the same space).
  const auto& rules = e.substitution.rules;
  std::vector<const std::vector<std::pair<Mode, Complex>>*> cols;
  for (const auto& [in, outs] : rules) cols.push_back(&outs);

  auto dot = [](const std::vector<std::pair<Mode, Complex>>& a,
                const std::vector<std::pair<Mode, Complex>>& b) {
    Complex acc = 0.0;
    for (const auto& [ma, ca] : a)
      for (const auto& [mb, cb] : b)
        if (ma == mb) acc += std::conj(ca) * cb;
    return acc;
  };

  double max_dev = 0.0;
  for (std::size_t i = 0; i < cols.size(); ++i) {
    for (std::size_t j = 0; j < cols.size(); ++j) {
      Complex g = dot(*cols[i], *cols[j]);
      double target = i == j ? 1.0 : 0.0;
      max_dev = std::max(max_dev, std::abs(g - target));
    }
  }
  return {max_dev < 1e-12, max_dev};
}

}  // namespace occt
