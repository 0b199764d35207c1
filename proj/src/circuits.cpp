#include "occt/circuits.hpp"

#include <algorithm>
#include <cmath>
#include <set>

namespace occt {

namespace {

constexpr double kInvSqrt2 = 0.70710678118654752440;

Mode src(int path, Pol pol) { return Mode{ModeKind::Source, path, pol}; }
Mode outm(int path, Pol pol) { return Mode{ModeKind::Output, path, pol}; }

Pol flip(Pol p) { return p == Pol::H ? Pol::V : Pol::H; }

}  // namespace

bool DetectorGroup::matches(const Mode& m) const {
  if (m.kind == ModeKind::Discard) return false;
  for (const auto& [path, pol] : members)
    if (m.path == path && (!pol || *pol == m.pol)) return true;
  return false;
}

bool Circuit::lossy() const {
  return std::any_of(elements.begin(), elements.end(),
                     [](const Element& e) { return e.lossy; });
}

const DetectorGroup* Circuit::find_group(const std::string& name) const {
  for (const auto& g : detectors)
    if (g.name == name) return &g;
  return nullptr;
}

void Circuit::validate() const {
  std::set<int> produced;
  for (const auto& s : sources) {
    if (s.path_i == s.path_j)
      throw ConfigError("source " + s.id + ": arms must differ");
    if (!produced.insert(s.path_i).second || !produced.insert(s.path_j).second)
      throw ConfigError("source " + s.id + ": overlapping emit paths");
    if (s.xplate_path != 0 && s.xplate_path != s.path_i &&
        s.xplate_path != s.path_j)
      throw ConfigError("source " + s.id + ": xplate arm is not an emit path");
  }

  std::set<int> ever_consumed;
  for (const auto& e : elements) {
    for (int in : e.input_paths()) {
      if (!produced.count(in))
        throw ConfigError("element " + e.name + ": input path " +
                          std::to_string(in) +
                          " is not produced by any source or prior element");
      produced.erase(in);
      ever_consumed.insert(in);
    }
    for (int out : e.output_paths()) produced.insert(out);
  }

  for (const auto& g : detectors)
    for (const auto& [path, pol] : g.members)
      if (!produced.count(path)) {
        if (ever_consumed.count(path))
          throw ConfigError("detector " + g.name + ": path " +
                            std::to_string(path) +
                            " is consumed by an element");
        throw ConfigError("detector " + g.name + ": path " +
                          std::to_string(path) + " is never produced");
      }

  for (const auto& [name, count] : pattern.required) {
    if (count <= 0)
      throw ConfigError("pattern: count for " + name + " must be positive");
    if (!find_group(name))
      throw ConfigError("pattern: unknown detector " + name);
  }
}

PolyState emit(const std::vector<Source>& sources) {
  std::set<int> seen;
  for (const auto& s : sources) {
    if (!seen.insert(s.path_i).second || !seen.insert(s.path_j).second)
      throw ConfigError("emit: overlapping source paths");
  }
  PolyState state = PolyState::vacuum();
  for (const auto& s : sources) {
    auto arm = [&s](int path, Pol pol) {
      if (s.xplate_path == path) pol = flip(pol);
      return src(path, pol);
    };
    PolyState pair;
    pair.accumulate(Monomial{{arm(s.path_i, Pol::H), arm(s.path_j, Pol::V)}},
                    kInvSqrt2);
    pair.accumulate(Monomial{{arm(s.path_i, Pol::V), arm(s.path_j, Pol::H)}},
                    std::polar(kInvSqrt2, s.alpha));
    state = poly_mul(state, pair);
  }
  return state;
}

PolyState run(const Circuit& c) {
  c.validate();
  PolyState state = emit(c.sources);
  for (const auto& e : c.elements) state = apply(e, state);
  return state;
}

PostSelectionResult postselect(const PolyState& s,
                               const CoincidencePattern& p,
                               const std::vector<DetectorGroup>& groups) {
  PostSelectionResult result;
  std::vector<const DetectorGroup*> req;
  for (const auto& [name, count] : p.required) {
    const DetectorGroup* g = nullptr;
    for (const auto& cand : groups)
      if (cand.name == name) g = &cand;
    if (!g) throw ConfigError("postselect: unknown detector " + name);
    req.push_back(g);
  }

  for (const auto& [mono, coeff] : s.terms()) {
    std::vector<int> counts(req.size(), 0);
    bool stray = false;
    for (const Mode& m : mono.modes()) {
      bool matched = false;
      for (std::size_t k = 0; k < req.size(); ++k) {
        if (req[k]->matches(m)) {
          ++counts[k];
          matched = true;
          break;
        }
      }
      if (!matched) stray = true;
    }
    bool ok = !(stray && p.others == OthersPolicy::MustBeZero);
    for (std::size_t k = 0; ok && k < req.size(); ++k)
      ok = counts[k] == p.required[k].second;
    if (ok) result.raw_terms.accumulate(mono, coeff);
  }

  if (result.raw_terms.empty()) return result;
  result.success_probability = fock_norm_sq(result.raw_terms);
  result.state = normalize_fock(result.raw_terms);
  return result;
}

std::string render_monomial(const Circuit& c, const Monomial& m) {
  if (m.is_vacuum()) return "vac";
  std::string s;
  for (std::size_t i = 0; i < m.modes().size(); ++i) {
    const Mode& mode = m.modes()[i];
    if (i) s += ' ';
    auto it = c.path_alias.find(mode.path);
    s += it != c.path_alias.end() ? it->second : std::to_string(mode.path);
    s += ':';
    s += pol_char(mode.pol);
    if (mode.kind == ModeKind::Discard) s += '!';
  }
  return s;
}

// ---------------------------------------------------------------------------
// Builders. Output paths encode detector letter and feeding photon as
// letter-base + photon (a=10, b=20, …, i=90), e.g. 42 is the d-detector
// port fed by photon 2. Staging paths live in the 100s.

namespace {

DetectorGroup group(std::string name, std::vector<int> paths) {
  DetectorGroup g{std::move(name), {}};
  for (int p : paths) g.members.push_back({p, std::nullopt});
  return g;
}

CoincidencePattern one_each(const std::vector<DetectorGroup>& groups) {
  CoincidencePattern p;
  for (const auto& g : groups) p.required.push_back({g.name, 1});
  p.others = OthersPolicy::MustBeZero;
  return p;
}

PolyState uniform_pol_target(const std::vector<Mode>& mode_order,
                             const std::vector<std::pair<std::string, Complex>>&
                                 terms) {
  // Each term is a polarization word over the detector mode order.
  PolyState t;
  for (const auto& [word, coeff] : terms) {
    std::vector<Mode> modes;
    for (std::size_t k = 0; k < word.size(); ++k) {
      Mode m = mode_order[k];
      m.pol = word[k] == 'H' ? Pol::H : Pol::V;
      modes.push_back(m);
    }
    t.accumulate(Monomial{std::move(modes)}, coeff);
  }
  return t;
}

}  // namespace

Circuit build_ghz4() {
  Circuit c;
  c.name = "ghz4";
  c.description = "four-photon GHZ source: two pair sources and one PBS";
  c.sources = {{"s1", 1, 2, 0.0, 2}, {"s2", 3, 4, 0.0, 4}};
  c.elements = {make_pbs(2, 3, 7, 8)};
  c.detectors = {group("D1", {1}), group("D2", {8}), group("D3", {7}),
                 group("D4", {4})};
  c.pattern = one_each(c.detectors);
  c.path_alias = {{1, "D1"}, {8, "D2"}, {7, "D3"}, {4, "D4"}};
  std::vector<Mode> order = {src(1, Pol::H), outm(8, Pol::H), outm(7, Pol::H),
                             src(4, Pol::H)};
  c.target_fock = uniform_pol_target(
      order, {{"HHHH", kInvSqrt2}, {"VVVV", kInvSqrt2}});
  c.target_name = "ghz4";
  return c;
}

namespace {

Circuit six_photon_base(bool with_hadamard) {
  Circuit c;
  c.sources = {{"s1", 1, 2, 0.0, 2}, {"s2", 3, 4, 0.0, 4},
               {"s3", 5, 6, 0.0, 6}};
  c.elements.push_back(make_pbs(2, 3, 7, 8));
  if (with_hadamard) c.elements.push_back(make_hadamard_plate(4));
  c.elements.push_back(make_pbs(4, 5, 9, 10));
  c.detectors = {group("D1", {1}), group("D2", {8}), group("D3", {7}),
                 group("D4", {10}), group("D5", {9}), group("D6", {6})};
  c.pattern = one_each(c.detectors);
  c.path_alias = {{1, "D1"}, {8, "D2"}, {7, "D3"},
                  {10, "D4"}, {9, "D5"}, {6, "D6"}};
  return c;
}

std::vector<Mode> six_photon_order() {
  return {src(1, Pol::H),   outm(8, Pol::H), outm(7, Pol::H),
          outm(10, Pol::H), outm(9, Pol::H), src(6, Pol::H)};
}

}  // namespace

Circuit build_ghz6() {
  Circuit c = six_photon_base(false);
  c.name = "ghz6";
  c.description = "six-photon GHZ source: three pair sources and two PBSs";
  c.target_fock = uniform_pol_target(
      six_photon_order(), {{"HHHHHH", kInvSqrt2}, {"VVVVVV", kInvSqrt2}});
  c.target_name = "ghz6";
  return c;
}

Circuit build_cluster6() {
  Circuit c = six_photon_base(true);
  c.name = "cluster6";
  c.description = "six-photon cluster source: GHZ layout with a Hadamard "
                  "plate in path 4";
  c.target_fock = uniform_pol_target(six_photon_order(),
                                     {{"HHHHHH", 0.5},
                                      {"HHHVVV", 0.5},
                                      {"VVVHHH", 0.5},
                                      {"VVVVVV", -0.5}});
  c.target_name = "cluster6";
  return c;
}

Circuit build_logical_zero() {
  Circuit c;
  c.name = "logical_zero";
  c.description = "three-pair arrangement post-selecting the encoded "
                  "logical zero on a sixfold coincidence";
  c.sources = {{"s1", 1, 2, 0.0, 0}, {"s2", 3, 4, 0.0, 0},
               {"s3", 5, 6, 0.0, 0}};
  c.elements = {
      // photon 1: split, flip the transmitted branch into the b port
      make_pbs(1, 0, 21, 71),
      make_x_plate(21),
      make_trap(71),
      // photon 3: transmitted branch absorbed, reflected goes to a
      make_pbs(3, 0, 73, 13),
      make_trap(73),
      // photons 5 and 6 split directly onto their ports
      make_pbs(5, 0, 95, 35),
      make_pbs(6, 0, 66, 46),
      // photon 2: flip, split off h, then diagonal split onto d/e
      make_x_plate(2),
      make_pbs(2, 0, 102, 82),
      make_hadamard_plate(102),
      make_pbs(102, 0, 42, 52),
      // photon 4: mirror arrangement with the opposite diagonal sign
      make_x_plate(4),
      make_pbs(4, 0, 84, 104),
      make_hadamard_plate(104),
      make_pbs(104, 0, 44, 54),
  };
  c.detectors = {group("a", {13}),         group("b", {21}),
                 group("c", {35}),         group("d", {42, 44, 46}),
                 group("e", {52, 54}),     group("f", {66})};
  c.pattern = one_each(c.detectors);
  c.path_alias = {{21, "b1"}, {71, "g1"}, {82, "h2"}, {42, "d2"}, {52, "e2"},
                  {73, "g3"}, {13, "a3"}, {84, "h4"}, {44, "d4"}, {54, "e4"},
                  {95, "i5"}, {35, "c5"}, {66, "f6"}, {46, "d6"}};
  PairEncoding enc;
  enc.pairs = {{1, 2}, {3, 4}, {5, 6}};
  enc.path_to_slot = {{21, 1}, {42, 2}, {52, 2}, {13, 3}, {44, 4},
                      {54, 4}, {35, 5}, {46, 6}, {66, 6}};
  c.encoding = enc;
  c.target_qutrit = logical_zero();
  c.target_name = "logical_zero";
  return c;
}

Circuit build_logical_one() {
  Circuit c;
  c.name = "logical_one";
  c.description = "three-pair arrangement post-selecting the encoded "
                  "logical one on a sixfold coincidence";
  c.sources = {{"s1", 1, 2, 0.0, 0}, {"s2", 3, 4, 0.0, 0},
               {"s3", 5, 6, 0.0, 0}};
  c.elements = {
      // photons 1 and 3: 50/50 split toward g, then split a/b
      make_bs(1, 0, 71, 101),
      make_pbs(101, 0, 21, 11),
      make_bs(3, 0, 73, 103),
      make_pbs(103, 0, 23, 13),
      // photon 2: flip, split, 50/50 onto h/d and h/(f−e) branches
      make_x_plate(2),
      make_pbs(2, 0, 102, 112),
      make_bs(102, 0, 82, 42),
      make_bs(112, 0, 82, 113),
      make_hadamard_plate(113),
      make_pbs(113, 0, 62, 52),
      // photon 4: mirror of photon 2
      make_x_plate(4),
      make_pbs(4, 0, 104, 114),
      make_bs(104, 0, 84, 44),
      make_bs(114, 0, 84, 115),
      make_hadamard_plate(115),
      make_pbs(115, 0, 64, 54),
      // photon 5 splits onto i/c
      make_pbs(5, 0, 95, 35),
      // photon 6: transmitted arm diagonally split onto f/e
      make_pbs(6, 0, 116, 46),
      make_hadamard_plate(116),
      make_pbs(116, 0, 66, 56),
  };
  c.detectors = {group("a", {11, 13}),     group("b", {21, 23}),
                 group("c", {35}),         group("d", {42, 44, 46}),
                 group("e", {52, 54, 56}), group("f", {62, 64, 66})};
  c.pattern = one_each(c.detectors);
  c.path_alias = {{71, "g1"}, {21, "b1"}, {11, "a1"}, {73, "g3"}, {23, "b3"},
                  {13, "a3"}, {82, "h2"}, {42, "d2"}, {62, "f2"}, {52, "e2"},
                  {84, "h4"}, {44, "d4"}, {64, "f4"}, {54, "e4"}, {95, "i5"},
                  {35, "c5"}, {46, "d6"}, {66, "f6"}, {56, "e6"}};
  PairEncoding enc;
  enc.pairs = {{1, 2}, {3, 4}, {5, 6}};
  enc.path_to_slot = {{11, 1}, {21, 1}, {42, 2}, {52, 2}, {62, 2},
                      {13, 3}, {23, 3}, {44, 4}, {54, 4}, {64, 4},
                      {35, 5}, {46, 6}, {56, 6}, {66, 6}};
  c.encoding = enc;
  c.target_qutrit = logical_one();
  c.target_name = "logical_one";
  return c;
}

Circuit build_maxent() {
  Circuit c;
  c.name = "maxent";
  c.description = "two-pair arrangement post-selecting the maximally "
                  "entangled two-qutrit state on a fourfold coincidence";
  c.sources = {{"s1", 1, 2, 0.0, 0}, {"s2", 3, 4, 0.0, 0}};
  c.elements = {
      make_pbs(1, 0, 21, 11),
      make_pbs(3, 0, 13, 23),
      make_fig6_gate(2, 32, 42),
      make_fig6_gate(4, 44, 34),
  };
  c.detectors = {group("a", {11, 13}), group("b", {21, 23}),
                 group("c", {32, 34}), group("d", {42, 44})};
  c.pattern = one_each(c.detectors);
  c.path_alias = {{21, "b1"},  {11, "a1"},  {13, "a3"},  {23, "b3"},
                  {32, "c2"},  {42, "d2"},  {44, "d4"},  {34, "c4"},
                  {602, "f2"}, {502, "e2"}, {604, "h4"}, {504, "g4"}};
  PairEncoding enc;
  enc.pairs = {{1, 2}, {3, 4}};
  enc.path_to_slot = {{11, 1}, {21, 1}, {32, 2}, {42, 2},
                      {13, 3}, {23, 3}, {34, 4}, {44, 4}};
  c.encoding = enc;
  c.target_qutrit = maxent2();
  c.target_name = "maxent";
  return c;
}

const std::vector<std::string>& builtin_circuit_names() {
  static const std::vector<std::string> names = {
      "ghz4", "ghz6", "cluster6", "logical_zero", "logical_one", "maxent"};
  return names;
}

Circuit build_circuit(const std::string& name) {
  if (name == "ghz4") return build_ghz4();
  if (name == "ghz6") return build_ghz6();
  if (name == "cluster6") return build_cluster6();
  if (name == "logical_zero") return build_logical_zero();
  if (name == "logical_one") return build_logical_one();
  if (name == "maxent") return build_maxent();
  throw ConfigError("unknown builtin circuit: " + name);
}

}  // namespace occt
