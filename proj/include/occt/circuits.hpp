// Circuits: down-conversion sources, ordered element chains, detector
// declarations and coincidence post-selection, plus named builders for
// every setup treated in this project.
//
// A source emits the photon pair (H_i V_j + e^{iα} V_i H_j)/√2 into its
// two paths; an optional wave plate on one arm swaps that arm's
// polarizations at emission, which turns the α = 0 pair into
// (H_i H_j + V_i V_j)/√2.
//
// Detectors are declared as named groups of modes. Several distinct
// output paths may feed one physical detector (the logical-state
// arrangements route each photon to its own port on a shared detector),
// so a coincidence count for a detector is the total occupation over its
// member modes. Discard modes never count.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "occt/elements.hpp"
#include "occt/fock.hpp"
#include "occt/qutrit.hpp"

namespace occt {

struct Source {
  std::string id;
  int path_i = 0;
  int path_j = 0;
  double alpha = 0.0;
  int xplate_path = 0;  // 0 = none; otherwise must be path_i or path_j
};

struct DetectorGroup {
  std::string name;
  // Member (path, pol); nullopt pol means both polarizations at the path.
  std::vector<std::pair<int, std::optional<Pol>>> members;

  bool matches(const Mode& m) const;
};

enum class OthersPolicy { MustBeZero, DontCare };

struct CoincidencePattern {
  std::vector<std::pair<std::string, int>> required;  // group name → count
  OthersPolicy others = OthersPolicy::MustBeZero;
};

struct PostSelectionResult {
  PolyState state;  // normalized; empty when nothing survives
  double success_probability = 0.0;
  PolyState raw_terms;  // surviving monomials, pre-normalization amplitudes
};

struct Circuit {
  std::string name;
  std::string description;
  std::vector<Source> sources;
  std::vector<Element> elements;
  std::vector<DetectorGroup> detectors;
  CoincidencePattern pattern;
  std::map<int, std::string> path_alias;  // rendering only

  std::optional<PairEncoding> encoding;     // present when decoding applies
  std::optional<PolyState> target_fock;     // photon-side reference state
  std::optional<QutritState> target_qutrit; // decoded reference state
  std::string target_name;

  bool lossy() const;
  const DetectorGroup* find_group(const std::string& name) const;

  // Structural checks: element inputs produced upstream, detectors
  // terminal, sources disjoint. Throws ConfigError.
  void validate() const;
};

// Product of the per-source two-photon polynomials.
PolyState emit(const std::vector<Source>& sources);

// emit, then fold the element chain in order.
PolyState run(const Circuit& c);

PostSelectionResult postselect(const PolyState& s,
                               const CoincidencePattern& p,
                               const std::vector<DetectorGroup>& groups);

inline PostSelectionResult postselect(const PolyState& s, const Circuit& c) {
  return postselect(s, c.pattern, c.detectors);
}

// Renders a monomial with the circuit's path aliases, e.g. "b1:V d2:H".
std::string render_monomial(const Circuit& c, const Monomial& m);

Circuit build_ghz4();
Circuit build_ghz6();
Circuit build_cluster6();
Circuit build_logical_zero();
Circuit build_logical_one();
Circuit build_maxent();

const std::vector<std::string>& builtin_circuit_names();
Circuit build_circuit(const std::string& name);  // throws ConfigError

}  // namespace occt
