// Optical elements as linear creation-operator substitutions.
//
// An element maps each consumed input mode to a combination of output
// modes, â†_in → Σ_k c_k â†_out_k ; modes it does not mention pass through
// unchanged. Applying an element to a polynomial substitutes every
// creation operator of every monomial simultaneously and re-expands the
// product, so in-place path reuse (x/hadamard/phase acting on their own
// path) is safe.
//
// Conventions:
//   PBS     transmits H, reflects V; reflection phase +1 (configurable).
//   BS      polarization-preserving 50/50, real convention
//           in1 → (out1 + out2)/√2, in2 → (out1 − out2)/√2
//           (the i-on-reflection convention is available behind a flag).
//   Loss    is routed into explicit discard-kind modes, never modeled as
//           norm reduction.

#pragma once

#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "occt/fock.hpp"

namespace occt {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Input side of a substitution rule: elements act on (path, polarization);
// the mode kind is resolved when the rule fires.
struct PathPol {
  int path = 0;
  Pol pol = Pol::H;
  auto operator<=>(const PathPol&) const = default;
};

struct ModeSubstitution {
  // Each input appears at most once; untouched modes pass through.
  std::map<PathPol, std::vector<std::pair<Mode, Complex>>> rules;
};

struct Element {
  std::string name;
  ModeSubstitution substitution;
  bool lossy = false;  // true when some amplitude routes to a discard mode

  // Constructor ports and scalar parameter, kept for serialization.
  std::vector<int> ports;
  double param = 0.0;

  std::vector<int> input_paths() const;
  std::vector<int> output_paths() const;  // excludes discard paths
};

enum class BsConvention { Real, Imag };

// Polarizing beam splitter between two crossing paths:
//   H@in1 → H@out_t,  V@in1 → V@out_r,
//   H@in2 → H@out_r,  V@in2 → V@out_t.
// Pass 0 for an unused input port. Throws ConfigError on duplicate paths.
Element make_pbs(int in1, int in2, int out_t, int out_r,
                 Complex reflection_phase = 1.0);

// Unpolarized 50/50 beam splitter; same vacuum-port and duplicate-path
// handling as make_pbs.
Element make_bs(int in1, int in2, int out1, int out2,
                BsConvention convention = BsConvention::Real);

// Half-wave plate at 45°: H ↔ V on the given path.
Element make_x_plate(int path);

// Half-wave plate at 22.5°: H → (H+V)/√2, V → (H−V)/√2.
Element make_hadamard_plate(int path);

// Phase shifter: both polarizations scaled by e^{iφ}.
Element make_phase(int path, double phi);

// Opaque block: both polarizations routed to discard modes on the same
// path label.
Element make_trap(int path);

// Composite lossy polarization gate with two detector-bound outputs:
//   H@in → ( H@out_a + V@out_b )/2 + loss of squared weight 1/2,
//   V@in → ( H@out_a )/2          + loss of squared weight 3/4.
// Loss is carried by discard modes on auto-derived paths 600+in (H and V)
// and 500+in (V, weight √2/2).
Element make_fig6_gate(int in, int out_a, int out_b);

// Substitutes every creation operator and re-collects. Throws ConfigError
// if a rule would consume a discard-kind mode.
PolyState apply(const Element& e, const PolyState& s);

struct UnitarityReport {
  bool unitary = false;
  double max_deviation = 0.0;  // ‖S†S − I‖_max over the rule columns
};

UnitarityReport check_unitary(const Element& e);

}  // namespace occt
