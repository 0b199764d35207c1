// JSON report rendering. Reports are the tool's structured output and
// feed golden tests, so floats are printed with 12 significant digits and
// key order is fixed; identical inputs give byte-identical text.

#pragma once

#include <optional>
#include <string>

#include "occt/circuits.hpp"

namespace occt {

struct RunReport {
  std::string circuit;
  double success_probability = 0.0;
  std::vector<std::pair<std::string, Complex>> surviving_terms;
  std::optional<double> fidelity_vs_target;
  std::string target_name;
  std::optional<QutritState> decoded;

  std::string json() const;
  std::string table() const;
};

// Post-selects the evolved state and assembles the report; decodes when
// the circuit declares a pair encoding.
RunReport make_run_report(const Circuit& c, const PolyState& evolved);

inline RunReport make_run_report(const Circuit& c) {
  return make_run_report(c, run(c));
}

}  // namespace occt
