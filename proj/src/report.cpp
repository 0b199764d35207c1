#include "occt/report.hpp"

#include <cstdio>

namespace occt {

namespace {

std::string fmt(double v) {
  if (v == 0.0) v = 0.0;  // normalize -0
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string quote(const std::string& s) {
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') out += '\\';
    out += ch;
  }
  out += '"';
  return out;
}

}  // namespace

RunReport make_run_report(const Circuit& c, const PolyState& evolved) {
  RunReport r;
  r.circuit = c.name;
  r.target_name = c.target_name;

  PostSelectionResult sel = postselect(evolved, c);
  r.success_probability = sel.success_probability;
  for (const auto& [mono, coeff] : sel.state.terms())
    r.surviving_terms.push_back({render_monomial(c, mono), coeff});

  if (!sel.state.empty()) {
    if (c.encoding) {
      QutritState q = decode(sel.state, *c.encoding);
      r.decoded = q;
      if (c.target_qutrit)
        r.fidelity_vs_target = fidelity(q, *c.target_qutrit);
    } else if (c.target_fock) {
      r.fidelity_vs_target = fock_fidelity(sel.state, *c.target_fock);
    }
  }
  return r;
}

std::string RunReport::json() const {
  std::string out = "{\"circuit\":" + quote(circuit);
  out += ",\"surviving_terms\":[";
  bool first = true;
  for (const auto& [mono, amp] : surviving_terms) {
    if (!first) out += ',';
    first = false;
    out += "{\"monomial\":" + quote(mono) + ",\"re\":" + fmt(amp.real()) +
           ",\"im\":" + fmt(amp.imag()) + "}";
  }
  out += "],\"success_probability\":" + fmt(success_probability);
  out += ",\"fidelity_vs_target\":";
  out += fidelity_vs_target ? fmt(*fidelity_vs_target) : "null";
  out += ",\"target_name\":" + quote(target_name);
  if (decoded) out += ",\"decoded_state\":" + decoded->json();
  out += "}";
  return out;
}

std::string RunReport::table() const {
  std::string out = "circuit: " + circuit + "\n";
  out += "success probability: " + fmt(success_probability) + "\n";
  out += "surviving terms (" + std::to_string(surviving_terms.size()) + "):\n";
  for (const auto& [mono, amp] : surviving_terms)
    out += "  " + mono + "   " + fmt(amp.real()) + (amp.imag() < 0 ? " - " : " + ") +
           fmt(std::abs(amp.imag())) + "i\n";
  if (fidelity_vs_target)
    out += "fidelity vs " + target_name + ": " + fmt(*fidelity_vs_target) + "\n";
  return out;
}

}  // namespace occt
