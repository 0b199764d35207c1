// Line-oriented textual circuit description.
//
//   # comment
//   source <id> paths <i> <j> alpha <float> [xplate <path>]
//   element pbs <in1> <in2> -> <outT> <outR>     (port 0 = unused)
//   element bs <in1> <in2> -> <out1> <out2>
//   element x <path>
//   element hadamard <path>
//   element phase <path> <float>
//   element trap <path>
//   element fig6gate <path> -> <outA> <outB>
//   alias <name> = <path> [<path> ...]
//   detector <mode-id>        mode-id: <path> | <path>:<H|V> | alias name
//   pattern <mode-id>=<count> ... [others zero|any]
//
// An alias naming several paths declares a detector fed by all of them;
// pattern counts for such a detector sum over the member modes. Every
// diagnostic carries a line and column.

#pragma once

#include <string>

#include "occt/circuits.hpp"

namespace occt {

enum class ParseErrorKind {
  Lexical,           // bad token, number, arity or statement syntax
  UnknownElement,    // element keyword not in the catalog
  DanglingPath,      // referenced path never produced
  DetectorConsumed,  // detector path consumed by an element
  Config,            // structurally invalid circuit
};

class CircuitParseError : public std::runtime_error {
 public:
  CircuitParseError(ParseErrorKind kind, int line, int col,
                    const std::string& message);

  ParseErrorKind kind() const { return kind_; }
  int line() const { return line_; }
  int col() const { return col_; }

 private:
  ParseErrorKind kind_;
  int line_;
  int col_;
};

const char* to_string(ParseErrorKind k);

Circuit parse_circuit(const std::string& text,
                      const std::string& name = "parsed");

std::string serialize_circuit(const Circuit& c);

}  // namespace occt
