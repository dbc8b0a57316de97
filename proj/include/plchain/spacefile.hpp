#pragma once

#include <iosfwd>
#include <string>

#include "plchain/corpus.hpp"

namespace plchain {

// Line-oriented space description. Sections start with a keyword line:
//   vertices <label>...          (optional; fixes the vertex order)
//   facets                       (one facet per line, labels)
//   skeleton <i>                 (simplices of X^i, one per line)
//   orientation                  (+|- <v0> <v1> ... per top simplex; optional)
//   chain <name> <degree>        (<coeff> <v0> <v1> ... per line)
//   perversity <name>            (codim <c> <value> | stratum <dim> <idx> <value>)
// '#' starts a comment. Whitespace separated, bit-exact round trips.
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_, const std::string& what) : std::runtime_error(what), line(line_) {}
};

Space parse_space(std::istream& in);
Space parse_space_file(const std::string& path);
void print_space(std::ostream& out, const Space& sp);
std::string print_space(const Space& sp);

}  // namespace plchain
