#pragma once

// Text format for one graded module:
//
//   # comment
//   module
//   p 32003
//   r 2
//   degree 0 3          one line per degree of the window, dimension may be 0
//   degree 1 1
//   action 0 0          x_0 : M_0 -> M_1, followed by dim M_1 rows of dim M_0 entries
//   1 0 0
//
// Omitted action records are zero. Entries are integers reduced mod p.

#include <iosfwd>
#include <string>

#include "extalg/module.hpp"

namespace extalg::cli {

// Throws Error(invalid_input) naming the line on malformed text or on a
// module that fails validation.
GradedModule parse_module(const std::string& text, const std::string& source = "<input>");
GradedModule read_module_file(const std::string& path);

// Canonical form: degrees ascending, nonzero actions ordered by degree then variable.
std::string serialize_module(const GradedModule& m);
void write_module_file(const std::string& path, const GradedModule& m);

}  // namespace extalg::cli
