#pragma once

#include <iosfwd>
#include <string>

#include "xorbid/solver/lp.hpp"

namespace xorbid::solver {

// Debug dump in the common LP text format (objective, subject-to rows,
// bounds, binary/general sections) for cross-checking with external solvers.
// Columns are named x0..x{n-1}, rows c0..c{m-1}.
void write_lp_format(const LinearProgram& lp, std::ostream& out);
void write_lp_format(const MixedIntegerProgram& mip, std::ostream& out);

std::string to_lp_format(const LinearProgram& lp);
std::string to_lp_format(const MixedIntegerProgram& mip);

}  // namespace xorbid::solver
