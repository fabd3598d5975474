#pragma once

#include "skewdiv/int_matrix.hpp"

#include <iosfwd>
#include <string>
#include <vector>

namespace skewdiv {

/// Matrix Market coordinate format, header
/// "%%MatrixMarket matrix coordinate integer general", 1-based indices,
/// nonzero entries in row-major order. Extra comment lines (without the
/// leading '%') document the canonical ordering.
void write_matrix_market(std::ostream& os, const IntMatrix& m,
                         const std::vector<std::string>& comments = {});
IntMatrix read_matrix_market(std::istream& is);

/// Dense CSV: one row per line, decimal entries, comma separated.
void write_csv(std::ostream& os, const IntMatrix& m);
IntMatrix read_csv(std::istream& is);

} // namespace skewdiv
