#pragma once

#include <iosfwd>
#include <optional>
#include <vector>

#include "cgl/shape.hpp"

namespace cgl::io {

// CSV dump with header "i,j,value", 1-based indices, RFC-4180 line endings.
void write_field_csv(std::ostream& os, const Matrix& m);

// Compact binary field: 16-byte header (8-byte magic "CGLFLD01", u32 rows,
// u32 cols, little-endian) followed by row-major float64 values.
void write_field_binary(std::ostream& os, const Matrix& m);
Matrix read_field_binary(std::istream& is);

// Level-set CSV with header "theta,s,t,g".
void write_level_set_csv(std::ostream& os, const std::vector<LevelSetPoint>& pts);

// SVG 1.1 polyline in a 1000x1000 viewport with axes; cone rays s/t = c1, c2
// are drawn when finite and nonzero.
void write_level_set_svg(std::ostream& os, const std::vector<LevelSetPoint>& pts,
                         const std::optional<ConeReport>& cone);

}  // namespace cgl::io
