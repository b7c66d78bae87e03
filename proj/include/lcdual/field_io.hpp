#pragma once

// Text serialization of polar fields: one JSON header line
//   {"schema":"lc-field/1","chart":"u-plane","layout":"cell-centered",
//    "n_r":...,"n_theta":...,"r_max":...,"encoding":"csv"}
// followed by n_r * n_theta lines "re,im" in radius-major order, 17
// significant digits.

#include <iosfwd>
#include <string>

#include "lcdual/field.hpp"

namespace lcdual::io {

inline constexpr const char* kFieldSchema = "lc-field/1";

void write_field(std::ostream& os, const Field2D& field);
Field2D read_field(std::istream& is);

void write_field_file(const std::string& path, const Field2D& field);
Field2D read_field_file(const std::string& path);

}  // namespace lcdual::io
