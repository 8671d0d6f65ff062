#pragma once

#include <string>
#include <string_view>

#include "natdual/algebra.hpp"
#include "natdual/duality.hpp"
#include "natdual/structure.hpp"

namespace natdual::io {

// JSON documents. Syntax errors report "source:line:column", validation
// errors the path of the offending field, e.g. "tables.m[1][0][1]".
//
// Algebra:   {"signature": [{"name", "arity"}], "size", "tables": {name: nested
//             arrays, a scalar for constants}, "labels"?}
// Structure: {"size", "relations": [{"name", "arity", "tuples"}],
//             "operations": [{"name", "arity", "table"}],
//             "partial_operations": [{"name", "arity", "domain", "table"}],
//             "constants": [{"name", "value"}], "labels"?}
// Alter ego: {"algebra": <algebra>, "structure": <structure>}
FiniteAlgebra parse_algebra(std::string_view text, std::string_view source = "<input>");
FiniteStructure parse_structure(std::string_view text, std::string_view source = "<input>");
AlterEgo parse_ego(std::string_view text, std::string_view source = "<input>");

std::string emit_algebra(const FiniteAlgebra& a);
std::string emit_structure(const FiniteStructure& s);
std::string emit_ego(const AlterEgo& ego);

enum class DocumentKind { Algebra, Structure, Ego };
DocumentKind detect_kind(std::string_view text, std::string_view source = "<input>");

// Throws Error if the file cannot be read.
std::string read_file(const std::string& path);

}  // namespace natdual::io
