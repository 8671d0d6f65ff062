#pragma once

#include <optional>
#include <vector>

#include "natdual/algebra.hpp"
#include "natdual/structure.hpp"

namespace natdual {

// Certified isomorphism search. A returned map is a bijection that commutes
// with every table (algebras) or preserves all structure in both directions
// (structures); callers can re-verify it independently.
std::optional<std::vector<Elem>> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b);
std::optional<std::vector<Elem>> find_isomorphism(const FiniteStructure& x, const FiniteStructure& y);

bool is_algebra_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<Elem>& map);
bool is_structure_isomorphism(const FiniteStructure& x, const FiniteStructure& y, const std::vector<Elem>& map);

}  // namespace natdual
