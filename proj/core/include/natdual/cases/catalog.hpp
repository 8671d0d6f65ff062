#pragma once

#include <string>
#include <vector>

#include "natdual/algebra.hpp"
#include "natdual/duality.hpp"

namespace natdual::cases {

// One ternary operation "m".
Signature median_signature();
// Two-element majority algebra on {0,1}.
FiniteAlgebra median_two();
// ⟨{0,1}; 0, 1, ≤, •⟩ with • the negation.
AlterEgo median_ego();
// 2^k as a median algebra, labels are bit strings.
FiniteAlgebra median_power(int k);

// meet, join, 0, 1.
Signature dl_signature();
FiniteAlgebra dl_two();
// ⟨{0,1}; ≤⟩ without constants.
AlterEgo dl_ego();
// Down-set lattice of the poset on {0..n-1} given by `less` (i < j pairs,
// transitively closed). Labels list the down-set members.
FiniteAlgebra down_set_lattice(int n, const std::vector<std::pair<int, int>>& less);

struct SuiteEntry {
  std::string name;
  FiniteAlgebra algebra;
};

// Subalgebras of 2² and 2³, one per isomorphism type.
std::vector<SuiteEntry> median_suite();
// Bounded distributive lattices with at most `max_size` elements, one per
// isomorphism type, built as down-set lattices of posets.
std::vector<SuiteEntry> dl_suite(int max_size = 6);

}  // namespace natdual::cases
