#pragma once

// Backtracking search for structure-preserving assignments between two
// finite carriers. Shared by homomorphism, morphism and isomorphism search.

#include <functional>
#include <vector>

#include "natdual/algebra.hpp"

namespace natdual::detail {

// Operation constraint: h(src(t)) = tgt(h(t)). Entries equal to -1 mark
// tuples outside the domain of a partial operation; a defined source entry
// whose image tuple is undefined in the target is a violation.
struct SearchOp {
  int arity = 0;
  const std::vector<Elem>* source = nullptr;
  const std::vector<Elem>* target = nullptr;
};

// Relation constraint: t in source implies h(t) in target (forward only).
struct SearchRel {
  int arity = 0;
  const std::vector<Tuple>* source = nullptr;
  const std::vector<Tuple>* target = nullptr;
};

struct SearchProblem {
  int n = 0;  // source size
  int m = 0;  // target size
  std::vector<SearchOp> ops;
  std::vector<SearchRel> rels;
  std::vector<std::pair<Elem, Elem>> forced;
  bool injective = false;
  // Optional per-source-element candidate lists (ascending); empty means all.
  std::vector<std::vector<Elem>> candidates;
};

// Visits every complete assignment in lexicographic order. The callback
// returns false to stop the search early.
void search_assignments(const SearchProblem& problem,
                        const std::function<bool(const std::vector<Elem>&)>& visit);

}  // namespace natdual::detail
