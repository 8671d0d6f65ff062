#include "natdual/iso.hpp"

#include <algorithm>
#include <map>

#include "search.hpp"

namespace natdual {

namespace {

using Invariant = std::vector<long>;

// Per-element invariants for algebras: how often the element occurs as a
// value of each table, and whether it is idempotent for each operation.
std::vector<Invariant> algebra_invariants(const FiniteAlgebra& a) {
  const auto n = static_cast<std::size_t>(a.size());
  std::vector<Invariant> inv(n);
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    int k = a.signature()[op].arity;
    std::vector<long> hits(n, 0);
    for (Elem v : a.table(op)) ++hits[static_cast<std::size_t>(v)];
    for (std::size_t e = 0; e < n; ++e) {
      inv[e].push_back(hits[e]);
      Tuple diag(static_cast<std::size_t>(k), static_cast<Elem>(e));
      inv[e].push_back(k == 0 ? 0 : static_cast<long>(a.apply(op, diag) == static_cast<Elem>(e)));
    }
  }
  return inv;
}

// Degree of each element at each position of each relation, plus membership
// in the domain/value sets of the (partial) operations and constants.
std::vector<Invariant> structure_invariants(const FiniteStructure& x) {
  const auto n = static_cast<std::size_t>(x.size());
  std::vector<Invariant> inv(n);
  const auto& sig = x.signature();
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    int k = sig.relations()[r].arity;
    std::vector<std::vector<long>> deg(n, std::vector<long>(static_cast<std::size_t>(k) + 1, 0));
    for (const auto& t : x.relation(r)) {
      for (std::size_t i = 0; i < t.size(); ++i) ++deg[static_cast<std::size_t>(t[i])][i];
      if (std::all_of(t.begin(), t.end(), [&](Elem e) { return e == t[0]; })) ++deg[static_cast<std::size_t>(t[0])][static_cast<std::size_t>(k)];
    }
    for (std::size_t e = 0; e < n; ++e) inv[e].insert(inv[e].end(), deg[e].begin(), deg[e].end());
  }
  auto value_hits = [&](const std::vector<Elem>& table) {
    std::vector<long> hits(n, 0);
    for (Elem v : table)
      if (v >= 0) ++hits[static_cast<std::size_t>(v)];
    for (std::size_t e = 0; e < n; ++e) inv[e].push_back(hits[e]);
  };
  for (const auto& t : x.operations()) value_hits(t);
  for (const auto& t : x.partial_operations()) value_hits(t);
  for (std::size_t e = 0; e < n; ++e)
    for (Elem c : x.constants()) inv[e].push_back(static_cast<long>(c == static_cast<Elem>(e)));
  return inv;
}

std::optional<std::vector<std::vector<Elem>>> candidates_from(const std::vector<Invariant>& left,
                                                              const std::vector<Invariant>& right) {
  std::vector<Invariant> l = left;
  std::vector<Invariant> r = right;
  std::sort(l.begin(), l.end());
  std::sort(r.begin(), r.end());
  if (l != r) return std::nullopt;
  std::vector<std::vector<Elem>> cand(left.size());
  for (std::size_t a = 0; a < left.size(); ++a)
    for (std::size_t b = 0; b < right.size(); ++b)
      if (left[a] == right[b]) cand[a].push_back(static_cast<Elem>(b));
  return cand;
}

}  // namespace

bool is_algebra_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b, const std::vector<Elem>& map) {
  if (a.size() != b.size()) return false;
  std::vector<char> hit(static_cast<std::size_t>(b.size()), 0);
  for (Elem v : map) {
    if (v < 0 || v >= b.size() || hit[static_cast<std::size_t>(v)]) return false;
    hit[static_cast<std::size_t>(v)] = 1;
  }
  return is_homomorphism(a, b, map);
}

bool is_structure_isomorphism(const FiniteStructure& x, const FiniteStructure& y, const std::vector<Elem>& map) {
  if (x.size() != y.size() || map.size() != static_cast<std::size_t>(x.size())) return false;
  std::vector<Elem> inverse(static_cast<std::size_t>(y.size()), -1);
  for (std::size_t i = 0; i < map.size(); ++i) {
    Elem v = map[i];
    if (v < 0 || v >= y.size() || inverse[static_cast<std::size_t>(v)] >= 0) return false;
    inverse[static_cast<std::size_t>(v)] = static_cast<Elem>(i);
  }
  return is_struct_morphism(x, y, map) && is_struct_morphism(y, x, inverse);
}

std::optional<std::vector<Elem>> find_isomorphism(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.signature() != b.signature() || a.size() != b.size()) return std::nullopt;
  auto cand = candidates_from(algebra_invariants(a), algebra_invariants(b));
  if (!cand) return std::nullopt;
  detail::SearchProblem p;
  p.n = a.size();
  p.m = b.size();
  p.injective = true;
  p.candidates = std::move(*cand);
  for (std::size_t op = 0; op < a.signature().size(); ++op)
    p.ops.push_back({a.signature()[op].arity, &a.table(op), &b.table(op)});
  std::optional<std::vector<Elem>> found;
  detail::search_assignments(p, [&](const std::vector<Elem>& h) {
    found = h;
    return false;
  });
  return found;
}

std::optional<std::vector<Elem>> find_isomorphism(const FiniteStructure& x, const FiniteStructure& y) {
  if (x.signature() != y.signature() || x.size() != y.size()) return std::nullopt;
  const auto& sig = x.signature();
  for (std::size_t r = 0; r < sig.relations().size(); ++r)
    if (x.relation(r).size() != y.relation(r).size()) return std::nullopt;
  for (std::size_t q = 0; q < sig.partial_operations().size(); ++q) {
    auto defined = [](const std::vector<Elem>& t) { return std::count_if(t.begin(), t.end(), [](Elem v) { return v >= 0; }); };
    if (defined(x.partial_operation(q)) != defined(y.partial_operation(q))) return std::nullopt;
  }
  auto cand = candidates_from(structure_invariants(x), structure_invariants(y));
  if (!cand) return std::nullopt;
  detail::SearchProblem p;
  p.n = x.size();
  p.m = y.size();
  p.injective = true;
  p.candidates = std::move(*cand);
  for (std::size_t o = 0; o < sig.operations().size(); ++o)
    p.ops.push_back({sig.operations()[o].arity, &x.operation(o), &y.operation(o)});
  for (std::size_t q = 0; q < sig.partial_operations().size(); ++q)
    p.ops.push_back({sig.partial_operations()[q].arity, &x.partial_operation(q), &y.partial_operation(q)});
  for (std::size_t r = 0; r < sig.relations().size(); ++r)
    p.rels.push_back({sig.relations()[r].arity, &x.relation(r), &y.relation(r)});
  for (std::size_t c = 0; c < x.constants().size(); ++c) p.forced.emplace_back(x.constants()[c], y.constants()[c]);
  // A bijection preserving equally many tuples forward is an isomorphism;
  // the final check makes that explicit.
  std::optional<std::vector<Elem>> found;
  detail::search_assignments(p, [&](const std::vector<Elem>& h) {
    if (!is_structure_isomorphism(x, y, h)) return true;
    found = h;
    return false;
  });
  return found;
}

}  // namespace natdual
