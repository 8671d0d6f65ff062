#include "natdual/structure.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

#include "natdual/error.hpp"
#include "search.hpp"

namespace natdual {

namespace {

void check_unique(std::set<std::string>& seen, const std::string& name) {
  if (name.empty()) throw InvalidArgument("structure symbol with empty name");
  if (!seen.insert(name).second) throw InvalidArgument("duplicate structure symbol '" + name + "'");
}

std::optional<std::size_t> find_symbol(const std::vector<OpSymbol>& v, std::string_view name) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i].name == name) return i;
  return std::nullopt;
}

bool tuple_in(const std::vector<Tuple>& sorted, const Tuple& t) {
  return std::binary_search(sorted.begin(), sorted.end(), t);
}

}  // namespace

StructureSignature::StructureSignature(std::vector<OpSymbol> relations, std::vector<OpSymbol> operations,
                                       std::vector<OpSymbol> partial_operations, std::vector<std::string> constants)
    : relations_(std::move(relations)),
      operations_(std::move(operations)),
      partial_(std::move(partial_operations)),
      constants_(std::move(constants)) {
  std::set<std::string> seen;
  for (const auto* group : {&relations_, &operations_, &partial_})
    for (const auto& s : *group) {
      check_unique(seen, s.name);
      if (s.arity < 0) throw InvalidArgument("symbol '" + s.name + "' has negative arity");
    }
  for (const auto& c : constants_) check_unique(seen, c);
  for (const auto& r : relations_)
    if (r.arity == 0) throw InvalidArgument("relation '" + r.name + "' must have positive arity");
}

std::optional<std::size_t> StructureSignature::find_relation(std::string_view name) const {
  return find_symbol(relations_, name);
}

std::optional<std::size_t> StructureSignature::find_operation(std::string_view name) const {
  return find_symbol(operations_, name);
}

StructureSignature StructureSignature::without_operation(std::string_view name) const {
  std::vector<OpSymbol> ops;
  for (const auto& o : operations_)
    if (o.name != name) ops.push_back(o);
  return StructureSignature(relations_, std::move(ops), partial_, constants_);
}

FiniteStructure::FiniteStructure(StructureSignature sig, int size, std::vector<std::vector<Tuple>> relations,
                                 std::vector<std::vector<Elem>> operations,
                                 std::vector<std::vector<Elem>> partial_operations, std::vector<Elem> constants,
                                 std::vector<std::string> labels)
    : sig_(std::move(sig)),
      size_(size),
      relations_(std::move(relations)),
      operations_(std::move(operations)),
      partial_(std::move(partial_operations)),
      constants_(std::move(constants)),
      labels_(std::move(labels)) {
  if (size_ < 0) throw InvalidArgument("negative carrier size");
  auto in_range = [&](Elem e) { return e >= 0 && e < size_; };
  const auto n = static_cast<std::size_t>(size_);

  if (relations_.size() != sig_.relations().size()) throw InvalidArgument("relation count does not match signature");
  for (std::size_t r = 0; r < relations_.size(); ++r) {
    const auto& sym = sig_.relations()[r];
    for (const auto& t : relations_[r]) {
      if (t.size() != static_cast<std::size_t>(sym.arity))
        throw InvalidArgument("relation '" + sym.name + "' has a tuple of wrong arity");
      for (Elem e : t)
        if (!in_range(e)) throw InvalidArgument("relation '" + sym.name + "' mentions " + std::to_string(e));
    }
    std::sort(relations_[r].begin(), relations_[r].end());
    relations_[r].erase(std::unique(relations_[r].begin(), relations_[r].end()), relations_[r].end());
  }

  if (operations_.size() != sig_.operations().size()) throw InvalidArgument("operation count does not match signature");
  for (std::size_t o = 0; o < operations_.size(); ++o) {
    const auto& sym = sig_.operations()[o];
    if (operations_[o].size() != ipow(n, sym.arity))
      throw InvalidArgument("operation '" + sym.name + "' table has wrong size");
    for (Elem e : operations_[o])
      if (!in_range(e)) throw InvalidArgument("operation '" + sym.name + "' has value " + std::to_string(e));
  }

  if (partial_.size() != sig_.partial_operations().size())
    throw InvalidArgument("partial operation count does not match signature");
  for (std::size_t p = 0; p < partial_.size(); ++p) {
    const auto& sym = sig_.partial_operations()[p];
    if (partial_[p].size() != ipow(n, sym.arity))
      throw InvalidArgument("partial operation '" + sym.name + "' table has wrong size");
    for (Elem e : partial_[p])
      if (e != -1 && !in_range(e))
        throw InvalidArgument("partial operation '" + sym.name + "' has value " + std::to_string(e));
  }

  if (constants_.size() != sig_.constants().size()) throw InvalidArgument("constant count does not match signature");
  for (std::size_t c = 0; c < constants_.size(); ++c)
    if (!in_range(constants_[c]))
      throw InvalidArgument("constant '" + sig_.constants()[c] + "' outside the carrier");

  if (!labels_.empty() && labels_.size() != n) throw InvalidArgument("label count does not match carrier size");
}

bool FiniteStructure::holds(std::size_t r, std::span<const Elem> t) const {
  return tuple_in(relations_[r], Tuple(t.begin(), t.end()));
}

Elem FiniteStructure::apply(std::size_t o, std::span<const Elem> args) const {
  return operations_[o][tuple_index(args, static_cast<std::size_t>(size_))];
}

Elem FiniteStructure::apply_partial(std::size_t p, std::span<const Elem> args) const {
  return partial_[p][tuple_index(args, static_cast<std::size_t>(size_))];
}

std::string FiniteStructure::label(Elem e) const {
  if (labels_.empty()) return std::to_string(e);
  return labels_[static_cast<std::size_t>(e)];
}

std::optional<Elem> FiniteStructure::find_label(std::string_view label) const {
  for (int e = 0; e < size_; ++e)
    if (this->label(e) == label) return e;
  return std::nullopt;
}

FiniteStructure FiniteStructure::without_operation(std::string_view name) const {
  auto idx = sig_.find_operation(name);
  if (!idx) throw InvalidArgument("no operation named '" + std::string(name) + "'");
  auto ops = operations_;
  ops.erase(ops.begin() + static_cast<std::ptrdiff_t>(*idx));
  return FiniteStructure(sig_.without_operation(name), size_, relations_, std::move(ops), partial_, constants_,
                         labels_);
}

bool PartialMorphism::total() const {
  return std::all_of(map.begin(), map.end(), [](Elem v) { return v >= 0; });
}

bool PartialMorphism::extended_by(std::span<const Elem> x) const {
  if (x.size() != map.size()) return false;
  for (Elem d : domain)
    if (x[static_cast<std::size_t>(d)] != map[static_cast<std::size_t>(d)]) return false;
  return true;
}

bool is_struct_morphism(const FiniteStructure& x, const FiniteStructure& y, std::span<const Elem> map) {
  if (x.signature() != y.signature()) return false;
  if (map.size() != static_cast<std::size_t>(x.size())) return false;
  for (Elem v : map)
    if (v < 0 || v >= y.size()) return false;
  auto img = [&](Elem e) { return map[static_cast<std::size_t>(e)]; };
  for (std::size_t c = 0; c < x.constants().size(); ++c)
    if (img(x.constants()[c]) != y.constants()[c]) return false;
  for (std::size_t r = 0; r < x.relations().size(); ++r)
    for (const auto& t : x.relation(r)) {
      Tuple u(t.size());
      for (std::size_t i = 0; i < t.size(); ++i) u[i] = img(t[i]);
      if (!tuple_in(y.relation(r), u)) return false;
    }
  const auto n = static_cast<std::size_t>(x.size());
  auto check_table = [&](const std::vector<Elem>& src, int arity, auto&& target_value) {
    std::size_t count = ipow(n, arity);
    Tuple u(static_cast<std::size_t>(arity));
    for (std::size_t j = 0; j < count; ++j) {
      if (src[j] < 0) continue;
      Tuple t = tuple_at(j, n, arity);
      for (std::size_t i = 0; i < t.size(); ++i) u[i] = img(t[i]);
      Elem v = target_value(u);
      if (v < 0 || v != img(src[j])) return false;
    }
    return true;
  };
  for (std::size_t o = 0; o < x.operations().size(); ++o)
    if (!check_table(x.operation(o), x.signature().operations()[o].arity,
                     [&](const Tuple& u) { return y.apply(o, u); }))
      return false;
  for (std::size_t p = 0; p < x.partial_operations().size(); ++p)
    if (!check_table(x.partial_operation(p), x.signature().partial_operations()[p].arity,
                     [&](const Tuple& u) { return y.apply_partial(p, u); }))
      return false;
  return true;
}

std::vector<StructMorphism> enumerate_struct_morphisms(const FiniteStructure& x, const FiniteStructure& y,
                                                       const StructureGuard& guard) {
  if (x.signature() != y.signature())
    throw SignatureMismatch("enumerate_struct_morphisms: structure signatures differ");
  detail::SearchProblem p;
  p.n = x.size();
  p.m = y.size();
  const auto& sig = x.signature();
  for (std::size_t o = 0; o < sig.operations().size(); ++o)
    p.ops.push_back({sig.operations()[o].arity, &x.operation(o), &y.operation(o)});
  for (std::size_t q = 0; q < sig.partial_operations().size(); ++q)
    p.ops.push_back({sig.partial_operations()[q].arity, &x.partial_operation(q), &y.partial_operation(q)});
  for (std::size_t r = 0; r < sig.relations().size(); ++r)
    p.rels.push_back({sig.relations()[r].arity, &x.relation(r), &y.relation(r)});
  for (std::size_t c = 0; c < x.constants().size(); ++c) p.forced.emplace_back(x.constants()[c], y.constants()[c]);
  std::vector<StructMorphism> out;
  detail::search_assignments(p, [&](const std::vector<Elem>& h) {
    if (out.size() >= guard.max_results)
      throw GuardExceeded("enumerate_struct_morphisms: more than " + std::to_string(guard.max_results) + " morphisms");
    out.push_back(StructMorphism{h});
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Closure of a member mask under constants and (partial) operations.
std::vector<char> close_mask(const FiniteStructure& x, std::vector<char> in) {
  for (Elem c : x.constants()) in[static_cast<std::size_t>(c)] = 1;
  const auto& sig = x.signature();
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<Elem> members;
    for (int e = 0; e < x.size(); ++e)
      if (in[static_cast<std::size_t>(e)]) members.push_back(e);
    const std::size_t s = members.size();
    auto sweep = [&](int arity, auto&& value) {
      std::size_t count = ipow(s, arity);
      Tuple args(static_cast<std::size_t>(arity));
      for (std::size_t j = 0; j < count; ++j) {
        Tuple pos = tuple_at(j, s, arity);
        for (std::size_t i = 0; i < args.size(); ++i) args[i] = members[static_cast<std::size_t>(pos[i])];
        Elem v = value(args);
        if (v >= 0 && !in[static_cast<std::size_t>(v)]) {
          in[static_cast<std::size_t>(v)] = 1;
          grew = true;
        }
      }
    };
    for (std::size_t o = 0; o < sig.operations().size(); ++o)
      sweep(sig.operations()[o].arity, [&](const Tuple& a) { return x.apply(o, a); });
    for (std::size_t p = 0; p < sig.partial_operations().size(); ++p)
      sweep(sig.partial_operations()[p].arity, [&](const Tuple& a) { return x.apply_partial(p, a); });
  }
  return in;
}

}  // namespace

bool is_closed_subset(const FiniteStructure& x, std::span<const Elem> members) {
  std::vector<char> in(static_cast<std::size_t>(x.size()), 0);
  for (Elem e : members) {
    if (e < 0 || e >= x.size()) return false;
    in[static_cast<std::size_t>(e)] = 1;
  }
  return close_mask(x, in) == in;
}

Substructure induced_substructure(const FiniteStructure& x, std::span<const Elem> members) {
  std::vector<Elem> inc(members.begin(), members.end());
  std::sort(inc.begin(), inc.end());
  inc.erase(std::unique(inc.begin(), inc.end()), inc.end());
  if (!is_closed_subset(x, inc)) throw InvalidArgument("induced_substructure: subset is not closed");
  std::vector<Elem> index(static_cast<std::size_t>(x.size()), -1);
  for (std::size_t i = 0; i < inc.size(); ++i) index[static_cast<std::size_t>(inc[i])] = static_cast<Elem>(i);
  const auto s = inc.size();
  const auto& sig = x.signature();

  std::vector<std::vector<Tuple>> rels;
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    std::vector<Tuple> kept;
    for (const auto& t : x.relation(r)) {
      Tuple u;
      bool inside = true;
      for (Elem e : t) {
        Elem i = index[static_cast<std::size_t>(e)];
        if (i < 0) {
          inside = false;
          break;
        }
        u.push_back(i);
      }
      if (inside) kept.push_back(std::move(u));
    }
    rels.push_back(std::move(kept));
  }
  auto restrict_table = [&](int arity, auto&& value) {
    std::size_t count = ipow(s, arity);
    std::vector<Elem> table(count);
    Tuple args(static_cast<std::size_t>(arity));
    for (std::size_t j = 0; j < count; ++j) {
      Tuple pos = tuple_at(j, s, arity);
      for (std::size_t i = 0; i < args.size(); ++i) args[i] = inc[static_cast<std::size_t>(pos[i])];
      Elem v = value(args);
      table[j] = v < 0 ? -1 : index[static_cast<std::size_t>(v)];
    }
    return table;
  };
  std::vector<std::vector<Elem>> ops;
  for (std::size_t o = 0; o < sig.operations().size(); ++o)
    ops.push_back(restrict_table(sig.operations()[o].arity, [&](const Tuple& a) { return x.apply(o, a); }));
  std::vector<std::vector<Elem>> partial;
  for (std::size_t p = 0; p < sig.partial_operations().size(); ++p)
    partial.push_back(
        restrict_table(sig.partial_operations()[p].arity, [&](const Tuple& a) { return x.apply_partial(p, a); }));
  std::vector<Elem> consts;
  for (Elem c : x.constants()) consts.push_back(index[static_cast<std::size_t>(c)]);
  std::vector<std::string> labels;
  if (x.has_labels())
    for (Elem e : inc) labels.push_back(x.label(e));
  return Substructure{FiniteStructure(sig, static_cast<int>(s), std::move(rels), std::move(ops), std::move(partial),
                                      std::move(consts), std::move(labels)),
                      std::move(inc)};
}

std::vector<std::vector<Elem>> closed_substructures(const FiniteStructure& x, const StructureGuard& guard) {
  const int n = x.size();
  if (n > guard.max_closed_subsets_carrier)
    throw GuardExceeded("closed_substructures: carrier size " + std::to_string(n) + " exceeds guard " +
                        std::to_string(guard.max_closed_subsets_carrier));
  // Ganter's NextClosure: every closed set exactly once, in lectic order.
  auto close = [&](const std::vector<char>& in) { return close_mask(x, in); };
  std::vector<std::vector<char>> found;
  std::vector<char> a = close(std::vector<char>(static_cast<std::size_t>(n), 0));
  found.push_back(a);
  while (true) {
    bool advanced = false;
    for (int i = n - 1; i >= 0; --i) {
      if (a[static_cast<std::size_t>(i)]) continue;
      std::vector<char> seed(static_cast<std::size_t>(n), 0);
      for (int j = 0; j < i; ++j) seed[static_cast<std::size_t>(j)] = a[static_cast<std::size_t>(j)];
      seed[static_cast<std::size_t>(i)] = 1;
      std::vector<char> b = close(seed);
      bool same_prefix = true;
      for (int j = 0; j < i; ++j)
        if (b[static_cast<std::size_t>(j)] != a[static_cast<std::size_t>(j)]) same_prefix = false;
      if (!same_prefix) continue;
      a = std::move(b);
      found.push_back(a);
      if (found.size() > guard.max_results) throw GuardExceeded("closed_substructures: too many closed subsets");
      advanced = true;
      break;
    }
    if (!advanced) break;
  }
  std::vector<std::vector<Elem>> out;
  for (const auto& mask : found) {
    std::vector<Elem> members;
    for (int e = 0; e < n; ++e)
      if (mask[static_cast<std::size_t>(e)]) members.push_back(e);
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) {
    if (l.size() != r.size()) return l.size() < r.size();
    return l < r;
  });
  return out;
}

std::vector<PartialMorphism> enumerate_partial_morphisms(const FiniteStructure& x, const FiniteStructure& y,
                                                         const StructureGuard& guard) {
  if (x.signature() != y.signature())
    throw SignatureMismatch("enumerate_partial_morphisms: structure signatures differ");
  std::vector<PartialMorphism> out;
  for (const auto& dom : closed_substructures(x, guard)) {
    Substructure sub = induced_substructure(x, dom);
    for (const auto& m : enumerate_struct_morphisms(sub.structure, y, guard)) {
      PartialMorphism f;
      f.domain = dom;
      f.map.assign(static_cast<std::size_t>(x.size()), -1);
      for (std::size_t i = 0; i < dom.size(); ++i) f.map[static_cast<std::size_t>(dom[i])] = m.map[i];
      out.push_back(std::move(f));
      if (out.size() > guard.max_results) throw GuardExceeded("enumerate_partial_morphisms: too many results");
    }
  }
  return out;
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int a) {
    while (parent[static_cast<std::size_t>(a)] != a) {
      parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
      a = parent[static_cast<std::size_t>(a)];
    }
    return a;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

DirectUnion build_union(const FiniteStructure& x, const FiniteStructure& y, bool amalgamate) {
  if (x.signature() != y.signature()) throw SignatureMismatch("direct union: structure signatures differ");
  const auto& sig = x.signature();
  for (const auto& o : sig.operations())
    if (o.arity != 1)
      throw InvalidArgument("direct union: total operation '" + o.name + "' of arity " + std::to_string(o.arity) +
                            " has no componentwise interpretation");
  const int nx = x.size();
  const int total = nx + y.size();
  UnionFind uf(total);
  if (amalgamate)
    for (std::size_t c = 0; c < x.constants().size(); ++c) uf.unite(x.constants()[c], nx + y.constants()[c]);

  std::vector<Elem> cls(static_cast<std::size_t>(total), -1);
  std::vector<Elem> root_class(static_cast<std::size_t>(total), -1);
  int classes = 0;
  std::vector<std::string> labels;
  for (int e = 0; e < total; ++e) {
    int r = uf.find(e);
    if (root_class[static_cast<std::size_t>(r)] < 0) {
      root_class[static_cast<std::size_t>(r)] = classes++;
      labels.push_back(e < nx ? x.label(e) : y.label(e - nx) + "'");
    }
    cls[static_cast<std::size_t>(e)] = root_class[static_cast<std::size_t>(r)];
  }
  auto left = [&](Elem e) { return cls[static_cast<std::size_t>(e)]; };
  auto right = [&](Elem e) { return cls[static_cast<std::size_t>(nx + e)]; };

  std::vector<std::vector<Tuple>> rels(sig.relations().size());
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    for (const auto& t : x.relation(r)) {
      Tuple u;
      for (Elem e : t) u.push_back(left(e));
      rels[r].push_back(std::move(u));
    }
    for (const auto& t : y.relation(r)) {
      Tuple u;
      for (Elem e : t) u.push_back(right(e));
      rels[r].push_back(std::move(u));
    }
  }

  std::vector<std::vector<Elem>> ops(sig.operations().size(), std::vector<Elem>(static_cast<std::size_t>(classes), -1));
  for (std::size_t o = 0; o < sig.operations().size(); ++o) {
    auto put = [&](Elem at, Elem v) {
      Elem& slot = ops[o][static_cast<std::size_t>(at)];
      if (slot >= 0 && slot != v)
        throw InvalidArgument("direct union: operation '" + sig.operations()[o].name +
                              "' disagrees on an amalgamated element");
      slot = v;
    };
    for (Elem e = 0; e < nx; ++e) put(left(e), left(x.apply(o, std::span<const Elem>(&e, 1))));
    for (Elem e = 0; e < y.size(); ++e) put(right(e), right(y.apply(o, std::span<const Elem>(&e, 1))));
  }

  std::vector<std::vector<Elem>> partial;
  for (std::size_t p = 0; p < sig.partial_operations().size(); ++p) {
    int k = sig.partial_operations()[p].arity;
    std::vector<Elem> table(ipow(static_cast<std::size_t>(classes), k), -1);
    auto fill = [&](const FiniteStructure& s, auto&& img) {
      const auto n = static_cast<std::size_t>(s.size());
      std::size_t count = ipow(n, k);
      for (std::size_t j = 0; j < count; ++j) {
        Elem v = s.partial_operation(p)[j];
        if (v < 0) continue;
        Tuple t = tuple_at(j, n, k);
        for (auto& e : t) e = img(e);
        Elem& slot = table[tuple_index(t, static_cast<std::size_t>(classes))];
        if (slot >= 0 && slot != img(v))
          throw InvalidArgument("direct union: partial operation '" + sig.partial_operations()[p].name +
                                "' disagrees on an amalgamated tuple");
        slot = img(v);
      }
    };
    fill(x, left);
    fill(y, right);
    if (std::all_of(table.begin(), table.end(), [](Elem v) { return v < 0; }))
      throw InvalidArgument("direct union: partial operation '" + sig.partial_operations()[p].name +
                            "' has an empty domain");
    partial.push_back(std::move(table));
  }

  std::vector<Elem> consts;
  for (Elem c : x.constants()) consts.push_back(left(c));

  StructMorphism l{std::vector<Elem>(cls.begin(), cls.begin() + nx)};
  StructMorphism r{std::vector<Elem>(cls.begin() + nx, cls.end())};
  return DirectUnion{FiniteStructure(sig, classes, std::move(rels), std::move(ops), std::move(partial),
                                     std::move(consts), std::move(labels)),
                     std::move(l), std::move(r)};
}

}  // namespace

DirectUnion direct_union_amalgamated(const FiniteStructure& x, const FiniteStructure& y) {
  return build_union(x, y, true);
}

DirectUnion direct_union_plain(const FiniteStructure& x, const FiniteStructure& y) { return build_union(x, y, false); }

CoproductReport check_coproduct_universal(const FiniteStructure& x, const FiniteStructure& y,
                                          const FiniteStructure& z) {
  return check_coproduct_universal(x, y, z, direct_union_amalgamated(x, y));
}

CoproductReport check_coproduct_universal(const FiniteStructure& x, const FiniteStructure& y,
                                          const FiniteStructure& z, const DirectUnion& candidate) {
  CoproductReport report;
  const auto& u = candidate.structure;
  if (!is_struct_morphism(x, u, candidate.left.map) || !is_struct_morphism(y, u, candidate.right.map)) {
    report.holds = false;
    return report;
  }
  auto gs = enumerate_struct_morphisms(x, z);
  auto hs = enumerate_struct_morphisms(y, z);
  for (std::size_t i = 0; i < gs.size(); ++i) {
    for (std::size_t j = 0; j < hs.size(); ++j) {
      ++report.pairs_checked;
      std::vector<Elem> forced(static_cast<std::size_t>(u.size()), -1);
      bool consistent = true;
      auto force = [&](Elem at, Elem v) {
        Elem& slot = forced[static_cast<std::size_t>(at)];
        if (slot >= 0 && slot != v) consistent = false;
        slot = v;
      };
      for (Elem e = 0; e < x.size(); ++e) force(candidate.left(e), gs[i](e));
      for (Elem e = 0; e < y.size(); ++e) force(candidate.right(e), hs[j](e));
      std::vector<StructMorphism> found;
      if (consistent) {
        detail::SearchProblem p;
        p.n = u.size();
        p.m = z.size();
        const auto& sig = u.signature();
        for (std::size_t o = 0; o < sig.operations().size(); ++o)
          p.ops.push_back({sig.operations()[o].arity, &u.operation(o), &z.operation(o)});
        for (std::size_t q = 0; q < sig.partial_operations().size(); ++q)
          p.ops.push_back({sig.partial_operations()[q].arity, &u.partial_operation(q), &z.partial_operation(q)});
        for (std::size_t r = 0; r < sig.relations().size(); ++r)
          p.rels.push_back({sig.relations()[r].arity, &u.relation(r), &z.relation(r)});
        for (std::size_t c = 0; c < u.constants().size(); ++c) p.forced.emplace_back(u.constants()[c], z.constants()[c]);
        for (Elem e = 0; e < u.size(); ++e)
          if (forced[static_cast<std::size_t>(e)] >= 0) p.forced.emplace_back(e, forced[static_cast<std::size_t>(e)]);
        detail::search_assignments(p, [&](const std::vector<Elem>& h) {
          found.push_back(StructMorphism{h});
          return found.size() < 2;
        });
      }
      if (found.size() != 1 && report.holds) {
        report.holds = false;
        report.failing_pair = std::make_pair(i, j);
        report.failing_count = found.size();
      }
      report.mediators.push_back(found.size() == 1 ? found : std::vector<StructMorphism>{});
    }
  }
  return report;
}

FiniteStructure SymbolicStructure::slice(int n) const {
  const auto& sig = signature();
  if (!sig.partial_operations().empty())
    throw PreconditionFailed("symbolic slices do not support partial operations");
  std::vector<SymPoint> pts = slice_points(n);
  std::map<SymPoint, Elem> index;
  for (std::size_t i = 0; i < pts.size(); ++i) index.emplace(pts[i], static_cast<Elem>(i));
  const auto s = pts.size();
  auto locate = [&](const SymPoint& p, const std::string& what) {
    auto it = index.find(p);
    if (it == index.end())
      throw PreconditionFailed(what + " leaves slice " + std::to_string(n) + " at " + name(p));
    return it->second;
  };
  std::vector<std::vector<Tuple>> rels;
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    int k = sig.relations()[r].arity;
    std::vector<Tuple> tuples;
    std::size_t count = ipow(s, k);
    std::vector<SymPoint> args(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < count; ++j) {
      Tuple t = tuple_at(j, s, k);
      for (std::size_t i = 0; i < t.size(); ++i) args[i] = pts[static_cast<std::size_t>(t[i])];
      if (relation_holds(r, args)) tuples.push_back(std::move(t));
    }
    rels.push_back(std::move(tuples));
  }
  std::vector<std::vector<Elem>> ops;
  for (std::size_t o = 0; o < sig.operations().size(); ++o) {
    int k = sig.operations()[o].arity;
    std::size_t count = ipow(s, k);
    std::vector<Elem> table(count);
    std::vector<SymPoint> args(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < count; ++j) {
      Tuple t = tuple_at(j, s, k);
      for (std::size_t i = 0; i < t.size(); ++i) args[i] = pts[static_cast<std::size_t>(t[i])];
      table[j] = locate(apply(o, args), "operation '" + sig.operations()[o].name + "'");
    }
    ops.push_back(std::move(table));
  }
  std::vector<Elem> consts;
  for (std::size_t c = 0; c < sig.constants().size(); ++c)
    consts.push_back(locate(constant(c), "constant '" + sig.constants()[c] + "'"));
  std::vector<std::string> labels;
  for (const auto& p : pts) labels.push_back(name(p));
  return FiniteStructure(sig, static_cast<int>(s), std::move(rels), std::move(ops), {}, std::move(consts),
                         std::move(labels));
}

SliceReport check_slices(const SymbolicStructure& s, int max_level) {
  SliceReport report;
  std::set<SymPoint> previous;
  for (int n = 0; n <= max_level; ++n) {
    std::vector<SymPoint> pts = s.slice_points(n);
    std::set<SymPoint> current(pts.begin(), pts.end());
    for (const auto& p : previous)
      if (!current.count(p) && report.nested) {
        report.nested = false;
        report.detail = s.name(p) + " disappears at level " + std::to_string(n);
      }
    for (const auto& p : pts) {
      int lv = s.level(p);
      bool fresh = !previous.count(p);
      bool parsed = s.parse(s.name(p)) == std::optional<SymPoint>(p);
      if ((!s.contains(p) || lv > n || (fresh && lv != n) || !parsed) && report.levels_consistent) {
        report.levels_consistent = false;
        report.detail = s.name(p) + " has inconsistent level or codec";
      }
      for (std::size_t o = 0; o < s.signature().operations().size(); ++o) {
        if (s.signature().operations()[o].arity != 1) continue;
        SymPoint q = s.apply(o, std::span<const SymPoint>(&p, 1));
        if (!current.count(q) && report.unary_closed) {
          report.unary_closed = false;
          report.detail = s.signature().operations()[o].name + "(" + s.name(p) + ") leaves level " + std::to_string(n);
        }
      }
    }
    previous = std::move(current);
  }
  return report;
}

namespace {

template <typename Point, typename Closure>
GenerationReport generation_sweep(const std::vector<Point>& pts, int gen_size, Closure&& closure) {
  GenerationReport report;
  std::vector<std::size_t> pick;
  std::function<void(std::size_t)> rec = [&](std::size_t start) {
    std::vector<Point> gens;
    for (std::size_t i : pick) gens.push_back(pts[i]);
    ++report.generating_sets;
    auto [ok, size] = closure(gens);
    report.largest = std::max(report.largest, size);
    if (!ok && report.holds) {
      report.holds = false;
      report.detail = "a generating set of size " + std::to_string(gens.size()) + " escapes the slice";
    }
    if (static_cast<int>(pick.size()) == gen_size) return;
    for (std::size_t i = start; i < pts.size(); ++i) {
      pick.push_back(i);
      rec(i + 1);
      pick.pop_back();
    }
  };
  rec(0);
  return report;
}

}  // namespace

GenerationReport check_finite_generation(const SymbolicStructure& s, int n, int gen_size) {
  std::vector<SymPoint> pts = s.slice_points(n);
  const auto& sig = s.signature();
  return generation_sweep(pts, gen_size, [&](const std::vector<SymPoint>& gens) {
    std::set<SymPoint> closed(gens.begin(), gens.end());
    for (std::size_t c = 0; c < sig.constants().size(); ++c) closed.insert(s.constant(c));
    bool grew = true;
    while (grew) {
      grew = false;
      std::vector<SymPoint> members(closed.begin(), closed.end());
      for (std::size_t o = 0; o < sig.operations().size(); ++o) {
        int k = sig.operations()[o].arity;
        std::size_t count = ipow(members.size(), k);
        std::vector<SymPoint> args(static_cast<std::size_t>(k));
        for (std::size_t j = 0; j < count; ++j) {
          Tuple t = tuple_at(j, members.size(), k);
          for (std::size_t i = 0; i < t.size(); ++i) args[i] = members[static_cast<std::size_t>(t[i])];
          SymPoint q = s.apply(o, args);
          if (s.level(q) > n) return std::make_pair(false, closed.size());
          grew = closed.insert(q).second || grew;
        }
      }
    }
    return std::make_pair(true, closed.size());
  });
}

GenerationReport check_finite_generation(const FiniteStructure& x, int gen_size) {
  std::vector<Elem> pts(static_cast<std::size_t>(x.size()));
  std::iota(pts.begin(), pts.end(), 0);
  return generation_sweep(pts, gen_size, [&](const std::vector<Elem>& gens) {
    std::vector<char> in(static_cast<std::size_t>(x.size()), 0);
    for (Elem g : gens) in[static_cast<std::size_t>(g)] = 1;
    auto closed = close_mask(x, in);
    return std::make_pair(true, static_cast<std::size_t>(std::count(closed.begin(), closed.end(), 1)));
  });
}

}  // namespace natdual
