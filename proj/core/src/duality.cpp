#include "natdual/duality.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "natdual/error.hpp"
#include "natdual/iso.hpp"

namespace natdual {

std::string phi_label(int index) {
  static const char* const digits[] = {"₀", "₁", "₂", "₃", "₄", "₅", "₆", "₇", "₈", "₉"};
  std::string s = "φ";
  for (char c : std::to_string(index)) s += digits[c - '0'];
  return s;
}

namespace {

std::string show(const Tuple& t) {
  std::string s = "(";
  for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
  return s + ")";
}

// Applies op of M coordinatewise to m tuples of length k.
Tuple apply_columns(const FiniteAlgebra& m, std::size_t op, const std::vector<Tuple>& rows, std::size_t k) {
  Tuple out(k);
  Tuple column(rows.size());
  for (std::size_t c = 0; c < k; ++c) {
    for (std::size_t i = 0; i < rows.size(); ++i) column[i] = rows[i][c];
    out[c] = m.apply(op, column);
  }
  return out;
}

// Every choice of `arity` tuples from `pool`, visited until `visit` returns false.
template <typename Visit>
bool for_each_choice(const std::vector<Tuple>& pool, int arity, Visit&& visit) {
  std::size_t count = ipow(pool.size(), arity);
  std::vector<Tuple> rows(static_cast<std::size_t>(arity));
  for (std::size_t j = 0; j < count; ++j) {
    Tuple pick = tuple_at(j, pool.size(), arity);
    for (std::size_t i = 0; i < rows.size(); ++i) rows[i] = pool[static_cast<std::size_t>(pick[i])];
    if (!visit(rows)) return false;
  }
  return true;
}

std::vector<Tuple> all_tuples(int n, int k) {
  std::vector<Tuple> out;
  std::size_t count = ipow(static_cast<std::size_t>(n), k);
  for (std::size_t j = 0; j < count; ++j) out.push_back(tuple_at(j, static_cast<std::size_t>(n), k));
  return out;
}

// Subuniverse test for a set of k-tuples of M.
std::optional<std::string> subuniverse_failure(const FiniteAlgebra& m, const std::vector<Tuple>& set, std::size_t k) {
  std::set<Tuple> members(set.begin(), set.end());
  for (std::size_t op = 0; op < m.signature().size(); ++op) {
    std::optional<std::string> failure;
    for_each_choice(set, m.signature()[op].arity, [&](const std::vector<Tuple>& rows) {
      Tuple r = rows.empty() ? Tuple(k, m.apply(op, std::span<const Elem>())) : apply_columns(m, op, rows, k);
      if (members.count(r)) return true;
      std::string args;
      for (const auto& row : rows) args += (args.empty() ? "" : ",") + show(row);
      failure = m.signature()[op].name + "(" + args + ") = " + show(r);
      return false;
    });
    if (failure) return failure;
  }
  return std::nullopt;
}

// Homomorphism test for g: D -> M with D ⊆ M^k a subuniverse.
template <typename G>
std::optional<std::string> hom_failure(const FiniteAlgebra& m, const std::vector<Tuple>& domain, std::size_t k, G&& g) {
  for (std::size_t op = 0; op < m.signature().size(); ++op) {
    std::optional<std::string> failure;
    int arity = m.signature()[op].arity;
    for_each_choice(domain, arity, [&](const std::vector<Tuple>& rows) {
      Tuple arg = rows.empty() ? Tuple(k, m.apply(op, std::span<const Elem>())) : apply_columns(m, op, rows, k);
      Tuple images;
      for (const auto& row : rows) images.push_back(g(row));
      if (g(arg) == m.apply(op, images)) return true;
      std::string args;
      for (const auto& row : rows) args += (args.empty() ? "" : ",") + show(row);
      failure = "does not commute with " + m.signature()[op].name + " at " + args;
      return false;
    });
    if (failure) return failure;
  }
  return std::nullopt;
}

std::map<std::vector<Elem>, int> index_of(const std::vector<StructMorphism>& points) {
  std::map<std::vector<Elem>, int> idx;
  for (std::size_t i = 0; i < points.size(); ++i) idx.emplace(points[i].map, static_cast<int>(i));
  return idx;
}

}  // namespace

AlgebraicityReport check_algebraic(const AlterEgo& ego) {
  const auto& m = ego.algebra;
  const auto& s = ego.structure;
  const auto& sig = s.signature();
  AlgebraicityReport rep;
  auto fail = [&](const std::string& comp, const std::string& witness) {
    rep.ok = false;
    rep.component = comp;
    rep.witness = witness;
    return rep;
  };
  if (m.size() != s.size()) return fail("carrier", "algebra and structure carriers differ in size");
  for (std::size_t r = 0; r < sig.relations().size(); ++r)
    if (auto f = subuniverse_failure(m, s.relation(r), static_cast<std::size_t>(sig.relations()[r].arity)))
      return fail(sig.relations()[r].name, *f);
  for (std::size_t o = 0; o < sig.operations().size(); ++o) {
    int k = sig.operations()[o].arity;
    if (auto f = hom_failure(m, all_tuples(m.size(), k), static_cast<std::size_t>(k),
                             [&](const Tuple& t) { return s.apply(o, t); }))
      return fail(sig.operations()[o].name, *f);
  }
  for (std::size_t p = 0; p < sig.partial_operations().size(); ++p) {
    int k = sig.partial_operations()[p].arity;
    std::vector<Tuple> dom;
    for (const auto& t : all_tuples(m.size(), k))
      if (s.apply_partial(p, t) >= 0) dom.push_back(t);
    const auto ku = static_cast<std::size_t>(k);
    if (auto f = subuniverse_failure(m, dom, ku)) return fail(sig.partial_operations()[p].name, "domain: " + *f);
    if (auto f = hom_failure(m, dom, ku, [&](const Tuple& t) { return s.apply_partial(p, t); }))
      return fail(sig.partial_operations()[p].name, *f);
  }
  for (std::size_t c = 0; c < sig.constants().size(); ++c)
    if (auto f = subuniverse_failure(m, {Tuple{s.constants()[c]}}, 1)) return fail(sig.constants()[c], *f);
  return rep;
}

DualSpace dual_of(const FiniteAlgebra& a, const AlterEgo& ego) {
  if (a.signature() != ego.algebra.signature()) throw SignatureMismatch("dual_of: algebra and M have different signatures");
  AlgebraicityReport alg = check_algebraic(ego);
  if (!alg.ok) throw NotAlgebraic("alter ego component '" + alg.component + "' is not algebraic: " + alg.witness);

  const auto& m = ego.algebra;
  const auto& es = ego.structure;
  const auto& sig = es.signature();
  std::vector<Homomorphism> points = enumerate_homs(a, m);
  std::map<std::vector<Elem>, int> index;
  for (std::size_t i = 0; i < points.size(); ++i) index.emplace(points[i].map, static_cast<int>(i));
  const auto np = points.size();
  const auto na = static_cast<std::size_t>(a.size());
  auto lookup = [&](const std::vector<Elem>& map, const std::string& what) {
    auto it = index.find(map);
    if (it == index.end()) throw PreconditionFailed(what + " does not yield a homomorphism");
    return it->second;
  };

  std::vector<std::vector<Tuple>> rels;
  for (std::size_t r = 0; r < sig.relations().size(); ++r) {
    int k = sig.relations()[r].arity;
    std::vector<Tuple> tuples;
    for (const auto& t : all_tuples(static_cast<int>(np), k)) {
      bool ok = true;
      Tuple vals(static_cast<std::size_t>(k));
      for (std::size_t x = 0; x < na && ok; ++x) {
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = points[static_cast<std::size_t>(t[i])].map[x];
        ok = es.holds(r, vals);
      }
      if (ok) tuples.push_back(t);
    }
    rels.push_back(std::move(tuples));
  }
  auto pointwise = [&](int k, auto&& value, bool partial, const std::string& name) {
    std::vector<Elem> table;
    Tuple vals(static_cast<std::size_t>(k));
    for (const auto& t : all_tuples(static_cast<int>(np), k)) {
      std::vector<Elem> map(na);
      bool defined = true;
      for (std::size_t x = 0; x < na && defined; ++x) {
        for (std::size_t i = 0; i < vals.size(); ++i) vals[i] = points[static_cast<std::size_t>(t[i])].map[x];
        map[x] = value(vals);
        defined = map[x] >= 0;
      }
      if (!defined && partial) {
        table.push_back(-1);
        continue;
      }
      table.push_back(lookup(map, name));
    }
    return table;
  };
  std::vector<std::vector<Elem>> ops;
  for (std::size_t o = 0; o < sig.operations().size(); ++o)
    ops.push_back(pointwise(sig.operations()[o].arity, [&](const Tuple& v) { return es.apply(o, v); }, false,
                            "operation '" + sig.operations()[o].name + "'"));
  std::vector<std::vector<Elem>> partial;
  for (std::size_t p = 0; p < sig.partial_operations().size(); ++p)
    partial.push_back(pointwise(sig.partial_operations()[p].arity,
                                [&](const Tuple& v) { return es.apply_partial(p, v); }, true,
                                "partial operation '" + sig.partial_operations()[p].name + "'"));
  std::vector<Elem> consts;
  for (std::size_t c = 0; c < sig.constants().size(); ++c)
    consts.push_back(lookup(std::vector<Elem>(na, es.constants()[c]), "constant '" + sig.constants()[c] + "'"));
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < np; ++i) labels.push_back(phi_label(static_cast<int>(i)));
  FiniteStructure structure(sig, static_cast<int>(np), std::move(rels), std::move(ops), std::move(partial),
                            std::move(consts), std::move(labels));
  return DualSpace{std::move(points), std::move(structure)};
}

Evaluation evaluate(const FiniteAlgebra& a, const DualSpace& dual) {
  Evaluation ev;
  for (Elem x = 0; x < a.size(); ++x) {
    std::vector<Elem> row;
    for (const auto& phi : dual.points) row.push_back(phi(x));
    ev.table.push_back(std::move(row));
  }
  std::set<std::vector<Elem>> distinct(ev.table.begin(), ev.table.end());
  ev.injective = distinct.size() == ev.table.size();
  return ev;
}

NaturalExtension natural_extension(const FiniteAlgebra& a, const AlterEgo& ego) {
  NaturalExtension ext;
  ext.dual = dual_of(a, ego);
  ext.points = enumerate_struct_morphisms(ext.dual.structure, ego.structure);
  auto index = index_of(ext.points);
  const auto& m = ego.algebra;
  const auto np = static_cast<std::size_t>(ext.dual.structure.size());

  Evaluation ev = evaluate(a, ext.dual);
  for (const auto& row : ev.table) {
    auto it = index.find(row);
    ext.embedding.push_back(it == index.end() ? -1 : it->second);
  }
  std::vector<std::string> labels(ext.points.size());
  for (std::size_t i = 0; i < labels.size(); ++i) labels[i] = "x" + std::to_string(i);
  for (Elem x = a.size() - 1; x >= 0; --x)
    if (ext.embedding[static_cast<std::size_t>(x)] >= 0)
      labels[static_cast<std::size_t>(ext.embedding[static_cast<std::size_t>(x)])] = a.label(x);

  auto fn = [&](std::size_t op, std::span<const Elem> args) {
    std::vector<Elem> map(np);
    Tuple vals(args.size());
    for (std::size_t phi = 0; phi < np; ++phi) {
      for (std::size_t i = 0; i < args.size(); ++i) vals[i] = ext.points[static_cast<std::size_t>(args[i])].map[phi];
      map[phi] = m.apply(op, vals);
    }
    auto it = index.find(map);
    if (it == index.end())
      throw PreconditionFailed("natural_extension: pointwise '" + m.signature()[op].name + "' leaves the morphisms");
    return it->second;
  };
  ext.algebra = FiniteAlgebra::from_function(m.signature(), static_cast<int>(ext.points.size()), fn, labels);
  std::set<Elem> hit(ext.embedding.begin(), ext.embedding.end());
  bool total = !hit.count(-1);
  ext.embedding_injective = total && hit.size() == ext.embedding.size();
  ext.embedding_homomorphism = total && is_homomorphism(a, ext.algebra, ext.embedding);
  return ext;
}

DualityCertificate check_duality(const FiniteAlgebra& a, const AlterEgo& ego) {
  NaturalExtension ext = natural_extension(a, ego);
  DualityCertificate cert;
  cert.algebra_size = static_cast<std::size_t>(a.size());
  cert.morphism_count = ext.points.size();
  std::map<Elem, Elem> first_preimage;
  for (Elem x = 0; x < a.size(); ++x) {
    Elem idx = ext.embedding[static_cast<std::size_t>(x)];
    auto [it, fresh] = first_preimage.emplace(idx, x);
    if (!fresh && !cert.collision) cert.collision = std::make_pair(it->second, x);
  }
  for (std::size_t i = 0; i < ext.points.size(); ++i)
    if (!first_preimage.count(static_cast<Elem>(i))) {
      cert.missing = ext.points[i];
      break;
    }
  cert.holds = !cert.collision && !cert.missing && !first_preimage.count(-1);
  if (cert.holds) {
    cert.inverse.assign(ext.points.size(), -1);
    for (const auto& [idx, x] : first_preimage) cert.inverse[static_cast<std::size_t>(idx)] = x;
  }
  return cert;
}

DeltaBasis delta_basis(const FiniteAlgebra& a, const AlterEgo& ego, const StructureGuard& guard) {
  DeltaBasis basis;
  basis.extension = natural_extension(a, ego);
  for (auto& f : enumerate_partial_morphisms(basis.extension.dual.structure, ego.structure, guard)) {
    BasisEntry entry;
    for (std::size_t i = 0; i < basis.extension.points.size(); ++i)
      if (f.extended_by(basis.extension.points[i].map)) entry.open.push_back(static_cast<int>(i));
    entry.f = std::move(f);
    basis.entries.push_back(std::move(entry));
  }
  return basis;
}

DeltaBaseReport check_delta_base(const FiniteAlgebra& a, const AlterEgo& ego, const StructureGuard& guard) {
  DeltaBasis basis = delta_basis(a, ego, guard);
  DeltaBaseReport rep;
  rep.basis_size = basis.entries.size();
  std::set<std::vector<int>> opens;
  std::map<std::vector<Elem>, std::size_t> by_map;
  for (std::size_t i = 0; i < basis.entries.size(); ++i) {
    opens.insert(basis.entries[i].open);
    by_map.emplace(basis.entries[i].f.map, i);
  }
  for (std::size_t i = 0; i < basis.entries.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.entries.size(); ++j) {
      ++rep.pairs;
      const auto& oi = basis.entries[i].open;
      const auto& oj = basis.entries[j].open;
      std::vector<int> inter;
      std::set_intersection(oi.begin(), oi.end(), oj.begin(), oj.end(), std::back_inserter(inter));
      if (inter.empty()) {
        ++rep.empty;
        continue;
      }
      const auto& fi = basis.entries[i].f.map;
      const auto& fj = basis.entries[j].f.map;
      std::vector<Elem> joined(fi.size(), -1);
      bool compatible = true;
      for (std::size_t x = 0; x < fi.size(); ++x) {
        if (fi[x] >= 0 && fj[x] >= 0 && fi[x] != fj[x]) compatible = false;
        joined[x] = fi[x] >= 0 ? fi[x] : fj[x];
      }
      auto it = compatible ? by_map.find(joined) : by_map.end();
      if (it != by_map.end() && basis.entries[it->second].open == inter) {
        ++rep.union_matches;
      } else if (opens.count(inter)) {
        ++rep.other_matches;
      } else if (rep.holds) {
        rep.holds = false;
        rep.failing_pair = std::make_pair(i, j);
      }
    }
  }
  return rep;
}

ProductTheoremReport check_product_theorem(const FiniteAlgebra& a, const FiniteAlgebra& b, const AlterEgo& ego) {
  ProductTheoremReport rep;
  Product ab = direct_product(a, b);
  NaturalExtension ext_ab = natural_extension(ab.algebra, ego);
  NaturalExtension ext_a = natural_extension(a, ego);
  NaturalExtension ext_b = natural_extension(b, ego);
  Product ext_prod = direct_product(ext_a.algebra, ext_b.algebra);
  rep.extension_map = find_isomorphism(ext_ab.algebra, ext_prod.algebra);
  rep.extension_iso = rep.extension_map.has_value();
  DirectUnion amalgam = direct_union_amalgamated(ext_a.dual.structure, ext_b.dual.structure);
  rep.dual_map = find_isomorphism(ext_ab.dual.structure, amalgam.structure);
  rep.dual_iso = rep.dual_map.has_value();
  rep.agree = rep.extension_iso == rep.dual_iso;
  return rep;
}

CongruenceProductReport check_congruence_product(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                                 const CongruenceOptions& options) {
  CongruenceProductReport rep;
  auto ca = all_congruences(a, options);
  auto cb = all_congruences(b, options);
  Product ab = direct_product(a, b);
  auto cab = all_congruences(ab.algebra, options);
  rep.left = ca.size();
  rep.right = cb.size();
  rep.product = cab.size();
  std::set<Congruence> targets(cab.begin(), cab.end());
  auto pair_up = [&](const Congruence& t, const Congruence& p) {
    std::vector<int> block(static_cast<std::size_t>(ab.algebra.size()));
    int width = p.block_count();
    for (Elem x = 0; x < a.size(); ++x)
      for (Elem y = 0; y < b.size(); ++y)
        block[static_cast<std::size_t>(ab.pair(x, y))] =
            t.block[static_cast<std::size_t>(x)] * width + p.block[static_cast<std::size_t>(y)];
    return Congruence::normalized(std::move(block));
  };
  std::vector<Congruence> image;
  for (const auto& t : ca)
    for (const auto& p : cb) {
      Congruence c = pair_up(t, p);
      if (!targets.count(c)) {
        rep.detail = "a product of congruences is not a congruence of the product";
        return rep;
      }
      image.push_back(std::move(c));
    }
  std::set<Congruence> distinct(image.begin(), image.end());
  if (distinct.size() != image.size()) {
    rep.detail = "the pairing map is not injective";
    return rep;
  }
  if (distinct.size() != cab.size()) {
    rep.detail = "Con(A×B) has congruences that are not products";
    return rep;
  }
  const std::size_t nb = cb.size();
  for (std::size_t i = 0; i < image.size(); ++i)
    for (std::size_t j = 0; j < image.size(); ++j) {
      bool below = ca[i / nb].finer_than(ca[j / nb]) && cb[i % nb].finer_than(cb[j % nb]);
      if (below != image[i].finer_than(image[j])) {
        rep.detail = "the pairing map is not an order isomorphism";
        return rep;
      }
    }
  rep.holds = true;
  return rep;
}

CoverFormulaResult check_median_cover_formula(const FiniteAlgebra& a, const std::vector<Elem>& as,
                                              const std::vector<Elem>& bs) {
  if (a.signature().size() != 1 || a.signature()[0].arity != 3)
    throw InvalidArgument("check_median_cover_formula: expected a single ternary operation");
  for (Elem x : as)
    if (x < 0 || x >= a.size()) throw InvalidArgument("cover formula: element outside the carrier");
  for (Elem x : bs)
    if (x < 0 || x >= a.size()) throw InvalidArgument("cover formula: element outside the carrier");
  FiniteAlgebra two = FiniteAlgebra::from_function(a.signature(), 2, [](std::size_t, std::span<const Elem> v) {
    return static_cast<Elem>(v[0] + v[1] + v[2] >= 2);
  });
  auto homs = enumerate_homs(a, two);
  CoverFormulaResult res;
  res.cover = std::all_of(homs.begin(), homs.end(), [&](const Homomorphism& phi) {
    return std::any_of(as.begin(), as.end(), [&](Elem x) { return phi(x) == 1; }) ||
           std::any_of(bs.begin(), bs.end(), [&](Elem x) { return phi(x) == 0; });
  });
  auto formula = [&](auto&& med, auto&& val) {
    for (Elem ai : as)
      for (Elem bk : bs)
        for (Elem bl : bs)
          if (med(val(ai), val(bk), val(bl)) == val(ai)) return true;
    return false;
  };
  res.formula_in_algebra =
      formula([&](Elem x, Elem y, Elem z) { return a.apply(0, {x, y, z}); }, [](Elem x) { return x; });
  res.formula_coordinatewise = std::all_of(homs.begin(), homs.end(), [&](const Homomorphism& phi) {
    return formula([&](Elem x, Elem y, Elem z) { return two.apply(0, {x, y, z}); }, [&](Elem x) { return phi(x); });
  });
  return res;
}

InjectivityReport check_injectivity_finite(const AlterEgo& ego, const std::vector<FiniteAlgebra>& suite,
                                           const StructureGuard& guard) {
  InjectivityReport rep;
  for (const auto& a : suite) {
    ++rep.algebras;
    DeltaBasis basis = delta_basis(a, ego, guard);
    for (const auto& entry : basis.entries) {
      ++rep.partial_morphisms;
      if (entry.open.empty() && rep.holds) {
        rep.holds = false;
        rep.detail = "a partial morphism on a closed substructure has no total extension";
      }
    }
  }
  return rep;
}

TopologyReport compare_delta_iota(const FiniteAlgebra& a, const AlterEgo& ego) {
  DeltaBasis basis = delta_basis(a, ego);
  TopologyReport rep;
  std::set<int> isolated;
  for (const auto& e : basis.entries)
    if (e.open.size() == 1) isolated.insert(e.open[0]);
  rep.delta_discrete = isolated.size() == basis.extension.points.size();
  rep.agree = rep.delta_discrete == rep.iota_discrete;
  return rep;
}

std::string to_dot(const DualSpace& dual, const std::string& graph_name) {
  std::vector<std::string> tips;
  for (const auto& p : dual.points) {
    std::string t;
    for (std::size_t x = 0; x < p.map.size(); ++x) t += (x ? " " : "") + std::to_string(p.map[x]);
    tips.push_back(std::move(t));
  }
  return to_dot(dual.structure, graph_name, tips);
}

std::string to_dot(const FiniteStructure& s, const std::string& graph_name, const std::vector<std::string>& tooltips) {
  std::ostringstream out;
  out << "digraph " << graph_name << " {\n  rankdir=BT;\n  node [shape=circle];\n";
  for (int i = 0; i < s.size(); ++i) {
    out << "  p" << i << " [label=\"" << s.label(i) << "\"";
    if (static_cast<std::size_t>(i) < tooltips.size()) out << ", tooltip=\"" << tooltips[static_cast<std::size_t>(i)] << "\"";
    out << "];\n";
  }
  if (auto le = s.signature().find_relation("≤")) {
    auto holds = [&](Elem x, Elem y) { return s.holds(*le, std::vector<Elem>{x, y}); };
    for (Elem x = 0; x < s.size(); ++x)
      for (Elem y = 0; y < s.size(); ++y) {
        if (x == y || !holds(x, y)) continue;
        bool cover = true;
        for (Elem z = 0; z < s.size() && cover; ++z)
          if (z != x && z != y && holds(x, z) && holds(z, y)) cover = false;
        if (cover) out << "  p" << x << " -> p" << y << ";\n";
      }
  }
  if (auto bullet = s.signature().find_operation("•")) {
    for (Elem x = 0; x < s.size(); ++x) {
      Elem y = s.apply(*bullet, std::span<const Elem>(&x, 1));
      if (x < y) out << "  p" << x << " -> p" << y << " [style=dashed, dir=both, constraint=false];\n";
    }
  }
  out << "}\n";
  return out.str();
}

}  // namespace natdual
