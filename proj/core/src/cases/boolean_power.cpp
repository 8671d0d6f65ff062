#include "natdual/cases/boolean_power.hpp"

#include <algorithm>

#include "natdual/cases/catalog.hpp"
#include "natdual/duality.hpp"
#include "natdual/error.hpp"

namespace natdual::cases {

namespace {

bool is_constant(const Homomorphism& h) {
  return std::all_of(h.map.begin(), h.map.end(), [&](Elem v) { return v == h.map.front(); });
}

}  // namespace

TernaryBooleanReport ternary_boolean_check(int k) {
  if (k < 1) throw InvalidArgument("ternary_boolean_check: k must be at least 1");
  if (k > 4) throw GuardExceeded("ternary_boolean_check: k must lie in 1..4");
  const FiniteAlgebra a = median_power(k);
  const AlterEgo ego = median_ego();
  const NaturalExtension ext = natural_extension(a, ego);
  const auto& homs = ext.dual.points;
  const FiniteAlgebra& ad = ext.algebra;
  const int n = ad.size();

  TernaryBooleanReport rep;
  rep.k = k;
  rep.size = ext.points.size();

  // Coordinate projections inside A*.
  std::vector<int> proj(static_cast<std::size_t>(k), -1);
  for (std::size_t h = 0; h < homs.size(); ++h)
    for (int t = 0; t < k; ++t) {
      bool is_proj = true;
      for (Elem v = 0; v < a.size() && is_proj; ++v)
        is_proj = homs[h](v) == tuple_at(static_cast<std::size_t>(v), 2, k)[static_cast<std::size_t>(t)];
      if (is_proj) proj[static_cast<std::size_t>(t)] = static_cast<int>(h);
    }
  if (std::find(proj.begin(), proj.end(), -1) == proj.end()) {
    std::vector<bool> hit(static_cast<std::size_t>(a.size()), false);
    bool injective = true;
    for (const auto& x : ext.points) {
      Tuple coords;
      for (int p : proj) coords.push_back(x(p));
      auto idx = tuple_index(coords, 2);
      injective = injective && !hit[idx];
      hit[idx] = true;
    }
    rep.full_product = injective && rep.size == static_cast<std::size_t>(a.size());
  } else {
    rep.detail = "a coordinate projection is missing from the dual";
  }

  // x^c pointwise on the dual.
  std::vector<Elem> comp(static_cast<std::size_t>(n), -1);
  rep.complement_exists = true;
  rep.naive_flip_is_morphism = false;
  for (int x = 0; x < n; ++x) {
    std::vector<Elem> c = ext.points[static_cast<std::size_t>(x)].map;
    std::vector<Elem> flip = c;
    for (std::size_t h = 0; h < homs.size(); ++h) {
      flip[h] = 1 - c[h];
      if (!is_constant(homs[h])) c[h] = 1 - c[h];
    }
    rep.naive_flip_is_morphism = rep.naive_flip_is_morphism || is_struct_morphism(ext.dual.structure, ego.structure, flip);
    auto it = std::find(ext.points.begin(), ext.points.end(), StructMorphism{c});
    if (it == ext.points.end()) {
      rep.complement_exists = false;
      if (rep.detail.empty()) rep.detail = "x^c is not a morphism for " + ad.label(x);
      continue;
    }
    comp[static_cast<std::size_t>(x)] = static_cast<Elem>(it - ext.points.begin());
  }
  if (!rep.complement_exists) return rep;

  auto m = [&](Elem x, Elem y, Elem z) { return ad.apply(0, {x, y, z}); };
  auto c = [&](Elem x) { return comp[static_cast<std::size_t>(x)]; };

  rep.identity_holds = true;
  for (Elem x = 0; x < n; ++x)
    for (Elem z = 0; z < n; ++z) {
      ++rep.identity_pairs;
      if (m(x, z, c(x)) != z) rep.identity_holds = false;
    }

  rep.complement_unique = true;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      bool works = true;
      for (Elem z = 0; z < n && works; ++z) works = m(x, z, y) == z;
      if (works != (y == c(x))) rep.complement_unique = false;
    }

  rep.boolean_algebras = true;
  for (Elem base = 0; base < n; ++base) {
    ++rep.base_points;
    const Elem bot = base;
    const Elem top = c(base);
    auto meet = [&](Elem x, Elem y) { return m(base, x, y); };
    auto join = [&](Elem x, Elem y) { return m(x, y, top); };
    bool ok = true;
    for (Elem x = 0; x < n && ok; ++x) {
      ok = meet(x, c(x)) == bot && join(x, c(x)) == top && meet(x, bot) == bot && join(x, top) == top &&
           meet(x, top) == x && join(x, bot) == x;
      for (Elem y = 0; y < n && ok; ++y) {
        ok = meet(x, y) == meet(y, x) && join(x, y) == join(y, x) && meet(x, join(x, y)) == x &&
             join(x, meet(x, y)) == x;
        for (Elem z = 0; z < n && ok; ++z)
          ok = meet(x, meet(y, z)) == meet(meet(x, y), z) && join(x, join(y, z)) == join(join(x, y), z) &&
               meet(x, join(y, z)) == join(meet(x, y), meet(x, z));
      }
    }
    if (!ok) {
      rep.boolean_algebras = false;
      if (rep.detail.empty()) rep.detail = "B_(A,a) fails a Boolean law at a = " + ad.label(base);
    }
  }
  return rep;
}

}  // namespace natdual::cases
