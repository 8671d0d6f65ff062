#include "natdual/cases/median_tree.hpp"

#include <algorithm>
#include <charconv>

#include "natdual/cases/catalog.hpp"
#include "natdual/error.hpp"

namespace natdual::cases {

namespace {

std::int64_t median3(std::int64_t a, std::int64_t b, std::int64_t c) {
  return std::max(std::min(a, b), std::min(std::max(a, b), c));
}

Elem majority(Elem x, Elem y, Elem z) { return (x & y) | (y & z) | (x & z); }

std::optional<std::int64_t> parse_index(std::string_view s) {
  if (s.empty()) return std::nullopt;
  std::int64_t v = 0;
  auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || v < 0) return std::nullopt;
  return v;
}

// Whole = A_0 and Empty = A_0•, so the rules below only see four kinds.
SymPoint canonical(const SymPoint& p) {
  if (p.kind == kWhole) return {kUp, 0};
  if (p.kind == kEmpty) return {kUpCo, 0};
  return p;
}

}  // namespace

SymPoint tree_a(std::int64_t i) { return {kTreeA, i}; }
SymPoint tree_b(std::int64_t i) { return {kTreeB, i}; }

std::string tree_point_name(const SymPoint& x) {
  return (x.kind == kTreeA ? "a_" : "b_") + std::to_string(x.index);
}

SymPoint tree_median(const SymPoint& x, const SymPoint& y, const SymPoint& z) {
  if (x == y || x == z) return x;
  if (y == z) return y;
  // Three distinct vertices: a leaf is never interior to a geodesic, so the
  // median sits on the spine.
  return tree_a(median3(x.index, y.index, z.index));
}

FiniteAlgebra build_median_tree(int n) {
  if (n < 0) throw InvalidArgument("build_median_tree: n must be non-negative");
  const int size = 2 * (n + 1);
  auto point = [n](Elem e) { return e <= n ? tree_a(e) : tree_b(e - n - 1); };
  auto index = [n](const SymPoint& p) { return static_cast<Elem>(p.kind == kTreeA ? p.index : p.index + n + 1); };
  std::vector<std::string> labels;
  for (Elem e = 0; e < size; ++e) labels.push_back(tree_point_name(point(e)));
  FiniteAlgebra a = FiniteAlgebra::from_function(
      median_signature(), size,
      [&](std::size_t, std::span<const Elem> t) { return index(tree_median(point(t[0]), point(t[1]), point(t[2]))); },
      std::move(labels));
  if (!is_median_algebra(a)) throw Error("build_median_tree: table violates the median axioms");
  return a;
}

bool is_median_algebra(const FiniteAlgebra& a) {
  if (a.signature().size() != 1 || a.signature()[0].arity != 3) return false;
  const Elem n = a.size();
  auto m = [&](Elem x, Elem y, Elem z) { return a.apply(0, {x, y, z}); };
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y) {
      if (m(x, x, y) != x) return false;
      for (Elem z = 0; z < n; ++z) {
        Elem v = m(x, y, z);
        if (v != m(y, x, z) || v != m(y, z, x)) return false;
      }
    }
  for (Elem x = 0; x < n; ++x)
    for (Elem y = 0; y < n; ++y)
      for (Elem z = 0; z < n; ++z)
        for (Elem u = 0; u < n; ++u)
          for (Elem v = 0; v < n; ++v)
            if (m(x, y, m(z, u, v)) != m(m(x, y, z), m(x, y, u), v)) return false;
  return true;
}

bool ideal_contains(const SymPoint& ideal, const SymPoint& x) {
  switch (ideal.kind) {
    case kWhole: return true;
    case kEmpty: return false;
    case kUp: return x.index >= ideal.index;
    case kUpCo: return x.index < ideal.index;
    case kLeaf: return x == tree_b(ideal.index);
    case kLeafCo: return x != tree_b(ideal.index);
  }
  throw InvalidArgument("not a dual point of the tree algebra");
}

bool ideal_included(const SymPoint& p0, const SymPoint& q0) {
  const SymPoint p = canonical(p0);
  const SymPoint q = canonical(q0);
  const std::int64_t i = p.index;
  const std::int64_t j = q.index;
  switch (p.kind) {
    case kUp:
      switch (q.kind) {
        case kUp: return i >= j;
        case kUpCo: return false;
        case kLeaf: return false;
        default: return j < i;
      }
    case kUpCo:
      if (i == 0) return true;
      switch (q.kind) {
        case kUp: return j == 0;
        case kUpCo: return i <= j;
        case kLeaf: return false;
        default: return j >= i;
      }
    case kLeaf:
      switch (q.kind) {
        case kUp: return i >= j;
        case kUpCo: return i < j;
        case kLeaf: return i == j;
        default: return i != j;
      }
    default:
      switch (q.kind) {
        case kUp: return j == 0;
        case kUpCo: return false;
        case kLeaf: return false;
        default: return i == j;
      }
  }
}

MedianTreeDual::MedianTreeDual() : sig_({{"≤", 2}}, {{"•", 1}}, {}, {"0", "1"}) {}

bool MedianTreeDual::contains(const SymPoint& p) const {
  switch (p.kind) {
    case kWhole:
    case kEmpty: return p.index == 0;
    case kUp:
    case kUpCo: return p.index >= 1;
    case kLeaf:
    case kLeafCo: return p.index >= 0;
  }
  return false;
}

int MedianTreeDual::level(const SymPoint& p) const { return static_cast<int>(p.index); }

std::vector<SymPoint> MedianTreeDual::slice_points(int n) const {
  std::vector<SymPoint> out{{kWhole, 0}, {kEmpty, 0}};
  for (std::int64_t i = 0; i <= n; ++i) {
    if (i >= 1) {
      out.push_back({kUp, i});
      out.push_back({kUpCo, i});
    }
    out.push_back({kLeaf, i});
    out.push_back({kLeafCo, i});
  }
  return out;
}

std::string MedianTreeDual::name(const SymPoint& p) const {
  const std::string i = std::to_string(p.index);
  switch (p.kind) {
    case kWhole: return "A";
    case kEmpty: return "∅";
    case kUp: return "A_" + i;
    case kUpCo: return "A_" + i + "•";
    case kLeaf: return "B_" + i;
    case kLeafCo: return "B_" + i + "•";
  }
  return "?";
}

std::optional<SymPoint> MedianTreeDual::parse(std::string_view s) const {
  if (s == "A") return SymPoint{kWhole, 0};
  if (s == "∅") return SymPoint{kEmpty, 0};
  if (s.size() < 3 || (s[0] != 'A' && s[0] != 'B') || s[1] != '_') return std::nullopt;
  const std::string_view bullet = "•";
  bool co = s.size() > bullet.size() && s.substr(s.size() - bullet.size()) == bullet;
  auto idx = parse_index(s.substr(2, s.size() - 2 - (co ? bullet.size() : 0)));
  if (!idx) return std::nullopt;
  if (s[0] == 'B') return SymPoint{co ? kLeafCo : kLeaf, *idx};
  if (*idx == 0) return SymPoint{co ? kEmpty : kWhole, 0};
  return SymPoint{co ? kUpCo : kUp, *idx};
}

bool MedianTreeDual::relation_holds(std::size_t, std::span<const SymPoint> args) const {
  // φ_P ≤ φ_Q pointwise iff Q ⊆ P.
  return ideal_included(args[1], args[0]);
}

SymPoint MedianTreeDual::apply(std::size_t, std::span<const SymPoint> args) const {
  const SymPoint& p = args[0];
  switch (p.kind) {
    case kWhole: return {kEmpty, 0};
    case kEmpty: return {kWhole, 0};
    case kUp: return {kUpCo, p.index};
    case kUpCo: return {kUp, p.index};
    case kLeaf: return {kLeafCo, p.index};
    default: return {kLeaf, p.index};
  }
}

SymPoint MedianTreeDual::constant(std::size_t c) const {
  // The constant-0 homomorphism has every element in its ideal.
  return c == 0 ? SymPoint{kWhole, 0} : SymPoint{kEmpty, 0};
}

Elem infinity_value(const SymPoint& ideal) {
  return ideal.kind == kEmpty || ideal.kind == kUpCo || ideal.kind == kLeaf ? 1 : 0;
}

MedianTreeSpace::MedianTreeSpace() : m_(median_two()) {
  auto in_f = [](const SymPoint& p) { return p.kind == kEmpty || p.kind == kLeaf; };
  register_witness("∞", Witness{"f on F ∪ F•, F = {∅, B_0, B_1, ...}",
                                [](const SymPoint& p) { return p.kind != kUp && p.kind != kUpCo; },
                                [in_f](const SymPoint& p) { return in_f(p) ? 1 : 0; },
                                [](const SymPoint& a) { return a.kind == kTreeA; }});
}

std::vector<SymPoint> MedianTreeSpace::dual_slice(int depth) const { return dual_.slice_points(depth); }

std::vector<SymPoint> MedianTreeSpace::algebra_points(int depth) const {
  std::vector<SymPoint> out;
  for (std::int64_t i = 0; i <= depth; ++i) out.push_back(tree_a(i));
  for (std::int64_t i = 0; i <= depth; ++i) out.push_back(tree_b(i));
  return out;
}

Elem MedianTreeSpace::evaluate(const SymPoint& a, const SymPoint& phi) const {
  return ideal_contains(phi, a) ? 0 : 1;
}

SymPoint MedianTreeSpace::apply(std::size_t, std::span<const SymPoint> args) const {
  return tree_median(args[0], args[1], args[2]);
}

ProElement MedianTreeSpace::infinity() const { return ProElement{"∞", infinity_value, std::nullopt}; }

std::optional<ProElement> MedianTreeSpace::parse_point(std::string_view s) const {
  if (s == "∞" || s == "inf") return infinity();
  if (s.size() < 3 || (s[0] != 'a' && s[0] != 'b') || s[1] != '_') return std::nullopt;
  auto idx = parse_index(s.substr(2));
  if (!idx) return std::nullopt;
  return algebra_element(s[0] == 'a' ? tree_a(*idx) : tree_b(*idx));
}

std::vector<ProElement> MedianTreeSpace::sample_points(int depth) const {
  std::vector<ProElement> out{infinity()};
  for (const auto& a : algebra_points(std::min(depth, 3))) out.push_back(algebra_element(a));
  return out;
}

std::vector<std::pair<SymPoint, SymPoint>> MedianTreeSpace::comparable_pairs(int depth, const TotalOrder& ord) const {
  const bool reversed = !ord.is_index_order();
  std::vector<std::pair<SymPoint, SymPoint>> out;
  auto pts = dual_slice(depth);
  for (const auto& p : pts)
    for (const auto& q : pts)
      if (reversed ? ideal_included(p, q) : ideal_included(q, p)) out.push_back({p, q});
  return out;
}

bool paper_e_a(std::int64_t n, const SymPoint& ideal) {
  return ideal_included(ideal, {kUp, n + 1}) || ideal_included(ideal, {n == 0 ? kEmpty : kUpCo, n}) ||
         ideal == SymPoint{kLeaf, n};
}

bool paper_e_b(std::int64_t n, const SymPoint& ideal) { return ideal_included(ideal, {kLeafCo, n}); }

bool paper_e_b_union(std::int64_t n, const SymPoint& ideal) {
  return ideal_included(ideal, {kUp, n + 1}) || ideal_included(ideal, {n == 0 ? kEmpty : kUpCo, n});
}

std::vector<ProElement> median_bidual_points(int n) {
  if (n < 0) throw InvalidArgument("median_bidual_points: n must be non-negative");
  std::vector<ProElement> out;
  for (std::int64_t i = 0; i <= n; ++i)
    for (const SymPoint& x : {tree_a(i), tree_b(i)})
      out.push_back(ProElement{tree_point_name(x), [x](const SymPoint& p) { return ideal_contains(p, x) ? 0 : 1; }, x});
  out.push_back(ProElement{"∞", infinity_value, std::nullopt});
  return out;
}

std::string median_triple_with_infinity(int m, int n, char kx, char ky) {
  if (m < 0 || n < 0) throw InvalidArgument("median_triple_with_infinity: indices must be non-negative");
  auto kind = [](char k) {
    if (k == 'a') return kTreeA;
    if (k == 'b') return kTreeB;
    throw InvalidArgument(std::string("median_triple_with_infinity: kind must be a or b, got ") + k);
  };
  const SymPoint x{kind(kx), m};
  const SymPoint y{kind(ky), n};
  const int depth = std::max(m, n) + 2;
  MedianTreeDual dual;
  const auto slice = dual.slice_points(depth);
  auto value = [](const SymPoint& a, const SymPoint& p) { return ideal_contains(p, a) ? 0 : 1; };
  std::vector<Elem> target;
  for (const auto& p : slice) target.push_back(majority(infinity_value(p), value(x, p), value(y, p)));
  for (std::int64_t i = 0; i <= depth - 1; ++i)
    for (const SymPoint& c : {tree_a(i), tree_b(i)}) {
      bool same = true;
      for (std::size_t k = 0; k < slice.size() && same; ++k) same = value(c, slice[k]) == target[k];
      if (same) return tree_point_name(c);
    }
  throw Error("(∞, " + tree_point_name(x) + ", " + tree_point_name(y) + ") matches no algebra point at depth " +
              std::to_string(depth));
}

MapBetweenAlgebras median_u() {
  return MapBetweenAlgebras{"u", [](const SymPoint& a) { return a.kind == kTreeB ? 1 : 0; }};
}

FiniteTarget median_u_target() { return FiniteTarget::make(median_two(), median_two()); }

UPrimeReport median_u_prime_smoothness(int depth, bool witness_enabled) {
  MedianTreeSpace space;
  space.set_witnesses_enabled(witness_enabled);
  FiniteTarget target = median_u_target();
  MapBetweenAlgebras u = median_u();
  UPrimeReport rep;
  rep.witness_enabled = witness_enabled;
  rep.depth = depth;
  std::vector<std::vector<int>> singles;
  for (int phi : target.all_dual()) singles.push_back({phi});
  ProElement inf = space.infinity();
  for (const auto& f : singles) rep.windows.push_back(point_window(space, target, u, inf, f, depth));
  rep.smooth = check_smooth(space, target, u, {inf}, singles, depth);
  return rep;
}

}  // namespace natdual::cases
