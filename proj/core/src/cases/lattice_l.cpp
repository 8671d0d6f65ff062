#include "natdual/cases/lattice_l.hpp"

#include <algorithm>
#include <bit>
#include <charconv>

#include "natdual/cases/catalog.hpp"
#include "natdual/cases/median_tree.hpp"
#include "natdual/error.hpp"

namespace natdual::cases {

namespace {

std::optional<std::vector<bool>> parse_bits(std::string_view s) {
  std::vector<bool> out;
  for (char c : s) {
    if (c != '0' && c != '1') return std::nullopt;
    out.push_back(c == '1');
  }
  return out;
}

std::string bits_text(const std::vector<bool>& b) {
  std::string s;
  for (bool v : b) s += v ? '1' : '0';
  return s;
}

Elem bit(std::uint64_t mask, std::int64_t n) { return n < 64 && ((mask >> n) & 1u) ? 1 : 0; }

}  // namespace

PeriodicSet PeriodicSet::make(std::vector<bool> prefix, std::vector<bool> cycle) {
  if (cycle.empty()) throw InvalidArgument("periodic set needs a non-empty cycle");
  const std::size_t len = cycle.size();
  for (std::size_t p = 1; p <= len; ++p) {
    if (len % p != 0) continue;
    bool periodic = true;
    for (std::size_t i = p; i < len && periodic; ++i) periodic = cycle[i] == cycle[i - p];
    if (periodic) {
      cycle.resize(p);
      break;
    }
  }
  while (!prefix.empty() && prefix.back() == cycle.back()) {
    prefix.pop_back();
    std::rotate(cycle.begin(), cycle.end() - 1, cycle.end());
  }
  PeriodicSet s;
  s.prefix = std::move(prefix);
  s.cycle = std::move(cycle);
  return s;
}

PeriodicSet PeriodicSet::of_mask(std::uint64_t mask) {
  std::vector<bool> prefix;
  for (int i = 0; i < 64 && (mask >> i) != 0; ++i) prefix.push_back((mask >> i) & 1u);
  return make(std::move(prefix), {false});
}

std::optional<PeriodicSet> PeriodicSet::parse(std::string_view text) {
  if (text == "evens") return make({}, {true, false});
  if (text == "odds") return make({}, {false, true});
  if (text == "all") return make({}, {true});
  if (text == "none") return make({}, {false});
  if (text.starts_with("finite:{") && text.ends_with("}")) {
    std::string_view body = text.substr(8, text.size() - 9);
    std::vector<bool> prefix;
    while (!body.empty()) {
      auto comma = body.find(',');
      std::string_view item = body.substr(0, comma);
      int v = 0;
      auto [ptr, ec] = std::from_chars(item.data(), item.data() + item.size(), v);
      if (ec != std::errc{} || ptr != item.data() + item.size() || v < 0 || v > 4096) return std::nullopt;
      if (prefix.size() <= static_cast<std::size_t>(v)) prefix.resize(static_cast<std::size_t>(v) + 1, false);
      prefix[static_cast<std::size_t>(v)] = true;
      if (comma == std::string_view::npos) break;
      body.remove_prefix(comma + 1);
    }
    return make(std::move(prefix), {false});
  }
  if (text.starts_with("ep:")) {
    std::string_view body = text.substr(3);
    auto bar = body.find('|');
    if (bar == std::string_view::npos) return std::nullopt;
    auto prefix = parse_bits(body.substr(0, bar));
    auto cycle = parse_bits(body.substr(bar + 1));
    if (!prefix || !cycle || cycle->empty()) return std::nullopt;
    return make(std::move(*prefix), std::move(*cycle));
  }
  return std::nullopt;
}

bool PeriodicSet::contains(std::int64_t n) const {
  if (n < 0) return false;
  const auto k = static_cast<std::size_t>(n);
  if (k < prefix.size()) return prefix[k];
  return cycle[(k - prefix.size()) % cycle.size()];
}

std::uint64_t PeriodicSet::mask() const {
  if (!finite()) throw InvalidArgument("mask of an infinite set");
  if (prefix.size() > 63) throw InvalidArgument("finite set has elements beyond 62");
  std::uint64_t m = 0;
  for (std::size_t i = 0; i < prefix.size(); ++i)
    if (prefix[i]) m |= std::uint64_t{1} << i;
  return m;
}

std::string PeriodicSet::name() const {
  if (finite()) {
    std::string s = "finite:{";
    bool first = true;
    for (std::size_t i = 0; i < prefix.size(); ++i)
      if (prefix[i]) {
        if (!first) s += ",";
        s += std::to_string(i);
        first = false;
      }
    return s + "}";
  }
  if (prefix.empty()) {
    if (cycle == std::vector<bool>{true, false}) return "evens";
    if (cycle == std::vector<bool>{false, true}) return "odds";
    if (cycle == std::vector<bool>{true}) return "all";
  }
  return "ep:" + bits_text(prefix) + "|" + bits_text(cycle);
}

std::string finite_set_name(std::uint64_t mask) { return PeriodicSet::of_mask(mask).name(); }

LDual::LDual() : sig_({{"≤", 2}}, {}, {}, {}) {}

bool LDual::contains(const SymPoint& p) const {
  return (p.kind == kPhi && p.index >= 0) || (p.kind == kInfinity && p.index == 0);
}

int LDual::level(const SymPoint& p) const { return p.kind == kPhi ? static_cast<int>(p.index) : 0; }

std::vector<SymPoint> LDual::slice_points(int n) const {
  std::vector<SymPoint> out;
  for (std::int64_t i = 0; i <= n; ++i) out.push_back({kPhi, i});
  out.push_back({kInfinity, 0});
  return out;
}

std::string LDual::name(const SymPoint& p) const {
  return p.kind == kPhi ? phi_label(static_cast<int>(p.index)) : "∞";
}

std::optional<SymPoint> LDual::parse(std::string_view s) const {
  if (s == "∞" || s == "inf") return SymPoint{kInfinity, 0};
  for (int i = 0; i <= 4096; ++i)
    if (phi_label(i) == s) return SymPoint{kPhi, i};
  return std::nullopt;
}

bool LDual::relation_holds(std::size_t, std::span<const SymPoint> args) const {
  return args[0] == args[1] || args[0].kind == kInfinity;
}

SymPoint LDual::apply(std::size_t, std::span<const SymPoint>) const {
  throw InvalidArgument("L* has no operations");
}

SymPoint LDual::constant(std::size_t) const { throw InvalidArgument("L* has no constants"); }

LSpace::LSpace() : m_(dl_two()) {}

std::vector<SymPoint> LSpace::dual_slice(int depth) const { return dual_.slice_points(depth); }

std::vector<SymPoint> LSpace::algebra_points(int depth) const {
  if (depth > kMaxDepth) throw GuardExceeded("L: algebra pool beyond depth " + std::to_string(kMaxDepth));
  std::vector<SymPoint> out;
  const std::int64_t count = std::int64_t{1} << (std::max(depth, 0) + 1);
  out.reserve(static_cast<std::size_t>(count) + 1);
  for (std::int64_t m = 0; m < count; ++m) out.push_back({kFinite, m});
  out.push_back({kTop, 0});
  return out;
}

Elem LSpace::evaluate(const SymPoint& a, const SymPoint& phi) const {
  if (phi.kind == kInfinity) return a.kind == kTop ? 1 : 0;
  return a.kind == kTop ? 1 : bit(static_cast<std::uint64_t>(a.index), phi.index);
}

SymPoint LSpace::apply(std::size_t op, std::span<const SymPoint> args) const {
  switch (op) {
    case 0:
      if (args[0].kind == kTop) return args[1];
      if (args[1].kind == kTop) return args[0];
      return {kFinite, args[0].index & args[1].index};
    case 1:
      if (args[0].kind == kTop || args[1].kind == kTop) return {kTop, 0};
      return {kFinite, args[0].index | args[1].index};
    case 2: return {kFinite, 0};
    default: return {kTop, 0};
  }
}

std::string LSpace::point_name(const SymPoint& a) const {
  return a.kind == kTop ? "top" : finite_set_name(static_cast<std::uint64_t>(a.index));
}

ProElement LSpace::subset_point(const PeriodicSet& s) const {
  if (s.finite()) {
    const std::uint64_t m = s.mask();
    return ProElement{s.name(),
                      [m](const SymPoint& phi) { return phi.kind == kInfinity ? 0 : bit(m, phi.index); },
                      SymPoint{kFinite, static_cast<std::int64_t>(m)}};
  }
  return ProElement{s.name(), [s](const SymPoint& phi) -> Elem {
                      return phi.kind == kInfinity ? 0 : (s.contains(phi.index) ? 1 : 0);
                    },
                    std::nullopt};
}

std::optional<ProElement> LSpace::parse_point(std::string_view name) const {
  if (name == "top" || name == "ω")
    return ProElement{"top", [](const SymPoint&) { return Elem{1}; }, SymPoint{kTop, 0}};
  auto s = PeriodicSet::parse(name);
  if (!s) return std::nullopt;
  return subset_point(*s);
}

std::vector<ProElement> LSpace::sample_points(int) const {
  std::vector<ProElement> out;
  for (const char* n : {"evens", "odds", "all", "ep:0|011", "top", "finite:{}", "finite:{0}", "finite:{1}",
                        "finite:{0,1}"})
    out.push_back(*parse_point(n));
  return out;
}

std::vector<std::pair<SymPoint, SymPoint>> LSpace::comparable_pairs(int depth, const TotalOrder& ord) const {
  const bool reversed = !ord.is_index_order();
  std::vector<std::pair<SymPoint, SymPoint>> out;
  const SymPoint inf{kInfinity, 0};
  for (const auto& p : dual_slice(depth)) {
    out.push_back({p, p});
    if (p.kind == kPhi) out.push_back(reversed ? std::pair{p, inf} : std::pair{inf, p});
  }
  return out;
}

std::vector<Witness> LSpace::witnesses_for(const ProElement& x) const {
  if (!witnesses_enabled() || x.algebra_point) return {};
  auto s = PeriodicSet::parse(x.name);
  if (!s || s->finite() || s->name() != x.name) return {};
  PeriodicSet set = *s;
  return {Witness{"f = 0 on {∞} ∪ {φ_n : n ∉ " + set.name() + "}",
                  [set](const SymPoint& phi) { return phi.kind == kInfinity || !set.contains(phi.index); },
                  [](const SymPoint&) { return Elem{0}; },
                  [set](const SymPoint& a) {
                    if (a.kind == kTop) return false;
                    auto m = static_cast<std::uint64_t>(a.index);
                    for (int i = 0; i < 64; ++i)
                      if (((m >> i) & 1u) && !set.contains(i)) return false;
                    return true;
                  }}};
}

bool LSpace::pending_witness(const ProElement& x) const {
  if (witnesses_enabled() || x.algebra_point) return false;
  auto s = PeriodicSet::parse(x.name);
  return s && !s->finite();
}

FiniteTarget l_target_two() { return FiniteTarget::make(dl_two(), dl_two()); }

FiniteTarget l_target_four() { return FiniteTarget::make(direct_power(dl_two(), 2), dl_two()); }

MapBetweenAlgebras l_u_subset(const PeriodicSet& a) {
  return MapBetweenAlgebras{"u_" + a.name(), [a](const SymPoint& x) -> Elem {
                              if (x.kind == kTop) return a == PeriodicSet::make({}, {true}) ? 0 : 1;
                              auto m = static_cast<std::uint64_t>(x.index);
                              for (int i = 0; i < 64; ++i)
                                if (((m >> i) & 1u) && !a.contains(i)) return 1;
                              return 0;
                            }};
}

std::vector<CaseFunction> l_case_functions() {
  auto l = std::make_shared<LSpace>();
  auto parity = [](const SymPoint& x) -> Elem {
    return x.kind == kTop ? 1 : std::popcount(static_cast<std::uint64_t>(x.index)) % 2;
  };
  std::vector<CaseFunction> out;

  CaseFunction p;
  p.name = "l-parity";
  p.description = "u(X) = |X| mod 2 into 2, u(ω) = 1";
  p.space = l;
  p.target = l_target_two();
  p.map = MapBetweenAlgebras{"parity", parity};
  p.point = "evens";
  p.window = {0};
  p.expected.smooth = Verdict::Counterexample;
  p.expected.values = ValueSet{{0}, {1}};
  p.expected.lower = Tuple{0};
  p.expected.upper = Tuple{1};
  out.push_back(p);

  CaseFunction pp;
  pp.name = "l-pair-parity";
  pp.description = "u(X) = (|X| mod 2, (|X|+1) mod 2) into 2², u(ω) = (1,1)";
  pp.space = l;
  pp.target = l_target_four();
  pp.map = MapBetweenAlgebras{"pair-parity", [parity](const SymPoint& x) -> Elem {
                                if (x.kind == kTop) return static_cast<Elem>(tuple_index(Tuple{1, 1}, 2));
                                Elem q = parity(x);
                                return static_cast<Elem>(tuple_index(Tuple{q, 1 - q}, 2));
                              }};
  pp.point = "evens";
  pp.window = {0, 1};
  pp.expected.smooth = Verdict::Counterexample;
  pp.expected.values = ValueSet{{0, 1}, {1, 0}};
  pp.expected.lower = Tuple{0, 0};
  pp.expected.upper = Tuple{1, 1};
  out.push_back(pp);

  CaseFunction ue;
  ue.name = "l-u-evens";
  ue.description = "u_A(X) = 0 iff X ⊆ A, with A the even numbers";
  ue.space = l;
  ue.target = l_target_two();
  ue.map = l_u_subset(*PeriodicSet::parse("evens"));
  ue.point = "evens";
  ue.window = {0};
  ue.expected.smooth = Verdict::Evidence;
  ue.expected.strong = Verdict::Counterexample;
  ue.expected.values = ValueSet{{0}};
  out.push_back(ue);

  CaseFunction np;
  np.name = "l-neg-phi0";
  np.description = "u(X) = 1 - φ₀(X), the negation composed with a dual point";
  np.space = l;
  np.target = l_target_two();
  np.map = MapBetweenAlgebras{"neg∘φ₀", [](const SymPoint& x) -> Elem {
                                return x.kind == kTop ? 0 : 1 - bit(static_cast<std::uint64_t>(x.index), 0);
                              }};
  np.point = "evens";
  np.window = {0};
  np.expected.smooth = Verdict::Evidence;
  np.expected.strong = Verdict::Evidence;
  np.expected.values = ValueSet{{0}};
  out.push_back(np);

  CaseFunction mu;
  mu.name = "median-u-prime";
  mu.description = "u(a_i) = 0, u(b_i) = 1 on the tree median algebra";
  mu.space = std::make_shared<MedianTreeSpace>();
  mu.target = median_u_target();
  mu.map = median_u();
  mu.point = "∞";
  mu.window = {1};
  mu.depth = 8;
  mu.expected.smooth = Verdict::Evidence;
  mu.expected.values = ValueSet{{0}};
  out.push_back(mu);

  return out;
}

std::optional<CaseFunction> find_case_function(std::string_view name) {
  for (auto& c : l_case_functions())
    if (c.name == name) return c;
  return std::nullopt;
}

}  // namespace natdual::cases
