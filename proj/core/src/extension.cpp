#include "natdual/extension.hpp"

#include <algorithm>

#include "natdual/error.hpp"

namespace natdual {

namespace {

bool order_is_subuniverse(const FiniteAlgebra& m, const std::vector<int>& rank) {
  std::vector<Tuple> pairs;
  for (Elem a = 0; a < m.size(); ++a)
    for (Elem b = 0; b < m.size(); ++b)
      if (rank[static_cast<std::size_t>(a)] <= rank[static_cast<std::size_t>(b)]) pairs.push_back({a, b});
  auto le = [&](Elem a, Elem b) { return rank[static_cast<std::size_t>(a)] <= rank[static_cast<std::size_t>(b)]; };
  for (std::size_t op = 0; op < m.signature().size(); ++op) {
    int k = m.signature()[op].arity;
    std::size_t count = ipow(pairs.size(), k);
    Tuple left(static_cast<std::size_t>(k));
    Tuple right(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < count; ++j) {
      Tuple pick = tuple_at(j, pairs.size(), k);
      for (std::size_t i = 0; i < pick.size(); ++i) {
        left[i] = pairs[static_cast<std::size_t>(pick[i])][0];
        right[i] = pairs[static_cast<std::size_t>(pick[i])][1];
      }
      if (!le(m.apply(op, left), m.apply(op, right))) return false;
    }
  }
  return true;
}

}  // namespace

TotalOrder TotalOrder::index_order(const FiniteAlgebra& m) {
  std::vector<Elem> seq(static_cast<std::size_t>(m.size()));
  for (Elem e = 0; e < m.size(); ++e) seq[static_cast<std::size_t>(e)] = e;
  return from_sequence(m, seq);
}

TotalOrder TotalOrder::from_sequence(const FiniteAlgebra& m, const std::vector<Elem>& sequence) {
  if (sequence.size() != static_cast<std::size_t>(m.size()))
    throw InvalidArgument("order must list every element of M exactly once");
  TotalOrder ord;
  ord.rank.assign(sequence.size(), -1);
  for (std::size_t i = 0; i < sequence.size(); ++i) {
    Elem e = sequence[i];
    if (e < 0 || e >= m.size() || ord.rank[static_cast<std::size_t>(e)] >= 0)
      throw InvalidArgument("order must list every element of M exactly once");
    ord.rank[static_cast<std::size_t>(e)] = static_cast<int>(i);
  }
  ord.algebraic = order_is_subuniverse(m, ord.rank);
  return ord;
}

bool TotalOrder::is_index_order() const {
  for (std::size_t i = 0; i < rank.size(); ++i)
    if (rank[i] != static_cast<int>(i)) return false;
  return true;
}

std::vector<Witness> SourceSpace::witnesses_for(const ProElement& x) const {
  if (!witnesses_enabled_) return {};
  auto it = registry_.find(x.name);
  return it == registry_.end() ? std::vector<Witness>{} : it->second;
}

bool SourceSpace::pending_witness(const ProElement& x) const {
  return !witnesses_enabled_ && registry_.count(x.name) > 0;
}

void SourceSpace::register_witness(const std::string& point, Witness w) { registry_[point].push_back(std::move(w)); }

ProElement SourceSpace::algebra_element(const SymPoint& a) const {
  return ProElement{point_name(a), [this, a](const SymPoint& phi) { return evaluate(a, phi); }, a};
}

FiniteSource::FiniteSource(FiniteAlgebra a, AlterEgo ego)
    : a_(std::move(a)), ego_(std::move(ego)), ext_(natural_extension(a_, ego_)) {}

std::vector<SymPoint> FiniteSource::dual_slice(int) const {
  std::vector<SymPoint> out;
  for (int i = 0; i < ext_.dual.structure.size(); ++i) out.push_back({0, i});
  return out;
}

std::vector<SymPoint> FiniteSource::algebra_points(int) const {
  std::vector<SymPoint> out;
  for (Elem x = 0; x < a_.size(); ++x) out.push_back({0, x});
  return out;
}

Elem FiniteSource::evaluate(const SymPoint& a, const SymPoint& phi) const {
  return ext_.dual.points[static_cast<std::size_t>(phi.index)](static_cast<Elem>(a.index));
}

SymPoint FiniteSource::apply(std::size_t op, std::span<const SymPoint> args) const {
  Tuple t;
  for (const auto& p : args) t.push_back(static_cast<Elem>(p.index));
  return {0, a_.apply(op, t)};
}

std::string FiniteSource::point_name(const SymPoint& a) const { return a_.label(static_cast<Elem>(a.index)); }

std::string FiniteSource::dual_name(const SymPoint& phi) const { return phi_label(static_cast<int>(phi.index)); }

ProElement FiniteSource::extension_point(int index) const {
  const auto& map = ext_.points[static_cast<std::size_t>(index)].map;
  return ProElement{ext_.algebra.label(index), [map](const SymPoint& phi) { return map[static_cast<std::size_t>(phi.index)]; },
                    std::nullopt};
}

std::optional<ProElement> FiniteSource::parse_point(std::string_view name) const {
  auto idx = ext_.algebra.find_label(name);
  if (!idx) return std::nullopt;
  for (Elem x = 0; x < a_.size(); ++x)
    if (ext_.embedding[static_cast<std::size_t>(x)] == *idx) return algebra_element({0, x});
  return extension_point(*idx);
}

std::vector<ProElement> FiniteSource::sample_points(int) const {
  std::vector<ProElement> out;
  for (int i = 0; i < ext_.algebra.size(); ++i) {
    std::optional<Elem> pre;
    for (Elem x = 0; x < a_.size() && !pre; ++x)
      if (ext_.embedding[static_cast<std::size_t>(x)] == i) pre = x;
    out.push_back(pre ? algebra_element({0, *pre}) : extension_point(i));
  }
  return out;
}

std::vector<std::pair<SymPoint, SymPoint>> FiniteSource::comparable_pairs(int, const TotalOrder& ord) const {
  std::vector<std::pair<SymPoint, SymPoint>> out;
  const auto& pts = ext_.dual.points;
  for (std::size_t i = 0; i < pts.size(); ++i)
    for (std::size_t j = 0; j < pts.size(); ++j) {
      bool le = true;
      for (Elem x = 0; x < a_.size() && le; ++x) le = ord.less_equal(pts[i](x), pts[j](x));
      if (le) out.push_back({{0, static_cast<std::int64_t>(i)}, {0, static_cast<std::int64_t>(j)}});
    }
  return out;
}

FiniteTarget FiniteTarget::make(FiniteAlgebra b, FiniteAlgebra m) {
  FiniteTarget t{std::move(b), std::move(m), {}};
  t.dual = enumerate_homs(t.algebra, t.m);
  return t;
}

std::vector<int> FiniteTarget::all_dual() const {
  std::vector<int> out(dual.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = static_cast<int>(i);
  return out;
}

std::optional<int> FiniteTarget::find_dual(std::string_view label) const {
  for (std::size_t i = 0; i < dual.size(); ++i)
    if (phi_label(static_cast<int>(i)) == label) return static_cast<int>(i);
  return std::nullopt;
}

Tuple FiniteTarget::restrict(Elem b, const std::vector<int>& window) const {
  Tuple t;
  t.reserve(window.size());
  for (int phi : window) t.push_back(dual[static_cast<std::size_t>(phi)](b));
  return t;
}

std::optional<Elem> FiniteTarget::element_of(const Tuple& full) const {
  std::vector<int> all = all_dual();
  for (Elem b = 0; b < algebra.size(); ++b)
    if (restrict(b, all) == full) return b;
  return std::nullopt;
}

MapBetweenAlgebras map_from_table(std::string name, std::vector<Elem> table) {
  return MapBetweenAlgebras{std::move(name), [table = std::move(table)](const SymPoint& a) {
                              return table.at(static_cast<std::size_t>(a.index));
                            }};
}

bool Neighborhood::contains(const SourceSpace& space, const SymPoint& a) const {
  for (const auto& [phi, v] : fixed)
    if (space.evaluate(a, phi) != v) return false;
  for (const auto& w : witnesses) {
    if (!w.admits(a)) return false;
    // Pointwise spot check that e_A(a) really lies in O_f on the fixed part.
    for (const auto& [phi, v] : fixed)
      if (w.in_domain(phi) && space.evaluate(a, phi) != w.value(phi))
        throw PreconditionFailed("witness '" + w.name + "' admits " + space.point_name(a) + " outside its open set");
  }
  return true;
}

Neighborhood Neighborhood::from_partial(const PartialMorphism& f) {
  Neighborhood n;
  for (Elem d : f.domain) n.fixed.push_back({{0, d}, f.map[static_cast<std::size_t>(d)]});
  return n;
}

Neighborhood Neighborhood::around(const SourceSpace& space, const ProElement& x, int depth, bool with_witnesses) {
  Neighborhood n;
  for (const auto& phi : space.dual_slice(depth)) n.fixed.push_back({phi, x.rule(phi)});
  if (with_witnesses) {
    n.witnesses = space.witnesses_for(x);
    for (const auto& w : n.witnesses)
      for (const auto& [phi, v] : n.fixed)
        if (w.in_domain(phi) && w.value(phi) != v)
          throw PreconditionFailed("witness '" + w.name + "' is not contained in " + x.name);
  }
  return n;
}

ValueSet project(const ValueSet& values, const std::vector<int>& from, const std::vector<int>& to) {
  std::vector<std::size_t> pos;
  for (int phi : to) {
    auto it = std::find(from.begin(), from.end(), phi);
    if (it == from.end()) throw InvalidArgument("project: target window is not contained in the source window");
    pos.push_back(static_cast<std::size_t>(it - from.begin()));
  }
  ValueSet out;
  for (const auto& t : values) {
    Tuple r;
    for (std::size_t p : pos) r.push_back(t[p]);
    out.insert(std::move(r));
  }
  return out;
}

ValueSet window_image(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                      const Neighborhood& v, const std::vector<int>& window, int depth) {
  ValueSet out;
  for (const auto& a : space.algebra_points(depth))
    if (v.contains(space, a)) out.insert(target.restrict(u.rule(a), window));
  if (out.empty()) throw EmptyAtDepth("neighbourhood contains no algebra point up to depth " + std::to_string(depth), depth);
  return out;
}

WindowReport point_window(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                          const ProElement& x, const std::vector<int>& window, int depth,
                          const WindowOptions& options) {
  WindowReport r;
  r.point = x.name;
  r.window = window;
  r.depth = depth;
  if (x.algebra_point) {
    // Algebra points are δ-isolated: O_{e(a)} = {e(a)}.
    r.values = {target.restrict(u.rule(*x.algebra_point), window)};
    r.stabilized = true;
    r.history.push_back({0, r.values});
    return r;
  }
  for (const auto& w : space.witnesses_for(x)) r.witnesses.push_back(w.name);
  r.pending_witness = space.pending_witness(x);
  const int first = std::max(0, depth - options.stabilization_runs);
  for (int d = first; d <= depth; ++d) {
    Neighborhood n = Neighborhood::around(space, x, d, true);
    r.history.push_back({d, window_image(space, target, u, n, window, d + options.pool_margin)});
  }
  r.values = r.history.back().second;
  bool unchanged = std::all_of(r.history.begin(), r.history.end(), [&](const auto& h) { return h.second == r.values; });
  bool enough = space.finite() || static_cast<int>(r.history.size()) == options.stabilization_runs + 1;
  r.stabilized = unchanged && enough && !r.pending_witness;
  return r;
}

WindowReport tilde_u(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                     const ProElement& x, const std::vector<int>& window, int depth, const WindowOptions& options) {
  return point_window(space, target, u, x, window, depth, options);
}

std::string to_string(Verdict v) {
  switch (v) {
    case Verdict::Evidence: return "evidence";
    case Verdict::Counterexample: return "counterexample";
    case Verdict::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

SmoothReport check_smooth(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                          const std::vector<ProElement>& samples, const std::vector<std::vector<int>>& windows,
                          int depth, const WindowOptions& options) {
  SmoothReport rep;
  rep.depth = depth;
  for (const auto& x : samples)
    for (const auto& f : windows) {
      WindowReport w;
      try {
        w = point_window(space, target, u, x, f, depth, options);
      } catch (const EmptyAtDepth&) {
        continue;  // x is not in the closure of the algebra points
      }
      ++rep.windows_checked;
      if (w.values.size() < 2) continue;
      if (w.stabilized) {
        rep.verdict = Verdict::Counterexample;
        rep.witness = std::move(w);
        return rep;
      }
      if (rep.verdict == Verdict::Evidence) {
        rep.verdict = Verdict::Inconclusive;
        rep.witness = std::move(w);
      }
    }
  return rep;
}

StrongReport check_strong(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                          const std::vector<ProElement>& samples, const std::vector<std::vector<int>>& windows,
                          int depth, const WindowOptions& options) {
  StrongReport rep;
  rep.depth = depth;
  for (const auto& x : samples)
    for (const auto& f : windows) {
      WindowReport w;
      try {
        w = point_window(space, target, u, x, f, depth, options);
      } catch (const EmptyAtDepth&) {
        continue;
      }
      ++rep.windows_checked;
      // ι-neighbourhoods of x: agreement on a slice. Look for one whose
      // algebra points all stay inside the window.
      std::vector<Escape> escapes;
      bool contained_somewhere = false;
      for (int d = 0; d <= depth && !contained_somewhere; ++d) {
        Neighborhood n = Neighborhood::around(space, x, d, false);
        std::optional<Escape> esc;
        for (const auto& a : space.algebra_points(d + options.pool_margin)) {
          if (!n.contains(space, a)) continue;
          Tuple v = target.restrict(u.rule(a), f);
          if (!w.values.count(v)) {
            esc = Escape{d, space.point_name(a), v};
            break;
          }
        }
        if (esc)
          escapes.push_back(*esc);
        else
          contained_somewhere = true;
      }
      if (!contained_somewhere) {
        rep.verdict = Verdict::Counterexample;
        rep.window = std::move(w);
        rep.escapes = std::move(escapes);
        return rep;
      }
    }
  return rep;
}

ValueSet lift_bar_u(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                    const std::vector<ProElement>& k, const std::vector<int>& window, int depth,
                    const WindowOptions& options) {
  StrongReport strong = check_strong(space, target, u, k, {window}, depth, options);
  if (strong.verdict == Verdict::Counterexample)
    throw PreconditionFailed("lift_bar_u: " + u.name + " is not strong at " + strong.window->point);
  ValueSet out;
  for (const auto& x : k) {
    auto w = point_window(space, target, u, x, window, depth, options);
    out.insert(w.values.begin(), w.values.end());
  }
  return out;
}

CompositionReport check_composition(const SourceSpace& space, const FiniteTarget& middle,
                                    const MapBetweenAlgebras& u, const std::vector<Elem>& v,
                                    const FiniteTarget& outer, const ProElement& x, const std::vector<int>& window,
                                    int depth, const WindowOptions& options) {
  if (v.size() != static_cast<std::size_t>(middle.algebra.size()))
    throw InvalidArgument("check_composition: outer map is not total on B");
  CompositionReport rep;
  MapBetweenAlgebras vu{"v∘" + u.name, [&u, &v](const SymPoint& a) {
                          return v[static_cast<std::size_t>(u.rule(a))];
                        }};
  rep.composite = point_window(space, outer, vu, x, window, depth, options).values;
  ValueSet inner = point_window(space, middle, u, x, middle.all_dual(), depth, options).values;
  for (const auto& t : inner) {
    auto b = middle.element_of(t);
    if (!b) throw PreconditionFailed("check_composition: B* does not separate the points of B");
    rep.lifted.insert(outer.restrict(v[static_cast<std::size_t>(*b)], window));
  }
  rep.subset = std::includes(rep.lifted.begin(), rep.lifted.end(), rep.composite.begin(), rep.composite.end());
  rep.equal = rep.composite == rep.lifted;
  rep.outer_is_homomorphism = middle.algebra.signature() == outer.algebra.signature() &&
                              is_homomorphism(middle.algebra, outer.algebra, v);
  return rep;
}

Localized localize(const FiniteTarget& target, const MapBetweenAlgebras& u, int phi) {
  if (phi < 0 || static_cast<std::size_t>(phi) >= target.dual.size())
    throw InvalidArgument("localize: no dual point " + std::to_string(phi));
  Homomorphism h = target.dual[static_cast<std::size_t>(phi)];
  Localized loc{MapBetweenAlgebras{u.name + "_" + phi_label(phi),
                                   [h, rule = u.rule](const SymPoint& a) { return h(rule(a)); }},
                FiniteTarget::make(target.m, target.m), -1};
  for (std::size_t i = 0; i < loc.target.dual.size(); ++i) {
    const auto& map = loc.target.dual[i].map;
    bool id = true;
    for (std::size_t e = 0; e < map.size(); ++e) id = id && map[e] == static_cast<Elem>(e);
    if (id) loc.identity = static_cast<int>(i);
  }
  return loc;
}

UpDownReport upper_lower(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                         const ProElement& x, const std::vector<int>& window, int depth, const TotalOrder& ord,
                         const WindowOptions& options) {
  UpDownReport rep;
  rep.window = window;
  rep.stabilized = true;
  auto lesser = [&](Elem a, Elem b) { return ord.less_equal(a, b) ? a : b; };
  auto greater = [&](Elem a, Elem b) { return ord.less_equal(a, b) ? b : a; };
  for (int phi : window) {
    Localized loc = localize(target, u, phi);
    WindowReport w = point_window(space, loc.target, loc.map, x, {loc.identity}, depth, options);
    rep.stabilized = rep.stabilized && w.stabilized;
    Elem lo = (*w.values.begin())[0];
    Elem hi = lo;
    for (const auto& t : w.values) {
      lo = lesser(lo, t[0]);
      hi = greater(hi, t[0]);
    }
    rep.lower.push_back(lo);
    rep.upper.push_back(hi);
  }
  WindowReport full = point_window(space, target, u, x, window, depth, options);
  rep.stabilized = rep.stabilized && full.stabilized;
  rep.values = full.values;
  rep.values_meet = *rep.values.begin();
  rep.values_join = *rep.values.begin();
  for (const auto& t : rep.values)
    for (std::size_t i = 0; i < t.size(); ++i) {
      rep.values_meet[i] = lesser(rep.values_meet[i], t[i]);
      rep.values_join[i] = greater(rep.values_join[i], t[i]);
    }
  rep.meet_agrees = rep.values_meet == rep.lower;
  rep.join_agrees = rep.values_join == rep.upper;
  rep.sandwich = std::all_of(rep.values.begin(), rep.values.end(), [&](const Tuple& s) {
    for (std::size_t i = 0; i < s.size(); ++i)
      if (!ord.less_equal(rep.lower[i], s[i]) || !ord.less_equal(s[i], rep.upper[i])) return false;
    return true;
  });
  return rep;
}

LocalLatticeReport check_local_lattice(const FiniteTarget& target, const TotalOrder& ord, int max_dual) {
  LocalLatticeReport rep;
  const auto n = target.dual.size();
  if (n > static_cast<std::size_t>(max_dual))
    throw GuardExceeded("check_local_lattice: |B*| = " + std::to_string(n) + " exceeds guard " + std::to_string(max_dual));
  const std::uint64_t masks = std::uint64_t{1} << n;
  for (std::uint64_t mask = 1; mask < masks; ++mask) {
    std::vector<int> f;
    for (std::size_t i = 0; i < n; ++i)
      if (mask >> i & 1) f.push_back(static_cast<int>(i));
    std::set<Tuple> image;
    for (Elem b = 0; b < target.algebra.size(); ++b) image.insert(target.restrict(b, f));
    for (Elem b = 0; b < target.algebra.size(); ++b)
      for (Elem c = b + 1; c < target.algebra.size(); ++c) {
        Tuple tb = target.restrict(b, f);
        Tuple tc = target.restrict(c, f);
        Tuple meet(f.size());
        Tuple join(f.size());
        for (std::size_t i = 0; i < f.size(); ++i) {
          meet[i] = ord.less_equal(tb[i], tc[i]) ? tb[i] : tc[i];
          join[i] = ord.less_equal(tb[i], tc[i]) ? tc[i] : tb[i];
        }
        ++rep.checks;
        const char* failed = !image.count(meet) ? "meet" : (!image.count(join) ? "join" : nullptr);
        if (failed && rep.holds) {
          rep.holds = false;
          rep.b = b;
          rep.c = c;
          rep.window = f;
          rep.operation = failed;
          return rep;
        }
      }
  }
  return rep;
}

APlusReport check_a_plus_membership(const SourceSpace& space, const ProElement& x, const TotalOrder& ord, int depth) {
  APlusReport rep;
  for (const auto& [phi, psi] : space.comparable_pairs(depth, ord)) {
    ++rep.pairs;
    if (!ord.less_equal(x.rule(phi), x.rule(psi))) {
      rep.holds = false;
      rep.violation = std::make_pair(space.dual_name(phi), space.dual_name(psi));
      return rep;
    }
  }
  return rep;
}

std::set<Elem> gamma_lift(const FiniteAlgebra& algebra, std::size_t op, const std::vector<std::set<Elem>>& args) {
  if (op >= algebra.signature().size()) throw InvalidArgument("gamma_lift: no such operation");
  if (args.size() != static_cast<std::size_t>(algebra.signature()[op].arity))
    throw InvalidArgument("gamma_lift: operation '" + algebra.signature()[op].name + "' expects " +
                          std::to_string(algebra.signature()[op].arity) + " arguments");
  std::vector<std::vector<Elem>> lists;
  for (const auto& s : args) {
    for (Elem e : s)
      if (e < 0 || e >= algebra.size()) throw InvalidArgument("gamma_lift: element outside the carrier");
    lists.emplace_back(s.begin(), s.end());
  }
  std::set<Elem> out;
  Tuple t(args.size());
  std::function<void(std::size_t)> rec = [&](std::size_t i) {
    if (i == lists.size()) {
      out.insert(algebra.apply(op, t));
      return;
    }
    for (Elem e : lists[i]) {
      t[i] = e;
      rec(i + 1);
    }
  };
  rec(0);
  return out;
}

SelectionReport no_continuous_selection_demo(const SourceSpace& space, const FiniteTarget& target,
                                             const MapBetweenAlgebras& u, const ProElement& x,
                                             const std::vector<int>& window, int depth,
                                             const WindowOptions& options) {
  SelectionReport rep;
  rep.window = point_window(space, target, u, x, window, depth, options);
  if (rep.window.values.size() < 2)
    throw PreconditionFailed("no_continuous_selection_demo: the window of " + u.name + " at " + x.name +
                             " is a singleton");
  for (const auto& proposed : rep.window.values)
    for (const auto& [d, values] : rep.window.history) {
      Neighborhood n = Neighborhood::around(space, x, d, true);
      for (const auto& a : space.algebra_points(d + options.pool_margin)) {
        if (!n.contains(space, a)) continue;
        Tuple v = target.restrict(u.rule(a), window);
        if (v != proposed) {
          rep.forcing.push_back(ForcingPoint{proposed, d, space.point_name(a), v});
          break;
        }
      }
    }
  return rep;
}

HomCheck map_is_homomorphism(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                             int depth) {
  HomCheck rep;
  const auto& sig = space.signature();
  if (sig != target.algebra.signature()) {
    rep.holds = false;
    rep.detail = "source and target signatures differ";
    return rep;
  }
  std::vector<SymPoint> pts = space.algebra_points(depth);
  for (std::size_t op = 0; op < sig.size(); ++op) {
    int k = sig[op].arity;
    std::size_t count = ipow(pts.size(), k);
    std::vector<SymPoint> args(static_cast<std::size_t>(k));
    Tuple images(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < count; ++j) {
      Tuple pick = tuple_at(j, pts.size(), k);
      for (std::size_t i = 0; i < pick.size(); ++i) {
        args[i] = pts[static_cast<std::size_t>(pick[i])];
        images[i] = u.rule(args[i]);
      }
      Elem lhs = u.rule(space.apply(op, args));
      Elem rhs = target.algebra.apply(op, images);
      if (lhs != rhs) {
        rep.holds = false;
        std::string shown;
        for (const auto& a : args) shown += (shown.empty() ? "" : ", ") + space.point_name(a);
        rep.detail = u.name + " does not commute with " + sig[op].name + " at (" + shown + ")";
        return rep;
      }
    }
  }
  return rep;
}

}  // namespace natdual
