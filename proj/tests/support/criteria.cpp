#include "criteria.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <memory>
#include <random>
#include <sstream>

#include "natdual/natdual.hpp"

namespace natdual::testing {

namespace {

using namespace natdual::cases;

using Clock = std::chrono::steady_clock;

CriterionResult timed(int id, std::string title, double budget, const std::function<bool(std::ostringstream&)>& body) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.budget = budget;
  std::ostringstream detail;
  auto start = Clock::now();
  try {
    r.pass = body(detail);
  } catch (const std::exception& e) {
    r.pass = false;
    detail << "exception: " << e.what();
  }
  r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  if (r.seconds >= budget) {
    r.pass = false;
    detail << "; over budget";
  }
  r.detail = detail.str();
  return r;
}

const FiniteAlgebra& suite_algebra(const std::string& name) {
  static const std::map<std::string, FiniteAlgebra> all = [] {
    std::map<std::string, FiniteAlgebra> m;
    for (auto& e : median_suite()) m.emplace(e.name, e.algebra);
    for (auto& e : dl_suite()) m.emplace(e.name, e.algebra);
    return m;
  }();
  return all.at(name);
}

AlterEgo ego_of(const FiniteAlgebra& a) { return a.signature() == median_signature() ? median_ego() : dl_ego(); }

std::string values_str(const ValueSet& v) {
  std::string s = "{";
  bool first = true;
  for (const auto& t : v) {
    s += first ? "" : ",";
    first = false;
    if (t.size() == 1) {
      s += std::to_string(t[0]);
    } else {
      s += "(";
      for (std::size_t i = 0; i < t.size(); ++i) s += (i ? "," : "") + std::to_string(t[i]);
      s += ")";
    }
  }
  return s + "}";
}

// Figure of the dual of the two-element median algebra in prime-ideal form:
// ideals ordered by reverse inclusion (the pointwise order on homs), • the
// complement, constant 0 the whole algebra and constant 1 the empty ideal.
FiniteStructure median_two_ideal_figure() {
  // 0 = ∅, 1 = {0}, 2 = {1}, 3 = {0,1}
  const std::vector<unsigned> masks{0b00, 0b01, 0b10, 0b11};
  std::vector<Tuple> le;
  for (Elem p = 0; p < 4; ++p)
    for (Elem q = 0; q < 4; ++q)
      if ((masks[q] & masks[p]) == masks[q]) le.push_back({p, q});
  std::sort(le.begin(), le.end());
  std::vector<Elem> bullet{3, 2, 1, 0};
  return FiniteStructure(median_ego().structure.signature(), 4, {le}, {bullet}, {}, {3, 0},
                         {"∅", "{0}", "{1}", "2"});
}

}  // namespace

CriterionResult criterion_1() {
  return timed(1, "dual and bidual of the median algebra 2", 1.0, [](std::ostringstream& d) {
    AlterEgo ego = median_ego();
    DualSpace dual = dual_of(median_two(), ego);
    FiniteStructure fig = median_two_ideal_figure();
    // φ ↦ φ⁻¹(0) read as an index into the figure.
    std::vector<Elem> to_ideal;
    for (const auto& h : dual.points) {
      unsigned mask = 0;
      for (Elem x = 0; x < 2; ++x)
        if (h(x) == 0) mask |= 1u << x;
      to_ideal.push_back(mask == 0 ? 0 : mask == 1 ? 1 : mask == 2 ? 2 : 3);
    }
    const bool figure = is_structure_isomorphism(dual.structure, fig, to_ideal);
    NaturalExtension ext = natural_extension(median_two(), ego);
    DualityCertificate cert = check_duality(median_two(), ego);
    const bool iso = ext.embedding_homomorphism && is_algebra_isomorphism(median_two(), ext.algebra, ext.embedding);
    d << "|A*| = " << dual.points.size() << ", figure order and • via φ ↦ φ⁻¹(0): " << (figure ? "yes" : "no")
      << ", |A^δ| = " << ext.points.size() << ", e_A isomorphism: " << (iso && cert.holds ? "yes" : "no");
    return dual.points.size() == 4 && figure && ext.points.size() == 2 && iso && cert.holds;
  });
}

CriterionResult criterion_2() {
  return timed(2, "duality, |A^δ| = |A| and Δ a base on both suites", 30.0, [](std::ostringstream& d) {
    std::vector<SuiteEntry> all = median_suite();
    for (auto& e : dl_suite()) all.push_back(e);
    std::size_t ok = 0;
    std::string bad;
    for (const auto& e : all) {
      AlterEgo ego = ego_of(e.algebra);
      const bool duality = check_duality(e.algebra, ego).holds;
      const bool size = natural_extension(e.algebra, ego).points.size() == static_cast<std::size_t>(e.algebra.size());
      DeltaBaseReport base = check_delta_base(e.algebra, ego);
      // Every intersection is empty or O_{f∪g}.
      const bool log_base = base.holds && base.other_matches == 0 && base.empty + base.union_matches == base.pairs;
      if (duality && size && log_base)
        ++ok;
      else if (bad.empty())
        bad = e.name;
    }
    d << ok << "/" << all.size() << " algebras";
    if (!bad.empty()) d << ", first failure " << bad;
    return ok == all.size();
  });
}

CriterionResult criterion_3() {
  return timed(3, "product theorem and congruence product on 5 pairs", 30.0, [](std::ostringstream& d) {
    const std::vector<std::pair<std::string, std::string>> pairs{
        {"median-2", "median-2"}, {"median-2", "median-3"}, {"median-4", "median-2"}, {"dl-2", "dl-3"}, {"dl-4", "dl-2"}};
    std::size_t ok = 0;
    for (const auto& [l, r] : pairs) {
      const FiniteAlgebra& a = suite_algebra(l);
      const FiniteAlgebra& b = suite_algebra(r);
      AlterEgo ego = ego_of(a);
      ProductTheoremReport pt = check_product_theorem(a, b, ego);
      // Re-certify the dual isomorphism independently of the report flag.
      Product p = direct_product(a, b);
      DualSpace dp = dual_of(p.algebra, ego);
      DirectUnion u = direct_union_amalgamated(dual_of(a, ego).structure, dual_of(b, ego).structure);
      auto iso = find_isomorphism(dp.structure, u.structure);
      const bool dual_ok = pt.dual_iso && iso && is_structure_isomorphism(dp.structure, u.structure, *iso);
      const bool con = check_congruence_product(a, b).holds;
      if (pt.extension_iso && dual_ok && pt.agree && con) ++ok;
      d << (d.tellp() > 0 ? ", " : "") << l << "×" << r << (pt.extension_iso && dual_ok && con ? " ok" : " FAIL");
    }
    return ok == pairs.size();
  });
}

CriterionResult criterion_4() {
  return timed(4, "δ = δ′ on bounded distributive lattices up to size 6", 30.0, [](std::ostringstream& d) {
    std::size_t ok = 0, basis = 0, intervals = 0;
    auto suite = dl_suite(6);
    for (const auto& e : suite) {
      DeltaPrimeReport r = dl_delta_equals_delta_prime(e.algebra);
      basis += r.basis_size;
      intervals += r.intervals;
      if (r.holds && r.basis_matched == r.basis_size && r.intervals_as_unions == r.intervals) ++ok;
    }
    d << ok << "/" << suite.size() << " lattices, " << basis << " basis sets, " << intervals << " intervals";
    return ok == suite.size();
  });
}

CriterionResult criterion_5() {
  return timed(5, "median cover formula on 2 and 2²", 10.0, [](std::ostringstream& d) {
    std::size_t instances = 0, coordinatewise = 0, in_algebra = 0;
    for (int k = 1; k <= 2; ++k) {
      FiniteAlgebra a = median_power(k);
      // Index families of length 1 or 2, repeats allowed.
      std::vector<std::vector<Elem>> lists;
      for (Elem x = 0; x < a.size(); ++x) lists.push_back({x});
      for (Elem x = 0; x < a.size(); ++x)
        for (Elem y = 0; y < a.size(); ++y) lists.push_back({x, y});
      for (const auto& as : lists)
        for (const auto& bs : lists) {
          CoverFormulaResult r = check_median_cover_formula(a, as, bs);
          ++instances;
          coordinatewise += r.cover == r.formula_coordinatewise;
          in_algebra += r.cover == r.formula_in_algebra;
        }
    }
    d << instances << " instances, agree under every φ: " << coordinatewise
      << ", agree when read in A itself: " << in_algebra;
    return coordinatewise == instances;
  });
}

CriterionResult criterion_6() {
  return timed(6, "Boolean power 2^X for |X| = 1, 2, 3", 10.0, [](std::ostringstream& d) {
    bool all = true;
    for (int k = 1; k <= 3; ++k) {
      TernaryBooleanReport r = ternary_boolean_check(k);
      const bool ok = r.ok() && r.size == (std::size_t{1} << k);
      all = all && ok;
      d << (k > 1 ? ", " : "") << "k=" << k << " |A^δ|=" << r.size << (ok ? " ok" : " FAIL");
    }
    return all;
  });
}

CriterionResult criterion_7() {
  return timed(7, "median tree: (∞,·,·), e(a_n), e(b_n) and u′", 10.0, [](std::ostringstream& d) {
    // (∞, x_m, y_n) = a_{m∨n}, except (∞, b_n, b_n) which the majority law fixes at b_n.
    std::size_t triples = 0, formula = 0, majority = 0;
    for (int m = 0; m <= 4; ++m)
      for (int n = 0; n <= 4; ++n)
        for (char kx : {'a', 'b'})
          for (char ky : {'a', 'b'}) {
            ++triples;
            std::string r = median_triple_with_infinity(m, n, kx, ky);
            if (r == "a_" + std::to_string(std::max(m, n)))
              ++formula;
            else if (m == n && kx == 'b' && ky == 'b' && r == "b_" + std::to_string(n))
              ++majority;
          }
    const bool triples_ok = formula + majority == triples && majority == 5;

    MedianTreeDual dual;
    auto slice = dual.slice_points(6);
    std::size_t checks = 0, mismatches = 0, union_form_misses = 0;
    for (std::int64_t n = 0; n <= 6; ++n)
      for (const auto& p : slice) {
        checks += 2;
        const bool ea = !ideal_contains(p, tree_a(n));
        const bool eb = !ideal_contains(p, tree_b(n));
        mismatches += (ea != paper_e_a(n, p)) + (eb != paper_e_b(n, p));
        union_form_misses += eb != paper_e_b_union(n, p);
      }

    UPrimeReport with = median_u_prime_smoothness(8, true);
    const ValueSet zero{{0}}, both{{0}, {1}};
    const bool smooth = with.smooth.verdict == Verdict::Evidence && with.windows.size() == 4 &&
                        with.windows[1].values == zero && with.windows[1].stabilized;
    bool stuck = true;
    for (int depth = 0; depth <= 8; ++depth) {
      UPrimeReport without = median_u_prime_smoothness(depth, false);
      stuck = stuck && without.windows[1].values == both && without.smooth.verdict != Verdict::Evidence;
    }
    d << formula << "/" << triples << " triples give a_{m∨n}, " << majority << " (b_n,b_n) give b_n; "
      << checks - mismatches << "/" << checks << " membership checks; union form for e(b_n) misses "
      << union_form_misses << "; u′ window at ∞ over the identity " << values_str(with.windows[1].values)
      << " with witness, " << values_str(both) << " without it at every depth ≤ 8: " << (stuck ? "yes" : "no");
    return triples_ok && mismatches == 0 && smooth && stuck;
  });
}

CriterionResult criterion_8() {
  return timed(8, "L lattice cases", 30.0, [](std::ostringstream& d) {
    bool all = true;
    auto note = [&](const std::string& name, bool ok) {
      d << (d.tellp() > 0 ? ", " : "") << name << (ok ? " ok" : " FAIL");
      all = all && ok;
    };
    for (const auto& c : l_case_functions()) {
      if (c.name == "median-u-prime") continue;
      auto samples = c.space->sample_points(c.depth);
      auto point = c.space->parse_point(c.point);
      if (!point) {
        note(c.name, false);
        continue;
      }
      SmoothReport sm = check_smooth(*c.space, c.target, c.map, samples, {c.window}, c.depth);
      bool ok = sm.verdict == c.expected.smooth;
      WindowReport w = point_window(*c.space, c.target, c.map, *point, c.window, c.depth);
      if (c.expected.values) ok = ok && w.values == *c.expected.values;
      if (c.name == "l-parity")
        ok = ok && sm.witness && sm.witness->point == "evens" && sm.witness->window == std::vector<int>{0} &&
             c.target.dual_name(0) == "φ₀" && sm.witness->values == ValueSet{{0}, {1}};
      if (c.expected.lower || c.expected.upper) {
        UpDownReport ud = upper_lower(*c.space, c.target, c.map, *point, c.window, c.depth,
                                      TotalOrder::index_order(c.space->m()));
        ok = ok && (!c.expected.lower || ud.lower == *c.expected.lower) &&
             (!c.expected.upper || ud.upper == *c.expected.upper);
      }
      if (c.expected.strong) {
        StrongReport st = check_strong(*c.space, c.target, c.map, samples, {c.window}, c.depth);
        ok = ok && st.verdict == *c.expected.strong;
        if (*c.expected.strong == Verdict::Counterexample) ok = ok && st.window && !st.escapes.empty();
      }
      ok = ok && map_is_homomorphism(*c.space, c.target, c.map, 6).holds == c.expected.homomorphism;
      note(c.name, ok);
    }
    return all;
  });
}

namespace {

struct FiniteCase {
  std::string name;
  std::shared_ptr<FiniteSource> source;
  FiniteTarget target;
};

std::vector<FiniteCase> finite_corpus() {
  const std::vector<std::pair<std::string, std::string>> pairs{
      {"median-2", "median-2"}, {"median-3", "median-2"}, {"median-4", "median-3"}, {"median-4-1", "median-2"},
      {"median-2", "median-4"}, {"median-5", "median-2"}, {"dl-2", "dl-3"},         {"dl-3", "dl-2"},
      {"dl-4", "dl-2"},         {"dl-4-1", "dl-3"},       {"dl-3", "dl-4-1"},       {"dl-5", "dl-2"}};
  std::vector<FiniteCase> out;
  for (const auto& [a, b] : pairs) {
    const FiniteAlgebra& src = suite_algebra(a);
    AlterEgo ego = ego_of(src);
    out.push_back({a + "→" + b, std::make_shared<FiniteSource>(src, ego),
                   FiniteTarget::make(suite_algebra(b), ego.algebra)});
  }
  return out;
}

std::vector<int> random_window(const FiniteTarget& t, std::mt19937& rng, bool allow_empty = true) {
  std::vector<int> w;
  std::bernoulli_distribution coin(0.5);
  for (int phi : t.all_dual())
    if (coin(rng)) w.push_back(phi);
  if (w.empty() && !allow_empty && !t.dual.empty()) w.push_back(t.all_dual().front());
  return w;
}

MapBetweenAlgebras random_map(const FiniteCase& c, std::mt19937& rng, std::vector<Elem>* table_out = nullptr) {
  std::uniform_int_distribution<Elem> pick(0, c.target.algebra.size() - 1);
  std::vector<Elem> table;
  for (Elem a = 0; a < c.source->algebra().size(); ++a) table.push_back(pick(rng));
  if (table_out) *table_out = table;
  return map_from_table("u", table);
}

template <class T>
const T& pick_one(const std::vector<T>& v, std::mt19937& rng) {
  return v[std::uniform_int_distribution<std::size_t>(0, v.size() - 1)(rng)];
}

ProElement point_of(const FiniteCase& c, Elem a) {
  return c.source->extension_point(c.source->extension().embedding[static_cast<std::size_t>(a)]);
}

struct Tally {
  PropertyTally t;
  void check(bool ok, const std::string& what) {
    ++t.cases;
    if (!ok) {
      if (t.failures == 0) t.first_failure = what;
      ++t.failures;
    }
  }
};

// Symbolic instances: the registered case functions at a reduced depth.
struct SymbolicCase {
  CaseFunction fn;
  std::vector<ProElement> samples;
};

std::vector<SymbolicCase> symbolic_corpus() {
  std::vector<SymbolicCase> out;
  for (auto& fn : l_case_functions()) {
    fn.depth = std::min(fn.depth, 6);
    auto samples = fn.space->sample_points(fn.depth);
    out.push_back({fn, samples});
  }
  return out;
}

bool within(const TotalOrder& ord, const Tuple& lo, const Tuple& s, const Tuple& hi) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (!ord.less_equal(lo[i], s[i]) || !ord.less_equal(s[i], hi[i])) return false;
  return true;
}

}  // namespace

std::vector<PropertyTally> run_property_suite(unsigned seed, std::size_t scale) {
  std::mt19937 rng(seed);
  auto corpus = finite_corpus();
  auto symbolic = symbolic_corpus();

  Tally anchor{{"window anchor at algebra points"}};
  Tally shrink{{"monotone shrink and coherence"}};
  Tally nonempty{{"nonempty windows"}};
  Tally sandwich{{"sandwich u^∇ ≤ s ≤ u^Δ"}};
  Tally homs{{"homomorphisms smooth and strong"}};
  Tally compose{{"composition equality for homomorphic outer maps"}};
  Tally minimal{{"ũ minimal among Γ-extensions"}};
  Tally gamma{{"Γ-lift monotone, singletons degenerate"}};
  Tally local{{"localization consistency"}};
  Tally degenerate{{"finite case smooth with ũ = e∘u∘e⁻¹"}};

  auto record_nonempty = [&](const WindowReport& w, const std::string& where) {
    nonempty.check(!w.stabilized || !w.values.empty(), where);
  };

  // Anchor, finite degeneracy and localization on finite instances.
  for (std::size_t i = 0; i < 400 * scale; ++i) {
    const FiniteCase& c = pick_one(corpus, rng);
    if (c.source->algebra().size() == 0) continue;
    MapBetweenAlgebras u = random_map(c, rng);
    Elem a = std::uniform_int_distribution<Elem>(0, c.source->algebra().size() - 1)(rng);
    auto f = random_window(c.target, rng);
    const std::string where = c.name + " at " + c.source->algebra().label(a);
    WindowReport w = point_window(*c.source, c.target, u, point_of(c, a), f, 0);
    WindowReport flagged = point_window(*c.source, c.target, u, c.source->algebra_element({0, a}), f, 0);
    const ValueSet expect{c.target.restrict(u.rule({0, a}), f)};
    anchor.check(w.values == expect && flagged.values == expect, where);
    record_nonempty(w, where);
    for (std::size_t k = 0; k < f.size(); ++k) {
      Localized loc = localize(c.target, u, f[k]);
      WindowReport lw = point_window(*c.source, loc.target, loc.map, point_of(c, a), {loc.identity}, 0);
      local.check(project(w.values, f, {f[k]}) == lw.values, where);
    }
  }

  for (std::size_t i = 0; i < 60 * scale; ++i) {
    const FiniteCase& c = pick_one(corpus, rng);
    MapBetweenAlgebras u = random_map(c, rng);
    std::vector<std::vector<int>> windows;
    for (int phi : c.target.all_dual()) windows.push_back({phi});
    windows.push_back(c.target.all_dual());
    SmoothReport sm = check_smooth(*c.source, c.target, u, c.source->sample_points(0), windows, 0);
    bool ok = sm.verdict == Verdict::Evidence;
    for (const auto& x : c.source->sample_points(0)) {
      WindowReport w = tilde_u(*c.source, c.target, u, x, c.target.all_dual(), 0);
      ok = ok && w.values.size() == 1 && x.algebra_point &&
           *w.values.begin() == c.target.restrict(u.rule(*x.algebra_point), c.target.all_dual());
    }
    degenerate.check(ok, c.name);
  }

  // Shrink and coherence on finite and symbolic instances.
  for (std::size_t i = 0; i < 200 * scale; ++i) {
    const FiniteCase& c = pick_one(corpus, rng);
    MapBetweenAlgebras u = random_map(c, rng);
    auto g = random_window(c.target, rng);
    std::vector<int> f;
    for (int phi : g)
      if (std::bernoulli_distribution(0.5)(rng)) f.push_back(phi);
    const ProElement x = pick_one(c.source->sample_points(0), rng);
    WindowReport wg = point_window(*c.source, c.target, u, x, g, 0);
    WindowReport wf = point_window(*c.source, c.target, u, x, f, 0);
    ValueSet proj = project(wg.values, g, f);
    bool ok = std::includes(wf.values.begin(), wf.values.end(), proj.begin(), proj.end());
    if (wg.stabilized && wf.stabilized) ok = ok && proj == wf.values;
    shrink.check(ok, c.name);
    record_nonempty(wg, c.name);
    record_nonempty(wf, c.name);
  }
  for (std::size_t i = 0; i < 60 * scale; ++i) {
    const SymbolicCase& s = pick_one(symbolic, rng);
    const auto& fn = s.fn;
    auto g = random_window(fn.target, rng);
    std::vector<int> f;
    for (int phi : g)
      if (std::bernoulli_distribution(0.5)(rng)) f.push_back(phi);
    const ProElement& x = pick_one(s.samples, rng);
    try {
      WindowReport wg = point_window(*fn.space, fn.target, fn.map, x, g, fn.depth);
      WindowReport wf = point_window(*fn.space, fn.target, fn.map, x, f, fn.depth);
      ValueSet proj = project(wg.values, g, f);
      bool ok = std::includes(wf.values.begin(), wf.values.end(), proj.begin(), proj.end());
      if (wg.stabilized && wf.stabilized) ok = ok && proj == wf.values;
      shrink.check(ok, fn.name + " at " + x.name);
      record_nonempty(wg, fn.name);
      record_nonempty(wf, fn.name);
    } catch (const EmptyAtDepth&) {
      // x is outside the closure of the algebra points at this depth.
    }
  }

  // Sandwich.
  for (std::size_t i = 0; i < 150 * scale; ++i) {
    const FiniteCase& c = pick_one(corpus, rng);
    MapBetweenAlgebras u = random_map(c, rng);
    auto f = random_window(c.target, rng);
    const ProElement x = pick_one(c.source->sample_points(0), rng);
    TotalOrder ord = TotalOrder::index_order(c.source->m());
    UpDownReport r = upper_lower(*c.source, c.target, u, x, f, 0, ord);
    bool ok = r.sandwich;
    for (const auto& s : r.values) ok = ok && within(ord, r.lower, s, r.upper);
    sandwich.check(ok, c.name);
  }
  for (const auto& s : symbolic) {
    TotalOrder ord = TotalOrder::index_order(s.fn.space->m());
    for (const auto& x : s.samples) {
      try {
        UpDownReport r = upper_lower(*s.fn.space, s.fn.target, s.fn.map, x, s.fn.window, s.fn.depth, ord);
        if (!r.stabilized) continue;
        bool ok = r.sandwich;
        for (const auto& v : r.values) ok = ok && within(ord, r.lower, v, r.upper);
        sandwich.check(ok, s.fn.name + " at " + x.name);
      } catch (const EmptyAtDepth&) {
      }
    }
  }

  // Homomorphisms are smooth and strong; composition with homomorphic v.
  for (std::size_t i = 0; i < 60 * scale; ++i) {
    const FiniteCase& c = pick_one(corpus, rng);
    auto hs = enumerate_homs(c.source->algebra(), c.target.algebra);
    if (hs.empty()) continue;
    MapBetweenAlgebras u = map_from_table("h", pick_one(hs, rng).map);
    std::vector<std::vector<int>> windows;
    for (int phi : c.target.all_dual()) windows.push_back({phi});
    auto samples = c.source->sample_points(0);
    const bool ok = check_smooth(*c.source, c.target, u, samples, windows, 0).verdict == Verdict::Evidence &&
                    check_strong(*c.source, c.target, u, samples, windows, 0).verdict == Verdict::Evidence;
    homs.check(ok, c.name);
  }
  {
    auto l = std::make_shared<LSpace>();
    FiniteTarget two = l_target_two();
    for (int n = 0; n < 4; ++n) {
      MapBetweenAlgebras phi{"φ" + std::to_string(n), [l, n](const SymPoint& a) {
                               return l->evaluate(a, SymPoint{kPhi, n});
                             }};
      auto samples = l->sample_points(6);
      const bool ok = check_smooth(*l, two, phi, samples, {{0}}, 6).verdict == Verdict::Evidence &&
                      check_strong(*l, two, phi, samples, {{0}}, 6).verdict == Verdict::Evidence &&
                      map_is_homomorphism(*l, two, phi, 6).holds;
      homs.check(ok, "L φ" + std::to_string(n));
    }
  }
  for (std::size_t i = 0; i < 150 * scale; ++i) {
    const FiniteCase& c = pick_one(corpus, rng);
    auto ends = enumerate_homs(c.target.algebra, c.target.algebra);
    MapBetweenAlgebras u = random_map(c, rng);
    const auto& v = pick_one(ends, rng).map;
    auto f = random_window(c.target, rng);
    const ProElement x = pick_one(c.source->sample_points(0), rng);
    CompositionReport r = check_composition(*c.source, c.target, u, v, c.target, x, f, 0);
    compose.check(r.outer_is_homomorphism && r.subset && r.equal, c.name);
  }
  for (const auto& s : symbolic) {
    auto ends = enumerate_homs(s.fn.target.algebra, s.fn.target.algebra);
    for (const auto& v : ends) {
      auto point = s.fn.space->parse_point(s.fn.point);
      CompositionReport r =
          check_composition(*s.fn.space, s.fn.target, s.fn.map, v.map, s.fn.target, *point, s.fn.window, s.fn.depth);
      compose.check(r.outer_is_homomorphism && r.subset && r.equal, s.fn.name);
    }
  }

  // Minimality: every candidate Γ-extension u′ with u′(e(a)) ∋ e(u(a)) contains ũ.
  // On finite discrete spaces every such map is (δ,σ↓)-continuous.
  for (const auto& [an, bn] : std::vector<std::pair<std::string, std::string>>{
           {"median-2", "median-2"}, {"median-3", "median-2"}, {"median-2", "median-3"}, {"median-4", "median-2"},
           {"dl-2", "dl-3"},         {"dl-3", "dl-2"},         {"dl-4", "dl-2"},         {"dl-3", "dl-3"}}) {
    const FiniteAlgebra& a = suite_algebra(an);
    const FiniteAlgebra& b = suite_algebra(bn);
    AlterEgo ego = ego_of(a);
    FiniteCase c{an + "→" + bn, std::make_shared<FiniteSource>(a, ego), FiniteTarget::make(b, ego.algebra)};
    const auto points = c.source->sample_points(0);
    const int nb = b.size();
    const std::vector<int> all = c.target.all_dual();
    std::vector<Tuple> b_points;
    for (Elem y = 0; y < nb; ++y) b_points.push_back(c.target.restrict(y, all));
    std::size_t maps = 1;
    for (Elem x = 0; x < a.size(); ++x) maps *= static_cast<std::size_t>(nb);
    for (std::size_t code = 0; code < maps; ++code) {
      std::vector<Elem> table;
      for (std::size_t r = code, x = 0; x < static_cast<std::size_t>(a.size()); ++x, r /= nb)
        table.push_back(static_cast<Elem>(r % nb));
      MapBetweenAlgebras u = map_from_table("u", table);
      std::vector<ValueSet> tilde;
      std::vector<std::vector<unsigned>> options;  // candidate value sets per point, as masks over B^δ
      for (const auto& x : points) {
        tilde.push_back(tilde_u(*c.source, c.target, u, x, all, 0).values);
        std::vector<unsigned> opts;
        for (unsigned mask = 1; mask < (1u << nb); ++mask) {
          Elem anchor_value = u.rule(*x.algebra_point);
          if (mask & (1u << anchor_value)) opts.push_back(mask);
        }
        options.push_back(opts);
      }
      // Odometer over the product of the candidate lists.
      std::vector<std::size_t> idx(points.size(), 0);
      while (true) {
        bool ok = true;
        for (std::size_t p = 0; p < points.size() && ok; ++p)
          for (const auto& t : tilde[p]) {
            auto it = std::find(b_points.begin(), b_points.end(), t);
            ok = ok && it != b_points.end() && (options[p][idx[p]] & (1u << (it - b_points.begin())));
          }
        minimal.check(ok, c.name);
        std::size_t p = 0;
        while (p < idx.size() && ++idx[p] == options[p].size()) idx[p++] = 0;
        if (p == idx.size()) break;
      }
    }
  }

  // Γ-lift.
  for (std::size_t i = 0; i < 300 * scale; ++i) {
    const FiniteCase& c = pick_one(corpus, rng);
    const FiniteAlgebra& a = c.source->algebra();
    if (a.size() == 0 || a.signature().size() == 0) continue;
    std::size_t op = std::uniform_int_distribution<std::size_t>(0, a.signature().size() - 1)(rng);
    const int arity = a.signature()[op].arity;
    std::uniform_int_distribution<Elem> pick(0, a.size() - 1);
    std::vector<std::set<Elem>> small, large, singles;
    Tuple args;
    for (int k = 0; k < arity; ++k) {
      std::set<Elem> s{pick(rng)};
      if (std::bernoulli_distribution(0.5)(rng)) s.insert(pick(rng));
      std::set<Elem> l = s;
      l.insert(pick(rng));
      small.push_back(s);
      large.push_back(l);
      Elem e = *s.begin();
      args.push_back(e);
      singles.push_back({e});
    }
    auto gs = gamma_lift(a, op, small);
    auto gl = gamma_lift(a, op, large);
    const bool mono = std::includes(gl.begin(), gl.end(), gs.begin(), gs.end());
    const bool single = gamma_lift(a, op, singles) == std::set<Elem>{a.apply(op, args)};
    gamma.check(mono && single, c.name + " " + a.signature()[op].name);
  }

  return {anchor.t, shrink.t, nonempty.t, sandwich.t, homs.t, compose.t, minimal.t, gamma.t, local.t, degenerate.t};
}

CriterionResult criterion_9() {
  return timed(9, "property suites", 120.0, [](std::ostringstream& d) {
    auto tallies = run_property_suite(20261018u);
    std::size_t cases = 0, failures = 0;
    std::string first;
    for (const auto& t : tallies) {
      cases += t.cases;
      failures += t.failures;
      if (t.failures && first.empty()) first = t.name + ": " + t.first_failure;
    }
    d << tallies.size() << " properties, " << cases << " cases, " << failures << " failures";
    if (!first.empty()) d << " (first: " << first << ")";
    return failures == 0 && cases >= 1000;
  });
}

std::vector<CriterionResult> run_all_criteria() {
  return {criterion_1(), criterion_2(), criterion_3(), criterion_4(), criterion_5(),
          criterion_6(), criterion_7(), criterion_8(), criterion_9()};
}

}  // namespace natdual::testing
