#include <doctest.h>

#include "natdual/natdual.hpp"

using namespace natdual;
using namespace natdual::cases;

namespace {

CaseFunction case_named(const std::string& name) {
  auto c = find_case_function(name);
  REQUIRE(c.has_value());
  return *c;
}

ProElement point(const CaseFunction& c, const std::string& name) {
  auto p = c.space->parse_point(name);
  REQUIRE(p.has_value());
  return *p;
}

ValueSet window_at(const CaseFunction& c, const std::string& x) {
  return point_window(*c.space, c.target, c.map, point(c, x), c.window, c.depth).values;
}

}  // namespace

TEST_SUITE("extension") {
  TEST_CASE("total orders and algebraicity") {
    TotalOrder idx = TotalOrder::index_order(median_two());
    CHECK(idx.algebraic);
    CHECK(idx.is_index_order());
    TotalOrder rev = TotalOrder::from_sequence(dl_two(), {1, 0});
    CHECK(rev.algebraic);
    CHECK_FALSE(rev.is_index_order());
    CHECK(rev.less_equal(1, 0));
    CHECK_THROWS_AS(TotalOrder::from_sequence(dl_two(), {0, 0}), InvalidArgument);
    CHECK_THROWS_AS(TotalOrder::from_sequence(dl_two(), {0}), InvalidArgument);
  }

  TEST_CASE("empty window is the single empty tuple") {
    FiniteSource src(median_two(), median_ego());
    FiniteTarget t = FiniteTarget::make(median_two(), median_two());
    auto u = map_from_table("u", {1, 0});
    for (const auto& x : src.sample_points(0)) CHECK(point_window(src, t, u, x, {}, 0).values == ValueSet{Tuple{}});
  }

  TEST_CASE("contradictory neighbourhood is empty at every depth") {
    FiniteSource src(median_two(), median_ego());
    FiniteTarget t = FiniteTarget::make(median_two(), median_two());
    Neighborhood n;
    n.fixed = {{SymPoint{0, 1}, 0}, {SymPoint{0, 1}, 1}};
    try {
      window_image(src, t, map_from_table("u", {0, 1}), n, {0}, 3);
      FAIL("expected EmptyAtDepth");
    } catch (const EmptyAtDepth& e) {
      CHECK(e.depth() == 3);
    }
  }

  TEST_CASE("project reorders and rejects foreign coordinates") {
    ValueSet v{{0, 1}, {1, 1}};
    CHECK(project(v, {3, 5}, {5}) == ValueSet{{1}});
    CHECK(project(v, {3, 5}, {5, 3}) == ValueSet{{1, 0}, {1, 1}});
    CHECK_THROWS_AS(project(v, {3, 5}, {4}), InvalidArgument);
  }

  TEST_CASE("every map between finite algebras is smooth with ũ = e∘u∘e⁻¹") {
    FiniteSource src(median_power(2), median_ego());
    FiniteTarget t = FiniteTarget::make(median_two(), median_two());
    for (unsigned code = 0; code < 16; ++code) {
      std::vector<Elem> table;
      for (int i = 0; i < 4; ++i) table.push_back(static_cast<Elem>((code >> i) & 1u));
      auto u = map_from_table("u", table);
      SmoothReport r = check_smooth(src, t, u, src.sample_points(0), {t.all_dual()}, 0);
      CHECK(r.verdict == Verdict::Evidence);
      for (Elem a = 0; a < 4; ++a) {
        ProElement x = src.extension_point(src.extension().embedding[static_cast<std::size_t>(a)]);
        CHECK(tilde_u(src, t, u, x, t.all_dual(), 0).values == ValueSet{t.restrict(table[a], t.all_dual())});
      }
    }
  }

  TEST_CASE("parity on L: windows at limit points") {
    CaseFunction c = case_named("l-parity");
    CHECK(window_at(c, "evens") == ValueSet{{0}, {1}});
    CHECK(window_at(c, "odds") == ValueSet{{0}, {1}});
    CHECK(window_at(c, "ep:0|011") == ValueSet{{0}, {1}});
    // Algebra points are isolated.
    CHECK(window_at(c, "finite:{0,1}") == ValueSet{{0}});
    CHECK(window_at(c, "finite:{2}") == ValueSet{{1}});
    CHECK(window_at(c, "top") == ValueSet{{1}});
  }

  TEST_CASE("parity report carries the slice history") {
    CaseFunction c = case_named("l-parity");
    WindowReport w = point_window(*c.space, c.target, c.map, point(c, "evens"), c.window, 12);
    CHECK(w.stabilized);
    CHECK(w.history.size() == 4);
    CHECK(w.history.front().first == 9);
    CHECK(w.depth == 12);
  }

  TEST_CASE("pair parity window is not an interval") {
    CaseFunction c = case_named("l-pair-parity");
    CHECK(window_at(c, "odds") == ValueSet{{0, 1}, {1, 0}});
    UpDownReport r = upper_lower(*c.space, c.target, c.map, point(c, "odds"), c.window, c.depth,
                                 TotalOrder::index_order(c.space->m()));
    CHECK(r.lower == Tuple{0, 0});
    CHECK(r.upper == Tuple{1, 1});
    CHECK(r.sandwich);
  }

  TEST_CASE("u_evens: smooth but not strong") {
    CaseFunction c = case_named("l-u-evens");
    CHECK(window_at(c, "evens") == ValueSet{{0}});
    CHECK(window_at(c, "odds") == ValueSet{{1}});
    auto samples = c.space->sample_points(c.depth);
    CHECK(check_smooth(*c.space, c.target, c.map, samples, {c.window}, c.depth).verdict == Verdict::Evidence);
    StrongReport s = check_strong(*c.space, c.target, c.map, samples, {c.window}, c.depth);
    CHECK(s.verdict == Verdict::Counterexample);
    REQUIRE(s.window.has_value());
    CHECK(s.window->point == "evens");
    CHECK(s.escapes.size() == static_cast<std::size_t>(c.depth + 1));
    for (const auto& e : s.escapes) CHECK(e.value == Tuple{1});
    CHECK_THROWS_AS(lift_bar_u(*c.space, c.target, c.map, samples, c.window, c.depth), PreconditionFailed);
  }

  TEST_CASE("u_A for other parameters") {
    auto l = std::make_shared<LSpace>();
    FiniteTarget two = l_target_two();
    auto u_all = l_u_subset(*PeriodicSet::parse("all"));
    auto u_none = l_u_subset(*PeriodicSet::parse("none"));
    auto samples = l->sample_points(8);
    CHECK(check_smooth(*l, two, u_all, samples, {{0}}, 8).verdict == Verdict::Evidence);
    CHECK(check_strong(*l, two, u_all, samples, {{0}}, 8).verdict == Verdict::Evidence);
    // {n} → ∅ pointwise while u_∅({n}) = 1 ≠ u_∅(∅).
    StrongReport none = check_strong(*l, two, u_none, samples, {{0}}, 8);
    CHECK(none.verdict == Verdict::Counterexample);
    REQUIRE(none.window.has_value());
    CHECK(none.window->point == "finite:{}");
  }

  TEST_CASE("negation after φ₀ is smooth, strong and not a homomorphism") {
    CaseFunction c = case_named("l-neg-phi0");
    auto samples = c.space->sample_points(c.depth);
    CHECK(check_smooth(*c.space, c.target, c.map, samples, {c.window}, c.depth).verdict == Verdict::Evidence);
    CHECK(check_strong(*c.space, c.target, c.map, samples, {c.window}, c.depth).verdict == Verdict::Evidence);
    HomCheck h = map_is_homomorphism(*c.space, c.target, c.map, 6);
    CHECK_FALSE(h.holds);
    CHECK_FALSE(h.detail.empty());
    // Selection demo needs a window with two values.
    CHECK_THROWS_AS(no_continuous_selection_demo(*c.space, c.target, c.map, point(c, "evens"), c.window, c.depth),
                    PreconditionFailed);
    // Strong, so ū is defined and covers both values over the samples.
    CHECK(lift_bar_u(*c.space, c.target, c.map, samples, c.window, c.depth) == ValueSet{{0}, {1}});
  }

  TEST_CASE("no continuous selection for parity") {
    CaseFunction c = case_named("l-parity");
    SelectionReport s = no_continuous_selection_demo(*c.space, c.target, c.map, point(c, "evens"), c.window, c.depth);
    bool saw0 = false, saw1 = false;
    for (const auto& f : s.forcing) {
      CHECK(f.value != f.proposed);
      saw0 = saw0 || f.proposed == Tuple{0};
      saw1 = saw1 || f.proposed == Tuple{1};
    }
    CHECK(saw0);
    CHECK(saw1);
  }

  TEST_CASE("localization matches projection") {
    CaseFunction c = case_named("l-pair-parity");
    ValueSet full = window_at(c, "evens");
    for (int phi : c.window) {
      Localized loc = localize(c.target, c.map, phi);
      REQUIRE(loc.identity >= 0);
      WindowReport w = point_window(*c.space, loc.target, loc.map, point(c, "evens"), {loc.identity}, c.depth);
      CHECK(w.values == project(full, c.window, {phi}));
    }
    CHECK_THROWS_AS(localize(c.target, c.map, 7), InvalidArgument);
  }

  TEST_CASE("composition with a non-homomorphic outer map is only an inclusion") {
    CaseFunction c = case_named("l-parity");
    // Constant 1 after parity; the composite is smooth everywhere.
    CompositionReport r =
        check_composition(*c.space, c.target, c.map, {1, 1}, c.target, point(c, "evens"), c.window, c.depth);
    CHECK(r.subset);
    CHECK(r.composite == ValueSet{{1}});
    CHECK_FALSE(r.outer_is_homomorphism);
    CHECK_THROWS_AS(check_composition(*c.space, c.target, c.map, {1}, c.target, point(c, "evens"), c.window, 4),
                    InvalidArgument);
  }

  TEST_CASE("local lattice and A+ membership") {
    LocalLatticeReport four = check_local_lattice(l_target_four(), TotalOrder::index_order(dl_two()));
    CHECK(four.holds);
    CHECK(four.checks > 0);
    CaseFunction c = case_named("l-parity");
    TotalOrder ord = TotalOrder::index_order(c.space->m());
    for (const char* name : {"evens", "odds", "top", "finite:{1}"}) {
      APlusReport r = check_a_plus_membership(*c.space, point(c, name), ord, 6);
      CHECK_MESSAGE(r.holds, name);
    }
  }

  TEST_CASE("Γ-lift on the median algebra 2") {
    FiniteAlgebra m = median_two();
    CHECK(gamma_lift(m, 0, {{0, 1}, {0}, {1}}) == std::set<Elem>{0, 1});
    CHECK(gamma_lift(m, 0, {{0}, {0}, {1}}) == std::set<Elem>{0});
    CHECK(gamma_lift(m, 0, {{0, 1}, {1}, {1}}) == std::set<Elem>{1});
  }

  TEST_CASE("median u′ needs the registered witness") {
    UPrimeReport with = median_u_prime_smoothness(8, true);
    CHECK(with.smooth.verdict == Verdict::Evidence);
    REQUIRE(with.windows.size() == 4);
    CHECK(with.windows[0].values == ValueSet{{0}});
    CHECK(with.windows[1].values == ValueSet{{0}});
    CHECK(with.windows[2].values == ValueSet{{1}});
    CHECK(with.windows[3].values == ValueSet{{1}});
    for (const auto& w : with.windows) CHECK(w.witnesses.size() == 1);
    UPrimeReport without = median_u_prime_smoothness(8, false);
    CHECK(without.smooth.verdict == Verdict::Inconclusive);
    CHECK(without.windows[1].values == ValueSet{{0}, {1}});
    CHECK(without.windows[2].values == ValueSet{{0}, {1}});
    CHECK(without.windows[1].pending_witness);
    CHECK_FALSE(without.windows[1].stabilized);
  }
}
