#include <doctest.h>

#include <algorithm>
#include <deque>
#include <map>

#include "natdual/natdual.hpp"

using namespace natdual;
using namespace natdual::cases;

namespace {

// Shortest paths on the finite tree piece, by BFS from each vertex.
struct TreeOracle {
  int n;
  std::vector<std::vector<int>> dist;

  explicit TreeOracle(int n_) : n(n_) {
    const int size = 2 * n + 2;
    std::vector<std::vector<int>> adj(static_cast<std::size_t>(size));
    auto edge = [&](int u, int v) {
      adj[static_cast<std::size_t>(u)].push_back(v);
      adj[static_cast<std::size_t>(v)].push_back(u);
    };
    for (int i = 0; i < n; ++i) edge(i, i + 1);
    for (int i = 0; i <= n; ++i) edge(i, n + 1 + i);
    dist.assign(static_cast<std::size_t>(size), std::vector<int>(static_cast<std::size_t>(size), -1));
    for (int s = 0; s < size; ++s) {
      auto& d = dist[static_cast<std::size_t>(s)];
      std::deque<int> q{s};
      d[static_cast<std::size_t>(s)] = 0;
      while (!q.empty()) {
        int u = q.front();
        q.pop_front();
        for (int v : adj[static_cast<std::size_t>(u)])
          if (d[static_cast<std::size_t>(v)] < 0) {
            d[static_cast<std::size_t>(v)] = d[static_cast<std::size_t>(u)] + 1;
            q.push_back(v);
          }
      }
    }
  }

  int d(int u, int v) const { return dist[static_cast<std::size_t>(u)][static_cast<std::size_t>(v)]; }

  // The unique vertex on all three geodesics.
  int median(int x, int y, int z) const {
    for (int w = 0; w < static_cast<int>(dist.size()); ++w)
      if (d(x, w) + d(w, y) == d(x, y) && d(y, w) + d(w, z) == d(y, z) && d(x, w) + d(w, z) == d(x, z)) return w;
    return -1;
  }

  SymPoint point(int v) const { return v <= n ? tree_a(v) : tree_b(v - n - 1); }
};

// Building the size-8 suite dominates this file; do it once.
const std::vector<SuiteEntry>& dl_suite_8() {
  static const std::vector<SuiteEntry> suite = dl_suite(8);
  return suite;
}

}  // namespace

TEST_SUITE("cases") {
  TEST_CASE("tree median agrees with the geodesic oracle [DERIVED]") {
    TreeOracle t(5);
    const int size = 2 * 5 + 2;
    for (int x = 0; x < size; ++x)
      for (int y = 0; y < size; ++y)
        for (int z = 0; z < size; ++z)
          CHECK(tree_median(t.point(x), t.point(y), t.point(z)) == t.point(t.median(x, y, z)));
  }

  TEST_CASE("finite tree pieces are median algebras") {
    for (int n = 0; n <= 5; ++n) {
      FiniteAlgebra a = build_median_tree(n);
      CHECK(a.size() == 2 * n + 2);
      CHECK(is_median_algebra(a));
    }
    CHECK_FALSE(is_median_algebra(dl_two()));
  }

  TEST_CASE("point names round-trip") {
    MedianTreeDual dual;
    CHECK(tree_point_name(tree_a(3)) == "a_3");
    CHECK(tree_point_name(tree_b(0)) == "b_0");
    for (const auto& p : dual.slice_points(4)) CHECK(dual.parse(dual.name(p)) == p);
    // A_0 is the whole algebra.
    CHECK(dual.parse("A_0") == SymPoint{kWhole, 0});
    CHECK_FALSE(dual.parse("C_1").has_value());
  }

  TEST_CASE("triples with ∞") {
    CHECK(median_triple_with_infinity(2, 5) == "a_5");
    CHECK(median_triple_with_infinity(5, 2) == "a_5");
    CHECK(median_triple_with_infinity(3, 1, 'a', 'a') == "a_3");
    // Repeated argument: the majority law wins.
    CHECK(median_triple_with_infinity(3, 3, 'b', 'b') == "b_3");
    CHECK_THROWS_AS(median_triple_with_infinity(1, 2, 'c', 'a'), Error);
  }

  TEST_CASE("e(b_n) is ↓B_n•, the union form misses exactly B_n•") {
    MedianTreeDual dual;
    for (std::int64_t n = 0; n <= 5; ++n) {
      std::vector<std::string> missed;
      for (const auto& p : dual.slice_points(static_cast<int>(n) + 2)) {
        CHECK(paper_e_b(n, p) == !ideal_contains(p, tree_b(n)));
        if (paper_e_b(n, p) != paper_e_b_union(n, p)) missed.push_back(dual.name(p));
      }
      CHECK(missed == std::vector<std::string>{"B_" + std::to_string(n) + "•"});
    }
  }

  TEST_CASE("e(a_n) matches its closed form") {
    MedianTreeDual dual;
    for (std::int64_t n = 0; n <= 5; ++n)
      for (const auto& p : dual.slice_points(static_cast<int>(n) + 2))
        CHECK(paper_e_a(n, p) == !ideal_contains(p, tree_a(n)));
  }

  TEST_CASE("periodic set codec") {
    CHECK(PeriodicSet::parse("ep:0|10")->name() == "odds");
    CHECK(PeriodicSet::parse("ep:|01")->name() == "odds");
    CHECK(PeriodicSet::parse("ep:1|0")->name() == "finite:{0}");
    CHECK(PeriodicSet::parse("finite:{2,0}")->name() == "finite:{0,2}");
    CHECK(PeriodicSet::parse("ep:11|1")->name() == "all");
    CHECK(PeriodicSet::parse("none")->name() == "finite:{}");
    CHECK_FALSE(PeriodicSet::parse("ep:2|1").has_value());
    CHECK_FALSE(PeriodicSet::parse("primes").has_value());
    PeriodicSet evens = *PeriodicSet::parse("evens");
    for (int i = 0; i < 40; ++i) CHECK(evens.contains(i) == (i % 2 == 0));
    CHECK_FALSE(evens.finite());
    CHECK_THROWS_AS(evens.mask(), InvalidArgument);
    CHECK(PeriodicSet::parse("finite:{1,4}")->mask() == 0b10010u);
    CHECK(PeriodicSet::of_mask(0b101) == *PeriodicSet::parse("finite:{0,2}"));
  }

  TEST_CASE("L is a bounded lattice with ω absorbing joins") {
    LSpace l;
    const auto& sig = l.signature();
    std::size_t meet = 0, join = 0;
    for (std::size_t o = 0; o < sig.size(); ++o) {
      if (sig[o].name == "meet") meet = o;
      if (sig[o].name == "join") join = o;
    }
    auto pts = l.algebra_points(3);
    const SymPoint top{kTop, 0};
    CHECK(std::find(pts.begin(), pts.end(), top) != pts.end());
    auto op = [&](std::size_t o, SymPoint x, SymPoint y) {
      std::vector<SymPoint> args{x, y};
      return l.apply(o, args);
    };
    for (const auto& x : pts) {
      CHECK(op(join, x, top) == top);
      CHECK(op(meet, x, top) == x);
      for (const auto& y : pts) {
        CHECK(op(join, x, y) == op(join, y, x));
        CHECK(op(meet, x, op(join, x, y)) == x);
        for (const auto& z : pts) CHECK(op(meet, x, op(join, y, z)) == op(join, op(meet, x, y), op(meet, x, z)));
      }
    }
  }

  TEST_CASE("Priestley intervals [DERIVED]") {
    std::map<std::string, DeltaPrimeReport> got;
    for (const auto& e : dl_suite_8()) {
      DeltaPrimeReport r = dl_delta_equals_delta_prime(e.algebra);
      CHECK_MESSAGE(r.holds, e.name);
      const auto n = static_cast<std::size_t>(e.algebra.size());
      CHECK(r.points == n);
      CHECK(r.intervals == n * n);
      CHECK(r.basis_matched == r.basis_size);
      got[e.name] = r;
    }
    CHECK(got["dl-4-1"].basis_size == 20);
    CHECK(got["dl-4-1"].intervals == 16);
    CHECK(got["dl-6-4"].basis_size == 112);
    CHECK(got["dl-6-4"].intervals == 36);
    CHECK_THROWS_AS(dl_delta_equals_delta_prime(direct_power(dl_two(), 4)), GuardExceeded);
    CHECK_THROWS_AS(dl_delta_equals_delta_prime(median_two()), SignatureMismatch);
  }

  TEST_CASE("Boolean powers of the median algebra 2") {
    for (int k = 1; k <= 4; ++k) {
      TernaryBooleanReport r = ternary_boolean_check(k);
      CHECK(r.ok());
      CHECK(r.size == (std::size_t{1} << k));
      CHECK(r.identity_pairs == r.size * r.size);
      // Flipping the constants too never gives a morphism.
      CHECK_FALSE(r.naive_flip_is_morphism);
    }
    CHECK_THROWS_AS(ternary_boolean_check(0), InvalidArgument);
    CHECK_THROWS_AS(ternary_boolean_check(5), GuardExceeded);
  }

  TEST_CASE("suites: one member per isomorphism type") {
    std::vector<std::string> names;
    for (const auto& e : median_suite()) names.push_back(e.name);
    CHECK(names == std::vector<std::string>{"median-1", "median-2", "median-3", "median-4", "median-4-1", "median-4-2",
                                            "median-5", "median-6", "median-8"});
    // Distributive lattices by size: 1, 1, 1, 2, 3, 5, 8, 15.
    std::map<int, int> by_size;
    const auto& dl = dl_suite_8();
    for (const auto& e : dl) ++by_size[e.algebra.size()];
    CHECK(by_size == std::map<int, int>{{1, 1}, {2, 1}, {3, 1}, {4, 2}, {5, 3}, {6, 5}, {7, 8}, {8, 15}});
    for (std::size_t i = 0; i < dl.size(); ++i)
      for (std::size_t j = i + 1; j < dl.size(); ++j)
        if (dl[i].algebra.size() == dl[j].algebra.size())
          CHECK_FALSE(find_isomorphism(dl[i].algebra, dl[j].algebra).has_value());
  }
}
