#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <set>

#include "natdual/natdual.hpp"

using namespace natdual;
using namespace natdual::cases;

namespace {

// Every map |A| -> |B| checked against every table; no pruning.
std::vector<std::vector<Elem>> brute_force_homs(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  std::vector<std::vector<Elem>> out;
  std::vector<Elem> map(static_cast<std::size_t>(a.size()), 0);
  while (true) {
    bool ok = true;
    for (std::size_t op = 0; op < a.signature().size() && ok; ++op) {
      const int arity = a.signature()[op].arity;
      const std::size_t rows = ipow(static_cast<std::size_t>(a.size()), arity);
      for (std::size_t i = 0; i < rows && ok; ++i) {
        Tuple args = tuple_at(i, static_cast<std::size_t>(a.size()), arity);
        Tuple image;
        for (Elem x : args) image.push_back(map[static_cast<std::size_t>(x)]);
        ok = map[static_cast<std::size_t>(a.apply(op, args))] == b.apply(op, image);
      }
    }
    if (ok) out.push_back(map);
    std::size_t p = 0;
    while (p < map.size() && ++map[p] == b.size()) map[p++] = 0;
    if (p == map.size()) break;
  }
  std::sort(out.begin(), out.end());
  return out;
}

// All partitions of {0..n-1} as normalized block vectors.
void partitions(int n, std::vector<int>& cur, int blocks, std::vector<Congruence>& out) {
  if (static_cast<int>(cur.size()) == n) {
    out.push_back(Congruence::normalized(cur));
    return;
  }
  for (int b = 0; b <= blocks; ++b) {
    cur.push_back(b);
    partitions(n, cur, std::max(blocks, b + 1), out);
    cur.pop_back();
  }
}

std::vector<FiniteAlgebra> small_corpus() {
  std::vector<FiniteAlgebra> out;
  for (auto& e : median_suite())
    if (e.algebra.size() <= 5) out.push_back(e.algebra);
  for (auto& e : dl_suite(5)) out.push_back(e.algebra);
  return out;
}

}  // namespace

TEST_SUITE("algebra") {
  TEST_CASE("table validation rejects bad entries and dimensions") {
    Signature sig({{"f", 1}});
    CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{0, 2}}), InvalidArgument);
    CHECK_THROWS_AS(FiniteAlgebra(sig, 2, {{0}}), InvalidArgument);
    CHECK_THROWS_AS(Signature({{"f", 1}, {"f", 2}}), InvalidArgument);
    CHECK_NOTHROW(FiniteAlgebra(sig, 2, {{1, 0}}));
  }

  TEST_CASE("median 2 is the majority algebra") {
    FiniteAlgebra m = median_two();
    for (Elem x = 0; x < 2; ++x)
      for (Elem y = 0; y < 2; ++y)
        for (Elem z = 0; z < 2; ++z) CHECK(m.apply(0, {x, y, z}) == ((x + y + z) >= 2 ? 1 : 0));
  }

  TEST_CASE("enumerate_homs agrees with the brute-force oracle") {
    auto corpus = small_corpus();
    std::size_t pairs = 0;
    for (const auto& a : corpus)
      for (const auto& b : corpus) {
        if (a.signature() != b.signature()) continue;
        // |A|·log|B| ≤ 16 keeps the oracle at most 2^16 maps.
        if (a.size() * std::log2(std::max(b.size(), 2)) > 16) continue;
        auto homs = enumerate_homs(a, b);
        std::vector<std::vector<Elem>> got;
        for (const auto& h : homs) {
          CHECK(is_homomorphism(a, b, h.map));
          got.push_back(h.map);
        }
        CHECK(std::is_sorted(got.begin(), got.end()));
        CHECK(got == brute_force_homs(a, b));
        ++pairs;
      }
    CHECK(pairs > 50);
  }

  TEST_CASE("hom counts into 2 [DERIVED]") {
    // |Hom(2^k, 2)| for the median algebra: the k projections, their negations and two constants.
    CHECK(enumerate_homs(median_power(1), median_two()).size() == 4);
    CHECK(enumerate_homs(median_power(2), median_two()).size() == 6);
    CHECK(enumerate_homs(median_power(3), median_two()).size() == 8);
    // Prime filters of the chain with n elements.
    for (const auto& e : dl_suite(5))
      if (e.name == "dl-4") CHECK(enumerate_homs(e.algebra, dl_two()).size() == 2);
  }

  TEST_CASE("hom guard raises instead of truncating") {
    HomOptions tight;
    tight.max_results = 3;
    CHECK_THROWS_AS(enumerate_homs(median_power(2), median_two(), tight), GuardExceeded);
  }

  TEST_CASE("Homomorphism::checked validates") {
    CHECK_NOTHROW(Homomorphism::checked(median_two(), median_two(), {1, 0}));
    FiniteAlgebra d = dl_two();
    CHECK_THROWS_AS(Homomorphism::checked(d, d, {1, 0}), InvalidArgument);
  }

  TEST_CASE("subalgebra_generated is idempotent and monotone") {
    std::mt19937 rng(7);
    for (const auto& a : small_corpus()) {
      if (a.size() == 0) continue;
      std::uniform_int_distribution<Elem> pick(0, a.size() - 1);
      for (int trial = 0; trial < 20; ++trial) {
        std::vector<Elem> g{pick(rng)};
        std::vector<Elem> h = g;
        h.push_back(pick(rng));
        auto cg = closure(a, g);
        auto ch = closure(a, h);
        CHECK(closure(a, cg) == cg);
        CHECK(std::includes(ch.begin(), ch.end(), cg.begin(), cg.end()));
        Subalgebra s = subalgebra_generated(a, g);
        CHECK(s.inclusion == cg);
        CHECK(is_homomorphism(s.algebra, a, s.inclusion));
      }
    }
  }

  TEST_CASE("constants are in every generated subalgebra") {
    FiniteAlgebra d = dl_two();
    std::vector<Elem> none;
    CHECK(closure(d, none) == std::vector<Elem>{0, 1});
  }

  TEST_CASE("all_congruences matches the partition oracle") {
    for (const auto& a : small_corpus()) {
      std::vector<Congruence> parts;
      std::vector<int> cur;
      partitions(a.size(), cur, 0, parts);
      std::vector<Congruence> oracle;
      for (const auto& p : parts)
        if (is_compatible(a, p)) oracle.push_back(p);
      std::sort(oracle.begin(), oracle.end());
      auto got = all_congruences(a);
      CHECK(got == oracle);
    }
  }

  TEST_CASE("congruence blocks are compatible with every operation") {
    for (const auto& a : small_corpus())
      for (const auto& theta : all_congruences(a))
        for (std::size_t op = 0; op < a.signature().size(); ++op) {
          const int arity = a.signature()[op].arity;
          const std::size_t rows = ipow(static_cast<std::size_t>(a.size()), arity);
          for (std::size_t i = 0; i < rows; ++i)
            for (std::size_t j = 0; j < rows; ++j) {
              Tuple x = tuple_at(i, static_cast<std::size_t>(a.size()), arity);
              Tuple y = tuple_at(j, static_cast<std::size_t>(a.size()), arity);
              bool related = true;
              for (int k = 0; k < arity; ++k) related = related && theta.related(x[k], y[k]);
              if (related) CHECK(theta.related(a.apply(op, x), a.apply(op, y)));
            }
        }
  }

  TEST_CASE("congruence guard") {
    CongruenceOptions small;
    small.max_size = 3;
    CHECK_THROWS_AS(all_congruences(median_power(2), small), GuardExceeded);
  }

  TEST_CASE("direct product projections and quotient") {
    FiniteAlgebra a = median_two();
    Product p = direct_product(a, a);
    CHECK(p.algebra.size() == 4);
    CHECK(is_homomorphism(p.algebra, a, p.proj_left.map));
    CHECK(is_homomorphism(p.algebra, a, p.proj_right.map));
    CHECK(find_isomorphism(p.algebra, median_power(2)).has_value());
    Congruence left = Congruence::normalized(p.proj_left.map);
    CHECK(is_compatible(p.algebra, left));
    CHECK(find_isomorphism(quotient(p.algebra, left), a).has_value());
  }

  TEST_CASE("direct_power sizes") {
    CHECK(direct_power(dl_two(), 3).size() == 8);
    CHECK(direct_power(median_two(), 0).size() == 1);
  }

  TEST_CASE("isomorphism search is certified") {
    auto suite = median_suite();
    for (const auto& x : suite)
      for (const auto& y : suite) {
        auto iso = find_isomorphism(x.algebra, y.algebra);
        CHECK(iso.has_value() == (x.name == y.name));
        if (iso) CHECK(is_algebra_isomorphism(x.algebra, y.algebra, *iso));
      }
  }
}
