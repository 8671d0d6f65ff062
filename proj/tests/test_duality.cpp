#include <doctest.h>

#include "natdual/natdual.hpp"

using namespace natdual;
using namespace natdual::cases;

namespace {

std::vector<SuiteEntry> both_suites() {
  auto all = median_suite();
  for (auto& e : dl_suite()) all.push_back(e);
  return all;
}

AlterEgo ego_of(const FiniteAlgebra& a) { return a.signature() == median_signature() ? median_ego() : dl_ego(); }

const FiniteAlgebra& named(const std::string& name) {
  static const auto all = both_suites();
  for (const auto& e : all)
    if (e.name == name) return e.algebra;
  throw std::out_of_range(name);
}

}  // namespace

TEST_SUITE("duality") {
  TEST_CASE("shipped alter egos are algebraic") {
    CHECK(check_algebraic(median_ego()).ok);
    CHECK(check_algebraic(dl_ego()).ok);
  }

  TEST_CASE("negation is not algebraic over the lattice 2") {
    StructureSignature sig({{"≤", 2}}, {{"¬", 1}}, {}, {});
    AlterEgo bad{dl_two(), FiniteStructure(sig, 2, {{{0, 0}, {0, 1}, {1, 1}}}, {{1, 0}}, {}, {})};
    AlgebraicityReport r = check_algebraic(bad);
    CHECK_FALSE(r.ok);
    CHECK(r.component == "¬");
    CHECK_THROWS_AS(dual_of(dl_two(), bad), NotAlgebraic);
  }

  TEST_CASE("a ternary relation that is not a subuniverse of 2³") {
    StructureSignature sig({{"r", 3}}, {}, {}, {});
    AlterEgo bad{median_two(), FiniteStructure(sig, 2, {{{0, 0, 1}, {0, 1, 0}, {1, 0, 0}}}, {}, {}, {})};
    CHECK_FALSE(check_algebraic(bad).ok);
  }

  TEST_CASE("constants 0 and 1 are not algebraic over the bounded lattice 2") {
    // {0} is not closed under the nullary 1, so the lattice ego carries no constants.
    StructureSignature sig({{"≤", 2}}, {}, {}, {"0", "1"});
    AlterEgo with_constants{dl_two(), FiniteStructure(sig, 2, {{{0, 0}, {0, 1}, {1, 1}}}, {}, {}, {0, 1})};
    AlgebraicityReport r = check_algebraic(with_constants);
    CHECK_FALSE(r.ok);
    CHECK((r.component == "0" || r.component == "1"));
  }

  TEST_CASE("dual of the median algebra 2 [DERIVED]") {
    DualSpace d = dual_of(median_two(), median_ego());
    REQUIRE(d.points.size() == 4);
    CHECK(d.points[0].map == std::vector<Elem>{0, 0});
    CHECK(d.points[1].map == std::vector<Elem>{0, 1});
    CHECK(d.points[2].map == std::vector<Elem>{1, 0});
    CHECK(d.points[3].map == std::vector<Elem>{1, 1});
    // Diamond: constants at the ends, identity and negation incomparable.
    CHECK(d.structure.relation(0) ==
          std::vector<Tuple>{{0, 0}, {0, 1}, {0, 2}, {0, 3}, {1, 1}, {1, 3}, {2, 2}, {2, 3}, {3, 3}});
    CHECK(d.structure.operation(0) == std::vector<Elem>{3, 2, 1, 0});
    CHECK(d.structure.constants() == std::vector<Elem>{0, 3});
    Evaluation ev = evaluate(median_two(), d);
    CHECK(ev.injective);
    CHECK(ev.table == std::vector<std::vector<Elem>>{{0, 0, 1, 1}, {0, 1, 0, 1}});
  }

  TEST_CASE("e_A is an injective homomorphism on every suite member") {
    for (const auto& e : both_suites()) {
      NaturalExtension ext = natural_extension(e.algebra, ego_of(e.algebra));
      CHECK_MESSAGE(ext.embedding_injective, e.name);
      CHECK_MESSAGE(ext.embedding_homomorphism, e.name);
    }
  }

  TEST_CASE("duality holds on both suites and e_A is an isomorphism onto A^δ") {
    for (const auto& e : both_suites()) {
      AlterEgo ego = ego_of(e.algebra);
      DualityCertificate cert = check_duality(e.algebra, ego);
      CHECK_MESSAGE(cert.holds, e.name);
      NaturalExtension ext = natural_extension(e.algebra, ego);
      CHECK(ext.points.size() == static_cast<std::size_t>(e.algebra.size()));
      CHECK(is_algebra_isomorphism(e.algebra, ext.algebra, ext.embedding));
    }
  }

  TEST_CASE("an empty alter ego does not dualize the 3-chain") {
    AlterEgo bare{dl_two(), FiniteStructure(StructureSignature({}, {}, {}, {}), 2, {}, {}, {}, {})};
    DualityCertificate cert = check_duality(named("dl-3"), bare);
    CHECK_FALSE(cert.holds);
    REQUIRE(cert.missing.has_value());
    CHECK(cert.morphism_count == 4);
  }

  TEST_CASE("Δ is a base with intersections empty or O_{f∪g}") {
    for (const auto& e : both_suites()) {
      DeltaBaseReport r = check_delta_base(e.algebra, ego_of(e.algebra));
      CHECK_MESSAGE(r.holds, e.name);
      CHECK(r.other_matches == 0);
      CHECK(r.empty + r.union_matches == r.pairs);
    }
  }

  TEST_CASE("basis of the median algebra 2 [DERIVED]") {
    DeltaBasis b = delta_basis(median_two(), median_ego());
    REQUIRE(b.entries.size() == 3);
    CHECK(b.entries[0].open == std::vector<int>{0, 1});
    CHECK(b.entries[1].open == std::vector<int>{0});
    CHECK(b.entries[2].open == std::vector<int>{1});
    for (const auto& e : b.entries)
      for (int x : e.open) CHECK(e.f.extended_by(b.extension.points[static_cast<std::size_t>(x)].map));
  }

  TEST_CASE("product theorem on suite pairs") {
    for (const auto& [l, r] : std::vector<std::pair<std::string, std::string>>{
             {"median-2", "median-2"}, {"median-3", "median-2"}, {"dl-2", "dl-3"}, {"dl-3", "dl-2"}}) {
      ProductTheoremReport pt = check_product_theorem(named(l), named(r), ego_of(named(l)));
      CHECK(pt.extension_iso);
      CHECK(pt.dual_iso);
      CHECK(pt.agree);
    }
  }

  TEST_CASE("congruence lattice of a product [DERIVED]") {
    CongruenceProductReport r = check_congruence_product(named("dl-2"), named("dl-3"));
    CHECK(r.holds);
    CHECK(r.left == 2);
    CHECK(r.right == 4);
    CHECK(r.product == 8);
    CHECK(check_congruence_product(named("median-2"), named("median-3")).holds);
  }

  TEST_CASE("cover formula on 2 [DERIVED]") {
    FiniteAlgebra two = median_two();
    // [0:1] ∪ [1:0] misses the identity; [0:1] ∪ [0:0] is everything.
    CoverFormulaResult r = check_median_cover_formula(two, {0}, {1});
    CHECK_FALSE(r.cover);
    CHECK_FALSE(r.formula_coordinatewise);
    CoverFormulaResult s = check_median_cover_formula(two, {0}, {0});
    CHECK(s.cover);
    CHECK(s.formula_coordinatewise);
    CHECK(s.formula_in_algebra);
  }

  TEST_CASE("cover formula read in A diverges from the coordinatewise reading on 2²") {
    FiniteAlgebra a = median_power(2);
    const Elem e00 = *a.find_label("00"), e11 = *a.find_label("11"), e01 = *a.find_label("01");
    // [00:1] ∪ [11:1] ∪ [01:0] covers Hom(2², 2), yet no (a_i, b, b) = a_i holds in 2² itself.
    CoverFormulaResult r = check_median_cover_formula(a, {e00, e11}, {e01});
    CHECK(r.cover);
    CHECK(r.formula_coordinatewise);
    CHECK_FALSE(r.formula_in_algebra);
    for (Elem x = 0; x < 4; ++x)
      for (Elem y = 0; y < 4; ++y)
        for (Elem z = 0; z < 4; ++z) {
          CoverFormulaResult q = check_median_cover_formula(a, {x}, {y, z});
          CHECK(q.cover == q.formula_coordinatewise);
          CHECK(q.cover == q.formula_in_algebra);
        }
  }

  TEST_CASE("injectivity of the egos at finite level") {
    std::vector<FiniteAlgebra> ms, ds;
    for (const auto& e : median_suite())
      if (e.algebra.size() <= 4) ms.push_back(e.algebra);
    for (const auto& e : dl_suite(5)) ds.push_back(e.algebra);
    InjectivityReport m = check_injectivity_finite(median_ego(), ms);
    InjectivityReport d = check_injectivity_finite(dl_ego(), ds);
    CHECK(m.holds);
    CHECK(d.holds);
    CHECK(m.partial_morphisms > 0);
  }

  TEST_CASE("δ and ι are discrete on finite algebras") {
    for (const auto& e : both_suites()) {
      TopologyReport t = compare_delta_iota(e.algebra, ego_of(e.algebra));
      CHECK(t.iota_discrete);
      CHECK(t.delta_discrete);
      CHECK(t.agree);
    }
  }

  TEST_CASE("DOT rendering lists every point") {
    DualSpace d = dual_of(median_two(), median_ego());
    std::string dot = to_dot(d, "g");
    CHECK(dot.rfind("digraph g {", 0) == 0);
    for (int i = 0; i < 4; ++i) CHECK(dot.find(phi_label(i)) != std::string::npos);
    CHECK(phi_label(12) == "φ₁₂");
  }
}
