#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "natdual/extension.hpp"
#include "natdual/structure.hpp"

namespace natdual::cases {

// Eventually periodic subset of ω: membership follows `prefix`, then repeats
// `cycle` forever. Always kept in the shortest form.
struct PeriodicSet {
  std::vector<bool> prefix;
  std::vector<bool> cycle{false};

  static PeriodicSet make(std::vector<bool> prefix, std::vector<bool> cycle);
  static PeriodicSet of_mask(std::uint64_t mask);
  // "evens", "odds", "all", "none", "finite:{0,3}" or "ep:<prefix>|<cycle>"
  // over the digits 0 and 1.
  static std::optional<PeriodicSet> parse(std::string_view text);

  bool contains(std::int64_t n) const;
  bool finite() const { return cycle == std::vector<bool>{false}; }
  // Bit mask of a finite set; throws InvalidArgument past bit 62.
  std::uint64_t mask() const;
  std::string name() const;
  bool operator==(const PeriodicSet&) const = default;
};

enum LPointKind : int { kFinite = 0, kTop = 1 };
enum LDualKind : int { kPhi = 0, kInfinity = 1 };

std::string finite_set_name(std::uint64_t mask);

// L* = {φ_n} ∪ {∞}: φ_n(X) = [n ∈ X], ∞(X) = [X = ω]. Under the pointwise
// order ∞ lies below every φ_n; the φ_n form an antichain.
class LDual : public SymbolicStructure {
 public:
  LDual();
  const StructureSignature& signature() const override { return sig_; }
  bool contains(const SymPoint& p) const override;
  int level(const SymPoint& p) const override;
  std::vector<SymPoint> slice_points(int n) const override;
  std::string name(const SymPoint& p) const override;
  std::optional<SymPoint> parse(std::string_view name) const override;
  bool relation_holds(std::size_t r, std::span<const SymPoint> args) const override;
  SymPoint apply(std::size_t o, std::span<const SymPoint> args) const override;
  SymPoint constant(std::size_t c) const override;

 private:
  StructureSignature sig_;
};

// Finite subsets of ω together with ω, as a bounded distributive lattice.
// Non-algebra points x_S (S infinite, eventually periodic) carry a witness
// O_f with f = 0 on {∞} ∪ {φ_n : n ∉ S}, admitting exactly the finite X ⊆ S.
class LSpace : public SourceSpace {
 public:
  static constexpr int kMaxDepth = 20;

  LSpace();

  std::string name() const override { return "L"; }
  bool finite() const override { return false; }
  const FiniteAlgebra& m() const override { return m_; }
  const Signature& signature() const override { return m_.signature(); }
  std::vector<SymPoint> dual_slice(int depth) const override;
  std::vector<SymPoint> algebra_points(int depth) const override;
  Elem evaluate(const SymPoint& a, const SymPoint& phi) const override;
  SymPoint apply(std::size_t op, std::span<const SymPoint> args) const override;
  std::string point_name(const SymPoint& a) const override;
  std::string dual_name(const SymPoint& phi) const override { return dual_.name(phi); }
  std::optional<ProElement> parse_point(std::string_view name) const override;
  // Limit points first, then a few algebra points.
  std::vector<ProElement> sample_points(int depth) const override;
  std::vector<std::pair<SymPoint, SymPoint>> comparable_pairs(int depth, const TotalOrder& ord) const override;
  std::vector<Witness> witnesses_for(const ProElement& x) const override;
  bool pending_witness(const ProElement& x) const override;

  const LDual& dual() const { return dual_; }
  // x_S; an algebra point when S is finite.
  ProElement subset_point(const PeriodicSet& s) const;

 private:
  FiniteAlgebra m_;
  LDual dual_;
};

// 2 and 2² as bounded distributive lattices, with their duals.
FiniteTarget l_target_two();
FiniteTarget l_target_four();

struct CaseExpectation {
  Verdict smooth = Verdict::Evidence;
  std::optional<Verdict> strong;
  bool homomorphism = false;
  std::optional<ValueSet> values;  // window at `point` over `window`
  std::optional<Tuple> lower;      // u^∇ at `point`
  std::optional<Tuple> upper;      // u^Δ at `point`
};

// A map u: A -> B with the source space it lives on and the verdicts the
// worked example states for it.
struct CaseFunction {
  std::string name;
  std::string description;
  std::shared_ptr<SourceSpace> space;
  FiniteTarget target;
  MapBetweenAlgebras map;
  std::string point;
  std::vector<int> window;
  int depth = 12;
  CaseExpectation expected;
};

// u_A(X) = 0 iff X ⊆ A, into 2.
MapBetweenAlgebras l_u_subset(const PeriodicSet& a);

// l-parity, l-pair-parity, l-u-evens, l-neg-phi0 and median-u-prime.
std::vector<CaseFunction> l_case_functions();
std::optional<CaseFunction> find_case_function(std::string_view name);

}  // namespace natdual::cases
