#pragma once

#include <string>
#include <vector>

#include "natdual/algebra.hpp"
#include "natdual/extension.hpp"
#include "natdual/structure.hpp"

namespace natdual::cases {

// Points of the tree algebra: kind 0 is a_i, kind 1 is b_i.
enum TreeKind : int { kTreeA = 0, kTreeB = 1 };

// Prime ideals of the tree algebra. Whole is ↑a_0 and Empty its complement,
// so A_i and A_i• only occur for i >= 1.
enum IdealKind : int { kWhole = 0, kEmpty = 1, kUp = 2, kUpCo = 3, kLeaf = 4, kLeafCo = 5 };

SymPoint tree_a(std::int64_t i);
SymPoint tree_b(std::int64_t i);
std::string tree_point_name(const SymPoint& x);

// Median of the tree a_0 - a_1 - ..., with a leaf b_i hanging off each a_i.
SymPoint tree_median(const SymPoint& x, const SymPoint& y, const SymPoint& z);

// Finite piece on {a_0..a_n, b_0..b_n}; a_i has index i, b_i index n+1+i.
// Throws Error if the table violates the median axioms.
FiniteAlgebra build_median_tree(int n);
bool is_median_algebra(const FiniteAlgebra& a);

// x ∈ P for a prime ideal P given as a dual point.
bool ideal_contains(const SymPoint& ideal, const SymPoint& x);
// P ⊆ Q from the closed-form inclusion rules.
bool ideal_included(const SymPoint& p, const SymPoint& q);

// Dual of the tree algebra as homomorphisms φ with P = φ⁻¹(0). The
// relation ≤ is the pointwise order of homomorphisms, i.e. reverse inclusion.
class MedianTreeDual : public SymbolicStructure {
 public:
  MedianTreeDual();
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

// The tree algebra as a source space, with ∞ and its registered witness.
class MedianTreeSpace : public SourceSpace {
 public:
  MedianTreeSpace();

  std::string name() const override { return "median-tree"; }
  bool finite() const override { return false; }
  const FiniteAlgebra& m() const override { return m_; }
  const Signature& signature() const override { return m_.signature(); }
  std::vector<SymPoint> dual_slice(int depth) const override;
  std::vector<SymPoint> algebra_points(int depth) const override;
  Elem evaluate(const SymPoint& a, const SymPoint& phi) const override;
  SymPoint apply(std::size_t op, std::span<const SymPoint> args) const override;
  std::string point_name(const SymPoint& a) const override { return tree_point_name(a); }
  std::string dual_name(const SymPoint& phi) const override { return dual_.name(phi); }
  std::optional<ProElement> parse_point(std::string_view name) const override;
  std::vector<ProElement> sample_points(int depth) const override;
  std::vector<std::pair<SymPoint, SymPoint>> comparable_pairs(int depth, const TotalOrder& ord) const override;

  const MedianTreeDual& dual() const { return dual_; }
  ProElement infinity() const;

 private:
  FiniteAlgebra m_;
  MedianTreeDual dual_;
};

// ∞(P) = 1 exactly on ∅, A_i• and B_i.
Elem infinity_value(const SymPoint& ideal);

// Closed forms of the bidual points as sets {P : x(P) = 1}.
bool paper_e_a(std::int64_t n, const SymPoint& ideal);        // ↓A_{n+1} ∪ ↓A_n• ∪ {B_n}
bool paper_e_b(std::int64_t n, const SymPoint& ideal);        // ↓B_n•
bool paper_e_b_union(std::int64_t n, const SymPoint& ideal);  // ↓A_{n+1} ∪ ↓A_n•

// e(a_i), e(b_i) for i <= n, then ∞.
std::vector<ProElement> median_bidual_points(int n);

// (∞, x, y) with x of kind `kx` and index m, y of kind `ky` and index n,
// computed on the slice of level max(m,n)+2. Throws Error if no algebra
// point matches.
std::string median_triple_with_infinity(int m, int n, char kx = 'a', char ky = 'b');

// u(a_i) = 0, u(b_i) = 1 into the two-element median algebra.
MapBetweenAlgebras median_u();
FiniteTarget median_u_target();

struct UPrimeReport {
  bool witness_enabled = true;
  int depth = 0;
  std::vector<WindowReport> windows;  // at ∞, one per single dual point of 2
  SmoothReport smooth;
};

UPrimeReport median_u_prime_smoothness(int depth = 8, bool witness_enabled = true);

}  // namespace natdual::cases
