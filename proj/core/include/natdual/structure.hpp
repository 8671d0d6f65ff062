#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "natdual/algebra.hpp"

namespace natdual {

// Symbols of a structure: relations, total operations, partial operations
// and constants. Names are unique across all four kinds.
class StructureSignature {
 public:
  StructureSignature() = default;
  StructureSignature(std::vector<OpSymbol> relations, std::vector<OpSymbol> operations,
                     std::vector<OpSymbol> partial_operations, std::vector<std::string> constants);

  const std::vector<OpSymbol>& relations() const { return relations_; }
  const std::vector<OpSymbol>& operations() const { return operations_; }
  const std::vector<OpSymbol>& partial_operations() const { return partial_; }
  const std::vector<std::string>& constants() const { return constants_; }

  std::optional<std::size_t> find_relation(std::string_view name) const;
  std::optional<std::size_t> find_operation(std::string_view name) const;

  StructureSignature without_operation(std::string_view name) const;

  bool operator==(const StructureSignature&) const = default;

 private:
  std::vector<OpSymbol> relations_;
  std::vector<OpSymbol> operations_;
  std::vector<OpSymbol> partial_;
  std::vector<std::string> constants_;
};

// Finite structure with the discrete topology. Relation tuple lists are kept
// sorted and duplicate-free; partial operation tables use -1 outside the domain.
class FiniteStructure {
 public:
  FiniteStructure() = default;
  FiniteStructure(StructureSignature sig, int size, std::vector<std::vector<Tuple>> relations,
                  std::vector<std::vector<Elem>> operations, std::vector<std::vector<Elem>> partial_operations,
                  std::vector<Elem> constants, std::vector<std::string> labels = {});

  const StructureSignature& signature() const { return sig_; }
  int size() const { return size_; }
  const std::vector<Tuple>& relation(std::size_t r) const { return relations_[r]; }
  const std::vector<std::vector<Tuple>>& relations() const { return relations_; }
  const std::vector<Elem>& operation(std::size_t o) const { return operations_[o]; }
  const std::vector<std::vector<Elem>>& operations() const { return operations_; }
  const std::vector<Elem>& partial_operation(std::size_t p) const { return partial_[p]; }
  const std::vector<std::vector<Elem>>& partial_operations() const { return partial_; }
  const std::vector<Elem>& constants() const { return constants_; }

  bool holds(std::size_t r, std::span<const Elem> t) const;
  Elem apply(std::size_t o, std::span<const Elem> args) const;
  // -1 when the arguments are outside the domain.
  Elem apply_partial(std::size_t p, std::span<const Elem> args) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Elem e) const;
  std::optional<Elem> find_label(std::string_view label) const;

  // Same structure with one total operation removed.
  FiniteStructure without_operation(std::string_view name) const;

  bool operator==(const FiniteStructure&) const = default;

 private:
  StructureSignature sig_;
  int size_ = 0;
  std::vector<std::vector<Tuple>> relations_;
  std::vector<std::vector<Elem>> operations_;
  std::vector<std::vector<Elem>> partial_;
  std::vector<Elem> constants_;
  std::vector<std::string> labels_;
};

struct StructMorphism {
  std::vector<Elem> map;
  Elem operator()(Elem x) const { return map[static_cast<std::size_t>(x)]; }
  bool operator==(const StructMorphism&) const = default;
  auto operator<=>(const StructMorphism&) const = default;
};

// A morphism defined on a closed substructure of the source. `map` has one
// entry per source element, -1 outside the domain.
struct PartialMorphism {
  std::vector<Elem> domain;  // sorted
  std::vector<Elem> map;

  bool defined(Elem x) const { return map[static_cast<std::size_t>(x)] >= 0; }
  bool total() const;
  // x extends this partial morphism.
  bool extended_by(std::span<const Elem> x) const;
  bool operator==(const PartialMorphism&) const = default;
  auto operator<=>(const PartialMorphism&) const = default;
};

struct StructureGuard {
  int max_closed_subsets_carrier = 20;
  std::size_t max_results = std::size_t{1} << 20;
};

// Preserves constants, relations (forward), total operations and partial
// operations on their domains.
bool is_struct_morphism(const FiniteStructure& x, const FiniteStructure& y, std::span<const Elem> map);

std::vector<StructMorphism> enumerate_struct_morphisms(const FiniteStructure& x, const FiniteStructure& y,
                                                       const StructureGuard& guard = {});

// Contains every constant, is closed under total operations, and holds the
// value of every partial operation applied to a tuple of its own elements.
bool is_closed_subset(const FiniteStructure& x, std::span<const Elem> members);

struct Substructure {
  FiniteStructure structure;
  std::vector<Elem> inclusion;
};

Substructure induced_substructure(const FiniteStructure& x, std::span<const Elem> members);

// Every closed subset, ordered by size and then lexicographically.
std::vector<std::vector<Elem>> closed_substructures(const FiniteStructure& x, const StructureGuard& guard = {});

std::vector<PartialMorphism> enumerate_partial_morphisms(const FiniteStructure& x, const FiniteStructure& y,
                                                         const StructureGuard& guard = {});

struct DirectUnion {
  FiniteStructure structure;
  StructMorphism left;
  StructMorphism right;
};

// Disjoint union in which the two interpretations of each constant are
// identified, together with everything they are forced to share.
DirectUnion direct_union_amalgamated(const FiniteStructure& x, const FiniteStructure& y);

// Plain disjoint union without identifying constants. Only valid as a
// structure when the signature has no constants; otherwise the constants of
// the left component are kept. Used to exhibit a failing coproduct.
DirectUnion direct_union_plain(const FiniteStructure& x, const FiniteStructure& y);

struct CoproductReport {
  bool holds = true;
  std::size_t pairs_checked = 0;
  // mediators[i * |Hom(Y,Z)| + j] for pair (g_i, h_j); empty when none or not unique.
  std::vector<std::vector<StructMorphism>> mediators;
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
  std::size_t failing_count = 0;
};

CoproductReport check_coproduct_universal(const FiniteStructure& x, const FiniteStructure& y,
                                          const FiniteStructure& z);
CoproductReport check_coproduct_universal(const FiniteStructure& x, const FiniteStructure& y,
                                          const FiniteStructure& z, const DirectUnion& candidate);

// A point of a countable symbolic carrier: kind tag plus index.
struct SymPoint {
  int kind = 0;
  std::int64_t index = 0;
  bool operator==(const SymPoint&) const = default;
  auto operator<=>(const SymPoint&) const = default;
};

// Countable structure given by decidable rules and a depth filtration.
// Only the operations below are ever used; the carrier is never enumerated.
class SymbolicStructure {
 public:
  virtual ~SymbolicStructure() = default;

  virtual const StructureSignature& signature() const = 0;
  virtual bool contains(const SymPoint& p) const = 0;
  virtual int level(const SymPoint& p) const = 0;
  // Points of level <= n in canonical order.
  virtual std::vector<SymPoint> slice_points(int n) const = 0;
  virtual std::string name(const SymPoint& p) const = 0;
  virtual std::optional<SymPoint> parse(std::string_view name) const = 0;

  virtual bool relation_holds(std::size_t r, std::span<const SymPoint> args) const = 0;
  virtual SymPoint apply(std::size_t o, std::span<const SymPoint> args) const = 0;
  virtual SymPoint constant(std::size_t c) const = 0;

  // The level-n slice as a finite structure. Throws PreconditionFailed if an
  // operation leaves the slice.
  FiniteStructure slice(int n) const;
};

struct SliceReport {
  bool nested = true;
  bool unary_closed = true;
  bool levels_consistent = true;
  std::string detail;
  bool ok() const { return nested && unary_closed && levels_consistent; }
};

SliceReport check_slices(const SymbolicStructure& s, int max_level);

// Finite-generation check: every set of at most `gen_size` points of the
// level-n slice generates a substructure contained in that slice.
struct GenerationReport {
  bool holds = true;
  std::size_t generating_sets = 0;
  std::size_t largest = 0;
  std::string detail;
};

GenerationReport check_finite_generation(const SymbolicStructure& s, int n, int gen_size);
GenerationReport check_finite_generation(const FiniteStructure& x, int gen_size);

}  // namespace natdual
