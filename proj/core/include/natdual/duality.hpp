#pragma once

#include <optional>
#include <string>
#include <vector>

#include "natdual/algebra.hpp"
#include "natdual/structure.hpp"

namespace natdual {

// φ followed by a subscript index, e.g. "φ₀".
std::string phi_label(int index);

// The generating algebra M together with its alter ego M~ on the same carrier.
struct AlterEgo {
  FiniteAlgebra algebra;
  FiniteStructure structure;
};

struct AlgebraicityReport {
  bool ok = true;
  std::string component;  // offending symbol, empty when ok
  std::string witness;    // human-readable failing tuple
};

// Relations must be subuniverses of powers of M, total operations
// homomorphisms, partial operations homomorphisms on a subuniverse domain,
// and constants one-element subuniverses.
AlgebraicityReport check_algebraic(const AlterEgo& ego);

// A* = Hom(A, M) with pointwise structure.
struct DualSpace {
  std::vector<Homomorphism> points;
  FiniteStructure structure;
};

// Throws NotAlgebraic naming the component and a witness.
DualSpace dual_of(const FiniteAlgebra& a, const AlterEgo& ego);

struct Evaluation {
  // table[a][i] = φ_i(a)
  std::vector<std::vector<Elem>> table;
  bool injective = false;
};

Evaluation evaluate(const FiniteAlgebra& a, const DualSpace& dual);

// All structure-preserving maps A* -> M~ with pointwise operations. For finite
// A these are exactly the points of the natural extension when M~ dualizes A.
struct NaturalExtension {
  DualSpace dual;
  FiniteAlgebra algebra;
  std::vector<StructMorphism> points;
  std::vector<Elem> embedding;  // a -> index of e_A(a), -1 if e_A(a) is not a morphism
  bool embedding_injective = false;
  bool embedding_homomorphism = false;
};

NaturalExtension natural_extension(const FiniteAlgebra& a, const AlterEgo& ego);

struct DualityCertificate {
  bool holds = false;
  std::size_t algebra_size = 0;
  std::size_t morphism_count = 0;
  std::vector<Elem> inverse;                         // point index -> a, when holds
  std::optional<StructMorphism> missing;             // a morphism outside e_A(A)
  std::optional<std::pair<Elem, Elem>> collision;    // a != b with e_A(a) = e_A(b)
};

DualityCertificate check_duality(const FiniteAlgebra& a, const AlterEgo& ego);

struct BasisEntry {
  PartialMorphism f;
  std::vector<int> open;  // indices into NaturalExtension::points, sorted
};

struct DeltaBasis {
  NaturalExtension extension;
  std::vector<BasisEntry> entries;
};

DeltaBasis delta_basis(const FiniteAlgebra& a, const AlterEgo& ego, const StructureGuard& guard = {});

struct DeltaBaseReport {
  bool holds = true;
  std::size_t basis_size = 0;
  std::size_t pairs = 0;
  std::size_t empty = 0;          // O_f ∩ O_g = ∅
  std::size_t union_matches = 0;  // f ∪ g is a partial morphism and O_f ∩ O_g = O_{f∪g}
  std::size_t other_matches = 0;  // equals some O_h, but not via f ∪ g
  std::optional<std::pair<std::size_t, std::size_t>> failing_pair;
};

DeltaBaseReport check_delta_base(const FiniteAlgebra& a, const AlterEgo& ego, const StructureGuard& guard = {});

struct ProductTheoremReport {
  bool extension_iso = false;  // (A×B)^δ ≅ A^δ × B^δ
  bool dual_iso = false;       // (A×B)* ≅ A* ⨿ B*
  bool agree = false;
  std::optional<std::vector<Elem>> extension_map;
  std::optional<std::vector<Elem>> dual_map;
};

ProductTheoremReport check_product_theorem(const FiniteAlgebra& a, const FiniteAlgebra& b, const AlterEgo& ego);

// Con(A) × Con(B) -> Con(A×B), (θ, ψ) ↦ θ × ψ, checked to be an order isomorphism.
struct CongruenceProductReport {
  bool holds = false;
  std::size_t left = 0;
  std::size_t right = 0;
  std::size_t product = 0;
  std::string detail;
};

CongruenceProductReport check_congruence_product(const FiniteAlgebra& a, const FiniteAlgebra& b,
                                                 const CongruenceOptions& options = {});

// Cover side: Hom(A,2) = ⋃[a_i:1] ∪ ⋃[b_j:0]. Formula side, read in A and
// read in 2 through every φ ∈ Hom(A,2): some (a_i, b_k, b_l) equals a_i.
struct CoverFormulaResult {
  bool cover = false;
  bool formula_in_algebra = false;
  bool formula_coordinatewise = false;
};

CoverFormulaResult check_median_cover_formula(const FiniteAlgebra& a, const std::vector<Elem>& as,
                                              const std::vector<Elem>& bs);

// Extension property of M~ for embeddings of closed substructures of the
// duals of the given algebras. Finite-level evidence only.
struct InjectivityReport {
  bool holds = true;
  std::size_t algebras = 0;
  std::size_t partial_morphisms = 0;
  std::string detail;
};

InjectivityReport check_injectivity_finite(const AlterEgo& ego, const std::vector<FiniteAlgebra>& suite,
                                           const StructureGuard& guard = {});

// For finite A both topologies are discrete; this records that explicitly.
struct TopologyReport {
  bool iota_discrete = true;
  bool delta_discrete = false;
  bool agree = false;
};

TopologyReport compare_delta_iota(const FiniteAlgebra& a, const AlterEgo& ego);

// Graphviz rendering: points, covering edges of a binary relation named "≤"
// and dashed arcs for a unary operation named "•".
std::string to_dot(const DualSpace& dual, const std::string& graph_name = "dual");
std::string to_dot(const FiniteStructure& s, const std::string& graph_name = "dual",
                   const std::vector<std::string>& tooltips = {});

}  // namespace natdual
