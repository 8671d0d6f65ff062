#pragma once

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "natdual/algebra.hpp"
#include "natdual/duality.hpp"
#include "natdual/structure.hpp"

namespace natdual {

using ValueSet = std::set<Tuple>;

// A point x of A^δ: its value x(φ) on every dual point. Algebra points carry
// the element they evaluate.
struct ProElement {
  std::string name;
  std::function<Elem(const SymPoint&)> rule;
  std::optional<SymPoint> algebra_point;
};

// Basic open O_f whose domain is infinite but decidable. `admits(a)` decides
// e_A(a) ∈ O_f without enumerating the domain.
struct Witness {
  std::string name;
  std::function<bool(const SymPoint&)> in_domain;
  std::function<Elem(const SymPoint&)> value;
  std::function<bool(const SymPoint&)> admits;
};

// Total order on the carrier of M; rank[e] is the position of e.
struct TotalOrder {
  std::vector<int> rank;
  bool algebraic = false;

  static TotalOrder index_order(const FiniteAlgebra& m);
  // `sequence` lists the carrier from least to greatest.
  static TotalOrder from_sequence(const FiniteAlgebra& m, const std::vector<Elem>& sequence);
  bool less_equal(Elem a, Elem b) const { return rank[static_cast<std::size_t>(a)] <= rank[static_cast<std::size_t>(b)]; }
  bool is_index_order() const;
};

// The source side: an algebra A (finite or symbolic), its dual A* through a
// depth filtration, and evaluation e_A(a)(φ).
class SourceSpace {
 public:
  virtual ~SourceSpace() = default;

  virtual std::string name() const = 0;
  virtual bool finite() const = 0;
  virtual const FiniteAlgebra& m() const = 0;
  virtual const Signature& signature() const = 0;

  // Dual points of level <= depth; each slice is a closed substructure.
  virtual std::vector<SymPoint> dual_slice(int depth) const = 0;
  // Algebra elements available at the given depth, canonical order.
  virtual std::vector<SymPoint> algebra_points(int depth) const = 0;
  virtual Elem evaluate(const SymPoint& a, const SymPoint& phi) const = 0;
  virtual SymPoint apply(std::size_t op, std::span<const SymPoint> args) const = 0;

  virtual std::string point_name(const SymPoint& a) const = 0;
  virtual std::string dual_name(const SymPoint& phi) const = 0;
  virtual std::optional<ProElement> parse_point(std::string_view name) const = 0;
  virtual std::vector<ProElement> sample_points(int depth) const = 0;

  // Pairs φ ≤ ψ in the pointwise order induced by `ord`, within the slice.
  virtual std::vector<std::pair<SymPoint, SymPoint>> comparable_pairs(int depth, const TotalOrder& ord) const = 0;

  virtual std::vector<Witness> witnesses_for(const ProElement& x) const;
  // A witness is known for x but currently disabled.
  virtual bool pending_witness(const ProElement& x) const;

  void register_witness(const std::string& point, Witness w);
  void set_witnesses_enabled(bool enabled) { witnesses_enabled_ = enabled; }
  bool witnesses_enabled() const { return witnesses_enabled_; }

  ProElement algebra_element(const SymPoint& a) const;

 protected:
  std::map<std::string, std::vector<Witness>> registry_;
  bool witnesses_enabled_ = true;
};

// A finite algebra with an alter ego. Every slice is the whole dual.
class FiniteSource : public SourceSpace {
 public:
  FiniteSource(FiniteAlgebra a, AlterEgo ego);

  std::string name() const override { return "finite"; }
  bool finite() const override { return true; }
  const FiniteAlgebra& m() const override { return ego_.algebra; }
  const Signature& signature() const override { return a_.signature(); }
  std::vector<SymPoint> dual_slice(int depth) const override;
  std::vector<SymPoint> algebra_points(int depth) const override;
  Elem evaluate(const SymPoint& a, const SymPoint& phi) const override;
  SymPoint apply(std::size_t op, std::span<const SymPoint> args) const override;
  std::string point_name(const SymPoint& a) const override;
  std::string dual_name(const SymPoint& phi) const override;
  std::optional<ProElement> parse_point(std::string_view name) const override;
  // Every point of the natural extension; algebra points are flagged.
  std::vector<ProElement> sample_points(int depth) const override;
  std::vector<std::pair<SymPoint, SymPoint>> comparable_pairs(int depth, const TotalOrder& ord) const override;

  const FiniteAlgebra& algebra() const { return a_; }
  const NaturalExtension& extension() const { return ext_; }
  // Point of A^δ as a ProElement without the algebra flag, so windows are
  // computed through neighbourhoods rather than isolation.
  ProElement extension_point(int index) const;

 private:
  FiniteAlgebra a_;
  AlterEgo ego_;
  NaturalExtension ext_;
};

// Finite codomain B with its dual B* = Hom(B, M).
struct FiniteTarget {
  FiniteAlgebra algebra;
  FiniteAlgebra m;
  std::vector<Homomorphism> dual;

  static FiniteTarget make(FiniteAlgebra b, FiniteAlgebra m);
  std::vector<int> all_dual() const;
  std::string dual_name(int phi) const { return phi_label(phi); }
  std::optional<int> find_dual(std::string_view label) const;
  Tuple restrict(Elem b, const std::vector<int>& window) const;
  // b with e_B(b)↾B* equal to the tuple, if any.
  std::optional<Elem> element_of(const Tuple& full) const;
};

// Arbitrary map u: A -> B, not necessarily a homomorphism.
struct MapBetweenAlgebras {
  std::string name;
  std::function<Elem(const SymPoint&)> rule;
};

MapBetweenAlgebras map_from_table(std::string name, std::vector<Elem> table);

// Basic open: agreement with finitely many fixed values plus witnesses.
struct Neighborhood {
  std::vector<std::pair<SymPoint, Elem>> fixed;
  std::vector<Witness> witnesses;

  bool contains(const SourceSpace& space, const SymPoint& a) const;
  static Neighborhood from_partial(const PartialMorphism& f);
  // x restricted to the level-`depth` slice, optionally with x's witnesses.
  static Neighborhood around(const SourceSpace& space, const ProElement& x, int depth, bool with_witnesses);
};

struct WindowOptions {
  int stabilization_runs = 3;  // k
  int pool_margin = 2;         // algebra pool depth beyond the slice depth
};

ValueSet project(const ValueSet& values, const std::vector<int>& from, const std::vector<int>& to);

// u(V, F). Throws EmptyAtDepth if V has no algebra point among those of the
// given depth.
ValueSet window_image(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                      const Neighborhood& v, const std::vector<int>& window, int depth);

struct WindowReport {
  std::string point;
  std::vector<int> window;
  int depth = 0;
  ValueSet values;
  bool stabilized = false;
  bool pending_witness = false;
  std::vector<std::string> witnesses;
  std::vector<std::pair<int, ValueSet>> history;  // slice depth -> window
};

// u(x, F): intersection over basic neighbourhoods of x, truncated at depth d.
WindowReport point_window(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                          const ProElement& x, const std::vector<int>& window, int depth,
                          const WindowOptions& options = {});

// ũ(x)↾F; identical to point_window, named for the closed-set view.
WindowReport tilde_u(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                     const ProElement& x, const std::vector<int>& window, int depth,
                     const WindowOptions& options = {});

enum class Verdict { Evidence, Counterexample, Inconclusive };
std::string to_string(Verdict v);

struct SmoothReport {
  Verdict verdict = Verdict::Evidence;
  int depth = 0;
  std::size_t windows_checked = 0;
  std::optional<WindowReport> witness;     // first window with two or more values
};

SmoothReport check_smooth(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                          const std::vector<ProElement>& samples, const std::vector<std::vector<int>>& windows,
                          int depth, const WindowOptions& options = {});

struct Escape {
  int depth;
  std::string point;
  Tuple value;
};

struct StrongReport {
  Verdict verdict = Verdict::Evidence;
  int depth = 0;
  std::size_t windows_checked = 0;
  std::optional<WindowReport> window;  // the window that every ι-neighbourhood escapes
  std::vector<Escape> escapes;
};

StrongReport check_strong(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                          const std::vector<ProElement>& samples, const std::vector<std::vector<int>>& windows,
                          int depth, const WindowOptions& options = {});

// ū(K)↾F: union of ũ(x)↾F over x ∈ K. Refuses maps with a strongness counterexample on K.
ValueSet lift_bar_u(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                    const std::vector<ProElement>& k, const std::vector<int>& window, int depth,
                    const WindowOptions& options = {});

struct CompositionReport {
  ValueSet composite;  // (vu)~(x)↾F
  ValueSet lifted;     // v̄(ũ(x))↾F
  bool subset = false;
  bool equal = false;
  bool outer_is_homomorphism = false;
};

CompositionReport check_composition(const SourceSpace& space, const FiniteTarget& middle,
                                    const MapBetweenAlgebras& u, const std::vector<Elem>& v,
                                    const FiniteTarget& outer, const ProElement& x, const std::vector<int>& window,
                                    int depth, const WindowOptions& options = {});

struct Localized {
  MapBetweenAlgebras map;
  FiniteTarget target;  // M as its own codomain
  int identity = -1;    // index of id_M in Hom(M, M)
};

// u_φ = φ ∘ u.
Localized localize(const FiniteTarget& target, const MapBetweenAlgebras& u, int phi);

struct UpDownReport {
  std::vector<int> window;
  Tuple lower;  // u^∇(x)↾F
  Tuple upper;  // u^Δ(x)↾F
  ValueSet values;
  Tuple values_meet;
  Tuple values_join;
  bool meet_agrees = false;
  bool join_agrees = false;
  bool sandwich = false;
  bool stabilized = false;
};

UpDownReport upper_lower(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                         const ProElement& x, const std::vector<int>& window, int depth, const TotalOrder& ord,
                         const WindowOptions& options = {});

struct LocalLatticeReport {
  bool holds = true;
  std::size_t checks = 0;
  std::optional<Elem> b;
  std::optional<Elem> c;
  std::vector<int> window;
  std::string operation;  // "meet" or "join"
};

LocalLatticeReport check_local_lattice(const FiniteTarget& target, const TotalOrder& ord, int max_dual = 16);

struct APlusReport {
  bool holds = true;
  std::size_t pairs = 0;
  std::optional<std::pair<std::string, std::string>> violation;
};

APlusReport check_a_plus_membership(const SourceSpace& space, const ProElement& x, const TotalOrder& ord, int depth);

// g(K_1, ..., K_n) = f(K_1 × ... × K_n) on a finite algebra.
std::set<Elem> gamma_lift(const FiniteAlgebra& algebra, std::size_t op, const std::vector<std::set<Elem>>& args);

struct ForcingPoint {
  Tuple proposed;
  int depth;
  std::string point;
  Tuple value;
};

struct SelectionReport {
  WindowReport window;
  std::vector<ForcingPoint> forcing;
};

// For each candidate value at x, an algebra point in every examined
// neighbourhood whose value differs. Throws PreconditionFailed on singleton windows.
SelectionReport no_continuous_selection_demo(const SourceSpace& space, const FiniteTarget& target,
                                             const MapBetweenAlgebras& u, const ProElement& x,
                                             const std::vector<int>& window, int depth,
                                             const WindowOptions& options = {});

// Checks u against every operation on the algebra points of the given depth.
struct HomCheck {
  bool holds = true;
  std::string detail;
};

HomCheck map_is_homomorphism(const SourceSpace& space, const FiniteTarget& target, const MapBetweenAlgebras& u,
                             int depth);

}  // namespace natdual
