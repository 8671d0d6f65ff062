#pragma once

#include <cstddef>
#include <functional>
#include <initializer_list>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace natdual {

using Elem = int;
using Tuple = std::vector<Elem>;

struct OpSymbol {
  std::string name;
  int arity = 0;
  bool operator==(const OpSymbol&) const = default;
};

class Signature {
 public:
  Signature() = default;
  explicit Signature(std::vector<OpSymbol> ops);

  const std::vector<OpSymbol>& ops() const { return ops_; }
  std::size_t size() const { return ops_.size(); }
  const OpSymbol& operator[](std::size_t i) const { return ops_[i]; }
  std::optional<std::size_t> find(std::string_view name) const;

  bool operator==(const Signature&) const = default;

 private:
  std::vector<OpSymbol> ops_;
};

std::size_t ipow(std::size_t base, int exp);

// Row-major index of an argument tuple in a table over a carrier of size n.
std::size_t tuple_index(std::span<const Elem> args, std::size_t n);
Tuple tuple_at(std::size_t index, std::size_t n, int arity);

// Finite algebra on the carrier {0, ..., size-1}. Tables are stored flat,
// one per operation symbol, with size^arity entries.
class FiniteAlgebra {
 public:
  using OpFn = std::function<Elem(std::size_t op, std::span<const Elem> args)>;

  FiniteAlgebra() = default;
  FiniteAlgebra(Signature sig, int size, std::vector<std::vector<Elem>> tables,
                std::vector<std::string> labels = {});

  static FiniteAlgebra from_function(Signature sig, int size, const OpFn& fn,
                                     std::vector<std::string> labels = {});

  const Signature& signature() const { return sig_; }
  int size() const { return size_; }
  const std::vector<Elem>& table(std::size_t op) const { return tables_[op]; }
  const std::vector<std::vector<Elem>>& tables() const { return tables_; }

  Elem apply(std::size_t op, std::span<const Elem> args) const;
  Elem apply(std::size_t op, std::initializer_list<Elem> args) const;

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  std::string label(Elem e) const;
  std::optional<Elem> find_label(std::string_view label) const;

  bool operator==(const FiniteAlgebra&) const = default;

 private:
  Signature sig_;
  int size_ = 0;
  std::vector<std::vector<Elem>> tables_;
  std::vector<std::string> labels_;
};

// A map between carriers that commutes with every operation table.
struct Homomorphism {
  std::vector<Elem> map;

  // Throws InvalidArgument unless `map` is a homomorphism from `source` to `target`.
  static Homomorphism checked(const FiniteAlgebra& source, const FiniteAlgebra& target,
                              std::vector<Elem> map);
  Elem operator()(Elem a) const { return map[static_cast<std::size_t>(a)]; }
  bool operator==(const Homomorphism&) const = default;
  auto operator<=>(const Homomorphism&) const = default;
};

// Partition of a carrier, given as a block index per element. Blocks are
// numbered in order of first occurrence, so equal partitions compare equal.
struct Congruence {
  std::vector<int> block;

  int block_count() const;
  bool related(Elem a, Elem b) const { return block[a] == block[b]; }
  // Refinement order: this ⊆ other as equivalence relations.
  bool finer_than(const Congruence& other) const;
  static Congruence normalized(std::vector<int> block);
  bool operator==(const Congruence&) const = default;
  auto operator<=>(const Congruence&) const = default;
};

bool is_homomorphism(const FiniteAlgebra& source, const FiniteAlgebra& target,
                     std::span<const Elem> map);
bool is_compatible(const FiniteAlgebra& a, const Congruence& theta);

struct HomOptions {
  std::size_t max_results = std::size_t{1} << 22;
};

// All homomorphisms source -> target in lexicographic order of assignment.
std::vector<Homomorphism> enumerate_homs(const FiniteAlgebra& source, const FiniteAlgebra& target,
                                         const HomOptions& options = {});

struct Subalgebra {
  FiniteAlgebra algebra;
  std::vector<Elem> inclusion;  // index in the subalgebra -> element of the parent
};

std::vector<Elem> closure(const FiniteAlgebra& a, std::span<const Elem> gens);
Subalgebra subalgebra_generated(const FiniteAlgebra& a, std::span<const Elem> gens);
Subalgebra subalgebra_on(const FiniteAlgebra& a, std::span<const Elem> closed_subset);

struct Product {
  FiniteAlgebra algebra;
  Homomorphism proj_left;
  Homomorphism proj_right;
  Elem pair(Elem a, Elem b) const { return a * right_size + b; }
  int right_size = 0;
};

Product direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b);
FiniteAlgebra direct_power(const FiniteAlgebra& a, int exponent);

FiniteAlgebra quotient(const FiniteAlgebra& a, const Congruence& theta);

struct CongruenceOptions {
  int max_size = 8;
};

// All congruences in lexicographic order of block vectors.
std::vector<Congruence> all_congruences(const FiniteAlgebra& a, const CongruenceOptions& options = {});

}  // namespace natdual
