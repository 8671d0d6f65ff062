#include "natdual/algebra.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "natdual/error.hpp"
#include "search.hpp"

namespace natdual {

Signature::Signature(std::vector<OpSymbol> ops) : ops_(std::move(ops)) {
  std::set<std::string> names;
  for (const auto& op : ops_) {
    if (op.arity < 0) throw InvalidArgument("operation '" + op.name + "' has negative arity");
    if (op.name.empty()) throw InvalidArgument("operation symbol with empty name");
    if (!names.insert(op.name).second) throw InvalidArgument("duplicate operation symbol '" + op.name + "'");
  }
}

std::optional<std::size_t> Signature::find(std::string_view name) const {
  for (std::size_t i = 0; i < ops_.size(); ++i)
    if (ops_[i].name == name) return i;
  return std::nullopt;
}

std::size_t ipow(std::size_t base, int exp) {
  std::size_t r = 1;
  for (int i = 0; i < exp; ++i) r *= base;
  return r;
}

std::size_t tuple_index(std::span<const Elem> args, std::size_t n) {
  std::size_t idx = 0;
  for (Elem a : args) idx = idx * n + static_cast<std::size_t>(a);
  return idx;
}

Tuple tuple_at(std::size_t index, std::size_t n, int arity) {
  Tuple t(static_cast<std::size_t>(arity), 0);
  for (int i = arity - 1; i >= 0; --i) {
    t[static_cast<std::size_t>(i)] = static_cast<Elem>(index % n);
    index /= n;
  }
  return t;
}

FiniteAlgebra::FiniteAlgebra(Signature sig, int size, std::vector<std::vector<Elem>> tables,
                             std::vector<std::string> labels)
    : sig_(std::move(sig)), size_(size), tables_(std::move(tables)), labels_(std::move(labels)) {
  if (size_ < 0) throw InvalidArgument("negative carrier size");
  if (tables_.size() != sig_.size())
    throw InvalidArgument("expected " + std::to_string(sig_.size()) + " tables, got " +
                          std::to_string(tables_.size()));
  for (std::size_t i = 0; i < sig_.size(); ++i) {
    std::size_t expected = ipow(static_cast<std::size_t>(size_), sig_[i].arity);
    if (tables_[i].size() != expected)
      throw InvalidArgument("table '" + sig_[i].name + "' has " + std::to_string(tables_[i].size()) +
                            " entries, expected " + std::to_string(expected));
    for (std::size_t j = 0; j < tables_[i].size(); ++j) {
      Elem v = tables_[i][j];
      if (v < 0 || v >= size_)
        throw InvalidArgument("table '" + sig_[i].name + "' entry " + std::to_string(j) + " = " +
                              std::to_string(v) + " out of range 0.." + std::to_string(size_ - 1));
    }
  }
  if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(size_))
    throw InvalidArgument("label count does not match carrier size");
}

FiniteAlgebra FiniteAlgebra::from_function(Signature sig, int size, const OpFn& fn,
                                           std::vector<std::string> labels) {
  std::vector<std::vector<Elem>> tables;
  for (std::size_t i = 0; i < sig.size(); ++i) {
    int k = sig[i].arity;
    std::size_t count = ipow(static_cast<std::size_t>(size), k);
    std::vector<Elem> table(count);
    for (std::size_t j = 0; j < count; ++j) {
      Tuple t = tuple_at(j, static_cast<std::size_t>(size), k);
      table[j] = fn(i, t);
    }
    tables.push_back(std::move(table));
  }
  return FiniteAlgebra(std::move(sig), size, std::move(tables), std::move(labels));
}

Elem FiniteAlgebra::apply(std::size_t op, std::span<const Elem> args) const {
  return tables_[op][tuple_index(args, static_cast<std::size_t>(size_))];
}

Elem FiniteAlgebra::apply(std::size_t op, std::initializer_list<Elem> args) const {
  return apply(op, std::span<const Elem>(args.begin(), args.size()));
}

std::string FiniteAlgebra::label(Elem e) const {
  if (labels_.empty()) return std::to_string(e);
  return labels_[static_cast<std::size_t>(e)];
}

std::optional<Elem> FiniteAlgebra::find_label(std::string_view label) const {
  for (int e = 0; e < size_; ++e)
    if (this->label(e) == label) return e;
  return std::nullopt;
}

bool is_homomorphism(const FiniteAlgebra& source, const FiniteAlgebra& target, std::span<const Elem> map) {
  if (source.signature() != target.signature()) return false;
  if (map.size() != static_cast<std::size_t>(source.size())) return false;
  for (Elem v : map)
    if (v < 0 || v >= target.size()) return false;
  const auto n = static_cast<std::size_t>(source.size());
  for (std::size_t op = 0; op < source.signature().size(); ++op) {
    int k = source.signature()[op].arity;
    std::size_t count = ipow(n, k);
    Tuple image(static_cast<std::size_t>(k));
    for (std::size_t j = 0; j < count; ++j) {
      Tuple t = tuple_at(j, n, k);
      for (int i = 0; i < k; ++i) image[static_cast<std::size_t>(i)] = map[static_cast<std::size_t>(t[static_cast<std::size_t>(i)])];
      if (map[static_cast<std::size_t>(source.table(op)[j])] != target.apply(op, image)) return false;
    }
  }
  return true;
}

Homomorphism Homomorphism::checked(const FiniteAlgebra& source, const FiniteAlgebra& target,
                                   std::vector<Elem> map) {
  if (!is_homomorphism(source, target, map)) throw InvalidArgument("assignment is not a homomorphism");
  return Homomorphism{std::move(map)};
}

int Congruence::block_count() const {
  int c = 0;
  for (int b : block) c = std::max(c, b + 1);
  return c;
}

bool Congruence::finer_than(const Congruence& other) const {
  for (std::size_t a = 0; a < block.size(); ++a)
    for (std::size_t b = a + 1; b < block.size(); ++b)
      if (block[a] == block[b] && other.block[a] != other.block[b]) return false;
  return true;
}

Congruence Congruence::normalized(std::vector<int> block) {
  std::map<int, int> rename;
  for (int& b : block) {
    auto [it, inserted] = rename.emplace(b, static_cast<int>(rename.size()));
    b = it->second;
  }
  return Congruence{std::move(block)};
}

bool is_compatible(const FiniteAlgebra& a, const Congruence& theta) {
  const auto n = static_cast<std::size_t>(a.size());
  if (theta.block.size() != n) return false;
  // Compatibility with all basic translations suffices: vary one argument
  // within a block while the others are fixed.
  for (std::size_t op = 0; op < a.signature().size(); ++op) {
    int k = a.signature()[op].arity;
    if (k == 0) continue;
    std::size_t count = ipow(n, k);
    for (std::size_t j = 0; j < count; ++j) {
      Tuple t = tuple_at(j, n, k);
      Elem base = a.table(op)[j];
      for (int pos = 0; pos < k; ++pos) {
        Elem orig = t[static_cast<std::size_t>(pos)];
        for (Elem y = 0; y < a.size(); ++y) {
          if (y == orig || !theta.related(orig, y)) continue;
          t[static_cast<std::size_t>(pos)] = y;
          if (!theta.related(base, a.apply(op, t))) return false;
        }
        t[static_cast<std::size_t>(pos)] = orig;
      }
    }
  }
  return true;
}

std::vector<Homomorphism> enumerate_homs(const FiniteAlgebra& source, const FiniteAlgebra& target,
                                         const HomOptions& options) {
  if (source.signature() != target.signature())
    throw SignatureMismatch("enumerate_homs: source and target signatures differ");
  detail::SearchProblem p;
  p.n = source.size();
  p.m = target.size();
  for (std::size_t op = 0; op < source.signature().size(); ++op)
    p.ops.push_back({source.signature()[op].arity, &source.table(op), &target.table(op)});
  std::vector<Homomorphism> out;
  detail::search_assignments(p, [&](const std::vector<Elem>& h) {
    if (out.size() >= options.max_results)
      throw GuardExceeded("enumerate_homs: more than " + std::to_string(options.max_results) + " homomorphisms");
    out.push_back(Homomorphism{h});
    return true;
  });
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Elem> closure(const FiniteAlgebra& a, std::span<const Elem> gens) {
  const auto n = static_cast<std::size_t>(a.size());
  std::vector<char> in(n, 0);
  std::vector<Elem> members;
  auto add = [&](Elem e) {
    if (e < 0 || e >= a.size()) throw InvalidArgument("generator " + std::to_string(e) + " outside the carrier");
    if (!in[static_cast<std::size_t>(e)]) {
      in[static_cast<std::size_t>(e)] = 1;
      members.push_back(e);
    }
  };
  for (Elem g : gens) add(g);
  for (std::size_t op = 0; op < a.signature().size(); ++op)
    if (a.signature()[op].arity == 0) add(a.table(op)[0]);
  bool grew = true;
  while (grew) {
    grew = false;
    std::size_t before = members.size();
    for (std::size_t op = 0; op < a.signature().size(); ++op) {
      int k = a.signature()[op].arity;
      if (k == 0) continue;
      std::vector<Elem> snapshot = members;
      std::size_t s = snapshot.size();
      std::size_t count = ipow(s, k);
      Tuple args(static_cast<std::size_t>(k));
      for (std::size_t j = 0; j < count; ++j) {
        Tuple pos = tuple_at(j, s, k);
        for (int i = 0; i < k; ++i) args[static_cast<std::size_t>(i)] = snapshot[static_cast<std::size_t>(pos[static_cast<std::size_t>(i)])];
        add(a.apply(op, args));
      }
    }
    grew = members.size() != before;
  }
  std::sort(members.begin(), members.end());
  return members;
}

Subalgebra subalgebra_on(const FiniteAlgebra& a, std::span<const Elem> closed_subset) {
  std::vector<Elem> inclusion(closed_subset.begin(), closed_subset.end());
  std::sort(inclusion.begin(), inclusion.end());
  inclusion.erase(std::unique(inclusion.begin(), inclusion.end()), inclusion.end());
  std::vector<int> index(static_cast<std::size_t>(a.size()), -1);
  for (std::size_t i = 0; i < inclusion.size(); ++i) index[static_cast<std::size_t>(inclusion[i])] = static_cast<int>(i);
  const int s = static_cast<int>(inclusion.size());
  std::vector<std::string> labels;
  if (a.has_labels())
    for (Elem e : inclusion) labels.push_back(a.label(e));
  auto fn = [&](std::size_t op, std::span<const Elem> args) {
    Tuple parent(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) parent[i] = inclusion[static_cast<std::size_t>(args[i])];
    int r = index[static_cast<std::size_t>(a.apply(op, parent))];
    if (r < 0) throw InvalidArgument("subset is not closed under '" + a.signature()[op].name + "'");
    return r;
  };
  return Subalgebra{FiniteAlgebra::from_function(a.signature(), s, fn, std::move(labels)), std::move(inclusion)};
}

Subalgebra subalgebra_generated(const FiniteAlgebra& a, std::span<const Elem> gens) {
  std::vector<Elem> members = closure(a, gens);
  return subalgebra_on(a, members);
}

Product direct_product(const FiniteAlgebra& a, const FiniteAlgebra& b) {
  if (a.signature() != b.signature()) throw SignatureMismatch("direct_product: signatures differ");
  const int na = a.size();
  const int nb = b.size();
  std::vector<std::string> labels;
  if (a.has_labels() || b.has_labels())
    for (int x = 0; x < na; ++x)
      for (int y = 0; y < nb; ++y) labels.push_back("(" + a.label(x) + "," + b.label(y) + ")");
  auto fn = [&](std::size_t op, std::span<const Elem> args) {
    Tuple l(args.size());
    Tuple r(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) {
      l[i] = args[i] / nb;
      r[i] = args[i] % nb;
    }
    return a.apply(op, l) * nb + b.apply(op, r);
  };
  FiniteAlgebra prod = FiniteAlgebra::from_function(a.signature(), na * nb, fn, std::move(labels));
  std::vector<Elem> pl(static_cast<std::size_t>(na * nb));
  std::vector<Elem> pr(static_cast<std::size_t>(na * nb));
  for (int e = 0; e < na * nb; ++e) {
    pl[static_cast<std::size_t>(e)] = e / nb;
    pr[static_cast<std::size_t>(e)] = e % nb;
  }
  return Product{std::move(prod), Homomorphism{std::move(pl)}, Homomorphism{std::move(pr)}, nb};
}

FiniteAlgebra direct_power(const FiniteAlgebra& a, int exponent) {
  if (exponent < 0) throw InvalidArgument("negative exponent");
  const auto n = static_cast<std::size_t>(a.size());
  const int size = static_cast<int>(ipow(n, exponent));
  std::vector<std::string> labels;
  for (int e = 0; e < size; ++e) {
    Tuple coords = tuple_at(static_cast<std::size_t>(e), n, exponent);
    std::string s;
    for (Elem c : coords) s += a.label(c);
    labels.push_back(exponent == 0 ? "()" : s);
  }
  auto fn = [&](std::size_t op, std::span<const Elem> args) {
    std::vector<Tuple> coords;
    for (Elem x : args) coords.push_back(tuple_at(static_cast<std::size_t>(x), n, exponent));
    Tuple out(static_cast<std::size_t>(exponent));
    Tuple column(args.size());
    for (int c = 0; c < exponent; ++c) {
      for (std::size_t i = 0; i < args.size(); ++i) column[i] = coords[i][static_cast<std::size_t>(c)];
      out[static_cast<std::size_t>(c)] = a.apply(op, column);
    }
    return static_cast<Elem>(tuple_index(out, n));
  };
  return FiniteAlgebra::from_function(a.signature(), size, fn, std::move(labels));
}

FiniteAlgebra quotient(const FiniteAlgebra& a, const Congruence& theta) {
  if (!is_compatible(a, theta)) throw InvalidArgument("quotient: partition is not a congruence");
  Congruence c = Congruence::normalized(theta.block);
  const int s = c.block_count();
  std::vector<Elem> rep(static_cast<std::size_t>(s), -1);
  for (int e = a.size() - 1; e >= 0; --e) rep[static_cast<std::size_t>(c.block[static_cast<std::size_t>(e)])] = e;
  std::vector<std::string> labels;
  if (a.has_labels())
    for (Elem r : rep) labels.push_back("[" + a.label(r) + "]");
  auto fn = [&](std::size_t op, std::span<const Elem> args) {
    Tuple t(args.size());
    for (std::size_t i = 0; i < args.size(); ++i) t[i] = rep[static_cast<std::size_t>(args[i])];
    return c.block[static_cast<std::size_t>(a.apply(op, t))];
  };
  return FiniteAlgebra::from_function(a.signature(), s, fn, std::move(labels));
}

namespace {

// Block vector of the equivalence generated by a union-find forest.
std::vector<int> blocks_of(std::vector<int>& parent) {
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  std::vector<int> roots(parent.size());
  for (std::size_t i = 0; i < parent.size(); ++i) roots[i] = find(static_cast<int>(i));
  return Congruence::normalized(std::move(roots)).block;
}

// Principal congruence Cg(a, b): close the pair under all basic translations,
// then take the generated equivalence.
Congruence principal(const FiniteAlgebra& alg, Elem a, Elem b) {
  const auto n = static_cast<std::size_t>(alg.size());
  std::vector<char> seen(n * n, 0);
  std::vector<std::pair<Elem, Elem>> queue{{a, b}};
  seen[static_cast<std::size_t>(a) * n + static_cast<std::size_t>(b)] = 1;
  std::vector<int> parent(n);
  for (std::size_t i = 0; i < n; ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  for (std::size_t head = 0; head < queue.size(); ++head) {
    auto [x, y] = queue[head];
    int rx = find(x);
    int ry = find(y);
    if (rx != ry) parent[static_cast<std::size_t>(std::max(rx, ry))] = std::min(rx, ry);
    for (std::size_t op = 0; op < alg.signature().size(); ++op) {
      int k = alg.signature()[op].arity;
      if (k == 0) continue;
      std::size_t rest = ipow(n, k - 1);
      for (int pos = 0; pos < k; ++pos) {
        for (std::size_t j = 0; j < rest; ++j) {
          Tuple others = tuple_at(j, n, k - 1);
          Tuple t(static_cast<std::size_t>(k));
          for (int i = 0, o = 0; i < k; ++i)
            t[static_cast<std::size_t>(i)] = i == pos ? x : others[static_cast<std::size_t>(o++)];
          Elem u = alg.apply(op, t);
          t[static_cast<std::size_t>(pos)] = y;
          Elem v = alg.apply(op, t);
          if (u == v) continue;
          char& s = seen[static_cast<std::size_t>(u) * n + static_cast<std::size_t>(v)];
          if (s) continue;
          s = 1;
          queue.emplace_back(u, v);
        }
      }
    }
  }
  return Congruence{blocks_of(parent)};
}

Congruence join(const Congruence& l, const Congruence& r) {
  std::vector<int> parent(l.block.size());
  for (std::size_t i = 0; i < parent.size(); ++i) parent[i] = static_cast<int>(i);
  auto find = [&](int x) {
    while (parent[static_cast<std::size_t>(x)] != x) x = parent[static_cast<std::size_t>(x)];
    return x;
  };
  auto unite_blocks = [&](const std::vector<int>& block) {
    std::map<int, int> first;
    for (std::size_t i = 0; i < block.size(); ++i) {
      auto [it, fresh] = first.emplace(block[i], static_cast<int>(i));
      if (fresh) continue;
      int a = find(it->second);
      int b = find(static_cast<int>(i));
      if (a != b) parent[static_cast<std::size_t>(std::max(a, b))] = std::min(a, b);
    }
  };
  unite_blocks(l.block);
  unite_blocks(r.block);
  return Congruence{blocks_of(parent)};
}

}  // namespace

// Every congruence is a join of principal ones, so closing the principal
// congruences and the identity under binary joins yields all of them.
std::vector<Congruence> all_congruences(const FiniteAlgebra& a, const CongruenceOptions& options) {
  if (a.size() > options.max_size)
    throw GuardExceeded("all_congruences: carrier size " + std::to_string(a.size()) + " exceeds guard " +
                        std::to_string(options.max_size));
  const int n = a.size();
  std::set<Congruence> found;
  std::vector<int> identity(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) identity[static_cast<std::size_t>(i)] = i;
  found.insert(Congruence{identity});
  std::vector<Congruence> principals;
  for (Elem x = 0; x < n; ++x)
    for (Elem y = x + 1; y < n; ++y) principals.push_back(principal(a, x, y));
  std::vector<Congruence> frontier;
  for (const auto& p : principals)
    if (found.insert(p).second) frontier.push_back(p);
  while (!frontier.empty()) {
    std::vector<Congruence> next;
    for (const auto& c : frontier)
      for (const auto& p : principals) {
        Congruence j = join(c, p);
        if (found.insert(j).second) next.push_back(std::move(j));
      }
    frontier = std::move(next);
  }
  return {found.begin(), found.end()};
}

}  // namespace natdual
