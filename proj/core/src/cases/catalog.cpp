#include "natdual/cases/catalog.hpp"

#include <algorithm>

#include "natdual/error.hpp"
#include "natdual/iso.hpp"

namespace natdual::cases {

namespace {

Elem majority(Elem x, Elem y, Elem z) { return (x & y) | (y & z) | (x & z); }

// Two-element chain order as tuples (a, b) with a <= b.
std::vector<Tuple> chain_order() { return {{0, 0}, {0, 1}, {1, 1}}; }

std::string set_label(unsigned mask, int n) {
  std::string s = "{";
  bool first = true;
  for (int i = 0; i < n; ++i)
    if (mask & (1u << i)) {
      if (!first) s += ",";
      s += std::to_string(i);
      first = false;
    }
  return s + "}";
}

void append_unique(std::vector<SuiteEntry>& out, const std::string& prefix, FiniteAlgebra a) {
  for (const auto& e : out)
    if (e.algebra.size() == a.size() && find_isomorphism(e.algebra, a)) return;
  int same = 0;
  for (const auto& e : out)
    if (e.algebra.size() == a.size()) ++same;
  std::string name = prefix + "-" + std::to_string(a.size());
  if (same > 0) name += "-" + std::to_string(same);
  out.push_back({std::move(name), std::move(a)});
}

}  // namespace

Signature median_signature() { return Signature({{"m", 3}}); }

FiniteAlgebra median_two() {
  return FiniteAlgebra::from_function(
      median_signature(), 2, [](std::size_t, std::span<const Elem> a) { return majority(a[0], a[1], a[2]); },
      {"0", "1"});
}

AlterEgo median_ego() {
  StructureSignature sig({{"≤", 2}}, {{"•", 1}}, {}, {"0", "1"});
  FiniteStructure s(sig, 2, {chain_order()}, {{1, 0}}, {}, {0, 1}, {"0", "1"});
  return {median_two(), std::move(s)};
}

FiniteAlgebra median_power(int k) {
  if (k < 1) throw InvalidArgument("median_power needs k >= 1");
  return direct_power(median_two(), k);
}

Signature dl_signature() { return Signature({{"meet", 2}, {"join", 2}, {"0", 0}, {"1", 0}}); }

FiniteAlgebra dl_two() {
  return FiniteAlgebra::from_function(
      dl_signature(), 2,
      [](std::size_t op, std::span<const Elem> a) -> Elem {
        switch (op) {
          case 0: return a[0] & a[1];
          case 1: return a[0] | a[1];
          case 2: return 0;
          default: return 1;
        }
      },
      {"0", "1"});
}

AlterEgo dl_ego() {
  StructureSignature sig({{"≤", 2}}, {}, {}, {});
  FiniteStructure s(sig, 2, {chain_order()}, {}, {}, {}, {"0", "1"});
  return {dl_two(), std::move(s)};
}

FiniteAlgebra down_set_lattice(int n, const std::vector<std::pair<int, int>>& less) {
  if (n < 0 || n > 20) throw InvalidArgument("poset size out of range");
  std::vector<unsigned> below(static_cast<std::size_t>(n), 0);
  for (auto [i, j] : less) {
    if (i < 0 || j < 0 || i >= n || j >= n) throw InvalidArgument("poset pair out of range");
    below[static_cast<std::size_t>(j)] |= 1u << i;
  }
  std::vector<unsigned> downs;
  for (unsigned mask = 0; mask < (1u << n); ++mask) {
    bool down = true;
    for (int j = 0; j < n && down; ++j)
      if ((mask & (1u << j)) && (below[static_cast<std::size_t>(j)] & ~mask)) down = false;
    if (down) downs.push_back(mask);
  }
  auto index_of = [&](unsigned m) {
    return static_cast<Elem>(std::lower_bound(downs.begin(), downs.end(), m) - downs.begin());
  };
  std::vector<std::string> labels;
  for (unsigned m : downs) labels.push_back(set_label(m, n));
  unsigned full = (1u << n) - 1;
  return FiniteAlgebra::from_function(
      dl_signature(), static_cast<int>(downs.size()),
      [&](std::size_t op, std::span<const Elem> a) -> Elem {
        switch (op) {
          case 0: return index_of(downs[static_cast<std::size_t>(a[0])] & downs[static_cast<std::size_t>(a[1])]);
          case 1: return index_of(downs[static_cast<std::size_t>(a[0])] | downs[static_cast<std::size_t>(a[1])]);
          case 2: return index_of(0);
          default: return index_of(full);
        }
      },
      std::move(labels));
}

std::vector<SuiteEntry> median_suite() {
  std::vector<SuiteEntry> out;
  for (int k : {2, 3}) {
    FiniteAlgebra power = median_power(k);
    const unsigned n = static_cast<unsigned>(power.size());
    std::vector<std::vector<Elem>> subsets;
    for (unsigned mask = 1; mask < (1u << n); ++mask) {
      std::vector<Elem> members;
      for (unsigned e = 0; e < n; ++e)
        if (mask & (1u << e)) members.push_back(static_cast<Elem>(e));
      if (closure(power, members) == members) subsets.push_back(std::move(members));
    }
    std::stable_sort(subsets.begin(), subsets.end(),
                     [](const auto& x, const auto& y) { return x.size() < y.size(); });
    for (const auto& s : subsets) append_unique(out, "median", subalgebra_on(power, s).algebra);
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.algebra.size() < y.algebra.size(); });
  return out;
}

std::vector<SuiteEntry> dl_suite(int max_size) {
  if (max_size < 1 || max_size > 8) throw GuardExceeded("dl_suite supports sizes up to 8");
  std::vector<SuiteEntry> out;
  for (int n = 0; n < max_size; ++n) {
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    for (unsigned mask = 0; mask < (1u << pairs.size()); ++mask) {
      std::vector<std::pair<int, int>> less;
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if (mask & (1u << p)) less.push_back(pairs[p]);
      // below[j] holds the i < j; transitivity and the down-set count are bit checks.
      std::vector<unsigned> below(static_cast<std::size_t>(n), 0);
      for (auto [i, j] : less) below[static_cast<std::size_t>(j)] |= 1u << i;
      bool transitive = true;
      for (auto [i, j] : less)
        if ((below[static_cast<std::size_t>(i)] & ~below[static_cast<std::size_t>(j)]) != 0) transitive = false;
      if (!transitive) continue;
      int down_sets = 0;
      for (unsigned d = 0; d < (1u << n) && down_sets <= max_size; ++d) {
        bool closed = true;
        for (int j = 0; j < n && closed; ++j)
          if ((d >> j & 1u) && (below[static_cast<std::size_t>(j)] & ~d) != 0) closed = false;
        down_sets += closed ? 1 : 0;
      }
      if (down_sets > max_size) continue;
      FiniteAlgebra lattice = down_set_lattice(n, less);
      if (lattice.size() <= max_size) append_unique(out, "dl", std::move(lattice));
    }
  }
  std::stable_sort(out.begin(), out.end(),
                   [](const auto& x, const auto& y) { return x.algebra.size() < y.algebra.size(); });
  return out;
}

}  // namespace natdual::cases
