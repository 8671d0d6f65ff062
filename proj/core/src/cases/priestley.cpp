#include "natdual/cases/priestley.hpp"

#include <algorithm>
#include <cstdint>

#include "natdual/cases/catalog.hpp"
#include "natdual/duality.hpp"
#include "natdual/error.hpp"

namespace natdual::cases {

namespace {

using Mask = std::uint32_t;

}  // namespace

DeltaPrimeReport dl_delta_equals_delta_prime(const FiniteAlgebra& lattice) {
  if (lattice.size() > 8) throw GuardExceeded("dl_delta_equals_delta_prime: |L| must be at most 8");
  if (!(lattice.signature() == dl_signature()))
    throw SignatureMismatch("dl_delta_equals_delta_prime: expected the meet, join, 0, 1 signature");

  const AlterEgo ego = dl_ego();
  const DeltaBasis basis = delta_basis(lattice, ego);
  const auto& ext = basis.extension;
  const FiniteStructure& dual = ext.dual.structure;
  const int n = dual.size();
  if (n > 16) throw GuardExceeded("dl_delta_equals_delta_prime: dual too large");

  DeltaPrimeReport rep;
  rep.points = ext.points.size();
  rep.dual_points = static_cast<std::size_t>(n);
  rep.basis_size = basis.entries.size();

  auto le = [&](int i, int j) { return dual.holds(0, Tuple{i, j}); };
  auto down = [&](Mask s) {
    Mask out = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if ((s >> i & 1u) && le(j, i)) out |= Mask{1} << j;
    return out;
  };
  auto up = [&](Mask s) {
    Mask out = 0;
    for (int j = 0; j < n; ++j)
      for (int i = 0; i < n; ++i)
        if ((s >> i & 1u) && le(i, j)) out |= Mask{1} << j;
    return out;
  };

  std::vector<Mask> zero;
  for (const auto& x : ext.points) {
    Mask z = 0;
    for (int i = 0; i < n; ++i)
      if (x.map[static_cast<std::size_t>(i)] == 0) z |= Mask{1} << i;
    zero.push_back(z);
  }
  auto interval = [&](Mask f, Mask o) {
    std::vector<int> out;
    for (std::size_t i = 0; i < zero.size(); ++i)
      if ((f & ~zero[i]) == 0 && (zero[i] & ~o) == 0) out.push_back(static_cast<int>(i));
    return out;
  };

  const Mask all = n == 32 ? ~Mask{0} : (Mask{1} << n) - 1;
  for (const auto& e : basis.entries) {
    Mask z = 0;
    Mask o = 0;
    for (int i = 0; i < n; ++i) {
      Elem v = e.f.map[static_cast<std::size_t>(i)];
      if (v == 0) z |= Mask{1} << i;
      if (v == 1) o |= Mask{1} << i;
    }
    if (interval(down(z), all & ~up(o)) == e.open)
      ++rep.basis_matched;
    else if (rep.detail.empty())
      rep.detail = "O_f differs from [F, -F'] for a partial morphism with domain size " +
                   std::to_string(e.f.domain.size());
  }

  std::vector<Mask> downsets;
  for (Mask s = 0; s <= all; ++s)
    if (down(s) == s) downsets.push_back(s);
  for (Mask f : downsets)
    for (Mask o : downsets) {
      ++rep.intervals;
      std::vector<int> target = interval(f, o);
      if ((f & ~o) != 0) {
        ++rep.empty_intervals;
        if (target.empty()) ++rep.intervals_as_unions;
        continue;
      }
      std::vector<bool> covered(zero.size(), false);
      bool single = false;
      for (const auto& e : basis.entries) {
        bool inside = true;
        for (int i : e.open) inside = inside && std::binary_search(target.begin(), target.end(), i);
        if (!inside) continue;
        for (int i : e.open) covered[static_cast<std::size_t>(i)] = true;
        single = single || e.open == target;
      }
      bool union_ok = true;
      for (int i : target) union_ok = union_ok && covered[static_cast<std::size_t>(i)];
      if (union_ok) ++rep.intervals_as_unions;
      if (single) ++rep.intervals_as_basis;
      if (!union_ok && rep.detail.empty()) rep.detail = "an interval [F, O] is not a union of basic opens";
    }

  rep.holds = rep.basis_matched == rep.basis_size && rep.intervals_as_unions == rep.intervals;
  return rep;
}

}  // namespace natdual::cases
