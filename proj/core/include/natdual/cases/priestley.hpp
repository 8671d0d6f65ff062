#pragma once

#include <cstddef>
#include <string>

#include "natdual/algebra.hpp"

namespace natdual::cases {

// Points x of L^δ are read through their zero sets x⁻¹(0), which are
// down-sets of L*. Intervals [F, O] range over pairs of down-sets.
struct DeltaPrimeReport {
  bool holds = true;
  std::size_t points = 0;
  std::size_t dual_points = 0;
  std::size_t basis_size = 0;
  std::size_t basis_matched = 0;       // O_f = [f⁻¹(0)↓, −(f⁻¹(1)↑)]
  std::size_t intervals = 0;           // pairs of down-sets (F, O)
  std::size_t empty_intervals = 0;     // F ⊄ O
  std::size_t intervals_as_unions = 0; // [F, O] = ⋃{O_f ⊆ [F, O]}
  std::size_t intervals_as_basis = 0;  // [F, O] equals a single O_f
  std::string detail;
};

// Throws GuardExceeded when |L| > 8 and SignatureMismatch unless L is a
// bounded lattice in the meet, join, 0, 1 signature.
DeltaPrimeReport dl_delta_equals_delta_prime(const FiniteAlgebra& lattice);

}  // namespace natdual::cases
