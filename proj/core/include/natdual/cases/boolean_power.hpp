#pragma once

#include <cstddef>
#include <string>

namespace natdual::cases {

struct TernaryBooleanReport {
  int k = 0;
  std::size_t size = 0;               // |(2^k)^δ|
  bool full_product = false;          // x ↦ (x(π_t))_t is a bijection onto 2^k
  bool complement_exists = false;     // x^c is a morphism of the dual for every x
  bool naive_flip_is_morphism = true; // 1 - x(φ) on every φ, constants included
  bool identity_holds = false;        // (x, z, x^c) = z
  std::size_t identity_pairs = 0;
  bool complement_unique = false;     // x^c is the only y with (x, z, y) = z for all z
  std::size_t base_points = 0;
  bool boolean_algebras = false;      // B_(A,a) satisfies the Boolean axioms for every a
  std::string detail;

  bool ok() const { return full_product && complement_exists && identity_holds && complement_unique && boolean_algebras; }
};

// 2^k as a median algebra, 1 <= k <= 4. The complement x^c flips x on every
// non-constant dual point and keeps the constant ones.
TernaryBooleanReport ternary_boolean_check(int k);

}  // namespace natdual::cases
