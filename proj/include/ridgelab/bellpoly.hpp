#pragma once

#include <complex>
#include <span>
#include <vector>

namespace ridgelab {

using cdouble = std::complex<double>;

// Largest order accepted by the Bell polynomial routines.
inline constexpr int kMaxBellOrder = 32;

// Complete Bell polynomial B_n(c_1, ..., c_n), with c[0] holding c_1.
//
// Evaluated by the binomial recursion
//   B_n = sum_{p=0}^{n-1} C(n-1, p) c_{n-p} B_p,   B_0 = 1.
// Throws ArgumentError if n < 0, n > kMaxBellOrder or c has fewer than n
// entries, and DomainError if any of the first n entries is not finite.
cdouble complete_bell(std::span<const cdouble> c, int n);

// All of B_0 ... B_n in one pass; element k holds B_k.
std::vector<cdouble> complete_bell_sequence(std::span<const cdouble> c, int n);

}  // namespace ridgelab
