#pragma once

#include <vector>

#include "darboux/error.hpp"

namespace darboux {

// Eigenvalues of an n x n complex upper Hessenberg matrix (row-major, entries
// below the subdiagonal ignored) by single-shift QR with Wilkinson shifts.
// A subdiagonal entry is dropped once it falls below 1e-14 times its two
// diagonal neighbours. Throws NumericalError(n) after 60 n sweeps.
std::vector<Complex> hessenberg_eigenvalues(std::vector<Complex> h, int n);

// Tridiagonal convenience wrapper: diag has n entries, lower/upper n-1.
std::vector<Complex> tridiagonal_eigenvalues(const std::vector<Complex>& diag,
                                             const std::vector<Complex>& lower,
                                             const std::vector<Complex>& upper);

}  // namespace darboux
