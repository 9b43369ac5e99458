#pragma once

#include <vector>

#include "darboux/core.hpp"

namespace darboux {

// J - kappa I = Lc D Lc^T with Lc unit lower bidiagonal (subdiagonal v) and
// D = diag(d). L = Lc D^{1/2} uses the roots stored in sqrt_d.
struct LowerFactor {
    Complex kappa;
    std::vector<Complex> d;       // d_0..d_{N-1}
    std::vector<Complex> v;       // v_0..v_{N-2}
    std::vector<Complex> sqrt_d;  // principal roots
};

// J - kappa I = Uc T Uc^T with Uc upper bidiagonal (diagonal u, ones above)
// and T = diag(t). U = Uc T^{1/2}. t has one more entry than u because the
// factorization of a finite section reaches one row further down.
struct UpperFactor {
    Complex kappa;
    Complex s0star;
    std::vector<Complex> t;       // t_0..t_N, t_0 = 1
    std::vector<Complex> u;       // u_0..u_{N-1}, u_0^2 = 1/s0*
    std::vector<Complex> sqrt_t;
};

LowerFactor lu_factor(const SymmetricJacobi& J, Complex kappa);

// Tridiagonal of L^T L + kappa I; one entry shorter than the factor.
SymmetricJacobi build_JC(const LowerFactor& f);

// negate_u0 picks the other root of 1/s0*; the monic data of build_JG does not
// depend on it.
UpperFactor ul_factor(const SymmetricJacobi& J, Complex kappa, Complex s0star, bool negate_u0 = false);

// Tridiagonal of U^T U + kappa I.
SymmetricJacobi build_JG(const UpperFactor& f);

}  // namespace darboux
