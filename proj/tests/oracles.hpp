#pragma once

// Test-side reference computations. None of these go through the library's
// recurrence machinery: closed forms, dense linear algebra (Eigen) and
// discretized Stieltjes procedures only.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using CL = std::complex<long double>;

// Indexed with F_0 = F_1 = 1.
inline double fibonacci(int n) {
    double a = 1.0, b = 1.0;
    for (int k = 0; k < n; ++k) {
        double t = a + b;
        a = b;
        b = t;
    }
    return a;
}

// w = z + sqrt(z^2 - 1) with |w| >= 1.
inline C joukowski_root(C z) {
    C w = z + std::sqrt(z - 1.0) * std::sqrt(z + 1.0);
    if (std::abs(w) < 1.0)
        w = 1.0 / w;
    return w;
}

// U_n(z) from (w^{n+1} - w^{-(n+1)}) / (w - 1/w); small sums when w is near +-1
// are not needed in the tests (z stays off [-1, 1]).
inline C cheb_U(int n, C z) {
    if (n < 0)
        return 0.0;
    const C w = joukowski_root(z);
    return (std::pow(w, n + 1) - std::pow(w, -(n + 1))) / (w - 1.0 / w);
}

inline C cheb_T(int n, C z) {
    const C w = joukowski_root(z);
    return 0.5 * (std::pow(w, n) + std::pow(w, -n));
}

// Monic polynomials of the four normalized Chebyshev families (kind 1..4).
inline C cheb_monic(int kind, int n, C z) {
    if (n == 0)
        return 1.0;
    const double scale = std::ldexp(1.0, -n);
    switch (kind) {
    case 1:
        return 2.0 * scale * cheb_T(n, z);
    case 2:
        return scale * cheb_U(n, z);
    case 3:
        return scale * (cheb_U(n, z) - cheb_U(n - 1, z));
    default:
        return scale * (cheb_U(n, z) + cheb_U(n - 1, z));
    }
}

// Gauss rule from the eigen-decomposition of a real symmetric Jacobi matrix
// (Golub-Welsch), weights scaled to total mass s0.
struct Rule {
    std::vector<double> x, w;
};

inline Rule golub_welsch(const std::vector<double>& b, const std::vector<double>& a, double s0 = 1.0) {
    const int n = static_cast<int>(b.size());
    Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = b[static_cast<std::size_t>(i)];
        if (i + 1 < n)
            J(i, i + 1) = J(i + 1, i) = a[static_cast<std::size_t>(i)];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
    Rule r;
    for (int i = 0; i < n; ++i) {
        r.x.push_back(es.eigenvalues()(i));
        const double v = es.eigenvectors()(0, i);
        r.w.push_back(s0 * v * v);
    }
    return r;
}

// Symmetric Jacobi data of the normalized Chebyshev families.
inline Rule chebyshev_rule(int kind, int nodes) {
    std::vector<double> b(static_cast<std::size_t>(nodes), 0.0), a(static_cast<std::size_t>(nodes - 1), 0.5);
    if (kind == 1 && nodes > 1)
        a[0] = std::sqrt(0.5);
    if (kind == 3)
        b[0] = 0.5;
    if (kind == 4)
        b[0] = -0.5;
    return golub_welsch(b, a);
}

// Monic recurrence coefficients of the discrete bilinear functional
// L(p q) = sum_k w_k p(x_k) q(x_k) by the Stieltjes procedure in long double.
struct Monic {
    std::vector<C> c;       // c_1..c_count
    std::vector<C> lambda;  // lambda_2..lambda_count
    C s0;
};

inline Monic stieltjes(const std::vector<double>& x, const std::vector<C>& w, int count) {
    const std::size_t K = x.size();
    std::vector<CL> prev(K, 0.0L), cur(K, 1.0L);
    Monic out;
    CL norm_prev = 0.0L, norm = 0.0L;
    for (std::size_t k = 0; k < K; ++k)
        norm += CL(w[k]);
    out.s0 = C(norm);
    for (int n = 1; n <= count; ++n) {
        CL num = 0.0L;
        for (std::size_t k = 0; k < K; ++k)
            num += CL(w[k]) * static_cast<long double>(x[k]) * cur[k] * cur[k];
        const CL c = num / norm;
        const CL lam = n == 1 ? CL(0.0L) : norm / norm_prev;
        out.c.push_back(C(c));
        if (n >= 2)
            out.lambda.push_back(C(lam));
        std::vector<CL> next(K);
        for (std::size_t k = 0; k < K; ++k)
            next[k] = (static_cast<long double>(x[k]) - c) * cur[k] - lam * prev[k];
        prev.swap(cur);
        cur.swap(next);
        norm_prev = norm;
        norm = 0.0L;
        for (std::size_t k = 0; k < K; ++k)
            norm += CL(w[k]) * cur[k] * cur[k];
    }
    return out;
}

// Dense monic Jacobi matrix (c on the diagonal, 1 above, lambda below).
inline Eigen::MatrixXcd monic_matrix(const std::vector<C>& c, const std::vector<C>& lambda, int n) {
    Eigen::MatrixXcd J = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        J(i, i) = c[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            J(i, i + 1) = 1.0;
            J(i + 1, i) = lambda[static_cast<std::size_t>(i)];
        }
    }
    return J;
}

// det(zI - J_n) by expansion of the dense matrix (Eigen LU).
inline C char_poly(const Eigen::MatrixXcd& J, C z) {
    const auto n = J.rows();
    Eigen::MatrixXcd M = z * Eigen::MatrixXcd::Identity(n, n) - J;
    return M.determinant();
}

// Distance from z to the segment [-1, 1].
inline double dist_to_segment(C z) {
    const double x = std::clamp(z.real(), -1.0, 1.0);
    return std::abs(z - C(x, 0.0));
}

// Tiny deterministic generator for property tests (splitmix64).
struct Gen {
    std::uint64_t state;
    explicit Gen(std::uint64_t seed) : state(seed) {}
    std::uint64_t next() {
        std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * static_cast<double>(next() >> 11) * 0x1.0p-53; }
    int integer(int lo, int hi) { return lo + static_cast<int>(next() % static_cast<std::uint64_t>(hi - lo + 1)); }
    C complex_in_box(double lo, double hi) { return {uniform(lo, hi), uniform(lo, hi)}; }
};

}  // namespace oracle
