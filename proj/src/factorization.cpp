#include "darboux/factorization.hpp"

#include <cmath>

namespace darboux {

namespace {

constexpr double kBreakdownTol = 1e-13;

void check_pivot(Complex pivot, double scale, int j, const char* what) {
    if (std::abs(pivot) < kBreakdownTol * scale || pivot == Complex(0.0))
        throw BreakdownError(std::string(what) + " factorization breaks down: pivot " +
                                 std::to_string(j) + " vanishes",
                             j);
}

}  // namespace

LowerFactor lu_factor(const SymmetricJacobi& J, Complex kappa) {
    const int N = J.n_max();
    LowerFactor f;
    f.kappa = kappa;
    f.d.reserve(static_cast<std::size_t>(N));
    f.v.reserve(static_cast<std::size_t>(N - 1));
    Complex d = J.b[0] - kappa;
    check_pivot(d, std::max(std::abs(J.b[0]), std::abs(kappa)), 0, "LDL^T");
    f.d.push_back(d);
    for (int j = 0; j + 1 < N; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        Complex v = J.a[jj] / f.d[jj];
        f.v.push_back(v);
        Complex shifted = J.b[jj + 1] - kappa;
        Complex drop = f.d[jj] * v * v;
        Complex next = shifted - drop;
        check_pivot(next, std::abs(shifted) + std::abs(drop), j + 1, "LDL^T");
        f.d.push_back(next);
    }
    f.sqrt_d.reserve(f.d.size());
    for (auto x : f.d)
        f.sqrt_d.push_back(std::sqrt(x));
    return f;
}

SymmetricJacobi build_JC(const LowerFactor& f) {
    const int N = static_cast<int>(f.d.size());
    if (N < 2)
        throw InsufficientPrefixError("J_C needs a factor of at least two rows");
    std::vector<Complex> b, a;
    b.reserve(static_cast<std::size_t>(N - 1));
    a.reserve(static_cast<std::size_t>(N - 2));
    for (int j = 0; j + 1 < N; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        b.push_back(f.kappa + f.d[jj] * (1.0 + f.v[jj] * f.v[jj]));
        if (j + 2 < N)
            a.push_back(f.v[jj] * f.sqrt_d[jj] * f.sqrt_d[jj + 1]);
    }
    return SymmetricJacobi(std::move(b), std::move(a));
}

UpperFactor ul_factor(const SymmetricJacobi& J, Complex kappa, Complex s0star, bool negate_u0) {
    if (s0star == Complex(0.0))
        throw ExistenceError("s0* = 0: the Geronimus functional has no orthogonal polynomial system", 0);
    const int N = J.n_max();
    UpperFactor f;
    f.kappa = kappa;
    f.s0star = s0star;
    f.t.reserve(static_cast<std::size_t>(N + 1));
    f.u.reserve(static_cast<std::size_t>(N));
    f.t.push_back(1.0);
    Complex u0 = std::sqrt(1.0 / s0star);
    f.u.push_back(negate_u0 ? -u0 : u0);
    for (int j = 0; j < N; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        Complex shifted = J.b[jj] - kappa;
        Complex drop = f.t[jj] * f.u[jj] * f.u[jj];
        Complex next = shifted - drop;
        check_pivot(next, std::abs(shifted) + std::abs(drop), j + 1, "UDU^T");
        f.t.push_back(next);
        if (j + 1 < N)
            f.u.push_back(J.a[jj] / next);
    }
    f.sqrt_t.reserve(f.t.size());
    for (auto x : f.t)
        f.sqrt_t.push_back(std::sqrt(x));
    return f;
}

SymmetricJacobi build_JG(const UpperFactor& f) {
    const int N = static_cast<int>(f.u.size());
    std::vector<Complex> b, a;
    b.reserve(static_cast<std::size_t>(N));
    a.reserve(static_cast<std::size_t>(N - 1));
    for (int j = 0; j < N; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        Complex uu = f.u[jj] * f.u[jj];
        b.push_back(f.kappa + (j == 0 ? f.t[0] * uu : f.t[jj] * (1.0 + uu)));
        if (j + 1 < N)
            a.push_back(f.u[jj] * f.sqrt_t[jj] * f.sqrt_t[jj + 1]);
    }
    return SymmetricJacobi(std::move(b), std::move(a));
}

}  // namespace darboux
