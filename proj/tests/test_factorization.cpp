#include <doctest.h>

#include "darboux/factorization.hpp"
#include "darboux/transforms.hpp"
#include "oracles.hpp"

using namespace darboux;
using oracle::C;

namespace {

const FamilyKind kPresets[] = {FamilyKind::chebyshev1, FamilyKind::chebyshev2, FamilyKind::chebyshev3,
                               FamilyKind::chebyshev4};

Eigen::MatrixXcd dense(const SymmetricJacobi& J) {
    const int n = J.n_max();
    Eigen::MatrixXcd M = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        M(i, i) = J.b[static_cast<std::size_t>(i)];
        if (i + 1 < n)
            M(i, i + 1) = M(i + 1, i) = J.a[static_cast<std::size_t>(i)];
    }
    return M;
}

SymmetricJacobi random_jacobi(oracle::Gen& g, int n) {
    std::vector<Complex> b, a;
    for (int k = 0; k < n; ++k)
        b.push_back(g.complex_in_box(-1, 1));
    for (int k = 1; k < n; ++k)
        a.push_back(g.complex_in_box(0.2, 1));
    return SymmetricJacobi(b, a);
}

// Off-diagonals are roots of the same lambda on both sides; compare up to sign.
double jacobi_gap(const SymmetricJacobi& x, const SymmetricJacobi& y, int count) {
    double worst = 0.0;
    for (int k = 0; k < count; ++k) {
        const auto i = static_cast<std::size_t>(k);
        worst = std::max(worst, std::abs(x.b[i] - y.b[i]));
        if (k + 1 < count)
            worst = std::max(worst, std::min(std::abs(x.a[i] - y.a[i]), std::abs(x.a[i] + y.a[i])));
    }
    return worst;
}

}  // namespace

TEST_CASE("LDL^T reproduces J - kappa I (property)") {
    oracle::Gen g(31);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = g.integer(2, 25);
        auto J = random_jacobi(g, n);
        const C kappa = g.complex_in_box(-2, 2);
        auto f = lu_factor(J, kappa);
        REQUIRE(f.d.size() == static_cast<std::size_t>(n));
        Eigen::MatrixXcd Lc = Eigen::MatrixXcd::Identity(n, n), D = Eigen::MatrixXcd::Zero(n, n);
        for (int i = 0; i < n; ++i) {
            D(i, i) = f.d[static_cast<std::size_t>(i)];
            if (i + 1 < n)
                Lc(i + 1, i) = f.v[static_cast<std::size_t>(i)];
        }
        Eigen::MatrixXcd target = dense(J) - kappa * Eigen::MatrixXcd::Identity(n, n);
        CHECK((Lc * D * Lc.transpose() - target).norm() <= 1e-10 * (1.0 + target.norm()));

        // L^T L + kappa I, leading block, is J_C.
        if (n >= 2) {
            Eigen::MatrixXcd L = Lc;
            for (int i = 0; i < n; ++i)
                L.col(i) *= f.sqrt_d[static_cast<std::size_t>(i)];
            Eigen::MatrixXcd JC = L.transpose() * L + kappa * Eigen::MatrixXcd::Identity(n, n);
            Eigen::MatrixXcd built = dense(build_JC(f));
            CHECK((JC.topLeftCorner(n - 1, n - 1) - built).norm() <= 1e-10 * (1.0 + JC.norm()));
        }
    }
}

TEST_CASE("UDU^T reproduces J - kappa I (property)") {
    oracle::Gen g(37);
    for (int trial = 0; trial < 30; ++trial) {
        const int n = g.integer(1, 25);
        auto J = random_jacobi(g, n);
        const C kappa = g.complex_in_box(-2, 2);
        const C s0star = g.complex_in_box(0.3, 2);
        auto f = ul_factor(J, kappa, s0star);
        REQUIRE(f.t.size() == static_cast<std::size_t>(n + 1));
        CHECK(f.t[0] == C(1.0));
        CHECK(std::abs(f.u[0] * f.u[0] * s0star - 1.0) <= 1e-14);
        // Uc is n x (n+1): u on the diagonal, ones just above.
        Eigen::MatrixXcd Uc = Eigen::MatrixXcd::Zero(n, n + 1), T = Eigen::MatrixXcd::Zero(n + 1, n + 1);
        for (int i = 0; i < n; ++i) {
            Uc(i, i) = f.u[static_cast<std::size_t>(i)];
            Uc(i, i + 1) = 1.0;
        }
        for (int i = 0; i <= n; ++i)
            T(i, i) = f.t[static_cast<std::size_t>(i)];
        Eigen::MatrixXcd target = dense(J) - kappa * Eigen::MatrixXcd::Identity(n, n);
        CHECK((Uc * T * Uc.transpose() - target).norm() <= 1e-10 * (1.0 + target.norm()));

        Eigen::MatrixXcd U = Uc;
        for (int i = 0; i <= n; ++i)
            U.col(i) *= f.sqrt_t[static_cast<std::size_t>(i)];
        Eigen::MatrixXcd JG = U.transpose() * U + kappa * Eigen::MatrixXcd::Identity(n + 1, n + 1);
        CHECK((JG.topLeftCorner(n, n) - dense(build_JG(f))).norm() <= 1e-10 * (1.0 + JG.norm()));
    }
}

TEST_CASE("factorization side agrees with the recurrence side") {
    for (auto kind : kPresets) {
        auto m = family_coeffs(kind, 80);
        auto J = symmetrize(m);
        for (C kappa : {C(0.0, 1.0), C(1.0, 1.0), C(-0.3, -0.6)}) {
            auto K = christoffel(m, TransformPoint{kappa, std::nullopt}).coeffs;
            CHECK(jacobi_gap(build_JC(lu_factor(J, kappa)), symmetrize(K), 60) <= 1e-12);
            for (C s0star : {C(1.0), C(0.4, 0.3), C(2.0, -1.0)}) {
                auto JG = build_JG(ul_factor(J, kappa, s0star));
                auto G = geronimus(m, {kappa, s0star}).coeffs;
                CHECK(jacobi_gap(JG, symmetrize(G), 60) <= 1e-12);
            }
        }
    }
}

TEST_CASE("the other root of 1/s0* leaves the monic data unchanged") {
    auto J = symmetrize(family_coeffs(FamilyKind::chebyshev3, 40));
    const C kappa(0.2, 0.7), s0star(0.5, 0.5);
    auto a = monic_from_symmetric(build_JG(ul_factor(J, kappa, s0star, false)));
    auto b = monic_from_symmetric(build_JG(ul_factor(J, kappa, s0star, true)));
    for (int k = 1; k <= a.n_max(); ++k) {
        CHECK(std::abs(a.c(k) - b.c(k)) <= 1e-14);
        if (k >= 2)
            CHECK(std::abs(a.lambda(k) - b.lambda(k)) <= 1e-14);
    }
}

TEST_CASE("vanishing pivots are reported with their index") {
    auto J = symmetrize(family_coeffs(FamilyKind::chebyshev1, 20));
    try {
        lu_factor(J, 0.0);
        FAIL("expected BreakdownError");
    } catch (const BreakdownError& e) {
        CHECK(e.index() == 0);
    }
    // t_1 = b_0 - kappa - 1/s0* vanishes for s0* = -1/kappa.
    const C kappa(0.3, 0.4);
    try {
        ul_factor(J, kappa, -1.0 / kappa);
        FAIL("expected BreakdownError");
    } catch (const BreakdownError& e) {
        CHECK(e.index() == 1);
    }
    CHECK_THROWS_AS(ul_factor(J, kappa, 0.0), ExistenceError);
}

TEST_CASE("J_C needs two rows") {
    SymmetricJacobi one({0.5}, {});
    CHECK_THROWS_AS(build_JC(lu_factor(one, C(0.0, 1.0))), InsufficientPrefixError);
}
