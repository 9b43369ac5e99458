#include "darboux/rseq.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "darboux/polyeval.hpp"

namespace darboux {

namespace {

constexpr double kDegeneracyTol = 1e-12;

void need_degree(const RecurrenceCoeffs& m, int n, const char* what) {
    if (n < 1)
        throw ConfigurationError(std::string(what) + " needs n >= 1");
    if (n + 1 > m.n_max())
        throw InsufficientPrefixError(std::string(what) + " at n = " + std::to_string(n) + " needs c_" +
                                      std::to_string(n + 1) + " and lambda_" + std::to_string(n + 1));
}

void need_quasi(const QuasiOrthogonal& q, int n, int order) {
    if (q.degree != n + 1)
        throw ConfigurationError("quasi-orthogonal polynomial must have degree n + 1 = " + std::to_string(n + 1));
    if (q.order != order)
        throw ConfigurationError("relation needs a quasi-orthogonal polynomial of order " + std::to_string(order));
}

double relative(Complex sum, std::initializer_list<Complex> terms) {
    double scale = 0.0;
    for (Complex t : terms)
        scale = std::max(scale, std::abs(t));
    return scale == 0.0 ? std::abs(sum) : std::abs(sum) / scale;
}

// ratio_sequence(...)[n] with a prefix just long enough.
Complex rho_at(const RecurrenceCoeffs& m, Complex z, int n) {
    return ratio_sequence(m.prefix(n), z)[n];
}

}  // namespace

QuasiOrthogonal QuasiOrthogonal::first(int degree, Complex A) {
    QuasiOrthogonal q;
    q.order = 1;
    q.degree = degree;
    q.tilde_A = A;
    return q;
}

QuasiOrthogonal QuasiOrthogonal::second(int degree, Complex C, Complex D) {
    if (degree < 2)
        throw ConfigurationError("order-2 quasi-orthogonal polynomial needs degree >= 2");
    QuasiOrthogonal q;
    q.order = 2;
    q.degree = degree;
    q.tilde_C = C;
    q.tilde_D = D;
    return q;
}

Complex quasi_eval(const RecurrenceCoeffs& m, const QuasiOrthogonal& q, Complex z) {
    const int d = q.degree;
    if (d < 1)
        throw ConfigurationError("quasi-orthogonal polynomial needs degree >= 1");
    if (d > m.n_max())
        throw InsufficientPrefixError("degree " + std::to_string(d) + " exceeds prefix length " +
                                      std::to_string(m.n_max()));
    const auto [pm, pn] = eval_P_pair(m, d, z);
    if (q.order == 1)
        return Scaled{pn.mantissa + q.tilde_A * pm.mantissa, pn.exp2}.value();
    const Complex p2 = eval_P(m, d - 2, z);
    return pn.value() + q.tilde_C * pm.value() + q.tilde_D * p2;
}

RICoefficients r1_general(const RecurrenceCoeffs& m, const TransformPoint& k1, const QuasiOrthogonal& q, int n) {
    need_degree(m, n, "R_I relation");
    need_quasi(q, n, 1);
    const Complex rho = rho_at(m, k1.kappa, n);
    const Complex lam = m.lambda(n + 1);
    return {n, m.c(n + 1) - q.tilde_A + lam / rho, -lam / rho};
}

RICoefficients r1_coeffs(const RecurrenceCoeffs& m, const TransformPoint& k1, const TransformPoint& k2, int n) {
    need_degree(m, n, "R_I relation");
    const auto A = geronimus_A(m, k2);
    return r1_general(m, k1, QuasiOrthogonal::first(n + 1, A[static_cast<std::size_t>(n)]), n);
}

double r1_residual(const RecurrenceCoeffs& m, const TransformPoint& k1, const QuasiOrthogonal& q,
                   const RICoefficients& r, Complex z) {
    const int n = r.n;
    const Complex t = quasi_eval(m, q, z);
    const Complex p = (z - r.alpha) * eval_P(m, n, z);
    const Complex k = r.beta * (z - k1.kappa) * kernel_eval(m, k1, n - 1, z);
    return relative(t - p + k, {t, p, k});
}

RIICoefficients r2_coeffs(const RecurrenceCoeffs& m, const TransformPoint& k1, const TransformPoint& k2,
                          const QuasiOrthogonal& q, int n) {
    need_degree(m, n, "R_II relation");
    need_quasi(q, n, 2);
    const auto rho1 = ratio_sequence(m.prefix(n + 1), k1.kappa);
    const Complex rho_n = rho1[n], rho_n1 = rho1[n + 1];
    const auto kernel = christoffel(m, k1);
    if (kernel.coeffs.n_max() < n)
        throw InsufficientPrefixError("R_II relation at n = " + std::to_string(n) + " needs a longer prefix");
    const Complex tau = ratio_sequence(kernel.coeffs.prefix(n), k2.kappa)[n];
    const Complex lam = m.lambda(n + 1);
    const Complex denom = tau * rho_n - lam;
    if (std::abs(denom) <= kDegeneracyTol * std::abs(lam))
        throw DegeneracyError("R_II coefficients degenerate: tau_n rho_n equals lambda_" + std::to_string(n + 1),
                              n);
    RIICoefficients r;
    r.n = n;
    r.upsilon = (lam - q.tilde_D) / denom;
    r.rho = 1.0 + r.upsilon;
    r.gamma = r.rho * m.c(n + 1) + r.upsilon * (rho_n1 + tau) - q.tilde_C;
    return r;
}

double r2_residual(const RecurrenceCoeffs& m, const TransformPoint& k1, const TransformPoint& k2,
                   const QuasiOrthogonal& q, const RIICoefficients& r, Complex z) {
    const int n = r.n;
    const auto two = christoffel_two(m.prefix(std::min(m.n_max(), n + 4)), k1, k2);
    const Complex s = quasi_eval(m, q, z);
    const Complex p = (r.rho * z - r.gamma) * eval_P(m, n, z);
    const Complex k = r.upsilon * (z - k1.kappa) * (z - k2.kappa) * eval_P(two.coeffs, n - 1, z);
    return relative(s - p + k, {s, p, k});
}

QuasiOrthogonal double_geronimus_quasi(const RecurrenceCoeffs& m, const TransformPoint& g1,
                                       const TransformPoint& g2, int n) {
    if (n < 1)
        throw ConfigurationError("double Geronimus quasi-orthogonal polynomial needs n >= 1");
    if (m.n_max() < n + 3)
        throw InsufficientPrefixError("double Geronimus at n = " + std::to_string(n) + " needs " +
                                      std::to_string(n + 3) + " coefficients");
    const auto first = geronimus(m, g1);
    const auto A = geronimus_A(m, g1);
    const auto Ap = geronimus_A(first.coeffs, g2);
    const auto i = static_cast<std::size_t>(n);
    return QuasiOrthogonal::second(n + 1, A[i] + Ap[i], Ap[i] * A[i - 1]);
}

std::vector<Complex> sample_points(int count, std::uint64_t seed) {
    // Raw engine output keeps the points identical across standard libraries.
    std::mt19937_64 gen(seed);
    auto unit = [&gen] { return static_cast<double>(gen() >> 11) * 0x1.0p-53; };
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(std::max(count, 0)));
    while (static_cast<int>(out.size()) < count) {
        const double r = 1.5 + 1.5 * unit();
        const double theta = 2.0 * std::numbers::pi * unit();
        if (std::abs(std::sin(theta)) < 0.1)
            continue;
        out.push_back(std::polar(r, theta));
    }
    return out;
}

Complex VaryingMeasureTable::diagonal(int n, Complex z) const {
    if (n < 0)
        throw ConfigurationError("negative diagonal index");
    // Past the last point the measure stops changing.
    const auto k = std::min(static_cast<std::size_t>(n), stages.size() - 1);
    return eval_P(stages[k], n, z);
}

VaryingMeasureTable varying_measure_polys(const RecurrenceCoeffs& m, const Measure& mu,
                                          const std::vector<Complex>& kappas) {
    VaryingMeasureTable table;
    table.kappas = kappas;
    table.stages.push_back(m);
    Measure nu = mu;
    for (std::size_t j = 0; j < kappas.size(); ++j) {
        const Complex kappa = kappas[j];
        if (kappa.imag() == 0.0)
            throw ConfigurationError("varying-measure points must be nonreal");
        const auto& stage = table.stages.back();
        // The stage must still have P_{k+1} available after both steps.
        if (stage.n_max() < static_cast<int>(j) + 6)
            throw InsufficientPrefixError("prefix too short for " + std::to_string(kappas.size()) +
                                          " varying-measure steps");
        auto g1 = geronimus_cauchy(stage, nu, kappa);
        const Measure nu1 = nu.divided_by(kappa);
        auto g2 = geronimus_cauchy(g1.coeffs, nu1, std::conj(kappa));
        nu = nu1.divided_by(std::conj(kappa));
        table.sites.emplace_back(g1.history.back().site, g2.history.back().site);
        table.stages.push_back(g2.coeffs);
    }

    const auto points = sample_points(20);
    const int K = static_cast<int>(kappas.size());
    for (int n = 1; n < K; ++n) {
        const auto& stage = table.stages[static_cast<std::size_t>(n)];
        const auto& step = table.sites[static_cast<std::size_t>(n)];
        const TransformPoint k1{kappas[static_cast<std::size_t>(n - 1)], std::nullopt};
        const TransformPoint k2{std::conj(k1.kappa), std::nullopt};
        const auto q = double_geronimus_quasi(stage, step.first, step.second, n);
        const auto r = r2_coeffs(stage, k1, k2, q, n);
        double worst = 0.0;
        for (Complex z : points) {
            const Complex s = table.diagonal(n + 1, z);
            const Complex p = (r.rho * z - r.gamma) * table.diagonal(n, z);
            const Complex k = r.upsilon * (z - k1.kappa) * (z - k2.kappa) * table.diagonal(n - 1, z);
            worst = std::max(worst, relative(s - p + k, {s, p, k}));
        }
        table.r2.push_back(r);
        table.r2_residuals.push_back(worst);
    }
    return table;
}

Complex rational_eval(const VaryingMeasureTable& table, int n, Complex t) {
    if (n < 0)
        throw ConfigurationError("negative rational function index");
    Complex denom = 1.0;
    for (int j = 0; j < std::min(n, static_cast<int>(table.kappas.size())); ++j) {
        const Complex kappa = table.kappas[static_cast<std::size_t>(j)];
        if (t == kappa)
            throw PoleError("rational function evaluated at its pole kappa_" + std::to_string(j + 1));
        denom *= t - kappa;
    }
    return table.diagonal(n, t) / denom;
}

std::vector<DiagonalRI> r1_diagonal(const RecurrenceCoeffs& m, const std::vector<TransformPoint>& sites) {
    std::vector<RecurrenceCoeffs> stages{m};
    for (const auto& site : sites)
        stages.push_back(geronimus(stages.back(), site).coeffs);

    const auto points = sample_points(3);
    const int K = static_cast<int>(sites.size());
    std::vector<DiagonalRI> out;
    for (int n = 1; n < K; ++n) {
        const Complex kappa = sites[static_cast<std::size_t>(n - 1)].kappa;
        auto pi = [&stages](int k, Complex z) { return eval_P(stages[static_cast<std::size_t>(k)], k, z); };
        // alpha Pi_n(z) + beta (z - kappa) Pi_{n-1}(z) = z Pi_n(z) - Pi_{n+1}(z)
        Complex a[2][2], rhs[2];
        for (int i = 0; i < 2; ++i) {
            const Complex z = points[static_cast<std::size_t>(i)];
            a[i][0] = pi(n, z);
            a[i][1] = (z - kappa) * pi(n - 1, z);
            rhs[i] = z * a[i][0] - pi(n + 1, z);
        }
        const Complex det = a[0][0] * a[1][1] - a[0][1] * a[1][0];
        if (std::abs(det) <= 1e-14 * std::abs(a[0][0] * a[1][1]))
            throw DegeneracyError("R_I diagonal system is singular", n);
        DiagonalRI row;
        row.coeffs.n = n;
        row.coeffs.alpha = (rhs[0] * a[1][1] - a[0][1] * rhs[1]) / det;
        row.coeffs.beta = (a[0][0] * rhs[1] - rhs[0] * a[1][0]) / det;
        const Complex z = points[2];
        const Complex t = pi(n + 1, z);
        const Complex p = (z - row.coeffs.alpha) * pi(n, z);
        const Complex k = row.coeffs.beta * (z - kappa) * pi(n - 1, z);
        row.residual = relative(t - p + k, {t, p, k});
        out.push_back(row);
    }
    return out;
}

}  // namespace darboux
