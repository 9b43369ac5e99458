#include "darboux/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "darboux/hessenberg_qr.hpp"
#include "darboux/polyeval.hpp"

namespace darboux {

namespace {

bool re_then_im(Complex x, Complex y) {
    if (x.real() != y.real())
        return x.real() < y.real();
    return x.imag() < y.imag();
}

// P_n(z), P'_n(z) with a shared power-of-two scale, plus the absolute-value
// recurrence B_n that bounds the rounding error of evaluating P_n (own scale).
struct NewtonEval {
    Complex p, dp;
    int exp2 = 0;
    double bound = 1.0;
    int bound_exp2 = 0;

    double log_abs_p() const { return std::log(std::abs(p)) + exp2 * std::numbers::ln2; }
    double log_bound() const { return std::log(bound) + bound_exp2 * std::numbers::ln2; }
};

NewtonEval newton_eval(const RecurrenceCoeffs& m, int n, Complex z) {
    Complex p0 = 1.0, p1 = z - m.c(1), d0 = 0.0, d1 = 1.0;
    double b0 = 1.0, b1 = std::abs(z) + std::abs(m.c(1));
    int e = 0, be = 0;
    if (n == 0)
        return {1.0, 0.0, 0, 1.0, 0};
    for (int k = 1; k < n; ++k) {
        const Complex shift = z - m.c(k + 1), lam = m.lambda(k + 1);
        Complex p2 = shift * p1 - lam * p0;
        Complex d2 = p1 + shift * d1 - lam * d0;
        double b2 = (std::abs(z) + std::abs(m.c(k + 1))) * b1 + std::abs(lam) * b0;
        p0 = p1, p1 = p2, d0 = d1, d1 = d2, b0 = b1, b1 = b2;
        double big = std::max({std::abs(p0), std::abs(p1), std::abs(d0), std::abs(d1)});
        if (big > 1e150 || (big < 1e-150 && big > 0.0)) {
            int s = std::ilogb(big);
            double f = std::ldexp(1.0, -s);
            p0 *= f, p1 *= f, d0 *= f, d1 *= f;
            e += s;
        }
        if (b1 > 1e150) {
            int s = std::ilogb(b1);
            double f = std::ldexp(1.0, -s);
            b0 *= f, b1 *= f;
            be += s;
        }
    }
    return {p1, d1, e, b1, be};
}

double nearest_other(const std::vector<Complex>& pts, std::size_t i) {
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < pts.size(); ++j)
        if (j != i)
            best = std::min(best, std::abs(pts[j] - pts[i]));
    return best;
}

std::vector<Complex> monic_truncation_eigenvalues(const RecurrenceCoeffs& m, int n) {
    // Diagonal similarity to the symmetric form: same eigenvalues, better
    // balanced than ones above and lambdas below.
    std::vector<Complex> diag(m.c_values().begin(), m.c_values().begin() + n);
    std::vector<Complex> off;
    off.reserve(static_cast<std::size_t>(n - 1));
    for (int k = 2; k <= n; ++k)
        off.push_back(std::sqrt(m.lambda(k)));
    return tridiagonal_eigenvalues(diag, off, off);
}

double max_abs_im(const std::vector<Complex>& zs, std::optional<Complex> skip) {
    double best = 0.0;
    bool skipped = false;
    for (auto z : zs) {
        if (skip && !skipped && z == *skip) {
            skipped = true;
            continue;
        }
        best = std::max(best, std::abs(z.imag()));
    }
    return best;
}

struct ClusterRefinement {
    Complex offset;
    double log_distance;
};

// Offset delta with P^{-*}_n(kappa + delta) = 0, i.e. r_n(kappa + delta) =
// R_n(kappa)/R_{n-1}(kappa) with r_n = P_n/P_{n-1}. Both sides are written
// relative to r_n(kappa): the right side becomes
//   eps_n = s0 lambda_2...lambda_n / (s0* P_{n-1}(kappa) R_{n-1}(kappa))
// (the P/Q Wronskian), the left side Delta_n(delta) follows
//   Delta_1 = delta, Delta_{k+1} = delta + lambda_{k+1} Delta_k / (r_k (r_k + Delta_k)),
// so nothing cancels however small delta is.
std::optional<ClusterRefinement> refine_cluster(const RecurrenceCoeffs& m, Complex kappa, Complex s0star,
                                                int n, Complex start) {
    const auto r = ratio_sequence(m.prefix(n), kappa).values;
    const Scaled lp = lambda_product(m, n);
    const Scaled pp = eval_P_scaled(m, n - 1, kappa);
    const Scaled rp = eval_R_scaled(m, n - 1, kappa, s0star);
    const Complex eps_mant = m.s0() * lp.mantissa / (s0star * pp.mantissa * rp.mantissa);
    const int eps_exp = lp.exp2 - pp.exp2 - rp.exp2;
    const double log_eps = std::log(std::abs(eps_mant)) + eps_exp * std::numbers::ln2;
    const Complex eps = std::ldexp(1.0, eps_exp) * eps_mant;

    auto residual = [&](Complex delta, Complex& deriv) {
        Complex D = delta, dD = 1.0;
        for (int k = 1; k < n; ++k) {
            const Complex rk = r[static_cast<std::size_t>(k - 1)];
            const Complex lam = m.lambda(k + 1);
            const Complex shifted = rk + D;
            Complex nextD = delta + lam * D / (rk * shifted);
            dD = 1.0 + lam * dD / (shifted * shifted);
            D = nextD;
        }
        deriv = dD;
        return D - eps;
    };

    auto solve = [&](Complex delta) -> std::optional<Complex> {
        for (int it = 0; it < 80; ++it) {
            Complex deriv;
            Complex g = residual(delta, deriv);
            if (deriv == Complex(0.0) || !std::isfinite(std::abs(g)))
                return std::nullopt;
            Complex step = g / deriv;
            delta -= step;
            if (std::abs(step) <= 4e-16 * std::abs(delta) || delta == Complex(0.0))
                return delta;
        }
        return std::nullopt;
    };

    Complex r0;
    residual(0.0, r0);
    std::optional<Complex> delta;
    if (eps != Complex(0.0))
        delta = solve(eps / r0);
    const double tol = 1e-6 * std::max(1.0, std::abs(kappa));
    if (!delta || std::abs(kappa + *delta - start) > tol)
        delta = solve(start - kappa);
    if (!delta)
        return std::nullopt;
    double log_distance = std::log(std::abs(*delta));
    if (*delta == Complex(0.0))
        log_distance = log_eps - std::log(std::abs(r0));
    return ClusterRefinement{*delta, log_distance};
}

}  // namespace

ZeroCloud zeros(const RecurrenceCoeffs& m, int n) {
    if (n < 0 || n > m.n_max())
        throw InsufficientPrefixError("degree " + std::to_string(n) + " exceeds prefix length " +
                                      std::to_string(m.n_max()));
    ZeroCloud cloud;
    cloud.degree = n;
    if (n == 0)
        return cloud;
    auto raw = monic_truncation_eigenvalues(m, n);
    std::vector<Complex> refined = raw;
    for (std::size_t i = 0; i < raw.size(); ++i) {
        const double sep = nearest_other(raw, i);
        Complex z = raw[i];
        NewtonEval ev = newton_eval(m, n, z);
        for (int step = 0; step < 2; ++step) {
            if (ev.p == Complex(0.0) || ev.dp == Complex(0.0))
                break;
            Complex dz = ev.p / ev.dp;
            if (!(std::abs(dz) <= 0.5 * sep))
                break;
            NewtonEval next = newton_eval(m, n, z - dz);
            if (!(next.log_abs_p() <= ev.log_abs_p()))
                break;
            z -= dz;
            ev = next;
        }
        if (ev.p != Complex(0.0) && ev.log_abs_p() > std::log(1e-8) + ev.log_bound())
            throw NumericalError("zero of degree " + std::to_string(n) + " failed the residual check", n);
        refined[i] = z;
    }
    std::sort(refined.begin(), refined.end(), re_then_im);
    cloud.zeros = std::move(refined);
    cloud.max_im = max_abs_im(cloud.zeros, std::nullopt);
    return cloud;
}

ZeroCloud kernel_zero_cloud(const RecurrenceCoeffs& m, const TransformPoint& site, int n) {
    if (n + 3 > m.n_max())
        throw InsufficientPrefixError("kernel zeros of degree " + std::to_string(n) + " need a prefix of " +
                                      std::to_string(n + 3));
    auto t = christoffel(m.prefix(n + 3), site);
    ZeroCloud cloud = zeros(t.coeffs, n);
    if (n >= 1) {
        const Complex rho = ratio_sequence(m.prefix(n), site.kappa)[n];
        cloud.strip_bound = 1.0 / std::abs((1.0 / rho).imag());
    }
    return cloud;
}

ZeroCloud geronimus_zero_cloud(const RecurrenceCoeffs& m, const TransformPoint& site, int n) {
    if (n + 2 > m.n_max())
        throw InsufficientPrefixError("Geronimus zeros of degree " + std::to_string(n) + " need a prefix of " +
                                      std::to_string(n + 2));
    if (!site.s0star)
        throw ConfigurationError("Geronimus zeros need s0*");
    auto t = geronimus(m.prefix(n + 2), site);
    ZeroCloud cloud = zeros(t.coeffs, n);
    if (n == 0)
        return cloud;
    const Complex sigma = ratio_sequence(m.prefix(n), site.kappa, Solution::R, site.s0star)[n];
    cloud.strip_bound = 1.0 / std::abs((1.0 / sigma).imag());

    auto nearest = std::min_element(cloud.zeros.begin(), cloud.zeros.end(), [&](Complex x, Complex y) {
        return std::abs(x - site.kappa) < std::abs(y - site.kappa);
    });
    Complex candidate = *nearest;
    Complex offset = candidate - site.kappa;
    double log_distance = std::log(std::abs(offset));
    if (auto ref = refine_cluster(m, site.kappa, *site.s0star, n, candidate)) {
        offset = ref->offset;
        log_distance = ref->log_distance;
        candidate = site.kappa + offset;
        *nearest = candidate;
        std::sort(cloud.zeros.begin(), cloud.zeros.end(), re_then_im);
    }
    cloud.cluster_candidate = candidate;
    cloud.cluster_offset = offset;
    cloud.cluster_log_distance = log_distance;
    cloud.max_im = max_abs_im(cloud.zeros, candidate);
    return cloud;
}

StripReport strip_check(const ZeroCloud& cloud, double bound, StripSide side, double slack) {
    StripReport rep;
    for (auto z : cloud.zeros) {
        const double y = side == StripSide::upper ? z.imag() : -z.imag();
        double excess = 0.0;
        if (!(y > 0.0))
            excess = -y;
        else if (y > bound + slack)
            excess = y - bound;
        if (excess > 0.0 || !(y > 0.0)) {
            rep.ok = false;
            rep.violators.push_back(z);
            rep.worst_excess = std::max(rep.worst_excess, excess);
        }
    }
    return rep;
}

DynamicsReport zero_dynamics(const RecurrenceCoeffs& m, const TransformPoint& site, TransformKind kind,
                             const std::vector<int>& n_list) {
    DynamicsReport rep;
    std::vector<double> xs, ys;
    for (int n : n_list) {
        DynamicsRow row;
        row.n = n;
        if (kind == TransformKind::christoffel) {
            row.max_im = kernel_zero_cloud(m, site, n).max_im;
        } else {
            ZeroCloud cloud = geronimus_zero_cloud(m, site, n);
            row.max_im = cloud.max_im;
            if (cloud.cluster_offset) {
                row.cluster_distance = std::abs(*cloud.cluster_offset);
                row.log_cluster_distance = cloud.cluster_log_distance;
            }
            if (row.log_cluster_distance && std::isfinite(*row.log_cluster_distance)) {
                xs.push_back(n);
                ys.push_back(*row.log_cluster_distance);
            }
        }
        rep.rows.push_back(row);
    }

    rep.max_im_strictly_decreasing = rep.rows.size() >= 2;
    for (std::size_t i = 1; i < rep.rows.size(); ++i)
        if (!(rep.rows[i].max_im < rep.rows[i - 1].max_im))
            rep.max_im_strictly_decreasing = false;

    if (kind == TransformKind::geronimus) {
        rep.cluster_strictly_decreasing = rep.rows.size() >= 2;
        for (std::size_t i = 1; i < rep.rows.size(); ++i) {
            const auto& a = rep.rows[i - 1].cluster_distance;
            const auto& b = rep.rows[i].cluster_distance;
            if (!a || !b || !(*b < *a))
                rep.cluster_strictly_decreasing = false;
        }
        if (xs.size() >= 2) {
            const double k = static_cast<double>(xs.size());
            double mx = 0, my = 0;
            for (std::size_t i = 0; i < xs.size(); ++i)
                mx += xs[i], my += ys[i];
            mx /= k, my /= k;
            double sxx = 0, sxy = 0, syy = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                sxx += (xs[i] - mx) * (xs[i] - mx);
                sxy += (xs[i] - mx) * (ys[i] - my);
                syy += (ys[i] - my) * (ys[i] - my);
            }
            rep.slope = sxy / sxx;
            rep.intercept = my - *rep.slope * mx;
            double ss_res = 0;
            for (std::size_t i = 0; i < xs.size(); ++i) {
                double e = ys[i] - (*rep.intercept + *rep.slope * xs[i]);
                ss_res += e * e;
            }
            rep.r_squared = syy > 0 ? 1.0 - ss_res / syy : 1.0;
        }
    }
    return rep;
}

Complex ratio_limit_f(Complex a, Complex c, Complex z) {
    const Complex w = z - c;
    const Complex disc2 = w * w - 4.0 * a;
    if (std::abs(disc2) <= 1e-14 * (std::abs(w * w) + 4.0 * std::abs(a)))
        return 0.5 * w;
    const Complex disc = std::sqrt(disc2);
    const Complex r1 = 0.5 * (w + disc), r2 = 0.5 * (w - disc);
    const double m1 = std::abs(r1), m2 = std::abs(r2);
    if (std::abs(m1 - m2) <= 1e-12 * std::max(m1, m2))
        throw BoundaryError("z lies on the cut: both roots have the same modulus");
    return m1 > m2 ? r1 : r2;
}

Complex MFunctionSeries::operator()(Complex z) const {
    Complex acc = 0.0;
    Complex inv = 1.0 / z, pw = inv;
    for (int j = 0; j <= order; ++j) {
        acc -= moments[static_cast<std::size_t>(j)] * pw;
        pw *= inv;
    }
    return acc;
}

MFunctionSeries mfunction_series(const RecurrenceCoeffs& m, int order) {
    if (order < 0)
        throw ConfigurationError("series order must be nonnegative");
    MFunctionSeries s;
    s.order = order;
    s.moments = moments(m, order);
    double radius = 0.0;
    for (int n = 1; n <= m.n_max(); ++n) {
        double row = std::abs(m.c(n));
        if (n >= 2)
            row += std::sqrt(std::abs(m.lambda(n)));
        if (n + 1 <= m.n_max())
            row += std::sqrt(std::abs(m.lambda(n + 1)));
        radius = std::max(radius, row);
    }
    s.validity_radius = radius;
    return s;
}

MIdentityReport verify_m_identities(const RecurrenceCoeffs& m, const TransformPoint& site, int order) {
    if (order + 1 > m.n_max() - 2)
        throw InsufficientPrefixError("moment identities of order " + std::to_string(order) +
                                      " need a longer prefix");
    const Complex kappa = site.kappa;
    auto normalized = [](const RecurrenceCoeffs& r, int count) {
        auto s = moments(r, count);
        for (auto& x : s)
            x /= r.s0();
        return s;
    };
    const auto t = normalized(m, order + 1);
    MIdentityReport rep;

    const auto mc = christoffel(m, site).coeffs;
    const auto tc = normalized(mc, order);
    const Complex b0k = m.c(1) - kappa;
    for (int j = 0; j <= order; ++j) {
        const auto jj = static_cast<std::size_t>(j);
        Complex lhs = t[jj + 1] - kappa * t[jj];
        Complex rhs = b0k * tc[jj];
        double scale = std::abs(t[jj + 1]) + std::abs(kappa * t[jj]) + std::abs(rhs);
        double res = scale > 0 ? std::abs(lhs - rhs) / scale : 0.0;
        rep.christoffel_residuals.push_back(res);
        rep.max_residual = std::max(rep.max_residual, res);
    }

    if (site.s0star) {
        const auto mg = geronimus(m, site).coeffs;
        const auto g = normalized(mg, order + 1);
        const Complex inv = m.s0() / *site.s0star;
        for (int j = 0; j <= order; ++j) {
            const auto jj = static_cast<std::size_t>(j);
            Complex lhs = g[jj + 1] - kappa * g[jj];
            Complex rhs = inv * t[jj];
            double scale = std::abs(g[jj + 1]) + std::abs(kappa * g[jj]) + std::abs(rhs);
            double res = scale > 0 ? std::abs(lhs - rhs) / scale : 0.0;
            rep.geronimus_residuals.push_back(res);
            rep.max_residual = std::max(rep.max_residual, res);
        }
    }
    return rep;
}

std::vector<Complex> truncation_spectrum(const SymmetricJacobi& J, int size) {
    if (size < 1 || size > J.n_max())
        throw InsufficientPrefixError("truncation of size " + std::to_string(size) +
                                      " exceeds the prefix of length " + std::to_string(J.n_max()));
    std::vector<Complex> diag(J.b.begin(), J.b.begin() + size);
    std::vector<Complex> off(J.a.begin(), J.a.begin() + (size - 1));
    auto eig = tridiagonal_eigenvalues(diag, off, off);
    std::sort(eig.begin(), eig.end(), re_then_im);
    return eig;
}

NevaiDiagnostics nevai_diagnostics(const RecurrenceCoeffs& m, int window) {
    const int N = m.n_max();
    if (N < 3)
        throw InsufficientPrefixError("Nevai diagnostics need at least three entries");
    window = std::clamp(window, 1, N - 2);
    NevaiDiagnostics d;
    d.a_limit = m.lambda(N);
    d.c_limit = m.c(N);
    for (int n = N - window; n <= N; ++n)
        d.tail_residuals.push_back(std::max(std::abs(m.lambda(n) - d.a_limit), std::abs(m.c(n) - d.c_limit)));
    d.member = d.tail_residuals.front() <= 1e-6;
    for (std::size_t i = 1; i < d.tail_residuals.size(); ++i)
        if (d.tail_residuals[i] > d.tail_residuals[i - 1])
            d.member = false;
    d.f_branch_note = "f(z) is the root of w^2 - (z - c) w + a = 0 of larger modulus";
    return d;
}

std::vector<RatioAsymptoticRow> ratio_asymptotic_check(const RecurrenceCoeffs& m,
                                                       const std::vector<Complex>& z_list, int n_check,
                                                       Complex a, Complex c) {
    if (n_check + 1 > m.n_max())
        throw InsufficientPrefixError("ratio check at n = " + std::to_string(n_check) +
                                      " needs P_" + std::to_string(n_check + 1));
    std::vector<RatioAsymptoticRow> rows;
    // From value pairs rather than the ratio chain, which cannot pass through
    // an early zero of P_k(z).
    auto ratio_at = [&m](int k, Complex z) {
        const auto [pm, pn] = eval_P_pair(m, k, z);
        if (pm.mantissa == Complex(0.0))
            throw ZeroHitError("P_" + std::to_string(k - 1) + " vanishes at the check point", k - 1);
        return pn.mantissa / pm.mantissa;
    };
    for (auto z : z_list) {
        RatioAsymptoticRow row;
        row.z = z;
        row.limit = ratio_limit_f(a, c, z);
        row.ratio = ratio_at(n_check + 1, z);
        row.error = std::abs(row.ratio - row.limit);
        const double floor = 1e-14 * std::abs(row.limit);
        row.monotone_tail = true;
        double prev = std::numeric_limits<double>::infinity();
        for (int k = std::max(1, n_check - 9); k <= n_check + 1; ++k) {
            double e = std::abs(ratio_at(k, z) - row.limit);
            if (e > prev && e > floor)
                row.monotone_tail = false;
            prev = e;
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace darboux
