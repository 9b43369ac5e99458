#include "darboux/transforms.hpp"

#include <cmath>

#include "darboux/polyeval.hpp"

namespace darboux {

namespace {

constexpr double kExistenceTol = 1e-13;

void validate_site(const TransformPoint& site) {
    if (site.kappa.imag() == 0.0 && !site.allow_real)
        throw ConfigurationError("transform site must be nonreal unless allow_real is set");
}

void need_prefix(const RecurrenceCoeffs& m, int min_len) {
    if (m.n_max() < min_len)
        throw InsufficientPrefixError("transform needs a prefix of at least " + std::to_string(min_len) +
                                      " entries, have " + std::to_string(m.n_max()));
}

constexpr double kMinimalMatch = 1e-10;
constexpr double kCauchyAgreement = 1e-8;

struct Ratios {
    std::vector<Complex> r;
    // The solution at kappa is the minimal one: forward recurrence would lose
    // a factor |big root / small root| per step, so r came from backward
    // recurrence.
    bool minimal = false;
};

// Ratios y_n/y_{n-1} at kappa with a cancellation test: a ratio that is tiny
// compared to the terms it was computed from is a zero of y_n in disguise.
Ratios checked_ratios(const RecurrenceCoeffs& m, Complex kappa, Solution which, std::optional<Complex> s0star,
                      const std::string& failure) {
    Ratios out;
    Complex start = kappa - m.c(1);
    if (which == Solution::R) {
        if (*s0star == Complex(0.0))
            throw ExistenceError(failure + " (s0* = 0)", 0);
        start += m.s0() / *s0star;
    }
    auto back = minimal_ratios(m, kappa);
    if (!back.empty() &&
        std::abs(back[0] - start) <= kMinimalMatch * std::max(std::abs(start), std::abs(back[0]))) {
        out.r = std::move(back);
        out.minimal = true;
    } else {
        try {
            out.r = ratio_sequence(m, kappa, which, s0star).values;
        } catch (const ZeroHitError& e) {
            throw ExistenceError(failure + " (vanishing at n = " + std::to_string(e.index()) + ")", e.index());
        }
    }
    const auto& r = out.r;
    for (std::size_t i = 0; i < r.size(); ++i) {
        const int n = static_cast<int>(i) + 1;
        double scale = i == 0 ? std::max(std::abs(kappa), std::abs(m.c(1)))
                              : std::abs(kappa - m.c(n)) + std::abs(m.lambda(n) / r[i - 1]);
        if (std::abs(r[i]) < kExistenceTol * scale)
            throw ExistenceError(failure + " (vanishing at n = " + std::to_string(n) + ")", n);
    }
    return out;
}

// Differences d_k = r_{k+1} - r_k of a ratio sequence, k = 1..N-1, from
//   d_k = (c_k - c_{k+1}) + (lambda_k - lambda_{k+1})/r_k + lambda_k d_{k-1}/(r_{k-1} r_k).
// For eventually constant coefficients the first two terms vanish exactly and
// d_k keeps full relative accuracy even when it is far below |r_k|.
// Backward ratios of a minimal solution are accurate each on its own, and the
// recursion would amplify errors there, so they are differenced directly.
std::vector<Complex> ratio_differences(const RecurrenceCoeffs& m, const Ratios& ratios, Complex d1) {
    const auto& r = ratios.r;
    const int N = static_cast<int>(r.size());
    std::vector<Complex> d;
    d.reserve(static_cast<std::size_t>(N - 1));
    if (ratios.minimal) {
        for (int k = 1; k <= N - 1; ++k)
            d.push_back(r[static_cast<std::size_t>(k)] - r[static_cast<std::size_t>(k - 1)]);
        return d;
    }
    d.push_back(d1);
    for (int k = 2; k <= N - 1; ++k) {
        const Complex rk = r[static_cast<std::size_t>(k - 1)];
        const Complex rkm = r[static_cast<std::size_t>(k - 2)];
        Complex dk = (m.c(k) - m.c(k + 1)) + (m.lambda(k) - m.lambda(k + 1)) / rk +
                     m.lambda(k) * d.back() / (rkm * rk);
        d.push_back(dk);
    }
    return d;
}

bool guaranteed_christoffel(const RecurrenceCoeffs& m, const TransformPoint& site) {
    return site.kappa.imag() != 0.0 && m.is_positive_definite();
}

bool guaranteed_geronimus(const RecurrenceCoeffs& m, const TransformPoint& site) {
    const Complex s = *site.s0star;
    return site.kappa.imag() != 0.0 && m.is_positive_definite() && s != Complex(0.0) &&
           site.kappa.imag() * s.imag() <= 0.0;
}

}  // namespace

TransformedCoeffs christoffel(const RecurrenceCoeffs& m, const TransformPoint& site) {
    validate_site(site);
    need_prefix(m, 3);
    const Complex kappa = site.kappa;
    const auto ratios = checked_ratios(m, kappa, Solution::P, std::nullopt,
                                       "kernel polynomials do not exist at this point");
    const auto& rho = ratios.r;
    const auto d = ratio_differences(m, ratios, (m.c(1) - m.c(2)) - m.lambda(2) / rho[0]);

    const int N = m.n_max() - 2;
    std::vector<Complex> c(static_cast<std::size_t>(N)), lambda(static_cast<std::size_t>(N - 1));
    for (int k = 1; k <= N; ++k)
        c[static_cast<std::size_t>(k - 1)] = m.c(k + 1) + d[static_cast<std::size_t>(k - 1)];
    for (int k = 2; k <= N; ++k)
        lambda[static_cast<std::size_t>(k - 2)] =
            m.lambda(k) * (1.0 + d[static_cast<std::size_t>(k - 2)] / rho[static_cast<std::size_t>(k - 2)]);

    for (int k = 2; k <= N; ++k)
        if (lambda[static_cast<std::size_t>(k - 2)] == Complex(0.0))
            throw ExistenceError("kernel polynomials do not exist at this point (lambda* vanishes)", k);

    return TransformedCoeffs{m,
                             {AppliedTransform{TransformKind::christoffel, site, guaranteed_christoffel(m, site)}},
                             RecurrenceCoeffs(std::move(c), std::move(lambda), m.s0() * (m.c(1) - kappa)),
                             false};
}

TransformedCoeffs christoffel(const TransformedCoeffs& t, const TransformPoint& site) {
    auto next = christoffel(t.coeffs, site);
    next.base = t.base;
    auto history = t.history;
    history.push_back(next.history.front());
    next.history = std::move(history);
    next.unverified_existence = t.unverified_existence;
    return next;
}

Complex kernel_eval(const RecurrenceCoeffs& m, const TransformPoint& site, int n, Complex z) {
    validate_site(site);
    if (n == 0)
        return 1.0;
    const Complex kappa = site.kappa;
    if (std::abs(z - kappa) <= 1e-12 * std::max(1.0, std::abs(kappa)))
        return eval_P(christoffel(m, site).coeffs, n, z);
    if (n + 1 > m.n_max())
        throw InsufficientPrefixError("kernel polynomial of degree " + std::to_string(n) +
                                      " needs P_" + std::to_string(n + 1));
    const auto rho = checked_ratios(m, kappa, Solution::P, std::nullopt,
                                    "kernel polynomials do not exist at this point")
                         .r;
    const auto [pn, pn1] = eval_P_pair(m, n + 1, z);
    Complex mant = (pn1.mantissa - rho[static_cast<std::size_t>(n)] * pn.mantissa) / (z - kappa);
    return Scaled{mant, pn.exp2}.value();
}

TransformedCoeffs christoffel_two(const RecurrenceCoeffs& m, const TransformPoint& k1,
                                  const TransformPoint& k2) {
    validate_site(k1);
    validate_site(k2);
    auto first = christoffel(m, k1);
    auto second = christoffel(first, k2);
    if (k1.kappa == k2.kappa) {
        second.unverified_existence = true;
        return second;
    }
    // Delta_n / (P_{n+1}(k1) P_{n+1}(k2)) = 1/rho_{n+1}(k2) - 1/rho_{n+1}(k1).
    const auto r1 = ratio_sequence(m, k1.kappa).values;
    const auto r2 = ratio_sequence(m, k2.kappa).values;
    for (int n = 0; n < second.coeffs.n_max(); ++n) {
        Complex a = 1.0 / r2[static_cast<std::size_t>(n)], b = 1.0 / r1[static_cast<std::size_t>(n)];
        if (std::abs(a - b) <= kExistenceTol * (std::abs(a) + std::abs(b)))
            throw ExistenceError("two-point kernel polynomials do not exist: Delta_" + std::to_string(n) +
                                     " vanishes",
                                 n);
    }
    const bool opposite = k1.kappa.imag() * k2.kappa.imag() < 0.0 && m.is_positive_definite();
    for (auto& h : second.history)
        h.existence_guaranteed = opposite;
    return second;
}

TransformedCoeffs geronimus(const RecurrenceCoeffs& m, const TransformPoint& site) {
    validate_site(site);
    if (!site.s0star)
        throw ConfigurationError("Geronimus transform needs s0*");
    need_prefix(m, 3);
    const Complex kappa = site.kappa, s0star = *site.s0star;
    const auto ratios = checked_ratios(m, kappa, Solution::R, s0star,
                                       "Geronimus transform does not exist for this (kappa, s0*)");
    const auto& sigma = ratios.r;
    const Complex s1 = sigma[0];
    const auto d = ratio_differences(m, ratios, kappa - m.c(2) - m.lambda(2) / s1 - s1);

    const int N = m.n_max() - 2;
    std::vector<Complex> c(static_cast<std::size_t>(N)), lambda(static_cast<std::size_t>(N - 1));
    c[0] = m.c(1) + s1;
    for (int k = 2; k <= N; ++k)
        c[static_cast<std::size_t>(k - 1)] = m.c(k) + d[static_cast<std::size_t>(k - 2)];
    if (N >= 2)
        lambda[0] = -s1 * m.s0() / s0star;
    for (int k = 3; k <= N; ++k)
        lambda[static_cast<std::size_t>(k - 2)] =
            m.lambda(k - 1) *
            (1.0 + d[static_cast<std::size_t>(k - 3)] / sigma[static_cast<std::size_t>(k - 3)]);

    for (int k = 2; k <= N; ++k)
        if (lambda[static_cast<std::size_t>(k - 2)] == Complex(0.0))
            throw ExistenceError("Geronimus transform does not exist for this (kappa, s0*) (lambda vanishes)", k);

    return TransformedCoeffs{m,
                             {AppliedTransform{TransformKind::geronimus, site, guaranteed_geronimus(m, site)}},
                             RecurrenceCoeffs(std::move(c), std::move(lambda), s0star),
                             false};
}

TransformedCoeffs geronimus(const TransformedCoeffs& t, const TransformPoint& site) {
    auto next = geronimus(t.coeffs, site);
    next.base = t.base;
    auto history = t.history;
    history.push_back(next.history.front());
    next.history = std::move(history);
    next.unverified_existence = t.unverified_existence;
    return next;
}

std::vector<Complex> geronimus_A(const RecurrenceCoeffs& m, const TransformPoint& site) {
    validate_site(site);
    if (!site.s0star)
        throw ConfigurationError("Geronimus transform needs s0*");
    auto sigma = checked_ratios(m, site.kappa, Solution::R, *site.s0star,
                                "Geronimus transform does not exist for this (kappa, s0*)")
                     .r;
    for (auto& x : sigma)
        x = -x;
    return sigma;
}

Complex geronimus_eval(const RecurrenceCoeffs& m, const TransformPoint& site, int n, Complex z) {
    if (n == 0)
        return 1.0;
    if (n > m.n_max())
        throw InsufficientPrefixError("degree " + std::to_string(n) + " exceeds prefix length " +
                                      std::to_string(m.n_max()));
    const auto A = geronimus_A(m, site);
    const auto [pm, pn] = eval_P_pair(m, n, z);
    return Scaled{pn.mantissa + A[static_cast<std::size_t>(n - 1)] * pm.mantissa, pn.exp2}.value();
}

TransformedCoeffs geronimus_cauchy(const RecurrenceCoeffs& m, const Measure& mu, Complex kappa,
                                   int max_nodes, bool allow_real) {
    TransformPoint site{kappa, std::nullopt, allow_real};
    validate_site(site);
    const Complex quadrature = cauchy_transform(mu, kappa, max_nodes);
    // R_n(kappa) is the minimal solution for exactly this s0*, so the value read
    // off the backward recurrence (a continued fraction) is the consistent one.
    // Quadrature only confirms that m belongs to mu.
    site.s0star = quadrature;
    if (const auto back = minimal_ratios(m, kappa); !back.empty()) {
        const Complex offset = back[0] - (kappa - m.c(1));
        if (offset != Complex(0.0)) {
            const Complex cf = m.s0() / offset;
            if (std::abs(cf - quadrature) > kCauchyAgreement * std::abs(quadrature))
                throw PrecisionError("Cauchy transform by quadrature and by continued fraction disagree at kappa");
            site.s0star = cf;
        }
    }
    auto t = geronimus(m, site);
    // The Cauchy-transform choice always exists on a positive measure.
    if (kappa.imag() != 0.0 && m.is_positive_definite())
        t.history.back().existence_guaranteed = true;
    return t;
}

}  // namespace darboux
