#include "darboux/polyeval.hpp"

#include <array>
#include <cmath>
#include <limits>
#include <numbers>
#include <utility>

namespace darboux {

namespace {

constexpr double kHigh = 1e150;
constexpr double kLow = 1e-150;
constexpr double kZeroHit = 1e-290;

void check_degree(const RecurrenceCoeffs& m, int n) {
    if (n < 0 || n > m.n_max())
        throw InsufficientPrefixError("degree " + std::to_string(n) + " exceeds prefix length " +
                                      std::to_string(m.n_max()));
}

// Runs K solutions of the recurrence side by side from (y_0, y_1) up to
// index n, keeping a shared power-of-two scale. On return prev[k] = y_{n-1}
// and cur[k] = y_n (prev is meaningless for n = 0).
template <std::size_t K>
struct JointRun {
    std::array<Complex, K> prev{};
    std::array<Complex, K> cur{};
    int exp2 = 0;

    void rescale() {
        double big = 0.0;
        for (std::size_t k = 0; k < K; ++k)
            big = std::max({big, std::abs(prev[k]), std::abs(cur[k])});
        if (big == 0.0 || (big <= kHigh && big >= kLow) || !std::isfinite(big))
            return;
        int e = std::ilogb(big);
        for (std::size_t k = 0; k < K; ++k) {
            prev[k] = std::ldexp(1.0, -e) * prev[k];
            cur[k] = std::ldexp(1.0, -e) * cur[k];
        }
        exp2 += e;
    }
};

template <std::size_t K>
JointRun<K> run(const RecurrenceCoeffs& m, int n, Complex z, const std::array<Complex, K>& y0,
                const std::array<Complex, K>& y1) {
    JointRun<K> r;
    if (n == 0) {
        r.cur = y0;
        return r;
    }
    r.prev = y0;
    r.cur = y1;
    for (int k = 1; k < n; ++k) {
        const Complex shift = z - m.c(k + 1);
        const Complex lam = m.lambda(k + 1);
        for (std::size_t j = 0; j < K; ++j) {
            Complex next = shift * r.cur[j] - lam * r.prev[j];
            r.prev[j] = r.cur[j];
            r.cur[j] = next;
        }
        r.rescale();
    }
    return r;
}

Complex r1_offset(const RecurrenceCoeffs& m, Complex s0star) {
    if (s0star == Complex(0.0))
        throw ExistenceError("s0* = 0: the Geronimus functional has no orthogonal polynomial system", 0);
    return m.s0() / s0star;
}

}  // namespace

Complex Scaled::value() const { return std::ldexp(1.0, exp2) * mantissa; }

double Scaled::log_abs() const { return std::log(std::abs(mantissa)) + exp2 * std::numbers::ln2; }

Complex EvalTriple::P() const { return std::exp(log_scale) * value_P; }
Complex EvalTriple::Q() const { return std::exp(log_scale) * value_Q; }

Complex RatioSequence::operator[](int n) const {
    if (n < first_index() || n > last_index())
        throw InsufficientPrefixError("ratio r_" + std::to_string(n) + " not available");
    return values[static_cast<std::size_t>(n - first_index())];
}

EvalTriple eval_triple(const RecurrenceCoeffs& m, int n, Complex z, std::optional<Complex> s0star) {
    check_degree(m, n);
    auto r = run<2>(m, n, z, {Complex(1.0), Complex(0.0)}, {z - m.c(1), m.s0()});
    EvalTriple t;
    t.n = n;
    t.value_P = r.cur[0];
    t.value_Q = r.cur[1];
    t.ratio_P = n == 0 ? Complex(std::numeric_limits<double>::quiet_NaN(), 0.0) : r.cur[0] / r.prev[0];
    t.log_scale = r.exp2 * std::numbers::ln2;
    if (s0star) {
        r1_offset(m, *s0star);
        t.value_R = t.value_P + t.value_Q / *s0star;
    }
    return t;
}

Complex eval_P(const RecurrenceCoeffs& m, int n, Complex z) { return eval_P_scaled(m, n, z).value(); }

Complex eval_Q(const RecurrenceCoeffs& m, int n, Complex z) {
    check_degree(m, n);
    auto r = run<1>(m, n, z, {Complex(0.0)}, {m.s0()});
    return std::ldexp(1.0, r.exp2) * r.cur[0];
}

Complex eval_R(const RecurrenceCoeffs& m, int n, Complex z, Complex s0star) {
    return eval_R_scaled(m, n, z, s0star).value();
}

Scaled eval_P_scaled(const RecurrenceCoeffs& m, int n, Complex z) {
    check_degree(m, n);
    auto r = run<1>(m, n, z, {Complex(1.0)}, {z - m.c(1)});
    return {r.cur[0], r.exp2};
}

std::pair<Scaled, Scaled> eval_P_pair(const RecurrenceCoeffs& m, int n, Complex z) {
    check_degree(m, n);
    if (n < 1)
        throw InsufficientPrefixError("P_{n-1} needs n >= 1");
    auto r = run<1>(m, n, z, {Complex(1.0)}, {z - m.c(1)});
    return {Scaled{r.prev[0], r.exp2}, Scaled{r.cur[0], r.exp2}};
}

Scaled eval_R_scaled(const RecurrenceCoeffs& m, int n, Complex z, Complex s0star) {
    check_degree(m, n);
    const Complex off = r1_offset(m, s0star);
    auto r = run<1>(m, n, z, {Complex(1.0)}, {z - m.c(1) + off});
    return {r.cur[0], r.exp2};
}

RatioSequence ratio_sequence(const RecurrenceCoeffs& m, Complex z, Solution which,
                             std::optional<Complex> s0star) {
    RatioSequence seq;
    seq.z = z;
    seq.which = which;
    const int N = m.n_max();
    Complex r;
    int n0;
    switch (which) {
    case Solution::P:
        r = z - m.c(1);
        n0 = 1;
        break;
    case Solution::Q:
        if (N < 2)
            return seq;
        r = z - m.c(2);
        n0 = 2;
        break;
    case Solution::R:
        if (!s0star)
            throw ConfigurationError("R ratios need s0*");
        r = z - m.c(1) + r1_offset(m, *s0star);
        n0 = 1;
        break;
    }
    seq.values.reserve(static_cast<std::size_t>(N - n0 + 1));
    for (int n = n0;; ++n) {
        if (std::abs(r) < kZeroHit)
            throw ZeroHitError("recurrence solution vanishes at index " + std::to_string(n), n);
        seq.values.push_back(r);
        if (n == N)
            break;
        r = z - m.c(n + 1) - m.lambda(n + 1) / r;
    }
    return seq;
}

std::vector<Complex> minimal_ratios(const RecurrenceCoeffs& m, Complex z) {
    const int N = m.n_max();
    if (N < 2)
        return {};
    const Complex b = z - m.c(N);
    const Complex disc = std::sqrt(b * b - 4.0 * m.lambda(N));
    Complex small = 0.5 * (b + disc), big = 0.5 * (b - disc);
    if (std::abs(small) > std::abs(big))
        std::swap(small, big);
    if (!(std::abs(small) < 0.999 * std::abs(big)))
        return {};
    std::vector<Complex> r(static_cast<std::size_t>(N));
    r[static_cast<std::size_t>(N - 1)] = small;
    for (int n = N - 1; n >= 1; --n) {
        const Complex denom = z - m.c(n + 1) - r[static_cast<std::size_t>(n)];
        if (denom == Complex(0.0))
            return {};
        r[static_cast<std::size_t>(n - 1)] = m.lambda(n + 1) / denom;
    }
    return r;
}

Scaled lambda_product(const RecurrenceCoeffs& m, int n) {
    Scaled s{1.0, 0};
    for (int k = 2; k <= n; ++k) {
        s.mantissa *= m.lambda(k);
        double a = std::abs(s.mantissa);
        if (a > kHigh || (a < kLow && a > 0.0)) {
            int e = std::ilogb(a);
            s.mantissa *= std::ldexp(1.0, -e);
            s.exp2 += e;
        }
    }
    return s;
}

}  // namespace darboux
