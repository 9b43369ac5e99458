#pragma once

#include <optional>
#include <vector>

#include "darboux/core.hpp"

namespace darboux {

// Values of P_n, Q_n (and R_n = P_n + Q_n/s0* when s0* is given) at one point,
// all sharing the factor exp(log_scale).
struct EvalTriple {
    int n = 0;
    Complex value_P;
    Complex value_Q;
    std::optional<Complex> value_R;
    Complex ratio_P;  // P_n / P_{n-1}; undefined (NaN) for n = 0
    double log_scale = 0.0;

    Complex P() const;
    Complex Q() const;
};

enum class Solution { P, Q, R };

// r_n = y_n / y_{n-1} for n = first_index()..n_max, y one of P, Q, R.
// Q starts at n = 2 because Q_0 = 0.
struct RatioSequence {
    Complex z;
    Solution which = Solution::P;
    std::vector<Complex> values;

    int first_index() const noexcept { return which == Solution::Q ? 2 : 1; }
    int last_index() const noexcept { return first_index() + static_cast<int>(values.size()) - 1; }
    Complex operator[](int n) const;
};

// A value m * 2^exp2 kept in range while running a recurrence.
struct Scaled {
    Complex mantissa;
    int exp2 = 0;

    Complex value() const;
    double log_abs() const;
};

Complex eval_P(const RecurrenceCoeffs& m, int n, Complex z);
// Second-kind values scaled by s0, so Q_1 = s0.
Complex eval_Q(const RecurrenceCoeffs& m, int n, Complex z);
Complex eval_R(const RecurrenceCoeffs& m, int n, Complex z, Complex s0star);

EvalTriple eval_triple(const RecurrenceCoeffs& m, int n, Complex z,
                       std::optional<Complex> s0star = std::nullopt);

// P_{n-1} and P_n with a shared scale (n >= 1).
std::pair<Scaled, Scaled> eval_P_pair(const RecurrenceCoeffs& m, int n, Complex z);
Scaled eval_P_scaled(const RecurrenceCoeffs& m, int n, Complex z);
Scaled eval_R_scaled(const RecurrenceCoeffs& m, int n, Complex z, Complex s0star);

RatioSequence ratio_sequence(const RecurrenceCoeffs& m, Complex z, Solution which = Solution::P,
                             std::optional<Complex> s0star = std::nullopt);

// Ratios y_n/y_{n-1}, n = 1..N, of the minimal solution at z (normalized by
// y_0 = 1), by backward recurrence started from the smaller root of
// w^2 - (z - c_N) w + lambda_N = 0. Empty when that root is not clearly
// smaller, i.e. no solution is minimal near the end of the prefix.
std::vector<Complex> minimal_ratios(const RecurrenceCoeffs& m, Complex z);

// Product lambda_2 ... lambda_n in scaled form (empty product for n < 2).
Scaled lambda_product(const RecurrenceCoeffs& m, int n);

}  // namespace darboux
