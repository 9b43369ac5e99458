#pragma once

#include <optional>
#include <string>
#include <vector>

#include "darboux/core.hpp"
#include "darboux/transforms.hpp"

namespace darboux {

struct ZeroCloud {
    int degree = 0;
    std::vector<Complex> zeros;  // sorted by real part, then imaginary part
    double max_im = 0.0;         // over zeros other than the cluster candidate
    std::optional<double> strip_bound;
    // Geronimus only: the zero that tends to kappa, and its offset from kappa
    // computed without cancellation (it drops far below double resolution of
    // kappa itself).
    std::optional<Complex> cluster_candidate;
    std::optional<Complex> cluster_offset;
    // ln|offset|, still meaningful when the offset underflows.
    std::optional<double> cluster_log_distance;
};

// Zeros of P_n from the eigenvalues of the monic truncation, each refined by
// two guarded Newton steps.
ZeroCloud zeros(const RecurrenceCoeffs& m, int n);

// Zeros of P*_n(kappa, .) with strip bound 1/|Im(P_{n-1}(kappa)/P_n(kappa))|.
ZeroCloud kernel_zero_cloud(const RecurrenceCoeffs& m, const TransformPoint& site, int n);

// Zeros of P^{-*}_n(kappa, .) with strip bound 1/|Im(R_{n-1}(kappa)/R_n(kappa))|
// and the refined cluster zero.
ZeroCloud geronimus_zero_cloud(const RecurrenceCoeffs& m, const TransformPoint& site, int n);

enum class StripSide { upper, lower };

struct StripReport {
    bool ok = true;
    std::vector<Complex> violators;
    double worst_excess = 0.0;
};

// upper: 0 < Im z <= bound + slack; lower: -bound - slack <= Im z < 0.
StripReport strip_check(const ZeroCloud& cloud, double bound, StripSide side, double slack = 1e-9);

struct DynamicsRow {
    int n = 0;
    double max_im = 0.0;
    std::optional<double> cluster_distance;
    std::optional<double> log_cluster_distance;
};

struct DynamicsReport {
    std::vector<DynamicsRow> rows;
    bool max_im_strictly_decreasing = false;
    bool cluster_strictly_decreasing = false;
    // Least-squares fit of ln|xi_n - kappa| against n (Geronimus only).
    std::optional<double> slope, intercept, r_squared;
};

DynamicsReport zero_dynamics(const RecurrenceCoeffs& m, const TransformPoint& site, TransformKind kind,
                             const std::vector<int>& n_list);

// Larger root of w^2 - (z - c) w + a = 0, the limit of P_{n+1}(z)/P_n(z) when
// lambda_n -> a and c_n -> c. At the branch point the double root is returned;
// on the cut, where both roots have equal modulus, a BoundaryError is thrown.
Complex ratio_limit_f(Complex a, Complex c, Complex z);

struct MFunctionSeries {
    std::vector<Complex> moments;  // s_0..s_order
    int order = 0;
    double validity_radius = 0.0;

    // -sum_j s_j / z^{j+1}
    Complex operator()(Complex z) const;
};

MFunctionSeries mfunction_series(const RecurrenceCoeffs& m, int order);

struct MIdentityReport {
    // Per moment order j, relative residual of
    //   ((J^{j+1} - kappa J^j) e0, e0) = (b0 - kappa) (J_C^j e0, e0)
    std::vector<double> christoffel_residuals;
    // and of ((J_G^{j+1} - kappa J_G^j) e0, e0) = (1/s0*) (J^j e0, e0), when s0* is given.
    std::vector<double> geronimus_residuals;
    double max_residual = 0.0;
};

MIdentityReport verify_m_identities(const RecurrenceCoeffs& m, const TransformPoint& site, int order);

std::vector<Complex> truncation_spectrum(const SymmetricJacobi& J, int size);

struct NevaiDiagnostics {
    Complex a_limit;
    Complex c_limit;
    std::vector<double> tail_residuals;  // max(|lambda_n - a|, |c_n - c|) over the window
    bool member = false;
    std::string f_branch_note;
};

// Estimates the limits from the last entry of the prefix and reports how far
// the preceding `window` entries are from them.
NevaiDiagnostics nevai_diagnostics(const RecurrenceCoeffs& m, int window = 32);

struct RatioAsymptoticRow {
    Complex z;
    Complex ratio;   // P_{n+1}(z)/P_n(z)
    Complex limit;   // f(z)
    double error = 0.0;
    bool monotone_tail = false;
};

// |P_{n+1}(z)/P_n(z) - f(z)| at n = n_check with f built from (a, c).
std::vector<RatioAsymptoticRow> ratio_asymptotic_check(const RecurrenceCoeffs& m,
                                                       const std::vector<Complex>& z_list, int n_check,
                                                       Complex a, Complex c);

}  // namespace darboux
