#pragma once

#include <cstdint>
#include <vector>

#include "darboux/core.hpp"
#include "darboux/measure.hpp"
#include "darboux/transforms.hpp"

namespace darboux {

// Quasi-orthogonal polynomial of degree n+1:
//   order 1: T_{n+1} = P_{n+1} + A P_n
//   order 2: S_{n+1} = P_{n+1} + C P_n + D P_{n-1}
struct QuasiOrthogonal {
    int order = 1;
    int degree = 1;
    Complex tilde_A;
    Complex tilde_C;
    Complex tilde_D;

    static QuasiOrthogonal first(int degree, Complex A);
    static QuasiOrthogonal second(int degree, Complex C, Complex D);
};

Complex quasi_eval(const RecurrenceCoeffs& m, const QuasiOrthogonal& q, Complex z);

// T_{n+1}(z) - (z - alpha) P_n(z) + beta (z - kappa1) P*_{n-1}(kappa1, z) = 0
struct RICoefficients {
    int n = 0;
    Complex alpha;
    Complex beta;
};

// S_{n+1}(z) - (rho z - gamma) P_n(z) + upsilon (z - kappa1)(z - kappa2) P**_{n-1}(z) = 0
struct RIICoefficients {
    int n = 0;
    Complex rho;
    Complex gamma;
    Complex upsilon;
};

RICoefficients r1_general(const RecurrenceCoeffs& m, const TransformPoint& k1, const QuasiOrthogonal& q, int n);

// T_{n+1} = P^{-*}_{n+1}(kappa2, .); k2 must carry s0*.
RICoefficients r1_coeffs(const RecurrenceCoeffs& m, const TransformPoint& k1, const TransformPoint& k2, int n);

// |lhs| / max|term| of the R_I relation at z.
double r1_residual(const RecurrenceCoeffs& m, const TransformPoint& k1, const QuasiOrthogonal& q,
                   const RICoefficients& r, Complex z);

RIICoefficients r2_coeffs(const RecurrenceCoeffs& m, const TransformPoint& k1, const TransformPoint& k2,
                          const QuasiOrthogonal& q, int n);

// P** is evaluated from the iterated Christoffel coefficients.
double r2_residual(const RecurrenceCoeffs& m, const TransformPoint& k1, const TransformPoint& k2,
                   const QuasiOrthogonal& q, const RIICoefficients& r, Complex z);

// S_{n+1} from two successive Geronimus steps (g1 on m, then g2 on the result):
// C = A_{n+1} + A'_{n+1}, D = A'_{n+1} A_n.
QuasiOrthogonal double_geronimus_quasi(const RecurrenceCoeffs& m, const TransformPoint& g1,
                                       const TransformPoint& g2, int n);

// Reproducible points in the annulus 1.5 <= |z| <= 3 with |Im z| >= 0.1 |z|.
std::vector<Complex> sample_points(int count, std::uint64_t seed = 0x5EED);

// Diagonal of an iterated conjugate-pair Geronimus table. Stage k is the
// recurrence of mu / prod_{j<=k} |t - kappa_j|^2; curly P_n is the degree-n
// polynomial of stage min(n, K), K the number of points.
struct VaryingMeasureTable {
    std::vector<Complex> kappas;
    std::vector<RecurrenceCoeffs> stages;           // stages[0] = base
    std::vector<std::pair<TransformPoint, TransformPoint>> sites;  // Geronimus pair per step
    // For n = 1..K-1:
    //   P_{n+1} - ((1 + upsilon) z - gamma) P_n + upsilon (z - kappa_n)(z - conj kappa_n) P_{n-1} = 0
    std::vector<RIICoefficients> r2;
    std::vector<double> r2_residuals;  // max over 20 sample points

    const RecurrenceCoeffs& final_stage() const { return stages.back(); }
    Complex diagonal(int n, Complex z) const;
};

VaryingMeasureTable varying_measure_polys(const RecurrenceCoeffs& m, const Measure& mu,
                                          const std::vector<Complex>& kappas);

// curly P_n(t) / prod_{j<=min(n,K)} (t - kappa_j)
Complex rational_eval(const VaryingMeasureTable& table, int n, Complex t);

// Diagonal R_I relation of a Geronimus table Pi_k (stage k built by applying
// sites[0..k-1] in turn):
//   Pi_{n+1} - (z - alpha) Pi_n + beta (z - kappa_n) Pi_{n-1} = 0.
// alpha, beta come from a 2x2 solve at two sample points; residual is the
// relative miss at a third.
struct DiagonalRI {
    RICoefficients coeffs;
    double residual = 0.0;
};

std::vector<DiagonalRI> r1_diagonal(const RecurrenceCoeffs& m, const std::vector<TransformPoint>& sites);

}  // namespace darboux
