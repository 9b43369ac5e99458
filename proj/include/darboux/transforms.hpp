#pragma once

#include <optional>
#include <vector>

#include "darboux/core.hpp"
#include "darboux/measure.hpp"

namespace darboux {

struct TransformPoint {
    Complex kappa;
    std::optional<Complex> s0star;  // Geronimus only
    bool allow_real = false;
};

enum class TransformKind { christoffel, geronimus };

struct AppliedTransform {
    TransformKind kind;
    TransformPoint site;
    // True when existence follows from the data (nonreal kappa on a
    // positive-definite base, admissible s0*); otherwise it was only checked
    // numerically on the prefix that was produced.
    bool existence_guaranteed = false;
};

struct TransformedCoeffs {
    RecurrenceCoeffs base;
    std::vector<AppliedTransform> history;
    RecurrenceCoeffs coeffs;
    // Set when a site was repeated; nothing proves such a transform exists.
    bool unverified_existence = false;
};

// Kernel polynomials P*_n(kappa, .), i.e. the functional (z - kappa) L.
// The result is two entries shorter than the input; s0 becomes s0 (c_1 - kappa).
TransformedCoeffs christoffel(const RecurrenceCoeffs& m, const TransformPoint& site);
TransformedCoeffs christoffel(const TransformedCoeffs& t, const TransformPoint& site);

// P*_n(kappa, z) = (P_{n+1}(z) - P_{n+1}(kappa)/P_n(kappa) P_n(z)) / (z - kappa).
Complex kernel_eval(const RecurrenceCoeffs& m, const TransformPoint& site, int n, Complex z);

// Christoffel at k1, then at k2. Checks that
// Delta_n = P_{n+1}(k1) P_n(k2) - P_n(k1) P_{n+1}(k2) stays away from zero.
TransformedCoeffs christoffel_two(const RecurrenceCoeffs& m, const TransformPoint& k1,
                                  const TransformPoint& k2);

// Inverse of christoffel at kappa with free parameter s0* = L^{-*}(1).
// P^{-*}_n = P_n + A_n P_{n-1}, A_n = -R_n(kappa)/R_{n-1}(kappa).
TransformedCoeffs geronimus(const RecurrenceCoeffs& m, const TransformPoint& site);
TransformedCoeffs geronimus(const TransformedCoeffs& t, const TransformPoint& site);

Complex geronimus_eval(const RecurrenceCoeffs& m, const TransformPoint& site, int n, Complex z);

// A_1..A_N for the site.
std::vector<Complex> geronimus_A(const RecurrenceCoeffs& m, const TransformPoint& site);

// Geronimus with s0* = integral of dmu(t)/(t - kappa); the result is the
// recurrence of dmu/(t - kappa). mu must be the measure m comes from.
TransformedCoeffs geronimus_cauchy(const RecurrenceCoeffs& m, const Measure& mu, Complex kappa,
                                   int max_nodes = 4096, bool allow_real = false);

}  // namespace darboux
