#pragma once

#include <functional>
#include <vector>

#include "darboux/core.hpp"

namespace darboux {

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};

// Gauss rule of the normalized (probability) weight of a Chebyshev family.
// Exact for polynomials of degree <= 2*nodes - 1.
QuadratureRule gauss_chebyshev(FamilyKind kind, int nodes);

// A base weight times prod_j 1/(t - pole_j). The base is either a Chebyshev
// preset or a user density on [lo, hi]. Dividing by (t - kappa) is how a
// Geronimus step with s0* = Cauchy transform acts on the measure.
class Measure {
public:
    explicit Measure(FamilyKind kind);
    Measure(std::function<double(double)> density, double lo, double hi);

    Measure divided_by(Complex pole) const;

    const std::vector<Complex>& poles() const noexcept { return poles_; }

    // sum_k w_k g(x_k) / prod_j (x_k - pole_j) with an n-node rule.
    Complex integrate(const std::function<Complex(double)>& g, int nodes) const;

    // Same integral with node doubling from 256 until two successive values
    // agree to 1e-11; fails if they still differ by more than 1e-10 at
    // max_nodes.
    Complex integrate_adaptive(const std::function<Complex(double)>& g, int max_nodes = 4096) const;

    QuadratureRule rule(int nodes) const;

private:
    FamilyKind kind_ = FamilyKind::custom;
    std::function<double(double)> density_;
    double lo_ = -1.0, hi_ = 1.0;
    std::vector<Complex> poles_;
};

// Integral of 1/(t - kappa) against the measure.
Complex cauchy_transform(const Measure& mu, Complex kappa, int max_nodes = 4096);

}  // namespace darboux
