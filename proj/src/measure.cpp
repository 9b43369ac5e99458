#include "darboux/measure.hpp"

#include <cmath>
#include <numbers>

namespace darboux {

QuadratureRule gauss_chebyshev(FamilyKind kind, int nodes) {
    if (nodes < 1)
        throw ConfigurationError("quadrature needs at least one node");
    const double pi = std::numbers::pi;
    const double n = nodes;
    QuadratureRule r;
    r.nodes.reserve(static_cast<std::size_t>(nodes));
    r.weights.reserve(static_cast<std::size_t>(nodes));
    for (int k = 1; k <= nodes; ++k) {
        double theta = 0.0, w = 0.0;
        switch (kind) {
        case FamilyKind::chebyshev1:
            theta = (2.0 * k - 1.0) * pi / (2.0 * n);
            w = 1.0 / n;
            break;
        case FamilyKind::chebyshev2: {
            theta = k * pi / (n + 1.0);
            double s = std::sin(theta);
            w = 2.0 / (n + 1.0) * s * s;
            break;
        }
        case FamilyKind::chebyshev3:
            theta = (2.0 * k - 1.0) * pi / (2.0 * n + 1.0);
            w = 2.0 / (2.0 * n + 1.0) * (1.0 + std::cos(theta));
            break;
        case FamilyKind::chebyshev4:
            theta = 2.0 * k * pi / (2.0 * n + 1.0);
            w = 2.0 / (2.0 * n + 1.0) * (1.0 - std::cos(theta));
            break;
        default:
            throw ConfigurationError("no Gauss-Chebyshev rule for family '" +
                                     family_kind_name(kind) + "'");
        }
        r.nodes.push_back(std::cos(theta));
        r.weights.push_back(w);
    }
    return r;
}

Measure::Measure(FamilyKind kind) : kind_(kind) {
    if (kind == FamilyKind::custom)
        throw ConfigurationError("a custom measure needs a density sampler");
}

Measure::Measure(std::function<double(double)> density, double lo, double hi)
    : kind_(FamilyKind::custom), density_(std::move(density)), lo_(lo), hi_(hi) {
    if (!(hi > lo))
        throw ConfigurationError("measure support must be a nonempty interval");
}

Measure Measure::divided_by(Complex pole) const {
    Measure out = *this;
    out.poles_.push_back(pole);
    return out;
}

QuadratureRule Measure::rule(int nodes) const {
    if (kind_ != FamilyKind::custom)
        return gauss_chebyshev(kind_, nodes);
    // First-kind Chebyshev nodes mapped to [lo, hi]; the density is divided by
    // the Chebyshev weight so smooth densities integrate spectrally.
    QuadratureRule base = gauss_chebyshev(FamilyKind::chebyshev1, nodes);
    const double half = 0.5 * (hi_ - lo_), mid = 0.5 * (hi_ + lo_);
    for (std::size_t k = 0; k < base.nodes.size(); ++k) {
        double u = base.nodes[k];
        double x = mid + half * u;
        base.weights[k] *= std::numbers::pi * std::sqrt(1.0 - u * u) * half * density_(x);
        base.nodes[k] = x;
    }
    return base;
}

Complex Measure::integrate(const std::function<Complex(double)>& g, int nodes) const {
    QuadratureRule r = rule(nodes);
    Complex acc = 0.0;
    for (std::size_t k = 0; k < r.nodes.size(); ++k) {
        Complex term = r.weights[k] * g(r.nodes[k]);
        for (auto p : poles_)
            term /= (r.nodes[k] - p);
        acc += term;
    }
    return acc;
}

Complex Measure::integrate_adaptive(const std::function<Complex(double)>& g, int max_nodes) const {
    int nodes = 256;
    Complex prev = integrate(g, nodes);
    double gap = 0.0;
    while (nodes < max_nodes) {
        nodes *= 2;
        Complex cur = integrate(g, nodes);
        gap = std::abs(cur - prev);
        double scale = std::max(std::abs(cur), 1e-300);
        prev = cur;
        if (gap <= 1e-11 * scale)
            return cur;
    }
    if (gap > 1e-10 * std::max(std::abs(prev), 1e-300))
        throw PrecisionError("quadrature did not settle: node doubling still moves the value by " +
                             std::to_string(gap) + " at " + std::to_string(nodes) + " nodes");
    return prev;
}

Complex cauchy_transform(const Measure& mu, Complex kappa, int max_nodes) {
    for (auto p : mu.poles())
        if (p == kappa)
            throw PoleError("Cauchy transform evaluated at a pole of the measure");
    return mu.integrate_adaptive([kappa](double t) { return 1.0 / (t - kappa); }, max_nodes);
}

}  // namespace darboux
