#include "darboux/hessenberg_qr.hpp"

#include <cmath>

namespace darboux {

namespace {

constexpr double kDeflation = 1e-14;

struct Givens {
    double c;
    Complex s;
};

// G = [c s; -conj(s) c] with G [x; y] = [r; 0].
Givens make_givens(Complex x, Complex y) {
    if (y == Complex(0.0))
        return {1.0, 0.0};
    const double ax = std::abs(x), ay = std::abs(y);
    if (ax == 0.0)
        return {0.0, std::conj(y) / ay};
    const double norm = std::hypot(ax, ay);
    return {ax / norm, (x / ax) * std::conj(y) / norm};
}

Complex wilkinson_shift(Complex a, Complex b, Complex c, Complex d) {
    // Eigenvalues of [[a, b], [c, d]] are (a+d)/2 +- disc; take the one nearer d.
    Complex half = 0.5 * (a - d);
    Complex disc = std::sqrt(half * half + b * c);
    Complex mu1 = 0.5 * (a + d) + disc, mu2 = 0.5 * (a + d) - disc;
    return std::abs(mu1 - d) <= std::abs(mu2 - d) ? mu1 : mu2;
}

}  // namespace

std::vector<Complex> hessenberg_eigenvalues(std::vector<Complex> h, int n) {
    if (n <= 0)
        return {};
    if (static_cast<int>(h.size()) != n * n)
        throw ConfigurationError("Hessenberg matrix storage does not match its order");
    auto H = [&h, n](int i, int j) -> Complex& { return h[static_cast<std::size_t>(i * n + j)]; };

    double norm = 0.0;
    for (int i = 0; i < n; ++i)
        for (int j = std::max(0, i - 1); j < n; ++j)
            norm = std::max(norm, std::abs(H(i, j)));

    std::vector<Complex> eig(static_cast<std::size_t>(n));
    const long cap = 60L * n;
    long sweeps = 0;
    int hi = n - 1;
    int its = 0;
    while (hi >= 0) {
        int l = hi;
        for (; l > 0; --l) {
            double neighbours = std::abs(H(l, l)) + std::abs(H(l - 1, l - 1));
            if (neighbours == 0.0)
                neighbours = norm;
            if (std::abs(H(l, l - 1)) <= kDeflation * neighbours) {
                H(l, l - 1) = 0.0;
                break;
            }
        }
        if (l == hi) {
            eig[static_cast<std::size_t>(hi)] = H(hi, hi);
            --hi;
            its = 0;
            continue;
        }
        if (++sweeps > cap)
            throw NumericalError("QR iteration did not converge for order " + std::to_string(n), n);
        ++its;

        Complex mu;
        if (its % 10 == 0) {
            // Exceptional shift to break cycles.
            mu = H(hi, hi) + 0.75 * std::abs(H(hi, hi - 1));
        } else {
            mu = wilkinson_shift(H(hi - 1, hi - 1), H(hi - 1, hi), H(hi, hi - 1), H(hi, hi));
        }

        Complex x = H(l, l) - mu, y = H(l + 1, l);
        for (int k = l; k < hi; ++k) {
            if (k > l) {
                x = H(k, k - 1);
                y = H(k + 1, k - 1);
            }
            Givens g = make_givens(x, y);
            // Rows k, k+1.
            for (int j = std::max(l, k - 1); j <= hi; ++j) {
                Complex a = H(k, j), b = H(k + 1, j);
                H(k, j) = g.c * a + g.s * b;
                H(k + 1, j) = -std::conj(g.s) * a + g.c * b;
            }
            if (k > l)
                H(k + 1, k - 1) = 0.0;
            // Columns k, k+1.
            for (int i = l; i <= std::min(k + 2, hi); ++i) {
                Complex a = H(i, k), b = H(i, k + 1);
                H(i, k) = g.c * a + std::conj(g.s) * b;
                H(i, k + 1) = -g.s * a + g.c * b;
            }
        }
    }
    return eig;
}

std::vector<Complex> tridiagonal_eigenvalues(const std::vector<Complex>& diag,
                                             const std::vector<Complex>& lower,
                                             const std::vector<Complex>& upper) {
    const int n = static_cast<int>(diag.size());
    if (n == 0)
        return {};
    if (static_cast<int>(lower.size()) != n - 1 || static_cast<int>(upper.size()) != n - 1)
        throw ConfigurationError("tridiagonal bands have inconsistent lengths");
    std::vector<Complex> h(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), 0.0);
    for (int i = 0; i < n; ++i) {
        h[static_cast<std::size_t>(i * n + i)] = diag[static_cast<std::size_t>(i)];
        if (i + 1 < n) {
            h[static_cast<std::size_t>(i * n + i + 1)] = upper[static_cast<std::size_t>(i)];
            h[static_cast<std::size_t>((i + 1) * n + i)] = lower[static_cast<std::size_t>(i)];
        }
    }
    return hessenberg_eigenvalues(std::move(h), n);
}

}  // namespace darboux
