#include "darboux/core.hpp"

#include <cmath>

namespace darboux {

RecurrenceCoeffs::RecurrenceCoeffs(std::vector<Complex> c, std::vector<Complex> lambda, Complex s0)
    : c_(std::move(c)), lambda_(std::move(lambda)), s0_(s0) {
    if (c_.empty())
        throw ConfigurationError("recurrence prefix must contain at least c_1");
    if (lambda_.size() + 1 != c_.size())
        throw ConfigurationError("recurrence prefix: need exactly one more c than lambda, got " +
                                 std::to_string(c_.size()) + " and " +
                                 std::to_string(lambda_.size()));
    for (std::size_t i = 0; i < lambda_.size(); ++i) {
        if (lambda_[i] == Complex(0.0))
            throw QuasiDefinitenessError("lambda_" + std::to_string(i + 2) + " vanishes");
    }
}

Complex RecurrenceCoeffs::c(int n) const {
    if (n < 1 || n > n_max())
        throw InsufficientPrefixError("c_" + std::to_string(n) + " outside prefix of length " +
                                      std::to_string(n_max()));
    return c_[static_cast<std::size_t>(n - 1)];
}

Complex RecurrenceCoeffs::lambda(int n) const {
    if (n < 2 || n > n_max())
        throw InsufficientPrefixError("lambda_" + std::to_string(n) +
                                      " outside prefix of length " + std::to_string(n_max()));
    return lambda_[static_cast<std::size_t>(n - 2)];
}

RecurrenceCoeffs RecurrenceCoeffs::prefix(int n) const {
    if (n < 1 || n > n_max())
        throw InsufficientPrefixError("cannot take prefix " + std::to_string(n) + " of length " +
                                      std::to_string(n_max()));
    return RecurrenceCoeffs({c_.begin(), c_.begin() + n}, {lambda_.begin(), lambda_.begin() + (n - 1)},
                            s0_);
}

bool RecurrenceCoeffs::is_real(double tol) const {
    auto real = [tol](Complex x) { return std::abs(x.imag()) <= tol; };
    if (!real(s0_))
        return false;
    for (auto x : c_)
        if (!real(x))
            return false;
    for (auto x : lambda_)
        if (!real(x))
            return false;
    return true;
}

bool RecurrenceCoeffs::is_positive_definite() const {
    if (!is_real() || s0_.real() <= 0.0)
        return false;
    for (auto x : lambda_)
        if (x.real() <= 0.0)
            return false;
    return true;
}

SqrtBranch branch_of(Complex root, Complex square) {
    Complex p = std::sqrt(square);
    return std::abs(root - p) <= std::abs(root + p) ? SqrtBranch::principal : SqrtBranch::negated;
}

SymmetricJacobi::SymmetricJacobi(std::vector<Complex> b_, std::vector<Complex> a_)
    : b(std::move(b_)), a(std::move(a_)) {
    if (b.empty() || a.size() + 1 != b.size())
        throw ConfigurationError("symmetric Jacobi data: need one more diagonal than off-diagonal entry");
    branch.reserve(a.size());
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k] == Complex(0.0))
            throw QuasiDefinitenessError("off-diagonal a_" + std::to_string(k) + " vanishes");
        branch.push_back(branch_of(a[k], a[k] * a[k]));
    }
}

FamilyKind family_kind_from_name(const std::string& name) {
    if (name == "chebyshev1")
        return FamilyKind::chebyshev1;
    if (name == "chebyshev2")
        return FamilyKind::chebyshev2;
    if (name == "chebyshev3")
        return FamilyKind::chebyshev3;
    if (name == "chebyshev4")
        return FamilyKind::chebyshev4;
    if (name == "custom")
        return FamilyKind::custom;
    throw ConfigurationError("unknown family '" + name + "'");
}

std::string family_kind_name(FamilyKind kind) {
    switch (kind) {
    case FamilyKind::chebyshev1: return "chebyshev1";
    case FamilyKind::chebyshev2: return "chebyshev2";
    case FamilyKind::chebyshev3: return "chebyshev3";
    case FamilyKind::chebyshev4: return "chebyshev4";
    case FamilyKind::custom: return "custom";
    }
    throw ConfigurationError("unknown family kind");
}

Family preset(FamilyKind kind) {
    if (kind == FamilyKind::custom)
        return Family{kind, std::nullopt};
    return Family{kind, std::make_pair(-1.0, 1.0)};
}

RecurrenceCoeffs family_coeffs(const Family& family, int n_max) {
    if (n_max < 2)
        throw ConfigurationError("family prefix length must be at least 2");
    std::vector<Complex> c(static_cast<std::size_t>(n_max), 0.0);
    std::vector<Complex> lambda(static_cast<std::size_t>(n_max - 1), 0.25);
    switch (family.kind) {
    case FamilyKind::chebyshev1:
        lambda[0] = 0.5;
        break;
    case FamilyKind::chebyshev2:
        break;
    case FamilyKind::chebyshev3:
        c[0] = 0.5;
        break;
    case FamilyKind::chebyshev4:
        c[0] = -0.5;
        break;
    default:
        throw ConfigurationError("family '" + family_kind_name(family.kind) +
                                 "' has no preset coefficients");
    }
    return RecurrenceCoeffs(std::move(c), std::move(lambda), 1.0);
}

RecurrenceCoeffs family_coeffs(FamilyKind kind, int n_max) {
    return family_coeffs(preset(kind), n_max);
}

SymmetricJacobi symmetrize(const RecurrenceCoeffs& m) {
    std::vector<Complex> b = m.c_values();
    std::vector<Complex> a;
    a.reserve(m.lambda_values().size());
    for (auto l : m.lambda_values())
        a.push_back(std::sqrt(l));
    return SymmetricJacobi(std::move(b), std::move(a));
}

RecurrenceCoeffs monic_from_symmetric(const SymmetricJacobi& J, Complex s0) {
    std::vector<Complex> lambda;
    lambda.reserve(J.a.size());
    for (auto x : J.a)
        lambda.push_back(x * x);
    return RecurrenceCoeffs(J.b, std::move(lambda), s0);
}

namespace {

// Repeatedly applies a tridiagonal matrix (diag, lower, upper) to e_0 and
// records the first component. Only the leading count/2+1 rows can be reached
// by the time the j-th moment is read, so the truncation never leaks in.
std::vector<Complex> tridiagonal_moments(const std::vector<Complex>& diag,
                                         const std::vector<Complex>& lower,
                                         const std::vector<Complex>& upper, int count) {
    const std::size_t size = diag.size();
    std::vector<Complex> v(size, 0.0), w(size, 0.0);
    v[0] = 1.0;
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(count) + 1);
    out.push_back(1.0);
    for (int j = 1; j <= count; ++j) {
        for (std::size_t i = 0; i < size; ++i) {
            Complex acc = diag[i] * v[i];
            if (i > 0)
                acc += lower[i - 1] * v[i - 1];
            if (i + 1 < size)
                acc += upper[i] * v[i + 1];
            w[i] = acc;
        }
        std::swap(v, w);
        out.push_back(v[0]);
    }
    return out;
}

}  // namespace

std::vector<Complex> moments(const RecurrenceCoeffs& m, int count) {
    if (count < 0 || count > m.n_max())
        throw InsufficientPrefixError("moments up to s_" + std::to_string(count) +
                                      " need a prefix of at least that length, have " +
                                      std::to_string(m.n_max()));
    // Monic form: ones above the diagonal, lambdas below. (J_m^j e_0, e_0)
    // equals the symmetric value since the similarity fixes e_0.
    const std::size_t size =
        std::min<std::size_t>(static_cast<std::size_t>(count) + 1, static_cast<std::size_t>(m.n_max()));
    std::vector<Complex> diag(m.c_values().begin(), m.c_values().begin() + static_cast<long>(size));
    std::vector<Complex> lower(m.lambda_values().begin(),
                               m.lambda_values().begin() + static_cast<long>(size - 1));
    std::vector<Complex> upper(size - 1, 1.0);
    // J_m acts on coefficient vectors by its transpose here: the (0,0) entry of
    // J_m^j is the same for J_m and J_m^T.
    auto s = tridiagonal_moments(diag, upper, lower, count);
    for (auto& x : s)
        x *= m.s0();
    return s;
}

std::vector<Complex> moments(const SymmetricJacobi& J, int count) {
    if (count < 0 || count > J.n_max())
        throw InsufficientPrefixError("moments up to order " + std::to_string(count) +
                                      " exceed the prefix of length " + std::to_string(J.n_max()));
    const std::size_t size =
        std::min<std::size_t>(static_cast<std::size_t>(count) + 1, J.b.size());
    std::vector<Complex> diag(J.b.begin(), J.b.begin() + static_cast<long>(size));
    std::vector<Complex> off(J.a.begin(), J.a.begin() + static_cast<long>(size - 1));
    return tridiagonal_moments(diag, off, off, count);
}

}  // namespace darboux
