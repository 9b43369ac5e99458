#pragma once

#include <optional>
#include <string>
#include <vector>

#include "darboux/error.hpp"

namespace darboux {

inline constexpr int kDefaultPrefix = 256;

// Monic three-term recurrence
//   z P_n = P_{n+1} + c_{n+1} P_n + lambda_{n+1} P_{n-1},  P_0 = 1, P_1 = z - c_1,
// stored as a finite prefix: c_1..c_N and lambda_2..lambda_N. That is enough to
// generate P_0..P_N. s0 is the value of the functional on the constant 1.
class RecurrenceCoeffs {
public:
    // c holds c_1..c_N, lambda holds lambda_2..lambda_N (so one shorter).
    RecurrenceCoeffs(std::vector<Complex> c, std::vector<Complex> lambda, Complex s0 = 1.0);

    int n_max() const noexcept { return static_cast<int>(c_.size()); }
    Complex c(int n) const;       // 1 <= n <= n_max
    Complex lambda(int n) const;  // 2 <= n <= n_max
    Complex s0() const noexcept { return s0_; }

    const std::vector<Complex>& c_values() const noexcept { return c_; }
    const std::vector<Complex>& lambda_values() const noexcept { return lambda_; }

    // First `n` entries (c_1..c_n, lambda_2..lambda_n).
    RecurrenceCoeffs prefix(int n) const;

    bool is_real(double tol = 0.0) const;
    bool is_positive_definite() const;

    friend bool operator==(const RecurrenceCoeffs&, const RecurrenceCoeffs&) = default;

private:
    std::vector<Complex> c_;
    std::vector<Complex> lambda_;
    Complex s0_;
};

enum class SqrtBranch { principal, negated };

// Complex-symmetric Jacobi matrix: b_0..b_{N-1} on the diagonal,
// a_0..a_{N-2} on both off-diagonals.
struct SymmetricJacobi {
    std::vector<Complex> b;
    std::vector<Complex> a;
    // Which root of a_k^2 each a_k is, relative to std::sqrt.
    std::vector<SqrtBranch> branch;

    SymmetricJacobi(std::vector<Complex> b, std::vector<Complex> a);

    int n_max() const noexcept { return static_cast<int>(b.size()); }
};

enum class FamilyKind { chebyshev1, chebyshev2, chebyshev3, chebyshev4, custom };

struct Family {
    FamilyKind kind = FamilyKind::chebyshev1;
    std::optional<std::pair<double, double>> support;
};

FamilyKind family_kind_from_name(const std::string& name);
std::string family_kind_name(FamilyKind kind);
Family preset(FamilyKind kind);

RecurrenceCoeffs family_coeffs(const Family& family, int n_max = kDefaultPrefix);
RecurrenceCoeffs family_coeffs(FamilyKind kind, int n_max = kDefaultPrefix);

SymmetricJacobi symmetrize(const RecurrenceCoeffs& m);

// Inverse of symmetrize: c_{k+1} = b_k, lambda_{k+2} = a_k^2.
RecurrenceCoeffs monic_from_symmetric(const SymmetricJacobi& J, Complex s0 = 1.0);

// s_0..s_count of the functional, s_j = (J^j e_0, e_0) * s0.
std::vector<Complex> moments(const RecurrenceCoeffs& m, int count);

// (J^j e_0, e_0) for j = 0..count, straight from symmetric data.
std::vector<Complex> moments(const SymmetricJacobi& J, int count);

SqrtBranch branch_of(Complex root, Complex square);

}  // namespace darboux
