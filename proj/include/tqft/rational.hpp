#pragma once

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace tqft {

/// Exact rational on int64 with overflow-checked arithmetic.
struct Rational {
    long long num = 0;
    long long den = 1;

    Rational() = default;
    Rational(long long n) : num(n), den(1) {}
    Rational(long long n, long long d);

    static Rational parse(const std::string& s);  // "p/q" or "p"

    Rational operator+(const Rational& o) const;
    Rational operator-(const Rational& o) const;
    Rational operator*(const Rational& o) const;
    Rational operator/(const Rational& o) const;
    Rational operator-() const { return Rational(-num, den); }
    Rational& operator+=(const Rational& o) { return *this = *this + o; }
    Rational& operator-=(const Rational& o) { return *this = *this - o; }
    Rational& operator*=(const Rational& o) { return *this = *this * o; }

    bool operator==(const Rational& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rational& o) const { return !(*this == o); }
    bool operator<(const Rational& o) const;
    bool operator<=(const Rational& o) const { return *this < o || *this == o; }
    bool operator>(const Rational& o) const { return o < *this; }
    bool operator>=(const Rational& o) const { return o <= *this; }

    bool is_zero() const { return num == 0; }
    double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
    std::string str() const;
};

using RatRow = std::vector<Rational>;
using RatMat = std::vector<RatRow>;

/// In-place reduced row echelon form; returns pivot column indices.
std::vector<int> rref(RatMat& m);

/// Row spaces of two matrices (same width) are equal.
bool rowspace_equal(RatMat a, RatMat b);

/// Solve A x = rhs exactly. Returns particular solution and nullspace basis,
/// or nullopt if inconsistent.
struct AffineSolution {
    RatRow particular;
    RatMat nullspace;  // basis rows
};
std::optional<AffineSolution> solve_affine(const RatMat& A, const RatRow& rhs);

/// Maximize m subject to rows[i] . t + m <= consts[i] being >= ... precisely:
/// maximize m such that for every i:  off[i] + sum_j G[i][j] t_j >= m.
/// Exact Fourier-Motzkin; returns (m*, argmax t) with t chosen deterministically
/// (midpoints on back-substitution at margin 3/4 m*), or nullopt if infeasible
/// or unbounded.
std::optional<std::pair<Rational, RatRow>> maximize_min_margin(const RatMat& G,
                                                               const RatRow& off);

}  // namespace tqft
