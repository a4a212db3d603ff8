#include "tqft/rational.hpp"

#include <algorithm>
#include <numeric>

namespace tqft {

namespace {

long long checked(__int128 v) {
    if (v > INT64_MAX || v < INT64_MIN)
        throw std::overflow_error("Rational: 64-bit overflow");
    return static_cast<long long>(v);
}

}  // namespace

Rational::Rational(long long n, long long d) : num(n), den(d) {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    long long g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
}

Rational Rational::parse(const std::string& s) {
    auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(std::stoll(s));
    return Rational(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
}

Rational Rational::operator+(const Rational& o) const {
    long long g = std::gcd(den, o.den);
    __int128 n = static_cast<__int128>(num) * (o.den / g) +
                 static_cast<__int128>(o.num) * (den / g);
    __int128 d = static_cast<__int128>(den / g) * o.den;
    return Rational(checked(n), checked(d));
}

Rational Rational::operator-(const Rational& o) const { return *this + Rational(-o.num, o.den); }

Rational Rational::operator*(const Rational& o) const {
    long long g1 = std::gcd(num < 0 ? -num : num, o.den);
    long long g2 = std::gcd(o.num < 0 ? -o.num : o.num, den);
    __int128 n = static_cast<__int128>(num / g1) * (o.num / g2);
    __int128 d = static_cast<__int128>(den / g2) * (o.den / g1);
    return Rational(checked(n), checked(d));
}

Rational Rational::operator/(const Rational& o) const {
    if (o.num == 0) throw std::domain_error("Rational: division by zero");
    return *this * Rational(o.den, o.num);
}

bool Rational::operator<(const Rational& o) const {
    return static_cast<__int128>(num) * o.den < static_cast<__int128>(o.num) * den;
}

std::string Rational::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

std::vector<int> rref(RatMat& m) {
    std::vector<int> pivots;
    if (m.empty()) return pivots;
    size_t rows = m.size(), cols = m[0].size();
    size_t r = 0;
    for (size_t c = 0; c < cols && r < rows; ++c) {
        size_t sel = r;
        while (sel < rows && m[sel][c].is_zero()) ++sel;
        if (sel == rows) continue;
        std::swap(m[r], m[sel]);
        Rational inv = Rational(1) / m[r][c];
        for (size_t j = c; j < cols; ++j) m[r][j] = m[r][j] * inv;
        for (size_t i = 0; i < rows; ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            Rational f = m[i][c];
            for (size_t j = c; j < cols; ++j) m[i][j] = m[i][j] - f * m[r][j];
        }
        pivots.push_back(static_cast<int>(c));
        ++r;
    }
    m.resize(r);  // drop zero rows
    return pivots;
}

bool rowspace_equal(RatMat a, RatMat b) {
    RatMat ra = a, rb = b;
    rref(ra);
    rref(rb);
    return ra == rb;
}

std::optional<AffineSolution> solve_affine(const RatMat& A, const RatRow& rhs) {
    if (A.size() != rhs.size()) throw std::invalid_argument("solve_affine: size mismatch");
    if (A.empty()) return AffineSolution{{}, {}};
    size_t cols = A[0].size();
    RatMat aug = A;
    for (size_t i = 0; i < aug.size(); ++i) aug[i].push_back(rhs[i]);
    std::vector<int> piv = rref(aug);
    // inconsistent iff a pivot lands in the rhs column
    if (!piv.empty() && piv.back() == static_cast<int>(cols)) return std::nullopt;
    std::vector<bool> is_pivot(cols, false);
    for (int c : piv) is_pivot[static_cast<size_t>(c)] = true;
    AffineSolution sol;
    sol.particular.assign(cols, Rational(0));
    for (size_t i = 0; i < piv.size(); ++i)
        sol.particular[static_cast<size_t>(piv[i])] = aug[i][cols];
    for (size_t f = 0; f < cols; ++f) {
        if (is_pivot[f]) continue;
        RatRow v(cols, Rational(0));
        v[f] = Rational(1);
        for (size_t i = 0; i < piv.size(); ++i)
            v[static_cast<size_t>(piv[i])] = -aug[i][f];
        sol.nullspace.push_back(std::move(v));
    }
    return sol;
}

namespace {

// Inequality  sum_j c[j] x_j + c[n] * m <= rhs, stored as (coeffs..., m-coeff, rhs)
using Ineq = RatRow;

std::optional<std::pair<Rational, RatRow>> fm_solve(std::vector<Ineq> sys, size_t nvars) {
    // variables x_0..x_{nvars-1}, then m at index nvars; maximize m.
    std::vector<std::vector<Ineq>> levels;
    for (size_t v = 0; v < nvars; ++v) {
        levels.push_back(sys);
        std::vector<Ineq> pos, neg, zero;
        for (const Ineq& q : sys) {
            if (q[v].is_zero()) zero.push_back(q);
            else if (q[v] > Rational(0)) pos.push_back(q);
            else neg.push_back(q);
        }
        std::vector<Ineq> next = zero;
        for (const Ineq& p : pos) {
            for (const Ineq& n : neg) {
                // p/pv - n/nv eliminates v
                Ineq comb(p.size(), Rational(0));
                for (size_t j = 0; j < p.size(); ++j)
                    comb[j] = p[j] / p[v] - n[j] / n[v];
                next.push_back(std::move(comb));
            }
        }
        sys = std::move(next);
    }
    // remaining: c_m * m <= rhs
    bool bounded = false;
    Rational best(0);
    for (const Ineq& q : sys) {
        Rational cm = q[nvars], rhs = q[nvars + 1];
        if (cm > Rational(0)) {
            Rational bound = rhs / cm;
            if (!bounded || bound < best) { best = bound; bounded = true; }
        } else if (cm.is_zero() || cm < Rational(0)) {
            if (cm.is_zero() && rhs < Rational(0)) return std::nullopt;  // infeasible
        }
    }
    if (!bounded) return std::nullopt;  // unbounded margin: malformed input
    if (best <= Rational(0)) return std::nullopt;  // no interior point
    // back-substitute at margin 3/4 m* (keeps the point strictly interior)
    Rational m_used = best * Rational(3, 4);
    RatRow x(nvars + 1, Rational(0));
    x[nvars] = m_used;
    for (size_t vi = nvars; vi-- > 0;) {
        bool has_lo = false, has_hi = false;
        Rational lo(0), hi(0);
        for (const Ineq& q : levels[vi]) {
            if (q[vi].is_zero()) continue;
            // q[vi] x_vi <= rhs - sum_{j > vi} q[j] x_j (vars < vi have zero
            // coefficients at this level; later vars and m are already set)
            Rational rest = q[q.size() - 1];
            for (size_t j = vi + 1; j < q.size() - 1; ++j)
                rest = rest - q[j] * x[j];
            Rational bound = rest / q[vi];
            if (q[vi] > Rational(0)) {
                if (!has_hi || bound < hi) { hi = bound; has_hi = true; }
            } else {
                if (!has_lo || bound > lo) { lo = bound; has_lo = true; }
            }
        }
        if (has_lo && has_hi)
            x[vi] = (lo + hi) * Rational(1, 2);
        else if (has_lo)
            x[vi] = lo + Rational(1);
        else if (has_hi)
            x[vi] = hi - Rational(1);
        else
            x[vi] = Rational(0);
    }
    x.resize(nvars);
    return std::make_pair(m_used, x);
}

}  // namespace

std::optional<std::pair<Rational, RatRow>> maximize_min_margin(const RatMat& G,
                                                               const RatRow& off) {
    if (G.size() != off.size()) throw std::invalid_argument("maximize_min_margin: size mismatch");
    if (G.empty()) return std::nullopt;
    size_t nvars = G[0].size();
    std::vector<Ineq> sys;
    for (size_t i = 0; i < G.size(); ++i) {
        // off[i] + G[i].t >= m  <=>  -G[i].t + m <= off[i]
        Ineq q(nvars + 2, Rational(0));
        for (size_t j = 0; j < nvars; ++j) q[j] = -G[i][j];
        q[nvars] = Rational(1);
        q[nvars + 1] = off[i];
        sys.push_back(std::move(q));
    }
    return fm_solve(std::move(sys), nvars);
}

}  // namespace tqft
