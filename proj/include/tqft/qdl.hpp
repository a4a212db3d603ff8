#pragma once

#include <map>
#include <utility>

#include "tqft/numerics.hpp"

namespace tqft {

/// Modular parameter b together with the derived constants that appear in
/// every formula: c_b = i(b + 1/b)/2, q = e^{i pi b^2}, q~ = e^{-i pi / b^2}.
struct ModularParameter {
    cplx b;
    cplx cb;
    cplx q;
    cplx q_tilde;

    explicit ModularParameter(cplx b_);
    static ModularParameter from_hbar(double hbar);

    cplx zeta_inv() const;            // e^{i pi (1 + 2 c_b^2)/6}
    bool q_regime() const;            // Im(b^2) > 0: both |q|,|q~| < 1
    double cb_im() const { return cb.imag(); }
};

/// Per-tetrahedron charge triple (a, c); b = 1/2 - a - c must be positive.
struct ChargeTriple {
    double a;
    double c;

    ChargeTriple(double a_, double c_);
    double b_charge() const { return 0.5 - a - c; }
};

/// Faddeev's quantum dilogarithm. Two independent evaluation routes:
///  - q-product quotient (needs Im b^2 > 0),
///  - contour integral along R with a semicircular detour above the origin,
///    extended beyond the strip |Im z| < |c_b| by the functional-equation
///    ladder.
/// Values are memoized per evaluator instance.
class QuantumDilog {
public:
    QuantumDilog(ModularParameter p, IntegralSpec spec);

    const ModularParameter& param() const { return p_; }
    const IntegralSpec& spec() const { return spec_; }

    /// Dispatching evaluation (product if Im b^2 > 0, else contour+ladder).
    cplx phi(cplx z) const;

    /// The two routes individually (for the cross-representation check).
    cplx phi_product(cplx z) const;
    cplx phi_contour(cplx z) const;

    /// 1/phi with the same dispatch.
    cplx psi(cplx z) const { return 1.0 / phi(z); }

private:
    cplx eval_strip(cplx z) const;
    cplx eval_ladder(cplx z) const;
    void check_pole_proximity(cplx z) const;

    ModularParameter p_;
    IntegralSpec spec_;
    double radius_;
    mutable std::map<std::pair<double, double>, cplx> memo_;
};

/// Principal-branch Euler dilogarithm, cut along (1, inf).
cplx li2(cplx x);

enum class QSeriesKind { li2q, pochhammer_inf };

/// Li2(x;q) = sum x^n / (n (1-q^n))  or  (x;q)_inf = prod (1 - x q^i).
cplx qseries(QSeriesKind kind, cplx x, cplx q);

/// nu_{a,c} = e^{-i pi c_b^2 (4(a-c)+1)/6}
cplx nu_prefactor(double a, double c, const ModularParameter& p);

enum class PsiKind { plain, charged, tilde_charged, tilde_prime_charged };

/// The psi family built on 1/Phi_b:
///   plain:                 psi(x) = 1/Phi_b(x)
///   charged:               psi_{a,c}(x)
///   tilde_prime_charged:   psi~'_{a,c}(x) = e^{-i pi/12} psi_{c,b}(x)
///   tilde_charged:         psi~_{a,c}(x)  = psi~'_{a,c}(x) e^{i pi x^2}
cplx psi_family(PsiKind kind, const ChargeTriple& ch, cplx x, const QuantumDilog& qd);

/// Boltzmann weight g_{a,c}(s,t) = sum_m psi~'_{a,c}(s+m) e^{i pi t (s+2m)},
/// truncated to |m| <= spec.lattice_M. Terms decay like e^{-kappa |m|} with
/// kappa = 4 pi |c_b| min(a, b, c); the result is checked stable under
/// M -> M+10 and TruncationUnstable is raised otherwise.
cplx g_weight(const ChargeTriple& ch, double s, double t, const QuantumDilog& qd);

enum class IdentityKind { functional, inversion, unitarity, fourier, beta_integral };

/// |LHS - RHS| of the named Phi_b identity, both sides evaluated
/// independently. Argument conventions:
///   functional, inversion, unitarity: args = {z}
///   fourier:                          args = {w}, Im w < 0
///   beta_integral:                    args = {u, w}, Im w > 0, Im(u - w) > -|c_b|
double identity_residual(IdentityKind kind, const std::vector<cplx>& args,
                         const QuantumDilog& qd);

/// Truncated quasi-classical expansion of Phi_b(x / (2 pi b)):
/// exp( sum_{n<=N} (2 pi i b^2)^{2n-1} B_{2n}(1/2)/(2n)! d^{2n}/dx^{2n} Li2(-e^x) ).
/// The dilogarithm derivatives are in closed form; N <= 4.
cplx phi_asymptotic(double x, const ModularParameter& p, int order_N);

/// Closed-form even derivative d^{2n}/dx^{2n} Li2(-e^x), n = 0..4 (exposed for tests).
cplx li2_exp_derivative(int order, cplx x);

}  // namespace tqft
