#include "tqft/qdl.hpp"

#include <cmath>
#include <cstring>

namespace tqft {

namespace {

// Bernoulli numbers B_0 .. B_30 (odd ones beyond B_1 vanish).
const double kBernoulli[] = {
    1.0, -0.5, 1.0 / 6, 0.0, -1.0 / 30, 0.0, 1.0 / 42, 0.0, -1.0 / 30, 0.0,
    5.0 / 66, 0.0, -691.0 / 2730, 0.0, 7.0 / 6, 0.0, -3617.0 / 510, 0.0,
    43867.0 / 798, 0.0, -174611.0 / 330, 0.0, 854513.0 / 138, 0.0,
    -236364091.0 / 2730, 0.0, 8553103.0 / 6, 0.0, -23749461029.0 / 870, 0.0,
    8615841276005.0 / 14322};

// B_{2n}(1/2) for n = 0..4
const double kBernHalf[5] = {1.0, -1.0 / 12, 7.0 / 240, -31.0 / 1344, 127.0 / 3840};



cplx li2_bernoulli(cplx x) {
    // Li2(x) = sum_k B_k u^{k+1}/(k+1)!,  u = -log(1-x); converges |u| < 2 pi
    cplx u = -std::log(1.0 - x);
    cplx term = u;  // u^{k+1}/(k+1)! at k=0
    cplx sum = term;  // B_0 term
    for (int k = 1; k <= 30; ++k) {
        term *= u / static_cast<double>(k + 1);
        if (kBernoulli[k] == 0.0) continue;
        cplx add = kBernoulli[k] * term;
        sum += add;
        if (std::abs(add) < 1e-18 * (1.0 + std::abs(sum)) && k > 6) break;
    }
    return sum;
}

}  // namespace

cplx li2(cplx x) {
    if (x.imag() == 0.0 && x.real() > 1.0)
        throw BranchCut("li2: argument on the cut (1, inf)");
    if (x == cplx(0.0, 0.0)) return {0.0, 0.0};
    const double pi26 = kPi * kPi / 6.0;
    double r = std::abs(x);
    if (r > 1.5) {
        // inversion: Li2(x) = -Li2(1/x) - pi^2/6 - log^2(-x)/2
        cplx lg = std::log(-x);
        return -li2(1.0 / x) - pi26 - 0.5 * lg * lg;
    }
    if (std::abs(1.0 - x) < 0.5) {
        if (x == cplx(1.0, 0.0)) return {pi26, 0.0};
        // reflection: Li2(x) = pi^2/6 - log(x) log(1-x) - Li2(1-x)
        return pi26 - std::log(x) * std::log(1.0 - x) - li2(1.0 - x);
    }
    return li2_bernoulli(x);
}

cplx qseries(QSeriesKind kind, cplx x, cplx q) {
    if (std::abs(q) >= 1.0)
        throw DivergentParameter("qseries: |q| >= 1");
    if (kind == QSeriesKind::li2q) {
        if (std::abs(x) >= 1.0)
            throw DivergentParameter("li2q: |x| >= 1");
        cplx sum{0.0, 0.0};
        cplx xn{1.0, 0.0};
        cplx qn{1.0, 0.0};
        for (int n = 1; n < 4000; ++n) {
            xn *= x;
            qn *= q;
            cplx term = xn / (static_cast<double>(n) * (1.0 - qn));
            sum += term;
            if (std::abs(term) < 1e-18 * (1.0 + std::abs(sum))) return sum;
        }
        return sum;
    }
    // (x;q)_inf
    cplx prod{1.0, 0.0};
    cplx xq = x;
    for (int i = 0; i < 100000; ++i) {
        prod *= (1.0 - xq);
        xq *= q;
        if (std::abs(xq) < 1e-18) break;
    }
    return prod;
}

ModularParameter::ModularParameter(cplx b_) : b(b_) {
    if (b == cplx(0.0, 0.0) || b.real() <= 0.0)
        throw std::invalid_argument("ModularParameter: need Re b > 0");
    cb = kI * (b + 1.0 / b) * 0.5;
    q = std::exp(kI * kPi * b * b);
    q_tilde = std::exp(-kI * kPi / (b * b));
}

ModularParameter ModularParameter::from_hbar(double hbar) {
    if (hbar <= 0.0) throw std::invalid_argument("hbar must be positive");
    return ModularParameter(cplx(std::sqrt(hbar), 0.0));
}

cplx ModularParameter::zeta_inv() const {
    return std::exp(kI * kPi * (1.0 + 2.0 * cb * cb) / 6.0);
}

bool ModularParameter::q_regime() const { return (b * b).imag() > 1e-12; }

ChargeTriple::ChargeTriple(double a_, double c_) : a(a_), c(c_) {
    if (!(a > 0.0) || !(c > 0.0) || !(0.5 - a - c > 0.0))
        throw std::invalid_argument("ChargeTriple: need a, c, 1/2-a-c all positive");
}

QuantumDilog::QuantumDilog(ModularParameter p, IntegralSpec spec)
    : p_(std::move(p)), spec_(spec) {
    spec_.validate();
    double bmin = std::min(std::abs(p_.b), 1.0 / std::abs(p_.b));
    radius_ = std::min(0.5, 0.45 * kPi * bmin);
}

void QuantumDilog::check_pole_proximity(cplx z) const {
    // zero/pole lattice: z = -/+ (c_b + i m b + i n / b), m,n >= 0.
    const double tol = spec_.abs_tol;
    if (p_.b.imag() == 0.0) {
        // lattice purely imaginary; |Re z| alone clears almost every argument
        if (std::abs(z.real()) >= tol) return;
        double y = std::abs(z.imag());
        double c0 = p_.cb.imag();
        if (y < c0 - tol) return;
        double br = p_.b.real(), bi = 1.0 / br;
        for (int m = 0; c0 + m * br <= y + 1.0; ++m) {
            for (int n = 0;; ++n) {
                double lat = c0 + m * br + n * bi;
                if (lat > y + 1.0) break;
                if (std::hypot(z.real(), y - lat) < tol)
                    throw PoleProximity("phi: argument within abs_tol of a zero/pole");
            }
        }
        return;
    }
    for (int sgn = -1; sgn <= 1; sgn += 2) {
        for (int m = 0; m <= 40; ++m) {
            for (int n = 0; n <= 40; ++n) {
                cplx lat = static_cast<double>(sgn) *
                           (p_.cb + kI * (static_cast<double>(m) * p_.b +
                                          static_cast<double>(n) / p_.b));
                if (std::abs(lat - z) < tol)
                    throw PoleProximity("phi: argument within abs_tol of a zero/pole");
            }
        }
    }
}

cplx QuantumDilog::phi_product(cplx z) const {
    if (!p_.q_regime())
        throw DivergentParameter("phi_product: requires Im b^2 > 0");
    cplx q2 = p_.q * p_.q;
    cplx qt2 = p_.q_tilde * p_.q_tilde;
    cplx num = qseries(QSeriesKind::pochhammer_inf,
                       std::exp(2.0 * kPi * (z + p_.cb) * p_.b), q2);
    cplx den = qseries(QSeriesKind::pochhammer_inf,
                       std::exp(2.0 * kPi * (z - p_.cb) / p_.b), qt2);
    if (std::abs(den) < 1e-280)
        throw PoleProximity("phi_product: pole");
    return num / den;
}

cplx QuantumDilog::eval_strip(cplx z) const {
    const cplx b = p_.b;
    const double r = radius_;
    auto f = [&](cplx w) -> cplx {
        return std::exp(-2.0 * kI * z * w) /
               (4.0 * std::sinh(w * b) * std::sinh(w / b) * w);
    };
    // symmetric part f(t)+f(-t) = -i sin(2 z t) / (2 sinh(tb) sinh(t/b) t)
    auto g = [&](double t) -> cplx {
        return -kI * std::sin(2.0 * z * t) /
               (2.0 * std::sinh(t * b) * std::sinh(t / b) * t);
    };
    double kappa = (b + 1.0 / b).real() - 2.0 * std::abs(z.imag());
    if (kappa < 0.05)
        throw NonConvergence("phi_contour: argument outside integrable strip");
    double T = r + 36.0 / kappa;
    // exp() turns absolute error of the log-integral into relative error of phi
    double lrel = spec_.rel_tol * 1e-2, labs = 1e-14;
    double w0 = std::min(0.25, 3.0 / (1.0 + 2.0 * std::abs(z)));
    cplx sym = integrate(g, r, T, lrel, labs, spec_.max_quad_depth, w0);
    auto semi = [&](double th) -> cplx {
        cplx w = r * std::exp(kI * th);
        return f(w) * kI * w;
    };
    cplx sc = integrate(semi, kPi, 0.0, lrel, labs, spec_.max_quad_depth, 0.25);
    return std::exp(sym + sc);
}

cplx QuantumDilog::eval_ladder(cplx z) const {
    auto key = std::make_pair(z.real(), z.imag());
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;

    double babs = std::abs(p_.b);
    double bmin = std::min(babs, 1.0 / babs);
    cplx s = (babs <= 1.0 / babs) ? p_.b : 1.0 / p_.b;
    double lim = 0.5 * bmin;
    // far along the real axis the q-corrections are below rel_tol; use the
    // constant/Gaussian asymptotics instead of an oscillatory integral
    double X0 = std::max(6.0, 6.0 / bmin) + std::abs(z.imag());
    cplx v;
    if (z.imag() > lim) {
        v = eval_ladder(z - kI * s) / (1.0 + std::exp(2.0 * kPi * s * (z - kI * s * 0.5)));
    } else if (z.imag() < -lim) {
        v = eval_ladder(z + kI * s) * (1.0 + std::exp(2.0 * kPi * s * (z + kI * s * 0.5)));
    } else if (z.real() <= -X0) {
        v = 1.0;
    } else if (z.real() >= X0) {
        v = std::exp(kI * kPi * z * z) / p_.zeta_inv();
    } else {
        v = eval_strip(z);
    }
    memo_.emplace(key, v);
    return v;
}

cplx QuantumDilog::phi_contour(cplx z) const {
    check_pole_proximity(z);
    return eval_ladder(z);
}

cplx QuantumDilog::phi(cplx z) const {
    if (p_.q_regime()) return phi_product(z);
    return phi_contour(z);
}

cplx nu_prefactor(double a, double c, const ModularParameter& p) {
    return std::exp(-kI * kPi * p.cb * p.cb * (4.0 * (a - c) + 1.0) / 6.0);
}

cplx psi_family(PsiKind kind, const ChargeTriple& ch, cplx x, const QuantumDilog& qd) {
    const ModularParameter& p = qd.param();
    switch (kind) {
        case PsiKind::plain:
            return qd.psi(x);
        case PsiKind::charged: {
            cplx arg = x - 2.0 * p.cb * (ch.a + ch.c);
            return qd.psi(arg) *
                   std::exp(-4.0 * kI * kPi * p.cb * ch.a * (x - p.cb * (ch.a + ch.c))) *
                   nu_prefactor(ch.a, ch.c, p);
        }
        case PsiKind::tilde_prime_charged: {
            // psi~'_{a,c} = e^{-i pi/12} psi_{c,b}
            ChargeTriple swapped(ch.c, ch.b_charge());
            return std::exp(-kI * kPi / 12.0) *
                   psi_family(PsiKind::charged, swapped, x, qd);
        }
        case PsiKind::tilde_charged:
            return psi_family(PsiKind::tilde_prime_charged, ch, x, qd) *
                   std::exp(kI * kPi * x * x);
    }
    throw std::logic_error("psi_family: bad kind");
}

cplx g_weight(const ChargeTriple& ch, double s, double t, const QuantumDilog& qd) {
    const IntegralSpec& spec = qd.spec();
    const int M = spec.lattice_M;
    auto term = [&](int m) {
        return psi_family(PsiKind::tilde_prime_charged, ch, s + m, qd) *
               std::exp(kI * kPi * t * (s + 2.0 * m));
    };
    cplx g{0.0, 0.0};
    for (int m = -M; m <= M; ++m) g += term(m);
    cplx tail{0.0, 0.0};
    for (int m = M + 1; m <= M + 10; ++m) tail += term(m) + term(-m);
    if (std::abs(tail) > 10.0 * spec.rel_tol * (std::abs(g) + spec.abs_tol))
        throw TruncationUnstable("g_weight: lattice truncation unstable");
    return g;
}

double identity_residual(IdentityKind kind, const std::vector<cplx>& args,
                         const QuantumDilog& qd) {
    const ModularParameter& p = qd.param();
    const IntegralSpec& spec = qd.spec();
    const cplx b = p.b;
    const cplx cb = p.cb;
    switch (kind) {
        case IdentityKind::functional: {
            cplx z = args.at(0);
            cplx lhs = 1.0 / qd.phi(z + kI * b * 0.5);
            cplx rhs = (1.0 + std::exp(2.0 * kPi * b * z)) / qd.phi(z - kI * b * 0.5);
            return std::abs(lhs - rhs);
        }
        case IdentityKind::inversion: {
            cplx z = args.at(0);
            cplx lhs = qd.phi(z) * qd.phi(-z);
            cplx rhs = std::exp(kI * kPi * z * z) / p.zeta_inv();
            return std::abs(lhs - rhs);
        }
        case IdentityKind::unitarity: {
            cplx z = args.at(0);
            cplx lhs = std::conj(qd.phi(z)) * qd.phi(std::conj(z));
            return std::abs(lhs - 1.0);
        }
        case IdentityKind::fourier: {
            // int_{Im x = -eps} Phi(x+cb) e^{2 pi i w x} dx
            //   = e^{-i pi (1-4 cb^2)/12} / Phi(-w-cb),   Im w < 0.
            // The contour passes below the integrand pole at x = 0.
            cplx w = args.at(0);
            if (!(w.imag() < 0.0))
                throw std::invalid_argument("fourier residual: need Im w < 0");
            double eps = spec.contour_epsilon;
            double kr = 2.0 * kPi * (cb.imag() - eps + w.imag());
            double kl = 2.0 * kPi * (-w.imag());
            if (kr <= 0.05 || kl <= 0.0)
                throw NonConvergence("fourier residual: tails do not decay");
            double Tr = 32.0 / kr + 2.0, Tl = 32.0 / kl + 2.0;
            auto f = [&](double t) {
                cplx x(t, -eps);
                return qd.phi(x + cb) * std::exp(2.0 * kI * kPi * w * x);
            };
            cplx lhs = integrate(f, -Tl, Tr, spec.rel_tol, spec.abs_tol,
                                 spec.max_quad_depth, 0.25);
            cplx rhs = std::exp(-kI * kPi * (1.0 - 4.0 * cb * cb) / 12.0) /
                       qd.phi(-w - cb);
            return std::abs(lhs - rhs);
        }
        case IdentityKind::beta_integral: {
            // int_{Im x = +eps} Phi(x+u)/Phi(x-cb) e^{-2 pi i w x} dx
            //   = Phi(u) Phi(cb-w) / Phi(u-w) e^{i pi (1-4 cb^2)/12},
            // absolutely convergent for Im w > 0, Im(u + cb - w) > 0.
            cplx u = args.at(0), w = args.at(1);
            double kl = 2.0 * kPi * w.imag();
            double kr = 2.0 * kPi * (u + cb - w).imag();
            if (kl <= 0.0 || kr <= 0.05)
                throw NonConvergence("beta residual: tails do not decay");
            double eps = spec.contour_epsilon;
            double Tr = 32.0 / kr + 2.0, Tl = 32.0 / kl + 2.0;
            auto f = [&](double t) {
                cplx x(t, eps);
                return qd.phi(x + u) / qd.phi(x - cb) * std::exp(-2.0 * kI * kPi * w * x);
            };
            cplx lhs = integrate(f, -Tl, Tr, spec.rel_tol, spec.abs_tol,
                                 spec.max_quad_depth, 0.25);
            cplx rhs = qd.phi(u) * qd.phi(cb - w) / qd.phi(u - w) *
                       std::exp(kI * kPi * (1.0 - 4.0 * cb * cb) / 12.0);
            return std::abs(lhs - rhs);
        }
    }
    throw std::logic_error("identity_residual: bad kind");
}

cplx li2_exp_derivative(int order, cplx x) {
    // d^order/dx^order Li2(-e^x) for order in {0,2,4,6,8}
    if (order == 0) return li2(-std::exp(x));
    cplx u = 1.0 / (1.0 + std::exp(-x));  // e^x/(1+e^x), stable for large |Re x|
    cplx v = u * (1.0 - u);
    switch (order) {
        case 2:
            return -u;
        case 4:
            return -(1.0 - 2.0 * u) * v;
        case 6:
            return -(1.0 - u * (14.0 - u * (36.0 - 24.0 * u))) * v;
        case 8:
            return -(1.0 -
                     u * (62.0 - u * (540.0 - u * (1560.0 - u * (1800.0 - 720.0 * u))))) *
                   v;
        default:
            throw std::invalid_argument("li2_exp_derivative: order must be 0,2,4,6,8");
    }
}

cplx phi_asymptotic(double x, const ModularParameter& p, int order_N) {
    if (order_N < 0 || order_N > 4)
        throw std::invalid_argument("phi_asymptotic: order_N must be in [0,4]");
    cplx b2 = p.b * p.b;
    cplx total{0.0, 0.0};
    double fact = 1.0;  // (2n)!
    for (int n = 0; n <= order_N; ++n) {
        if (n > 0) fact *= (2.0 * n - 1.0) * (2.0 * n);
        cplx coeff = std::pow(2.0 * kPi * kI * b2, 2 * n - 1) * kBernHalf[n] / fact;
        total += coeff * li2_exp_derivative(2 * n, cplx(x, 0.0));
    }
    return std::exp(total);
}

}  // namespace tqft
