#pragma once

#include <complex>
#include <functional>
#include <stdexcept>
#include <vector>

namespace tqft {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline const cplx kI{0.0, 1.0};

struct NonConvergence : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct PoleProximity : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct BranchCut : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DivergentParameter : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct TruncationUnstable : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Numerical tolerances and truncation knobs shared by every integral in the
/// library. A result is reproducible given the same spec.
struct IntegralSpec {
    double contour_epsilon = 0.05;  // imaginary offset of R +- i0 contours
    double rel_tol = 1e-8;
    double abs_tol = 1e-12;
    int lattice_M = 24;             // lattice sums truncated to |m| <= M
    int max_quad_depth = 4000;      // panel budget for adaptive quadrature

    void validate() const {
        if (rel_tol <= 0 || abs_tol <= 0)
            throw std::invalid_argument("IntegralSpec: tolerances must be positive");
        if (contour_epsilon <= 0)
            throw std::invalid_argument("IntegralSpec: contour_epsilon must be positive");
        if (lattice_M < 0)
            throw std::invalid_argument("IntegralSpec: lattice_M must be >= 0");
    }
};

/// Adaptive Gauss-Kronrod 15(7) over [a,b]. Starts from panels no wider than
/// init_width (oscillatory integrands need the dense start; the K15-G7 error
/// estimate is meaningless on a panel spanning many oscillations) and splits
/// the worst panel until the summed error estimate is below tolerance.
cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               double rel_tol, double abs_tol, int max_panels = 4000,
               double init_width = 0.125);

/// Piecewise-linear contour t -> t - i*ramp(t) used for the R - i0
/// prescriptions: straight at depth eps on [-t0,t0], then bending by `slope`
/// on each side. Positive bend_sign_right/left bends downward (-i direction).
/// Depth on each side is clamped to cap (pole clearance).
struct BentContour {
    double eps = 0.05;
    double t0 = 1.0;
    double slope_left = 0.3;   // downward bend-rate for t < -t0
    double slope_right = 0.3;  // downward bend-rate for t > +t0
    double cap_left = 1e9;
    double cap_right = 1e9;

    // point and derivative of the contour at parameter t
    std::pair<cplx, cplx> at(double t) const {
        double ramp = 0.0, dramp = 0.0;
        if (t > t0) {
            ramp = slope_right * (t - t0);
            dramp = slope_right;
            if (ramp > cap_right) { ramp = cap_right; dramp = 0.0; }
        } else if (t < -t0) {
            ramp = slope_left * (-t - t0);
            dramp = -slope_left;
            if (ramp > cap_left) { ramp = cap_left; dramp = 0.0; }
        }
        return {cplx(t, -eps - ramp), cplx(1.0, -dramp)};
    }
};

/// Integral of f along a bent contour over parameter range [-Tl, Tr].
cplx integrate_contour(const std::function<cplx(cplx)>& f, const BentContour& c,
                       double Tl, double Tr, double rel_tol, double abs_tol,
                       int max_panels = 4000, double init_width = 0.125);

}  // namespace tqft
