#include "tqft/numerics.hpp"

#include <algorithm>
#include <cmath>

namespace tqft {

namespace {

// 15-point Kronrod nodes/weights on [-1,1]; odd indices form the 7-point Gauss rule.
const double kXgk[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898, 0.405845151377397, 0.586087235467691, 0.741531185599394,
    0.864864423359769, 0.949107912342759, 0.991455371120813};
const double kWgk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
const double kWg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

struct Panel {
    double a, b;
    cplx value;
    double err;
};

Panel eval_panel(const std::function<cplx(double)>& f, double a, double b) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    cplx ik{0.0, 0.0}, ig{0.0, 0.0};
    for (int j = 0; j < 15; ++j) {
        cplx y = f(c + h * kXgk[j]);
        ik += kWgk[j] * y;
        if (j % 2 == 1) ig += kWg[j / 2] * y;
    }
    ik *= h;
    ig *= h;
    return {a, b, ik, std::abs(ik - ig)};
}

}  // namespace

cplx integrate(const std::function<cplx(double)>& f, double a, double b,
               double rel_tol, double abs_tol, int max_panels, double init_width) {
    int n0 = std::max(8, static_cast<int>((b - a) / init_width));
    n0 = std::min(n0, max_panels);
    std::vector<Panel> panels;
    panels.reserve(static_cast<size_t>(n0) + 64);
    for (int i = 0; i < n0; ++i) {
        double x0 = a + (b - a) * i / n0;
        double x1 = a + (b - a) * (i + 1) / n0;
        panels.push_back(eval_panel(f, x0, x1));
    }
    for (;;) {
        cplx total{0.0, 0.0};
        double err = 0.0;
        for (const Panel& p : panels) {
            total += p.value;
            err += p.err;
        }
        double tol = std::max(abs_tol, rel_tol * std::abs(total));
        if (err < tol) return total;
        if (static_cast<int>(panels.size()) >= max_panels)
            throw NonConvergence("adaptive quadrature: panel budget exhausted");
        auto worst = std::max_element(panels.begin(), panels.end(),
                                      [](const Panel& x, const Panel& y) { return x.err < y.err; });
        double m = 0.5 * (worst->a + worst->b);
        Panel right = eval_panel(f, m, worst->b);
        *worst = eval_panel(f, worst->a, m);
        panels.push_back(right);
    }
}

cplx integrate_contour(const std::function<cplx(cplx)>& f, const BentContour& c,
                       double Tl, double Tr, double rel_tol, double abs_tol,
                       int max_panels, double init_width) {
    return integrate(
        [&](double t) {
            auto [z, dz] = c.at(t);
            return f(z) * dz;
        },
        -Tl, Tr, rel_tol, abs_tol, max_panels, init_width);
}

}  // namespace tqft
