#pragma once

#include <cmath>
#include <functional>
#include <vector>

#include "blgl/errors.hpp"

namespace blgl {

namespace detail {

// Gauss 7 / Kronrod 15 nodes and weights on [-1, 1].
inline constexpr double gk_nodes[15] = {
    -0.991455371120813, -0.949107912342759, -0.864864423359769, -0.741531185599394,
    -0.586087235467691, -0.405845151377397, -0.207784955007898, 0.0,
    0.207784955007898,  0.405845151377397,  0.586087235467691,  0.741531185599394,
    0.864864423359769,  0.949107912342759,  0.991455371120813};
inline constexpr double gk_wk[15] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250, 0.140653259715525,
    0.169004726639267, 0.190350578064785, 0.204432940075298, 0.209482141084728,
    0.204432940075298, 0.190350578064785, 0.169004726639267, 0.140653259715525,
    0.104790010322250, 0.063092092629979, 0.022935322010529};
inline constexpr double gk_wg[7] = {
    0.129484966168870, 0.279705391489277, 0.381830050505119, 0.417959183673469,
    0.381830050505119, 0.279705391489277, 0.129484966168870};

template <typename F>
void gk15(F&& f, double a, double b, double& kronrod, double& gauss) {
    const double c = 0.5 * (a + b), h = 0.5 * (b - a);
    kronrod = 0.0;
    gauss = 0.0;
    for (int i = 0; i < 15; ++i) {
        double v = f(c + h * gk_nodes[i]);
        kronrod += gk_wk[i] * v;
        if (i % 2 == 1) gauss += gk_wg[i / 2] * v;
    }
    kronrod *= h;
    gauss *= h;
}

template <typename F>
double adapt(F&& f, double a, double b, double tol_abs, int depth) {
    double k, g;
    gk15(f, a, b, k, g);
    double err = std::abs(k - g);
    if (err <= tol_abs || b - a < 1e-300) return k;
    if (depth > 48) throw QuadratureFailure("adaptive quadrature failed to converge");
    double m = 0.5 * (a + b);
    return adapt(f, a, m, 0.5 * tol_abs, depth + 1) + adapt(f, m, b, 0.5 * tol_abs, depth + 1);
}

}  // namespace detail

/// Adaptive Gauss-Kronrod integration of f over [a, b] to relative tolerance.
template <typename F>
double integrate(F&& f, double a, double b, double rel_tol = 1e-10) {
    if (a == b) return 0.0;
    double k, g;
    detail::gk15(f, a, b, k, g);
    double scale = std::max(std::abs(k), 1e-30);
    return detail::adapt(f, a, b, rel_tol * scale, 0);
}

/// Integral over [0, inf) via the map x = u/(1-u), u in [0, 1).
template <typename F>
double integrate_halfline(F&& f, double rel_tol = 1e-10) {
    return integrate(
        [&](double u) {
            double d = 1.0 - u;
            double x = u / d;
            return f(x) / (d * d);
        },
        0.0, 1.0 - 1e-12, rel_tol);
}

struct GaussLegendre {
    std::vector<double> x, w;  // nodes/weights on [0, 1]
    /// Fixed-order rule by Newton iteration on Legendre polynomials.
    explicit GaussLegendre(int n) : x(n), w(n) {
        for (int i = 0; i < n; ++i) {
            double t = std::cos(M_PI * (i + 0.75) / (n + 0.5));
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = t;
                for (int k = 2; k <= n; ++k) {
                    double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                double dp = n * (t * p1 - p0) / (t * t - 1.0);
                double dt = p1 / dp;
                t -= dt;
                if (std::abs(dt) < 1e-15) break;
            }
            double p0 = 1.0, p1 = t;
            for (int k = 2; k <= n; ++k) {
                double p2 = ((2.0 * k - 1.0) * t * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            double dp = n * (t * p1 - p0) / (t * t - 1.0);
            x[i] = 0.5 * (1.0 - t);  // descending t -> ascending x
            w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
        }
    }
};

}  // namespace blgl
