#pragma once

#include <cmath>

namespace blgl {

/// Half-space heat kernel with homogeneous Neumann condition at y = 0,
/// normalized to unit mass at xi = 0:
/// (4 pi nu t)^{-1/2} (e^{-(y-z)^2/4nut} + e^{-(y+z)^2/4nut}) e^{-nu xi^2 t}.
inline double heat_kernel(double t, int xi, double y, double z, double nu) {
    const double d = 4.0 * nu * t;
    const double g1 = std::exp(-(y - z) * (y - z) / d);
    const double g2 = std::exp(-(y + z) * (y + z) / d);
    return (g1 + g2) * std::exp(-nu * static_cast<double>(xi) * xi * t) / std::sqrt(M_PI * d);
}

/// Decay envelope for the residual kernel: a boundary term b^{k+1}
/// e^{-theta0 b (y+z)} plus a Gaussian tail, b = |xi| + 1/sqrt(nu).
struct Envelope {
    double theta0 = 0.2;
    int k = 0;  ///< derivative order selector, 0|1|2
};

inline double boundary_coefficient(int xi, double nu) {
    return std::abs(static_cast<double>(xi)) + 1.0 / std::sqrt(nu);
}

inline double envelope_value(const Envelope& e, double t, double y, double z, double nu, int xi) {
    const double b = boundary_coefficient(xi, nu);
    const double s = y + z;
    double bterm = std::pow(b, e.k + 1) * std::exp(-e.theta0 * b * s);
    double gterm = std::pow(nu * t, -0.5 * (e.k + 1)) * std::exp(-e.theta0 * s * s / (nu * t)) *
                   std::exp(-nu * static_cast<double>(xi) * xi * t / 8.0);
    return bterm + gterm;
}

/// The (y d_y)^k variant of the envelope (halved rates, first powers only).
inline double envelope_value_scaled(double theta0, double t, double y, double z, double nu,
                                    int xi) {
    const double b = boundary_coefficient(xi, nu);
    const double s = y + z;
    return b * std::exp(-0.5 * theta0 * b * s) +
           std::exp(-0.5 * theta0 * s * s / (nu * t)) *
               std::exp(-nu * static_cast<double>(xi) * xi * t / 8.0) / std::sqrt(nu * t);
}

}  // namespace blgl
