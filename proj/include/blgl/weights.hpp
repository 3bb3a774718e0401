#pragma once

#include <cmath>

#include "blgl/errors.hpp"

namespace blgl {

/// Parameter bundle for the time-dependent near-wall weight and the norms.
struct WeightParams {
    double nu = 1e-2;
    double gamma = 10.0;
    double beta = 0.2;    ///< in (0, 1/4)
    double eps0 = 0.05;   ///< in (0, 1)
    double mu0 = 0.09;    ///< in (0, 1/10)
    double alpha = 0.25;  ///< in (0, 1/2)
    int n = 1;            ///< weight level; n = 1 is the base weight

    void validate() const {
        if (!(nu > 0.0)) throw ValidationError("nu must be > 0");
        if (!(gamma > 0.0)) throw ValidationError("gamma must be > 0");
        if (!(beta > 0.0 && beta < 0.25)) throw ValidationError("beta must lie in (0, 1/4)");
        if (!(eps0 > 0.0 && eps0 < 1.0)) throw ValidationError("eps0 must lie in (0, 1)");
        if (!(mu0 > 0.0 && mu0 < 0.1)) throw ValidationError("mu0 must lie in (0, 1/10)");
        if (!(alpha > 0.0 && alpha < 0.5)) throw ValidationError("alpha must lie in (0, 1/2)");
        if (n < 1) throw ValidationError("n must be an integer >= 1");
    }

    /// Weight transition time: (nu/gamma)^(2^n/(2^n - 1)); nu^2/gamma^2 for n = 1.
    double t_star() const {
        double p = std::pow(2.0, n);
        return std::pow(nu / gamma, p / (p - 1.0));
    }
    /// Exponent 1/2^n used in the level-n second-order X factor.
    double half_pow(double t) const { return std::pow(t, 1.0 / std::pow(2.0, n)); }

    bool operator==(const WeightParams&) const = default;
};

/// Static weight: sqrt(nu) below the layer, y in the bulk, 1 above, extended
/// constantly past 1.
inline double w_base(double y, const WeightParams& p) {
    double rn = std::sqrt(p.nu);
    if (y <= rn) return rn;
    if (y <= 1.0) return y;
    return 1.0;
}

/// Time-dependent weight; equals 1 at t = 0 and w_base after the transition.
inline double w_t(double y, double t, const WeightParams& p) {
    if (t == 0.0) return 1.0;
    const double ts = p.t_star();
    if (t > ts) return w_base(y, p);
    double scale = std::pow(ts / t, p.beta);
    double ramp = 1.0 - t / ts;
    if (ramp < 0.0) ramp = 0.0;
    return w_base(y * scale, p) + ramp;
}

}  // namespace blgl
