#include <cmath>

#include "blgl/solver.hpp"
#include "time_loop.hpp"

namespace blgl {

Trajectory evolve_euler(const RunConfig& config) {
    config.validate();
    if (config.datum.kind == InitialDatum::Kind::bulk_vortex &&
        !(config.datum.y0 - 3.0 * config.datum.sigma > 0.0))
        throw ValidationError("evolve_euler: datum must be supported away from the wall");

    return internal::march(config, [&](const SpectralField& w, double dt) {
        const Grid& g = w.grid();
        VelocityPair u = velocity_from_vorticity(w);
        double speed = max_speed(u);
        if (speed > 0.0 && dt > 0.5 * g.h_min() / speed)
            throw CFLViolation("evolve_euler: dt exceeds 0.5 h_min / max|u|");

        // Heun: inviscid transport d_t omega = N(omega)
        SpectralField k1 = nonlinear_term(w, config.dealias);
        SpectralField w1 = w + dt * k1;
        SpectralField k2 = nonlinear_term(w1, config.dealias);
        SpectralField next = w + (0.5 * dt) * (k1 + k2);

        if (!next.finite()) throw NumericalInstability("evolve_euler: non-finite state");
        return next;
    });
}

}  // namespace blgl
