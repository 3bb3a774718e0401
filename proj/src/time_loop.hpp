#pragma once

// Internal to the solver translation units: shared output-sampling time loop.

#include <cmath>
#include <utility>

#include "blgl/solver.hpp"

namespace blgl::internal {

inline Sample make_sample(double t, SpectralField omega, const RunConfig& config) {
    Sample s;
    s.t = t;
    s.u = velocity_from_vorticity(omega);
    if (config.monitor_norms)
        s.norms = triple_norm(omega, t, config.weights);
    else
        s.norms.t = t;
    s.omega = std::move(omega);
    return s;
}

/// Shared time loop: stepper(state, dt) advances the state by dt.
template <typename Stepper>
Trajectory march(const RunConfig& config, Stepper&& stepper) {
    auto grid = config.make_grid_shared();
    SpectralField omega = initial_field(config, grid);

    const int nsteps = std::max(1, static_cast<int>(std::ceil(config.T_end / config.dt - 1e-9)));
    const double dt = config.T_end / nsteps;

    Trajectory traj;
    traj.config_hash = config.hash();
    traj.samples.push_back(make_sample(0.0, omega, config));
    for (int s = 1; s <= nsteps; ++s) {
        omega = stepper(omega, dt);
        if (s % config.output_every == 0 || s == nsteps)
            traj.samples.push_back(make_sample(s * dt, omega, config));
    }
    return traj;
}

}  // namespace blgl::internal
