#include <cmath>
#include <limits>
#include <vector>

#include "blgl/green.hpp"
#include "blgl/parallel.hpp"
#include "blgl/solver.hpp"
#include "time_loop.hpp"

namespace blgl {

namespace {

constexpr int kSubsteps = 16;     // semigroup substeps per Duhamel interval
constexpr double kTol = 1e-8;     // fixed-point stopping tolerance (sup norm)

/// One interval of the mild-solution representation: propagate omega under
/// the Robin diffusion semigroup while the source N(s) and wall datum B(s)
/// vary linearly between the interval endpoint values.
SpectralField propagate(const SpectralField& omega, double dt, const WeightParams& p,
                        const SpectralField& na, const std::vector<cd>& ba,
                        const SpectralField& nb, const std::vector<cd>& bb) {
    const Grid& g = omega.grid();
    SpectralField out(omega.grid_ptr());
    parallel_for(g.K + 1, [&](std::int64_t xim) {
        const int xi = static_cast<int>(xim);
        const int m = g.mode_index(xi);
        RobinDiffusion op(g, p.nu, xi);
        std::vector<cd> row(omega.mode(xi), omega.mode(xi) + g.J);
        std::vector<cd> src(g.J);
        const cd* ra = na.mode(xi);
        const cd* rb = nb.mode(xi);
        const double h = dt / kSubsteps;
        for (int k = 0; k < kSubsteps; ++k) {
            double frac = (k + 0.5) / kSubsteps;  // midpoint-in-s sampling
            for (int j = 0; j < g.J; ++j) src[j] = (1.0 - frac) * ra[j] + frac * rb[j];
            cd b = (1.0 - frac) * ba[m] + frac * bb[m];
            op.step(row, h, b, 0.5, src.data());
        }
        cd* o = out.mode(xi);
        for (int j = 0; j < g.J; ++j) o[j] = row[j];
    });
    out.enforce_hermitian();
    return out;
}

}  // namespace

Trajectory evolve_duhamel(const RunConfig& config) {
    config.validate();
    const WeightParams& p = config.weights;
    return internal::march(config, [&](const SpectralField& w, double dt) {
        SpectralField na = nonlinear_term(w, config.dealias);
        std::vector<cd> ba = boundary_datum_from_source(na);

        // first iterate: endpoint data frozen at the interval start
        SpectralField guess = propagate(w, dt, p, na, ba, na, ba);

        double prev_diff = std::numeric_limits<double>::infinity();
        int growing = 0;
        for (int it = 0; it < config.picard_iters; ++it) {
            SpectralField nb = nonlinear_term(guess, config.dealias);
            std::vector<cd> bb = boundary_datum_from_source(nb);
            SpectralField next = propagate(w, dt, p, na, ba, nb, bb);
            double diff = sup_diff(next, guess);
            guess = std::move(next);
            if (diff < kTol * std::max(1.0, guess.sup_abs())) break;
            if (diff > prev_diff) {
                if (++growing >= 5)
                    throw PicardDivergence(
                        "evolve_duhamel: fixed-point iterates grew for 5 consecutive passes");
            } else {
                growing = 0;
            }
            prev_diff = diff;
        }
        if (!guess.finite()) throw NumericalInstability("evolve_duhamel: non-finite state");
        return guess;
    });
}

}  // namespace blgl
