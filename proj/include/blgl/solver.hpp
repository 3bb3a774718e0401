#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blgl/nonlinear.hpp"
#include "blgl/norms.hpp"
#include "blgl/weights.hpp"

namespace blgl {

enum class Backend { imex, duhamel, euler };

struct InitialDatum {
    enum class Kind { bulk_vortex, shear, custom };
    Kind kind = Kind::bulk_vortex;
    double A = 1.0;       ///< amplitude
    int xi0 = 1;          ///< carrier wavenumber of the vortex
    double y0 = 1.0;      ///< vortex height; must keep y0 - 3 sigma > 0
    double sigma = 0.15;  ///< vortex width
    int shear_profile = 0;
    std::string snapshot_path;

    bool operator==(const InitialDatum&) const = default;
};

struct RunConfig {
    int K = 8;
    int J = 128;
    double Ly = 4.0;
    double stretch = 3.0;
    WeightParams weights;
    Backend backend = Backend::imex;
    double dt = 1e-4;
    double T_end = 0.0045;  ///< defaults to mu0/(2 gamma)
    InitialDatum datum;
    bool dealias = true;
    int picard_iters = 8;
    int output_every = 10;  ///< steps between stored samples
    bool monitor_norms = true;

    void validate() const;
    std::shared_ptr<const Grid> make_grid_shared() const;
    std::uint64_t hash() const;

    bool operator==(const RunConfig&) const = default;
};

struct Sample {
    double t = 0.0;
    SpectralField omega;
    VelocityPair u;
    NormReport norms;
};

struct Trajectory {
    std::vector<Sample> samples;
    std::uint64_t config_hash = 0;
};

/// Gaussian vortex at height y0 carried by modes 0 and +-xi0.
SpectralField bulk_vortex_field(std::shared_ptr<const Grid> grid, double A, int xi0, double y0,
                                double sigma);
/// x-independent profile (only the xi = 0 mode); steady for the nonlinearity.
SpectralField shear_field(std::shared_ptr<const Grid> grid, int profile, double A = 1.0);

SpectralField initial_field(const RunConfig& config, std::shared_ptr<const Grid> grid);

/// Sup of |u1|, |u2| over physical space (for the advective CFL bound).
double max_speed(const VelocityPair& u);

/// One IMEX step: Crank-Nicolson diffusion with the inhomogeneous Robin wall
/// datum B, Heun (predictor-corrector) treatment of N and B.
SpectralField step_imex(const SpectralField& omega, double dt, const WeightParams& p,
                        bool dealias = true);

Trajectory evolve_imex(const RunConfig& config);
Trajectory evolve_duhamel(const RunConfig& config);
Trajectory evolve_euler(const RunConfig& config);

/// Dispatch over backends; attaches a NormReport at each stored sample.
Trajectory evolve(const RunConfig& config);

}  // namespace blgl
