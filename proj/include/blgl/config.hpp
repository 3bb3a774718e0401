#pragma once

#include <string>
#include <vector>

#include "blgl/solver.hpp"

namespace blgl {

struct SweepSpec {
    std::vector<double> nu_values = {4e-3, 1e-3, 2.5e-4};
    int K = 32;
    int J = 512;
    double Ly = 4.0;
    double stretch = 3.0;  ///< ~50 nodes below sqrt(nu) at nu = 2.5e-4, J = 512
    double dt = 4e-6;  ///< advective CFL headroom for amplitude 32 at J = 512
    double T_end = 0.0045;
    double amplitude = 32.0;   ///< bulk-vortex amplitude for the sweep datum
    double threshold = 0.25;   ///< formation threshold as a fraction of 1/sqrt(nu)
    int output_every = 5;
    bool parallel = true;

    bool operator==(const SweepSpec&) const = default;
};

struct AuditSpec {
    int probes = 32;
    unsigned seed = 20240801;
    int K = 4;
    int J = 64;
    int densify = 1;
    double rel_tol = 1e-8;

    bool operator==(const AuditSpec&) const = default;
};

struct OutputSpec {
    std::string dir = ".";
    std::string prefix = "blgl";

    bool operator==(const OutputSpec&) const = default;
};

struct FullConfig {
    RunConfig run;
    SweepSpec sweep;
    AuditSpec audit;
    OutputSpec output;

    bool operator==(const FullConfig&) const = default;
};

/// Parse the sectioned key = value text; rejects unknown keys and duplicate
/// keys with line positions, then validates every parameter interval.
FullConfig parse_config(const std::string& text);

/// Canonical text form; parse(render(c)) == c.
std::string render_config(const FullConfig& c);

FullConfig load_config_file(const std::string& path);

}  // namespace blgl
