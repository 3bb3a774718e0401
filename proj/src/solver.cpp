#include "blgl/solver.hpp"

#include <cmath>
#include <cstring>

#include "blgl/green.hpp"
#include "blgl/parallel.hpp"
#include "blgl/snapshot.hpp"
#include "time_loop.hpp"

namespace blgl {

namespace {

void hash_mix(std::uint64_t& h, const void* data, size_t n) {
    const auto* p = static_cast<const unsigned char*>(data);
    for (size_t i = 0; i < n; ++i) {
        h ^= p[i];
        h *= 1099511628211ull;  // FNV-1a
    }
}

template <typename T>
void hash_value(std::uint64_t& h, T v) {
    hash_mix(h, &v, sizeof(v));
}

}  // namespace

void RunConfig::validate() const {
    weights.validate();
    if (!(dt > 0.0)) throw ValidationError("dt must be > 0");
    if (!(T_end > 0.0)) throw ValidationError("T_end must be > 0");
    if (monitor_norms && T_end > weights.mu0 / (2.0 * weights.gamma) + 1e-15)
        throw HorizonExceeded("T_end exceeds mu0/(2 gamma) with norm monitoring enabled");
    if (datum.kind == InitialDatum::Kind::bulk_vortex && !(datum.y0 - 3.0 * datum.sigma > 0.0))
        throw ValidationError("bulk vortex must satisfy y0 - 3 sigma > 0 (support off the wall)");
    if (picard_iters < 1) throw ValidationError("picard_iters must be >= 1");
    if (output_every < 1) throw ValidationError("output_every must be >= 1");
}

std::shared_ptr<const Grid> RunConfig::make_grid_shared() const {
    return std::make_shared<const Grid>(make_grid(K, J, Ly, stretch, weights.nu));
}

std::uint64_t RunConfig::hash() const {
    std::uint64_t h = 1469598103934665603ull;
    hash_value(h, K);
    hash_value(h, J);
    hash_value(h, Ly);
    hash_value(h, stretch);
    hash_value(h, weights.nu);
    hash_value(h, weights.gamma);
    hash_value(h, weights.beta);
    hash_value(h, weights.eps0);
    hash_value(h, weights.mu0);
    hash_value(h, weights.alpha);
    hash_value(h, weights.n);
    hash_value(h, static_cast<int>(backend));
    hash_value(h, dt);
    hash_value(h, T_end);
    hash_value(h, static_cast<int>(datum.kind));
    hash_value(h, datum.A);
    hash_value(h, datum.xi0);
    hash_value(h, datum.y0);
    hash_value(h, datum.sigma);
    hash_value(h, datum.shear_profile);
    hash_mix(h, datum.snapshot_path.data(), datum.snapshot_path.size());
    hash_value(h, dealias);
    hash_value(h, picard_iters);
    hash_value(h, output_every);
    hash_value(h, monitor_norms);
    return h;
}

SpectralField bulk_vortex_field(std::shared_ptr<const Grid> grid, double A, int xi0, double y0,
                                double sigma) {
    SpectralField f(grid);
    const Grid& g = *grid;
    for (int j = 0; j < g.J; ++j) {
        double y = g.nodes[j];
        double env = A * std::exp(-0.5 * (y - y0) * (y - y0) / (sigma * sigma));
        f.at(0, j) = cd{env, 0.0};
        if (xi0 >= 1 && xi0 <= g.K) f.at(xi0, j) = cd{0.5 * env, 0.0};
    }
    f.enforce_hermitian();
    return f;
}

SpectralField shear_field(std::shared_ptr<const Grid> grid, int profile, double A) {
    SpectralField f(grid);
    const Grid& g = *grid;
    for (int j = 0; j < g.J; ++j) {
        double y = g.nodes[j];
        double v = 0.0;
        switch (profile) {
            case 0:  // detached Gaussian layer
                v = std::exp(-0.5 * (y - 1.0) * (y - 1.0) / 0.04);
                break;
            case 1: {  // smooth mixing layer profile
                double s = std::cosh(2.0 * (y - 1.0));
                v = 1.0 / (s * s);
                break;
            }
            default:
                throw ValidationError("shear_field: unknown profile id");
        }
        f.at(0, j) = cd{A * v, 0.0};
    }
    return f;
}

SpectralField initial_field(const RunConfig& config, std::shared_ptr<const Grid> grid) {
    switch (config.datum.kind) {
        case InitialDatum::Kind::bulk_vortex:
            return bulk_vortex_field(grid, config.datum.A, config.datum.xi0, config.datum.y0,
                                     config.datum.sigma);
        case InitialDatum::Kind::shear:
            return shear_field(grid, config.datum.shear_profile, config.datum.A);
        case InitialDatum::Kind::custom: {
            auto [f, t0] = read_snapshot(config.datum.snapshot_path);
            if (!(f.grid() == *grid))
                throw GridMismatch("custom datum snapshot grid differs from the run grid");
            SpectralField out(grid);
            out.raw() = f.raw();
            return out;
        }
    }
    throw ValidationError("initial_field: unknown datum kind");
}

double max_speed(const VelocityPair& u) {
    const Grid& g = u.u1.grid();
    const int Nx = 2 * g.K + 1;
    auto u1p = to_physical(u.u1, Nx);
    auto u2p = to_physical(u.u2, Nx);
    double m = 0.0;
    for (double v : u1p) m = std::max(m, std::abs(v));
    for (double v : u2p) m = std::max(m, std::abs(v));
    return m;
}

SpectralField step_imex(const SpectralField& omega, double dt, const WeightParams& p,
                        bool dealias) {
    const Grid& g = omega.grid();
    auto grid_ptr = omega.grid_ptr();

    VelocityPair u = velocity_from_vorticity(omega);
    double speed = max_speed(u);
    if (speed > 0.0 && dt > 0.5 * g.h_min() / speed)
        throw CFLViolation("step_imex: dt exceeds 0.5 h_min / max|u|");

    SpectralField n1 = nonlinear_term(omega, dealias);
    std::vector<cd> b1 = boundary_datum_from_source(n1);

    auto diffuse = [&](const SpectralField& src_n, const std::vector<cd>& b) {
        SpectralField out(grid_ptr);
        parallel_for(g.K + 1, [&](std::int64_t xim) {
            const int xi = static_cast<int>(xim);
            RobinDiffusion op(g, p.nu, xi);
            std::vector<cd> row(omega.mode(xi), omega.mode(xi) + g.J);
            op.step(row, dt, b[g.mode_index(xi)], 0.5, src_n.mode(xi));
            cd* o = out.mode(xi);
            for (int j = 0; j < g.J; ++j) o[j] = row[j];
        });
        out.enforce_hermitian();
        return out;
    };

    // predictor with start-of-step N, B; one Heun corrector pass
    SpectralField pred = diffuse(n1, b1);
    SpectralField n2 = nonlinear_term(pred, dealias);
    std::vector<cd> b2 = boundary_datum_from_source(n2);
    SpectralField nmid = cd{0.5, 0.0} * (n1 + n2);
    std::vector<cd> bmid(b1.size());
    for (size_t i = 0; i < b1.size(); ++i) bmid[i] = 0.5 * (b1[i] + b2[i]);
    SpectralField next = diffuse(nmid, bmid);

    if (!next.finite()) throw NumericalInstability("step_imex: non-finite state");
    double before = omega.sup_abs();
    if (before > 0.0 && next.sup_abs() > 10.0 * before)
        throw NumericalInstability("step_imex: sup|omega| grew by more than 10x in one step");
    return next;
}

Trajectory evolve_imex(const RunConfig& config) {
    config.validate();
    return internal::march(config, [&](const SpectralField& w, double dt) {
        return step_imex(w, dt, config.weights, config.dealias);
    });
}

Trajectory evolve(const RunConfig& config) {
    switch (config.backend) {
        case Backend::imex:
            return evolve_imex(config);
        case Backend::duhamel:
            return evolve_duhamel(config);
        case Backend::euler:
            return evolve_euler(config);
    }
    throw ValidationError("evolve: unknown backend");
}

}  // namespace blgl
