#pragma once

#include <utility>
#include <vector>

#include "blgl/grid.hpp"
#include "blgl/heat_kernel.hpp"
#include "blgl/operators.hpp"
#include "blgl/parallel.hpp"

namespace blgl {

/// Implicit diffusion for one tangential mode:
///   d_t g = nu (d_y^2 - xi^2) g,   nu (d_y + |xi|) g|_{y=0} = B,   g(Ly) = 0.
///
/// The wall row uses a second-order ghost-node closure on the mirrored node
/// -y_1. The xi^2 damping is applied as an exact exponential factor per step,
/// so G_xi(t) = e^{-nu xi^2 t} G_{Robin(|xi|)}(t) holds identically by
/// construction.
class RobinDiffusion {
public:
    RobinDiffusion(const Grid& grid, double nu, int xi, bool apply_damping = true)
        : grid_(&grid),
          nu_(nu),
          xi_(xi),
          damp_enabled_(apply_damping),
          dl_(grid.J, 0.0),
          dm_(grid.J, 0.0),
          du_(grid.J, 0.0) {
        const Stencils& s = stencils_for(grid);
        const int J = grid.J;
        const double y1 = grid.nodes[1];
        const double axi = std::abs(static_cast<double>(xi));
        dm_[0] = (-2.0 + 2.0 * y1 * axi) / (y1 * y1);
        du_[0] = 2.0 / (y1 * y1);
        for (int j = 1; j + 1 < J; ++j) {
            dl_[j] = s.d2[j][0];
            dm_[j] = s.d2[j][1];
            du_[j] = s.d2[j][2];
        }
        // homogeneous Dirichlet at Ly; kept out of the theta combination
        wall_source_ = -2.0 / y1;  // per unit B, added to d_t g at the wall row
    }

    const Grid& grid() const { return *grid_; }
    double nu() const { return nu_; }
    int xi() const { return xi_; }

    /// One theta-scheme step of size dt (theta = 1/2: Crank-Nicolson,
    /// theta = 1: backward Euler). B is the Robin datum for the step; src, if
    /// given, is an explicit volume source added as dt * src.
    template <typename T>
    void step(std::vector<T>& g, double dt, T B = T{}, double theta = 0.5,
              const T* src = nullptr) const {
        const int J = grid_->J;
        const double ai = theta * dt * nu_;
        const double ae = (1.0 - theta) * dt * nu_;
        static thread_local std::vector<double> lo, di, up;
        static thread_local std::vector<T> rhs;
        lo.resize(J);
        di.resize(J);
        up.resize(J);
        rhs.resize(J);
        for (int j = 0; j + 1 < J; ++j) {
            lo[j] = -ai * dl_[j];
            di[j] = 1.0 - ai * dm_[j];
            up[j] = -ai * du_[j];
        }
        lo[J - 1] = 0.0;
        di[J - 1] = 1.0;
        up[J - 1] = 0.0;
        rhs[0] = g[0] + ae * (dm_[0] * g[0] + du_[0] * g[1]) + dt * wall_source_ * B;
        for (int j = 1; j + 1 < J; ++j)
            rhs[j] = g[j] + ae * (dl_[j] * g[j - 1] + dm_[j] * g[j] + du_[j] * g[j + 1]);
        rhs[J - 1] = T{};
        if (src)
            for (int j = 0; j + 1 < J; ++j) rhs[j] += dt * src[j];
        solve_tridiag(lo, di, up, rhs);
        const double damp =
            damp_enabled_ ? std::exp(-nu_ * static_cast<double>(xi_) * xi_ * dt) : 1.0;
        for (int j = 0; j < J; ++j) g[j] = damp * rhs[j];
    }

    /// Evolve for total time tau in `steps` substeps with Rannacher startup:
    /// the first substep is split into four backward-Euler quarter steps,
    /// damping the modes a delta excites; the rest is Crank-Nicolson.
    template <typename T>
    void evolve(std::vector<T>& g, double tau, int steps) const {
        const double dt = tau / steps;
        for (int q = 0; q < 4; ++q) step(g, 0.25 * dt, T{}, 1.0);
        for (int s = 1; s < steps; ++s) step(g, dt);
    }

private:
    const Grid* grid_;
    double nu_, wall_source_;
    int xi_;
    bool damp_enabled_;
    std::vector<double> dl_, dm_, du_;
};

/// Discretized Green's function of the Stokes mode problem at fixed (t, xi).
struct KernelTable {
    double t = 0.0;
    int xi = 0;
    double nu = 0.0;
    const Grid* grid = nullptr;
    std::vector<double> G;  ///< row-major G[j*J + k] ~ G_xi(t, y_j, z_k)

    double at(int j, int k) const { return G[static_cast<size_t>(j) * grid->J + k]; }
    double& at(int j, int k) { return G[static_cast<size_t>(j) * grid->J + k]; }
};

namespace detail {
inline void green_column(const Grid& grid, const RobinDiffusion& op, double t, int steps, int k,
                         std::vector<double>& col) {
    col.assign(grid.J, 0.0);
    col[k] = 1.0 / grid.qw[k];  // discrete delta
    op.evolve(col, t, steps);
}
}  // namespace detail

inline KernelTable green_numeric(double t, int xi, double nu, const Grid& grid, int steps,
                                 bool parallel = true) {
    if (!(t > 0.0)) throw ValidationError("green_numeric: t must be > 0");
    KernelTable tab;
    tab.t = t;
    tab.xi = xi;
    tab.nu = nu;
    tab.grid = &grid;
    const int J = grid.J;
    tab.G.assign(static_cast<size_t>(J) * J, 0.0);
    RobinDiffusion op(grid, nu, xi);
    auto body = [&](std::int64_t k) {
        std::vector<double> col;
        detail::green_column(grid, op, t, steps, static_cast<int>(k), col);
        for (int j = 0; j < J; ++j) tab.at(j, static_cast<int>(k)) = col[j];
    };
    if (parallel)
        parallel_for(J, body);
    else
        serial_for(J, body);
    const double guard = 10.0 / std::sqrt(nu * t);
    for (double v : tab.G)
        if (!(std::abs(v) <= guard))
            throw NumericalInstability("green_numeric: kernel entry exceeds 10/sqrt(nu t)");
    return tab;
}

/// R = G - Neumann heat kernel on the same nodes.
inline KernelTable residual_kernel(const KernelTable& table) {
    KernelTable r = table;
    const Grid& g = *table.grid;
    for (int j = 0; j < g.J; ++j)
        for (int k = 0; k < g.J; ++k)
            r.at(j, k) -= heat_kernel(table.t, table.xi, g.nodes[j], g.nodes[k], table.nu);
    return r;
}

/// Residual kernel computed from its own initial-boundary-value problem: the
/// Robin datum of the full kernel minus the Neumann kernel's wall flux gives
///   d_t R = nu (d_y^2 - xi^2) R,  nu (d_y + |xi|) R|_0 = -nu |xi| H_xi(s,0,z),
/// with R(s=0) = 0. Smooth data, so every column is resolved; at xi = 0 the
/// datum vanishes and R = 0 identically. Substeps are cubically graded toward
/// s = 0, where the datum of a near-wall column ramps up on the scale z^2/nu;
/// the first two (tiny) steps are backward Euler.
inline KernelTable residual_direct(double t, int xi, double nu, const Grid& grid, int steps,
                                   bool parallel = true) {
    if (!(t > 0.0)) throw ValidationError("residual_direct: t must be > 0");
    KernelTable tab;
    tab.t = t;
    tab.xi = xi;
    tab.nu = nu;
    tab.grid = &grid;
    const int J = grid.J;
    tab.G.assign(static_cast<size_t>(J) * J, 0.0);
    RobinDiffusion op(grid, nu, xi);
    const double axi = std::abs(static_cast<double>(xi));
    auto body = [&](std::int64_t k) {
        std::vector<double> col(J, 0.0);
        const double z = grid.nodes[static_cast<int>(k)];
        double s_prev = 0.0;
        for (int n = 1; n <= steps; ++n) {
            double frac = static_cast<double>(n) / steps;
            double s = t * frac * frac * frac;
            double B = -nu * axi * heat_kernel(0.5 * (s + s_prev), xi, 0.0, z, nu);
            op.step(col, s - s_prev, B, n <= 2 ? 1.0 : 0.5);
            s_prev = s;
        }
        for (int j = 0; j < J; ++j) tab.at(j, static_cast<int>(k)) = col[j];
    };
    if (parallel)
        parallel_for(J, body);
    else
        serial_for(J, body);
    return tab;
}

/// Boundary trace kernels: T1 = Neumann heat kernel at z = 0, T2 = residual
/// column at z = 0 (Richardson-refined in the time step).
inline std::pair<std::vector<double>, std::vector<double>> trace_kernels(double t, int xi,
                                                                         double nu,
                                                                         const Grid& grid,
                                                                         int steps = 64) {
    if (!(t > 0.0)) throw ValidationError("trace_kernels: t must be > 0");
    const int J = grid.J;
    std::vector<double> T1(J), T2(J);
    for (int j = 0; j < J; ++j) T1[j] = heat_kernel(t, xi, grid.nodes[j], 0.0, nu);

    RobinDiffusion op(grid, nu, xi);
    std::vector<double> coarse, fine;
    detail::green_column(grid, op, t, steps, 0, coarse);
    detail::green_column(grid, op, t, 2 * steps, 0, fine);
    for (int j = 0; j < J; ++j) {
        double g = (4.0 * fine[j] - coarse[j]) / 3.0;  // time stepping is O(dt^2)
        T2[j] = g - T1[j];
    }
    return {T1, T2};
}

/// (G * source)(y_j) via the grid's trapezoid weights.
inline std::vector<cd> duhamel_apply(const KernelTable& table, const std::vector<cd>& source) {
    const Grid& g = *table.grid;
    std::vector<cd> out(g.J, cd{0.0, 0.0});
    for (int j = 0; j < g.J; ++j) {
        cd acc{0.0, 0.0};
        for (int k = 0; k < g.J; ++k) acc += table.at(j, k) * source[k] * g.qw[k];
        out[j] = acc;
    }
    return out;
}

}  // namespace blgl
