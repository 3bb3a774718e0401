#include "blgl/nonlinear.hpp"

#include <cmath>

#include "blgl/parallel.hpp"

namespace blgl {

namespace {

// Twiddle table e^{i 2 pi xi m / Nx} for xi in [0, K], m in [0, Nx).
std::vector<cd> twiddles(int K, int Nx) {
    std::vector<cd> w(static_cast<size_t>(K + 1) * Nx);
    for (int xi = 0; xi <= K; ++xi)
        for (int m = 0; m < Nx; ++m) {
            double ph = 2.0 * M_PI * xi * m / Nx;
            w[static_cast<size_t>(xi) * Nx + m] = cd{std::cos(ph), std::sin(ph)};
        }
    return w;
}

}  // namespace

std::vector<double> to_physical(const SpectralField& f, int Nx) {
    const Grid& g = f.grid();
    const int J = g.J;
    auto w = twiddles(g.K, Nx);
    std::vector<double> phys(static_cast<size_t>(Nx) * J, 0.0);
    parallel_for(Nx, [&](std::int64_t m) {
        double* row = phys.data() + m * J;
        const cd* mode0 = f.mode(0);
        for (int j = 0; j < J; ++j) row[j] = mode0[j].real();
        for (int xi = 1; xi <= g.K; ++xi) {
            cd e = w[static_cast<size_t>(xi) * Nx + m];
            const cd* mk = f.mode(xi);
            // f_{-xi} = conj(f_xi) makes the pair contribute 2 Re(f_xi e^{i xi x})
            for (int j = 0; j < J; ++j)
                row[j] += 2.0 * (mk[j].real() * e.real() - mk[j].imag() * e.imag());
        }
    });
    return phys;
}

SpectralField to_spectral(const std::vector<double>& phys, int Nx,
                          std::shared_ptr<const Grid> grid) {
    const Grid& g = *grid;
    const int J = g.J;
    auto w = twiddles(g.K, Nx);
    SpectralField f(grid);
    parallel_for(g.K + 1, [&](std::int64_t xi) {
        cd* mk = f.mode(static_cast<int>(xi));
        for (int m = 0; m < Nx; ++m) {
            cd e = std::conj(w[static_cast<size_t>(xi) * Nx + m]);
            const double* row = phys.data() + static_cast<size_t>(m) * J;
            for (int j = 0; j < J; ++j) mk[j] += row[j] * e;
        }
        double inv = 1.0 / Nx;
        for (int j = 0; j < J; ++j) mk[j] *= inv;
    });
    f.enforce_hermitian();
    return f;
}

SpectralField nonlinear_term(const SpectralField& omega, bool dealias) {
    const Grid& g = omega.grid();
    const int J = g.J;
    // alias-free product of two K-band fields needs Nx >= 3K+1
    const int Nx = dealias ? 3 * g.K + 1 : 2 * g.K + 1;

    VelocityPair u = velocity_from_vorticity(omega);
    SpectralField dxo = d_x(omega, 1);
    SpectralField dyo = d_y(omega, 1);

    auto u1p = to_physical(u.u1, Nx);
    auto u2p = to_physical(u.u2, Nx);
    auto dxp = to_physical(dxo, Nx);
    auto dyp = to_physical(dyo, Nx);

    std::vector<double> np(static_cast<size_t>(Nx) * J);
    for (size_t i = 0; i < np.size(); ++i) np[i] = -(u1p[i] * dxp[i] + u2p[i] * dyp[i]);

    return to_spectral(np, Nx, omega.grid_ptr());
}

std::vector<cd> boundary_datum_from_source(const SpectralField& n) {
    const Grid& g = n.grid();
    const Stencils& s = stencils_for(g);
    const int J = g.J;
    std::vector<cd> b(g.n_modes());
    // (d_y^2 - xi^2) phi = N with phi(0) = 0 and the decaying far closure
    // d_y phi + |xi| phi = 0 at Ly (the half-line solution behaves like
    // e^{-|xi| y} above the source support; a Dirichlet cap would shift
    // -d_y phi(0) by the O(1/Ly) moment int (z/Ly) N dz at xi = 0)
    std::vector<double> lo(J), di(J), up(J);
    std::vector<cd> rhs(J);
    for (int xi = -g.K; xi <= g.K; ++xi) {
        const double xi2 = static_cast<double>(xi) * xi;
        const double axi = std::abs(static_cast<double>(xi));
        lo[0] = 0.0;
        di[0] = 1.0;
        up[0] = 0.0;
        rhs[0] = cd{0.0, 0.0};
        const cd* w = n.mode(xi);
        for (int j = 1; j + 1 < J; ++j) {
            lo[j] = s.d2[j][0];
            di[j] = s.d2[j][1] - xi2;
            up[j] = s.d2[j][2];
            rhs[j] = w[j];
        }
        // second-order ghost-node closure at Ly, as at the wall row of the
        // diffusion operator: ghost value from the centered derivative in
        // d_y phi + |xi| phi = 0, substituted into the d_y^2 stencil
        const double hL = g.nodes[J - 1] - g.nodes[J - 2];
        lo[J - 1] = 2.0 / (hL * hL);
        di[J - 1] = -2.0 / (hL * hL) - 2.0 * axi / hL - xi2;
        up[J - 1] = 0.0;
        rhs[J - 1] = w[J - 1];
        solve_tridiag(lo, di, up, rhs);
        cd dp0 = s.d1[0][0] * rhs[0] + s.d1[0][1] * rhs[1] + s.d1[0][2] * rhs[2];
        b[g.mode_index(xi)] = -dp0;
    }
    return b;
}

std::vector<cd> boundary_datum_quadrature(const SpectralField& n) {
    const Grid& g = n.grid();
    std::vector<cd> b(g.n_modes());
    for (int xi = -g.K; xi <= g.K; ++xi) {
        const cd* row = n.mode(xi);
        const double axi = std::abs(static_cast<double>(xi));
        cd acc{0.0, 0.0};
        for (int j = 0; j < g.J; ++j) acc += std::exp(-axi * g.nodes[j]) * row[j] * g.qw[j];
        b[g.mode_index(xi)] = acc;
    }
    return b;
}

std::vector<cd> boundary_datum(const SpectralField& omega) {
    return boundary_datum_from_source(nonlinear_term(omega));
}

}  // namespace blgl
