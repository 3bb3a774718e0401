#pragma once

#include <array>
#include <memory>
#include <vector>

#include "blgl/spectral_field.hpp"

namespace blgl {

/// Three-point finite-difference coefficients on the nonuniform grid.
/// Interior stencils are second order; boundary rows are one-sided.
struct Stencils {
    // c[j][0..2] multiply f_{j-1}, f_j, f_{j+1} (boundary rows use the
    // three nearest nodes instead).
    std::vector<std::array<double, 3>> d1, d2;

    explicit Stencils(const Grid& g) : d1(g.J), d2(g.J) {
        const auto& y = g.nodes;
        const int J = g.J;
        for (int j = 1; j + 1 < J; ++j) {
            double hm = y[j] - y[j - 1], hp = y[j + 1] - y[j];
            d1[j] = {-hp / (hm * (hm + hp)), (hp - hm) / (hm * hp), hm / (hp * (hm + hp))};
            d2[j] = {2.0 / (hm * (hm + hp)), -2.0 / (hm * hp), 2.0 / (hp * (hm + hp))};
        }
        {   // forward one-sided at the wall: nodes 0,1,2
            double h1 = y[1] - y[0], h2 = y[2] - y[1];
            d1[0] = {-(2.0 * h1 + h2) / (h1 * (h1 + h2)), (h1 + h2) / (h1 * h2),
                     -h1 / (h2 * (h1 + h2))};
            d2[0] = {2.0 / (h1 * (h1 + h2)), -2.0 / (h1 * h2), 2.0 / (h2 * (h1 + h2))};
        }
        {   // backward one-sided at Ly: nodes J-3,J-2,J-1
            double h1 = y[J - 1] - y[J - 2], h2 = y[J - 2] - y[J - 3];
            d1[J - 1] = {h1 / (h2 * (h1 + h2)), -(h1 + h2) / (h1 * h2),
                         (2.0 * h1 + h2) / (h1 * (h1 + h2))};
            d2[J - 1] = {2.0 / (h2 * (h1 + h2)), -2.0 / (h1 * h2), 2.0 / (h1 * (h1 + h2))};
        }
    }
};

inline const Stencils& stencils_for(const Grid& g) {
    // keyed on the grid parameters, not the address: heap reuse may place a
    // new grid at a freed grid's address
    thread_local Grid cached_params;
    thread_local std::unique_ptr<Stencils> cached;
    if (!cached || !(cached_params == g)) {
        cached = std::make_unique<Stencils>(g);
        cached_params = g;
    }
    return *cached;
}

namespace detail {
template <typename T>
void apply_stencil_row(const std::vector<std::array<double, 3>>& s, const T* f, T* out, int J) {
    out[0] = s[0][0] * f[0] + s[0][1] * f[1] + s[0][2] * f[2];
    for (int j = 1; j + 1 < J; ++j)
        out[j] = s[j][0] * f[j - 1] + s[j][1] * f[j] + s[j][2] * f[j + 1];
    out[J - 1] = s[J - 1][0] * f[J - 3] + s[J - 1][1] * f[J - 2] + s[J - 1][2] * f[J - 1];
}
}  // namespace detail

/// Wall-normal derivative, order 1 or 2.
inline SpectralField d_y(const SpectralField& f, int order = 1) {
    const Grid& g = f.grid();
    const Stencils& s = stencils_for(g);
    SpectralField out(f.grid_ptr());
    const auto& rows = (order == 2) ? s.d2 : s.d1;
    for (int xi = -g.K; xi <= g.K; ++xi)
        detail::apply_stencil_row(rows, f.mode(xi), out.mode(xi), g.J);
    return out;
}

/// y * d_y f, zero at the wall row.
inline SpectralField y_d_y(const SpectralField& f) {
    const Grid& g = f.grid();
    SpectralField out = d_y(f, 1);
    for (int xi = -g.K; xi <= g.K; ++xi) {
        cd* row = out.mode(xi);
        for (int j = 0; j < g.J; ++j) row[j] *= g.nodes[j];
    }
    return out;
}

/// Tangential derivative: multiplication by (i*xi)^order.
inline SpectralField d_x(const SpectralField& f, int order = 1) {
    const Grid& g = f.grid();
    SpectralField out = f;
    for (int xi = -g.K; xi <= g.K; ++xi) {
        cd factor{1.0, 0.0};
        for (int k = 0; k < order; ++k) factor *= cd{0.0, static_cast<double>(xi)};
        cd* row = out.mode(xi);
        for (int j = 0; j < g.J; ++j) row[j] *= factor;
    }
    return out;
}

/// Thomas algorithm; diagonals (a=lower, b=main, c=upper) are overwritten-free.
template <typename T>
void solve_tridiag(const std::vector<double>& a, const std::vector<double>& b,
                   const std::vector<double>& c, std::vector<T>& rhs) {
    const int n = static_cast<int>(b.size());
    static thread_local std::vector<double> cp;
    static thread_local std::vector<T> dp;
    cp.resize(n);
    dp.resize(n);
    if (b[0] == 0.0) throw SingularOperator("tridiagonal pivot is zero");
    cp[0] = c[0] / b[0];
    dp[0] = rhs[0] / b[0];
    for (int i = 1; i < n; ++i) {
        double m = b[i] - a[i] * cp[i - 1];
        if (m == 0.0) throw SingularOperator("tridiagonal pivot is zero");
        cp[i] = c[i] / m;
        dp[i] = (rhs[i] - a[i] * dp[i - 1]) / m;
    }
    rhs[n - 1] = dp[n - 1];
    for (int i = n - 2; i >= 0; --i) rhs[i] = dp[i] - cp[i] * rhs[i + 1];
}

/// Solve (d_y^2 - xi^2) psi_xi = omega_xi with psi_xi(0) = psi_xi(Ly) = 0.
inline SpectralField poisson_solve(const SpectralField& omega) {
    const Grid& g = omega.grid();
    const Stencils& s = stencils_for(g);
    SpectralField psi(omega.grid_ptr());
    const int J = g.J;
    std::vector<double> a(J), b(J), c(J);
    std::vector<cd> rhs(J);
    for (int xi = -g.K; xi <= g.K; ++xi) {
        const double xi2 = static_cast<double>(xi) * xi;
        a[0] = 0.0; b[0] = 1.0; c[0] = 0.0;
        for (int j = 1; j + 1 < J; ++j) {
            a[j] = s.d2[j][0];
            b[j] = s.d2[j][1] - xi2;
            c[j] = s.d2[j][2];
        }
        a[J - 1] = 0.0; b[J - 1] = 1.0; c[J - 1] = 0.0;
        const cd* w = omega.mode(xi);
        rhs[0] = 0.0;
        for (int j = 1; j + 1 < J; ++j) rhs[j] = w[j];
        rhs[J - 1] = 0.0;
        solve_tridiag(a, b, c, rhs);
        cd* p = psi.mode(xi);
        for (int j = 0; j < J; ++j) p[j] = rhs[j];
    }
    return psi;
}

/// Max of |i xi u1 + d_y u2| at interior nodes (discrete divergence).
inline double divergence_sup(const VelocityPair& u) {
    const Grid& g = u.u1.grid();
    SpectralField dxu1 = d_x(u.u1, 1);
    SpectralField dyu2 = d_y(u.u2, 1);
    double m = 0.0;
    for (int xi = -g.K; xi <= g.K; ++xi)
        for (int j = 1; j + 1 < g.J; ++j)
            m = std::max(m, std::abs(dxu1.at(xi, j) + dyu2.at(xi, j)));
    return m;
}

/// u = (d_y psi, -d_x psi) with Delta psi = omega; u2(0) = 0 exactly.
inline VelocityPair velocity_from_vorticity(const SpectralField& omega) {
    SpectralField psi = poisson_solve(omega);
    VelocityPair u;
    u.u1 = d_y(psi, 1);
    u.u2 = cd{-1.0, 0.0} * d_x(psi, 1);
    return u;
}

}  // namespace blgl
