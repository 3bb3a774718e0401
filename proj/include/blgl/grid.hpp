#pragma once

#include <cmath>
#include <vector>

#include "blgl/errors.hpp"

namespace blgl {

/// Wall-normal grid for the half-space strip [0, Ly], truncating y in [0, inf),
/// together with the tangential mode range xi in {-K..K}.
///
/// Nodes cluster at the wall via a tanh map so that sqrt(nu) layers are
/// resolved: y_j = Ly * (1 - tanh(stretch*(1 - j/(J-1)))/tanh(stretch)).
struct Grid {
    int K = 0;            ///< max tangential wavenumber
    int J = 0;            ///< number of wall-normal nodes
    double Ly = 0.0;      ///< truncation height
    double stretch = 0.0; ///< wall-clustering parameter
    std::vector<double> nodes;  ///< y_0 = 0 < y_1 < ... < y_{J-1} = Ly
    std::vector<double> qw;     ///< trapezoid quadrature weights on the nodes

    int n_modes() const { return 2 * K + 1; }
    /// Row index for wavenumber xi in [-K, K].
    int mode_index(int xi) const { return xi + K; }
    double h_min() const {
        double h = nodes[1] - nodes[0];
        for (int j = 2; j < J; ++j) h = std::min(h, nodes[j] - nodes[j - 1]);
        return h;
    }

    bool operator==(const Grid& o) const {
        return K == o.K && J == o.J && Ly == o.Ly && stretch == o.stretch;
    }
};

namespace detail {

/// Node map and quadrature only; no wall-resolution requirement. Used when
/// reconstructing a grid whose parameters were already validated (snapshots).
inline Grid build_grid(int K, int J, double Ly, double stretch) {
    Grid g;
    g.K = K;
    g.J = J;
    g.Ly = Ly;
    g.stretch = stretch;
    g.nodes.resize(J);
    const double ts = std::tanh(stretch);
    for (int j = 0; j < J; ++j) {
        double x = static_cast<double>(j) / (J - 1);
        g.nodes[j] = Ly * (1.0 - std::tanh(stretch * (1.0 - x)) / ts);
    }
    g.nodes[0] = 0.0;
    g.nodes[J - 1] = Ly;

    for (int j = 1; j < J; ++j) {
        if (!(g.nodes[j] > g.nodes[j - 1]))
            throw InvalidGrid("make_grid: nodes not strictly increasing");
    }

    g.qw.assign(J, 0.0);
    for (int j = 0; j + 1 < J; ++j) {
        double h = g.nodes[j + 1] - g.nodes[j];
        g.qw[j] += 0.5 * h;
        g.qw[j + 1] += 0.5 * h;
    }
    return g;
}

}  // namespace detail

inline Grid make_grid(int K, int J, double Ly, double stretch, double nu_min) {
    if (K < 1) throw InvalidGrid("make_grid: K must be >= 1");
    if (J < 16) throw InvalidGrid("make_grid: J must be >= 16");
    if (Ly < 1.11) throw InvalidGrid("make_grid: Ly must be >= 1.11");
    if (!(stretch > 0.0)) throw InvalidGrid("make_grid: stretch must be > 0");
    if (!(nu_min > 0.0)) throw InvalidGrid("make_grid: nu_min must be > 0");

    Grid g = detail::build_grid(K, J, Ly, stretch);

    // wall resolution: at least 8 nodes in [0, sqrt(nu_min)]
    const double layer = std::sqrt(nu_min);
    int below = 0;
    for (int j = 0; j < J; ++j)
        if (g.nodes[j] <= layer) ++below;
    if (below < 8)
        throw InvalidGrid("make_grid: fewer than 8 nodes below sqrt(nu_min); increase J or stretch");

    return g;
}

}  // namespace blgl
