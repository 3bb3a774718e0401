#pragma once

#include <utility>
#include <vector>

#include "blgl/solver.hpp"

namespace blgl {

/// Per-viscosity measurements of the layer growth mechanism.
struct SweepRecord {
    double nu = 0.0;
    std::vector<std::pair<double, double>> wall_amp;  ///< (t, sup_x |omega(x,0,t)|)
    std::vector<std::pair<double, double>> width;     ///< (t, half-decay width)
    double t_form = 0.0;
    double width_at_onset = 0.0;  ///< width when wall_amp first exceeds half its run max
    double max_wall_amp = 0.0;
    double kato_layer = 0.0;  ///< nu * int_0^T int_{y <= nu} |grad u|^2
    double kato_full = 0.0;   ///< nu * int_0^T int |omega|^2
    std::vector<std::pair<double, double>> euler_dist;
    double euler_dist_sup = 0.0;
    std::vector<std::pair<double, double>> norm_series;  ///< (t, triple norm)
    double max_norm_ratio = 0.0;                         ///< max_t triple(t)/triple(0)
};

/// sup over x of |omega(x, y_j)| at every node (dense tangential sampling).
std::vector<double> sup_x_profile(const SpectralField& omega);

double wall_amplitude(const SpectralField& omega);

/// Half-decay depth: smallest y* with sup_x|omega(x,y*)| <= half the wall
/// value, linearly interpolated; Ly when the profile never decays that far.
double layer_width(const SpectralField& omega);

/// Vorticity displacement thickness over y <= 0.25; robustness cross-check.
double displacement_thickness(const SpectralField& omega);

/// (layer value with y <= c*nu, c = 1; full-strip enstrophy value).
std::pair<double, double> kato_integral(const Trajectory& traj, double nu);

/// First t with wall_amp(t) >= c/sqrt(nu); +inf sentinel if never reached.
double formation_time(const SweepRecord& record, double c);

/// Log-log least-squares slope with coefficient of determination.
std::pair<double, double> fit_exponent(const std::vector<double>& xs,
                                       const std::vector<double>& ys);

/// ||u_ns(t) - u_euler(t)||_{L^2(strip)} at each matched output time.
std::vector<std::pair<double, double>> euler_distance(const Trajectory& traj_ns,
                                                      const Trajectory& traj_euler);

struct MonitorReport {
    double max_ratio = 0.0;
    double ceiling = 0.0;
    bool exceeded = false;
    bool vacuous = false;  ///< reference value M is zero
};

MonitorReport norm_boundedness_monitor(const Trajectory& traj, double M, double ceiling = 10.0);

}  // namespace blgl
