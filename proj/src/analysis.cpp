#include "blgl/analysis.hpp"

#include <cmath>
#include <limits>
#include <set>

namespace blgl {

namespace {

constexpr double kAmpFloor = 1e-12;

/// Parseval in x on the torus: int |f|^2 dx = 2 pi sum_xi |f_xi(y)|^2.
double l2_density(const SpectralField& f, int j) {
    const Grid& g = f.grid();
    double s = 0.0;
    for (int xi = -g.K; xi <= g.K; ++xi) s += std::norm(f.at(xi, j));
    return 2.0 * M_PI * s;
}

double y_integral(const Grid& g, double lo, double hi, const std::vector<double>& density) {
    double sum = 0.0;
    for (int j = 0; j + 1 < g.J; ++j) {
        double a = g.nodes[j], b = g.nodes[j + 1];
        if (b <= lo || a >= hi) continue;
        double ca = std::max(a, lo), cb = std::min(b, hi);
        double w = b - a;
        double ga = density[j] + (density[j + 1] - density[j]) * (ca - a) / w;
        double gb = density[j] + (density[j + 1] - density[j]) * (cb - a) / w;
        sum += 0.5 * (ga + gb) * (cb - ca);
    }
    return sum;
}

}  // namespace

std::vector<double> sup_x_profile(const SpectralField& omega) {
    const Grid& g = omega.grid();
    const int Nx = 8 * g.K + 9;  // dense sampling of the tangential sup
    auto phys = to_physical(omega, Nx);
    std::vector<double> prof(g.J, 0.0);
    for (int m = 0; m < Nx; ++m)
        for (int j = 0; j < g.J; ++j)
            prof[j] = std::max(prof[j], std::abs(phys[static_cast<size_t>(m) * g.J + j]));
    return prof;
}

double wall_amplitude(const SpectralField& omega) { return sup_x_profile(omega)[0]; }

double layer_width(const SpectralField& omega) {
    const Grid& g = omega.grid();
    auto prof = sup_x_profile(omega);
    const double w0 = prof[0];
    if (w0 < kAmpFloor) throw NoLayer("layer_width: wall amplitude below floor");
    const double half = 0.5 * w0;
    for (int j = 1; j < g.J; ++j) {
        if (prof[j] <= half) {
            double a = prof[j - 1], b = prof[j];
            double frac = (a - half) / std::max(a - b, 1e-300);
            return g.nodes[j - 1] + frac * (g.nodes[j] - g.nodes[j - 1]);
        }
    }
    return g.Ly;  // never decays below half the wall value
}

double displacement_thickness(const SpectralField& omega) {
    const Grid& g = omega.grid();
    auto prof = sup_x_profile(omega);
    std::vector<double> num(g.J), den(g.J);
    for (int j = 0; j < g.J; ++j) {
        den[j] = prof[j];
        num[j] = g.nodes[j] * prof[j];
    }
    double bottom = y_integral(g, 0.0, 0.25, den);
    if (bottom < kAmpFloor) throw NoLayer("displacement_thickness: no vorticity below y = 0.25");
    return y_integral(g, 0.0, 0.25, num) / bottom;
}

std::pair<double, double> kato_integral(const Trajectory& traj, double nu) {
    if (traj.samples.empty()) return {0.0, 0.0};
    const Grid& g = traj.samples.front().omega.grid();

    auto instant = [&](const Sample& s) -> std::pair<double, double> {
        SpectralField dxu1 = d_x(s.u.u1, 1), dyu1 = d_y(s.u.u1, 1);
        SpectralField dxu2 = d_x(s.u.u2, 1), dyu2 = d_y(s.u.u2, 1);
        std::vector<double> grad2(g.J), ens(g.J);
        for (int j = 0; j < g.J; ++j) {
            grad2[j] = l2_density(dxu1, j) + l2_density(dyu1, j) + l2_density(dxu2, j) +
                       l2_density(dyu2, j);
            ens[j] = l2_density(s.omega, j);
        }
        double layer = y_integral(g, 0.0, std::min(nu, g.Ly), grad2);
        double full = y_integral(g, 0.0, g.Ly, ens);
        return {layer, full};
    };

    double acc_layer = 0.0, acc_full = 0.0;
    auto prev = instant(traj.samples[0]);
    for (size_t i = 1; i < traj.samples.size(); ++i) {
        auto cur = instant(traj.samples[i]);
        double dt = traj.samples[i].t - traj.samples[i - 1].t;
        acc_layer += 0.5 * (prev.first + cur.first) * dt;
        acc_full += 0.5 * (prev.second + cur.second) * dt;
        prev = cur;
    }
    return {nu * acc_layer, nu * acc_full};
}

double formation_time(const SweepRecord& record, double c) {
    const double threshold = c / std::sqrt(record.nu);
    const auto& series = record.wall_amp;
    for (size_t i = 0; i < series.size(); ++i) {
        if (series[i].second >= threshold) {
            if (i == 0) return series[0].first;
            double t0 = series[i - 1].first, t1 = series[i].first;
            double a0 = series[i - 1].second, a1 = series[i].second;
            double frac = (threshold - a0) / std::max(a1 - a0, 1e-300);
            return t0 + frac * (t1 - t0);
        }
    }
    return std::numeric_limits<double>::infinity();
}

std::pair<double, double> fit_exponent(const std::vector<double>& xs,
                                       const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 3)
        throw DegenerateFit("fit_exponent: need at least 3 points");
    std::set<double> distinct(xs.begin(), xs.end());
    if (distinct.size() < 3) throw DegenerateFit("fit_exponent: fewer than 3 distinct x values");
    const size_t n = xs.size();
    std::vector<double> lx(n), ly(n);
    for (size_t i = 0; i < n; ++i) {
        if (!(xs[i] > 0.0) || !(ys[i] > 0.0))
            throw DegenerateFit("fit_exponent: all values must be positive");
        lx[i] = std::log(xs[i]);
        ly[i] = std::log(ys[i]);
    }
    double mx = 0.0, my = 0.0;
    for (size_t i = 0; i < n; ++i) {
        mx += lx[i];
        my += ly[i];
    }
    mx /= n;
    my /= n;
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (size_t i = 0; i < n; ++i) {
        sxx += (lx[i] - mx) * (lx[i] - mx);
        sxy += (lx[i] - mx) * (ly[i] - my);
        syy += (ly[i] - my) * (ly[i] - my);
    }
    double slope = sxy / sxx;
    double r2 = (syy > 0.0) ? (sxy * sxy) / (sxx * syy) : 1.0;
    return {slope, r2};
}

std::vector<std::pair<double, double>> euler_distance(const Trajectory& traj_ns,
                                                      const Trajectory& traj_euler) {
    if (traj_ns.samples.size() != traj_euler.samples.size())
        throw GridMismatch("euler_distance: trajectories have different sample counts");
    std::vector<std::pair<double, double>> out;
    for (size_t i = 0; i < traj_ns.samples.size(); ++i) {
        const Sample& a = traj_ns.samples[i];
        const Sample& b = traj_euler.samples[i];
        if (!(a.omega.grid() == b.omega.grid()))
            throw GridMismatch("euler_distance: grids differ");
        if (std::abs(a.t - b.t) > 1e-12)
            throw GridMismatch("euler_distance: output times differ");
        const Grid& g = a.omega.grid();
        SpectralField d1 = a.u.u1 - b.u.u1;
        SpectralField d2 = a.u.u2 - b.u.u2;
        std::vector<double> density(g.J);
        for (int j = 0; j < g.J; ++j) density[j] = l2_density(d1, j) + l2_density(d2, j);
        out.emplace_back(a.t, std::sqrt(y_integral(g, 0.0, g.Ly, density)));
    }
    return out;
}

MonitorReport norm_boundedness_monitor(const Trajectory& traj, double M, double ceiling) {
    MonitorReport rep;
    rep.ceiling = ceiling;
    if (!(M > 0.0)) {
        rep.vacuous = true;
        return rep;
    }
    for (const Sample& s : traj.samples)
        rep.max_ratio = std::max(rep.max_ratio, s.norms.triple / M);
    rep.exceeded = rep.max_ratio > ceiling;
    return rep;
}

}  // namespace blgl
