#include "blgl/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "blgl/csv.hpp"
#include "blgl/errors.hpp"
#include "blgl/parallel.hpp"

namespace blgl {

namespace {

RunConfig run_config_for(const SweepSpec& spec, const WeightParams& base_weights, double nu) {
    RunConfig rc;
    rc.K = spec.K;
    rc.J = spec.J;
    rc.Ly = spec.Ly;
    rc.stretch = spec.stretch;
    rc.weights = base_weights;
    rc.weights.nu = nu;
    rc.backend = Backend::imex;
    rc.dt = spec.dt;
    rc.T_end = spec.T_end;
    rc.datum.kind = InitialDatum::Kind::bulk_vortex;
    rc.datum.A = spec.amplitude;
    rc.output_every = spec.output_every;
    rc.monitor_norms = true;
    return rc;
}

}  // namespace

SweepRecord sweep_one(const SweepSpec& spec, const WeightParams& base_weights, double nu) {
    RunConfig rc = run_config_for(spec, base_weights, nu);
    Trajectory traj = evolve(rc);

    RunConfig ec = rc;
    ec.backend = Backend::euler;
    ec.monitor_norms = false;
    Trajectory etraj = evolve(ec);

    SweepRecord rec;
    rec.nu = nu;
    for (const Sample& s : traj.samples) {
        rec.wall_amp.emplace_back(s.t, wall_amplitude(s.omega));
        rec.width.emplace_back(s.t, layer_width(s.omega));
        rec.norm_series.emplace_back(s.t, s.norms.triple);
    }
    rec.max_wall_amp = 0.0;
    for (const auto& [t, a] : rec.wall_amp) rec.max_wall_amp = std::max(rec.max_wall_amp, a);
    rec.width_at_onset = rec.width.empty() ? 0.0 : rec.width.back().second;
    for (size_t i = 0; i < rec.wall_amp.size(); ++i) {
        if (rec.wall_amp[i].second >= 0.5 * rec.max_wall_amp) {
            rec.width_at_onset = rec.width[i].second;
            break;
        }
    }
    rec.t_form = formation_time(rec, spec.threshold);
    auto kato = kato_integral(traj, nu);
    rec.kato_layer = kato.first;
    rec.kato_full = kato.second;
    rec.euler_dist = euler_distance(traj, etraj);
    rec.euler_dist_sup = 0.0;
    for (const auto& [t, d] : rec.euler_dist) rec.euler_dist_sup = std::max(rec.euler_dist_sup, d);
    double base = rec.norm_series.empty() ? 0.0 : rec.norm_series.front().second;
    rec.max_norm_ratio = 0.0;
    if (base > 0.0)
        for (const auto& [t, n] : rec.norm_series)
            rec.max_norm_ratio = std::max(rec.max_norm_ratio, n / base);
    return rec;
}

SweepResult run_sweep(const FullConfig& config) {
    const SweepSpec& spec = config.sweep;
    if (spec.nu_values.empty()) throw ValidationError("sweep: nu_values must be nonempty");

    SweepResult result;
    result.records.resize(spec.nu_values.size());
    auto body = [&](size_t i) {
        result.records[i] = sweep_one(spec, config.run.weights, spec.nu_values[i]);
    };
    if (spec.parallel)
        parallel_for(spec.nu_values.size(), body);
    else
        serial_for(spec.nu_values.size(), body);

    std::sort(result.records.begin(), result.records.end(),
              [](const SweepRecord& a, const SweepRecord& b) { return a.nu > b.nu; });

    std::vector<double> nus, amps, widths, tform_nus, tforms;
    for (const SweepRecord& r : result.records) {
        nus.push_back(r.nu);
        amps.push_back(r.max_wall_amp);
        widths.push_back(r.width_at_onset);
        if (std::isfinite(r.t_form)) {
            tform_nus.push_back(r.nu);
            tforms.push_back(r.t_form);
        }
    }
    auto safe_fit = [](const std::vector<double>& xs, const std::vector<double>& ys,
                       double& expo, double& r2, bool& valid) {
        try {
            auto [e, r] = fit_exponent(xs, ys);
            expo = e;
            r2 = r;
            valid = true;
        } catch (const DegenerateFit&) {
            expo = std::numeric_limits<double>::quiet_NaN();
            r2 = 0.0;
            valid = false;
        }
    };
    safe_fit(nus, amps, result.amp_exponent, result.amp_r2, result.amp_fit_valid);
    safe_fit(nus, widths, result.width_exponent, result.width_r2, result.width_fit_valid);
    safe_fit(tform_nus, tforms, result.tform_exponent, result.tform_r2, result.tform_fit_valid);
    return result;
}

std::string sweep_csv(const SweepResult& result) {
    std::string out = csv_row({"nu", "t_form", "width_exponent", "amp_exponent", "kato_layer",
                               "kato_full", "max_norm_ratio", "euler_dist_sup"});
    for (const SweepRecord& r : result.records) {
        out += csv_row({fmt_double(r.nu), fmt_double(r.t_form), fmt_double(result.width_exponent),
                        fmt_double(result.amp_exponent), fmt_double(r.kato_layer),
                        fmt_double(r.kato_full), fmt_double(r.max_norm_ratio),
                        fmt_double(r.euler_dist_sup)});
    }
    return out;
}

}  // namespace blgl
