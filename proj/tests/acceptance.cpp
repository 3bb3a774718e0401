// Acceptance gate: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Each criterion carries its own runtime budget.
#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include "blgl/audits.hpp"
#include "blgl/csv.hpp"
#include "blgl/green.hpp"
#include "blgl/quadrature.hpp"
#include "blgl/snapshot.hpp"
#include "blgl/solver.hpp"
#include "blgl/sweep.hpp"

using namespace blgl;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;
};

std::string fmt(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

bool check(Outcome& o, bool cond, const std::string& on_fail) {
    if (!cond) {
        o.pass = false;
        if (!o.detail.empty()) o.detail += "; ";
        o.detail += on_fail;
    }
    return cond;
}

void note(Outcome& o, const std::string& text) {
    if (!o.detail.empty()) o.detail += "; ";
    o.detail += text;
}

// Integrate a sum of near-Gaussian bumps over [0, inf): adaptive quadrature on
// merged 8-width windows around the peaks (discarded tails < e^{-64}).
template <typename F>
double integrate_peaky(F&& f, std::vector<double> peaks, double width) {
    std::vector<std::pair<double, double>> windows;
    for (double p : peaks)
        windows.emplace_back(std::max(0.0, p - 8.0 * width), p + 8.0 * width);
    std::sort(windows.begin(), windows.end());
    std::vector<std::pair<double, double>> merged;
    for (auto w : windows) {
        if (!merged.empty() && w.first <= merged.back().second)
            merged.back().second = std::max(merged.back().second, w.second);
        else
            merged.push_back(w);
    }
    double sum = 0.0;
    for (auto [a, b] : merged) sum += integrate(f, a, b, 1e-9);
    return sum;
}

// ---------------------------------------------------------------------------

Outcome weight_properties() {
    Outcome o;
    for (double nu : {1e-2, 1e-3, 1e-4}) {
        WeightParams p;
        p.nu = nu;
        const double rn = std::sqrt(nu);
        const double hi = 1.0 + p.mu0;
        const int N = 1000;
        std::vector<double> ys(N);
        for (int i = 0; i < N; ++i) ys[i] = hi * i / (N - 1);
        for (int i = 0; i < N; ++i) {
            double y = ys[i], w = w_base(y, p);
            check(o, i + 1 == N || w <= w_base(ys[i + 1], p), "monotonicity at " + fmt(y));
            check(o, rn <= w && w <= 1.0, "range at " + fmt(y));
            check(o, y > 1.0 || y <= w + 1e-15, "linear lower bound at " + fmt(y));
            check(o, y <= (1.0 + p.mu0) * w + 1e-15, "extended bound at " + fmt(y));
            check(o, w * std::exp(-y / (4.0 * rn)) <= 4.0 * rn, "damping (C = 4) at " + fmt(y));
            for (int k = i; k < N; k += 37) {
                double z = ys[k];
                if (z >= 0.5 * y && z > 0.0)
                    check(o, w <= 2.0 * w_base(z, p) + 1e-15, "doubling bound");
            }
        }
        if (!o.pass) break;
    }
    if (o.pass) o.detail = "5 properties x 3 viscosities x 1000 points";
    return o;
}

Outcome heat_kernel_identities() {
    Outcome o;
    double worst_mass = 0.0;
    for (double nu : {1e-2, 1e-1})
        for (double t : {1e-3, 1e-2})
            for (double y : {0.0, 0.3, 1.0}) {
                double w = std::sqrt(4.0 * nu * t);
                double mass = integrate_peaky(
                    [&](double z) { return heat_kernel(t, 0, y, z, nu); }, {0.0, y}, w);
                worst_mass = std::max(worst_mass, std::abs(mass - 1.0));
            }
    check(o, worst_mass <= 1e-6, "mass defect " + fmt(worst_mass));

    struct Tuple {
        double t, s, y, z, nu;
        int xi;
    };
    std::vector<Tuple> tuples;
    for (double nu : {1e-2, 3e-2})
        for (int xi : {0, 1, 3})
            for (double t : {2e-3, 1e-2}) {
                tuples.push_back({t, 5e-3, 0.4, 0.6, nu, xi});
                tuples.push_back({t, 2e-2, 0.0, 0.5, nu, xi});
            }
    double worst_comp = 0.0;
    for (const Tuple& q : tuples) {
        double w = std::sqrt(4.0 * q.nu * std::max(q.t, q.s));
        double composed = integrate_peaky(
            [&](double u) {
                return heat_kernel(q.t, q.xi, q.y, u, q.nu) *
                       heat_kernel(q.s, q.xi, u, q.z, q.nu);
            },
            {0.0, q.y, q.z}, w);
        double direct = heat_kernel(q.t + q.s, q.xi, q.y, q.z, q.nu);
        // 1e-6 on the unit scale: kernel values range from O(100) down to
        // underflow-level tails, so the defect is normalized by 1 + max(|.|)
        worst_comp = std::max(worst_comp, std::abs(composed - direct) /
                                              (1.0 + std::max(std::abs(composed),
                                                              std::abs(direct))));
    }
    check(o, worst_comp <= 1e-6,
          "semigroup defect " + fmt(worst_comp) + " over " + std::to_string(tuples.size()));

    bool symmetric = true;
    for (double y : {0.0, 0.2, 0.8, 2.5})
        for (double z : {0.1, 0.7, 3.0})
            for (int xi : {0, 2})
                symmetric = symmetric && heat_kernel(1e-3, xi, y, z, 1e-2) ==
                                             heat_kernel(1e-3, xi, z, y, 1e-2);
    check(o, symmetric, "symmetry not exact");
    if (o.pass)
        o.detail = "mass " + fmt(worst_mass) + ", semigroup " + fmt(worst_comp) + " at " +
                   std::to_string(tuples.size()) + " tuples, symmetry exact";
    return o;
}

Outcome residual_bound() {
    Outcome o;
    const int J = 192, steps = 256;
    struct Case {
        double nu, t;
        int xi;
        KernelTable R{};
        double sup = 0.0;
    };
    std::vector<Case> cases;
    double worst_anti = 0.0;
    for (double nu : {1e-2, 1e-3}) {
        auto g = std::make_shared<const Grid>(make_grid(1, J, 4.0, 5.0, nu));
        for (int xi : {0, 1, 4})
            for (double t : {1e-4, 1e-3, 1e-2}) {
                Case c{nu, t, xi};
                c.R = residual_direct(t, xi, nu, *g, steps);
                for (double v : c.R.G) c.sup = std::max(c.sup, std::abs(v));
                if (c.sup > 0.0) {
                    double anti = 0.0;
                    for (int j = 0; j < J; ++j)
                        for (int k = j + 1; k < J; ++k)
                            anti = std::max(anti, std::abs(c.R.at(j, k) - c.R.at(k, j)));
                    worst_anti = std::max(worst_anti, anti / c.sup);
                }
                cases.push_back(std::move(c));
            }
    }
    // single constant fitted over the audit grid of decay rates, uniform in
    // (xi, nu, t)
    double bestC = 1e300, best_theta = 0.0;
    for (double theta0 : {0.05, 0.1, 0.2, 0.4}) {
        double C = 0.0;
        for (const Case& c : cases) {
            Envelope e{theta0, 0};
            auto g = std::make_shared<const Grid>(make_grid(1, J, 4.0, 5.0, c.nu));
            for (int j = 0; j < J; ++j)
                for (int k = 0; k < J; ++k) {
                    double env = envelope_value(e, c.t, g->nodes[j], g->nodes[k], c.nu, c.xi);
                    C = std::max(C, std::abs(c.R.at(j, k)) / env);
                }
        }
        if (C < bestC) {
            bestC = C;
            best_theta = theta0;
        }
    }
    check(o, bestC <= 10.0, "fitted constant " + fmt(bestC) + " > 10");
    check(o, worst_anti <= 1e-3, "cross-derivative residual " + fmt(worst_anti) + " > 1e-3");
    if (o.pass)
        o.detail = "C = " + fmt(bestC) + " at decay rate " + fmt(best_theta) +
                   ", cross-derivative residual " + fmt(worst_anti);
    return o;
}

Outcome backend_equivalence() {
    Outcome o;
    RunConfig cfg;
    cfg.K = 8;
    cfg.J = 128;
    cfg.weights.nu = 1e-2;
    cfg.dt = 2.5e-4;
    cfg.T_end = 0.05;
    cfg.datum.A = 1.0;
    cfg.output_every = 20;
    cfg.monitor_norms = false;
    Trajectory a = evolve_imex(cfg);
    Trajectory b = evolve_duhamel(cfg);
    check(o, a.samples.size() == b.samples.size(), "sample counts differ");
    double worst = 0.0;
    for (size_t i = 0; i < a.samples.size() && o.pass; ++i) {
        double scale = std::max(a.samples[i].omega.sup_abs(), 1e-12);
        worst = std::max(worst, sup_diff(a.samples[i].omega, b.samples[i].omega) / scale);
    }
    check(o, worst <= 1e-3, "sup-relative gap " + fmt(worst) + " > 1e-3");
    if (o.pass)
        o.detail = "sup-relative gap " + fmt(worst) + " over " +
                   std::to_string(a.samples.size()) + " output times";
    return o;
}

Outcome amplitude_and_width_scaling(const SweepResult& r) {
    Outcome o;
    check(o, r.amp_fit_valid, "amplitude fit degenerate");
    check(o, r.width_fit_valid, "width fit degenerate");
    if (!o.pass) return o;
    check(o, r.amp_exponent >= -0.6 && r.amp_exponent <= -0.4,
          "amplitude exponent " + fmt(r.amp_exponent) + " outside [-0.6, -0.4]");
    check(o, r.amp_r2 >= 0.95, "amplitude r^2 " + fmt(r.amp_r2) + " < 0.95");
    check(o, r.width_exponent >= 0.4 && r.width_exponent <= 0.6,
          "width exponent " + fmt(r.width_exponent) + " outside [0.4, 0.6]");
    note(o, "amplitude exponent " + fmt(r.amp_exponent) + " (r^2 " + fmt(r.amp_r2) +
                "), width exponent " + fmt(r.width_exponent) + " (r^2 " + fmt(r.width_r2) + ")");
    return o;
}

Outcome formation_time_trend(const SweepResult& r) {
    Outcome o;
    for (size_t i = 1; i < r.records.size(); ++i)
        check(o,
              std::isfinite(r.records[i].t_form) &&
                  r.records[i].t_form < r.records[i - 1].t_form,
              "formation time not decreasing from nu = " + fmt(r.records[i - 1].nu) + " (" +
                  fmt(r.records[i - 1].t_form) + ") to nu = " + fmt(r.records[i].nu) + " (" +
                  fmt(r.records[i].t_form) + ")");
    if (r.tform_fit_valid) {
        check(o, r.tform_exponent >= 0.7 && r.tform_exponent <= 1.3,
              "formation-time exponent " + fmt(r.tform_exponent) + " outside [0.7, 1.3]");
        note(o, "exponent " + fmt(r.tform_exponent) + " (r^2 " + fmt(r.tform_r2) + ")");
    } else {
        check(o, false, "formation-time fit degenerate (threshold not reached on enough runs)");
    }
    return o;
}

Outcome dissipation_trend(const SweepResult& r) {
    Outcome o;
    for (size_t i = 1; i < r.records.size(); ++i) {
        check(o, r.records[i].kato_layer < r.records[i - 1].kato_layer,
              "layer dissipation not strictly decreasing at nu = " + fmt(r.records[i].nu));
        check(o, r.records[i].euler_dist_sup < r.records[i - 1].euler_dist_sup,
              "inviscid-limit distance not strictly decreasing at nu = " + fmt(r.records[i].nu));
    }
    if (o.pass) {
        std::string s = "layer dissipation";
        for (const SweepRecord& rec : r.records) s += " " + fmt(rec.kato_layer);
        s += ", inviscid distance";
        for (const SweepRecord& rec : r.records) s += " " + fmt(rec.euler_dist_sup);
        o.detail = s;
    }
    return o;
}

Outcome norm_boundedness(const SweepResult& r) {
    Outcome o;
    double worst = 0.0;
    for (const SweepRecord& rec : r.records) {
        worst = std::max(worst, rec.max_norm_ratio);
        check(o, rec.max_norm_ratio <= 10.0,
              "norm ratio " + fmt(rec.max_norm_ratio) + " at nu = " + fmt(rec.nu));
    }
    if (o.pass) o.detail = "max norm growth ratio " + fmt(worst) + " <= 10";
    return o;
}

double max_drift(const AuditReport& a, const AuditReport& b) {
    double drift = 0.0;
    for (const auto& [name, ra] : a.max_ratio) {
        double rb = b.max_ratio.at(name);
        double denom = std::max(std::abs(ra), 1e-300);
        drift = std::max(drift, std::abs(rb - ra) / denom);
    }
    return drift;
}

Outcome integral_audit() {
    Outcome o;
    auto grid = default_integral_grid(1);
    check(o, grid.size() >= 100, "grid has " + std::to_string(grid.size()) + " points");
    AuditReport base = audit_appendix_integrals(grid, 1e-8);
    check(o, base.all_finite, "non-finite ratio");
    AuditReport refined = audit_appendix_integrals(grid, 1e-10);
    double qdrift = max_drift(base, refined);
    check(o, qdrift <= 1e-6, "quadrature drift " + fmt(qdrift) + " > 1e-6");
    AuditReport dense = audit_appendix_integrals(default_integral_grid(2), 1e-8);
    check(o, dense.all_finite, "non-finite ratio on dense grid");
    double gdrift = max_drift(base, dense);
    check(o, gdrift <= 0.05, "densification drift " + fmt(gdrift) + " > 5%");
    if (o.pass)
        o.detail = std::to_string(grid.size()) + " points, quadrature drift " + fmt(qdrift) +
                   ", 2x-densification drift " + fmt(gdrift);
    return o;
}

Outcome lemma_audits() {
    Outcome o;
    LemmaAuditConfig lc;
    lc.probes = 32;
    // the kernel applications are node quadratures, so the comparison across
    // J is meaningful only when the kernel width sqrt(4 nu tau) exceeds the
    // coarsest node spacing below y = 1 + mu at the base J; these parameters
    // satisfy that while keeping mu < mu_tilde < mu0 - gamma sqrt(s)
    lc.weights.nu = 0.25;
    lc.weights.gamma = 0.5;
    lc.t = 1.2e-2;
    lc.s = 3e-3;
    AuditReport k64 = audit_kernel_lemmas(lc);
    check(o, k64.all_finite, "kernel audit not finite");
    lc.J = 128;
    AuditReport k128 = audit_kernel_lemmas(lc);
    check(o, k128.all_finite, "kernel audit not finite at doubled J");
    double kdrift = max_drift(k64, k128);
    check(o, kdrift <= 0.05, "kernel-audit drift " + fmt(kdrift) + " > 5%");

    WeightParams p;
    auto probe_report = [&](int J) {
        auto g = std::make_shared<const Grid>(make_grid(4, J, 4.0, 3.0, p.nu));
        return audit_nonlinear_estimates(probe_field(g, 20240801), p, p.t_star() / 2.0);
    };
    AuditReport n64 = probe_report(64);
    AuditReport n128 = probe_report(128);
    check(o, n64.all_finite && n128.all_finite, "advection audit not finite");
    double ndrift = max_drift(n64, n128);
    check(o, ndrift <= 0.05, "advection-audit drift " + fmt(ndrift) + " > 5%");
    if (o.pass)
        o.detail = "32 probes; kernel drift " + fmt(kdrift) + ", advection drift " + fmt(ndrift) +
                   " under doubled J";
    return o;
}

Outcome io_determinism() {
    Outcome o;
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "blgl_acceptance_io";
    fs::create_directories(dir);

    RunConfig cfg;
    cfg.K = 4;
    cfg.J = 96;
    cfg.dt = 2e-4;
    cfg.T_end = 2e-3;
    cfg.datum.A = 1.0;

    auto run_bytes = [&](const fs::path& snap) {
        Trajectory traj = evolve(cfg);
        std::string csv;
        for (const Sample& s : traj.samples)
            csv += csv_row({fmt_double(s.t), fmt_double(s.norms.triple),
                            fmt_double(s.omega.sup_abs())});
        const Sample& last = traj.samples.back();
        write_snapshot(snap.string(), last.omega, last.t);
        std::ifstream in(snap, std::ios::binary);
        std::stringstream ss;
        ss << in.rdbuf();
        return std::pair<std::string, std::string>(csv, ss.str());
    };
    auto [csv_a, snap_a] = run_bytes(dir / "a.blgl");
    auto [csv_b, snap_b] = run_bytes(dir / "b.blgl");
    check(o, csv_a == csv_b, "repeated runs produced different CSVs");
    check(o, snap_a == snap_b, "repeated runs produced different snapshots");

    auto [field, t] = read_snapshot((dir / "a.blgl").string());
    bool exact = t == evolve(cfg).samples.back().t;
    Trajectory ref = evolve(cfg);
    const SpectralField& orig = ref.samples.back().omega;
    for (size_t i = 0; i < orig.raw().size(); ++i)
        exact = exact && field.raw()[i] == orig.raw()[i];
    check(o, exact, "snapshot round trip not bit-exact");

    std::error_code ec;
    fs::remove_all(dir, ec);
    if (o.pass) o.detail = "CSV and snapshot bytes identical across reruns; round trip bit-exact";
    return o;
}

}  // namespace

int main() {
    struct Criterion {
        std::string name;
        double budget_s;
        std::function<Outcome()> run;
    };

    // the viscosity sweep feeds four criteria; run it once
    SweepResult sweep;
    std::string sweep_error;
    double sweep_secs = 0.0;
    {
        auto t0 = std::chrono::steady_clock::now();
        try {
            sweep = run_sweep(FullConfig{});
        } catch (const Error& e) {
            sweep_error = e.what();
        }
        sweep_secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    }
    auto sweep_guard = [&](std::function<Outcome(const SweepResult&)> f) {
        return [&, f]() {
            if (!sweep_error.empty()) return Outcome{false, "sweep failed: " + sweep_error};
            return f(sweep);
        };
    };

    std::vector<Criterion> criteria = {
        {"weight property suite", 1.0, weight_properties},
        {"heat kernel identities", 10.0, heat_kernel_identities},
        {"residual kernel envelope bound", 300.0, residual_bound},
        {"backend equivalence", 300.0, backend_equivalence},
        {"wall amplitude and layer width scaling", 1800.0,
         sweep_guard(amplitude_and_width_scaling)},
        {"formation time trend", 1800.0, sweep_guard(formation_time_trend)},
        {"dissipation and inviscid-limit trend", 1800.0, sweep_guard(dissipation_trend)},
        {"norm boundedness", 1800.0, sweep_guard(norm_boundedness)},
        {"singular integral audit", 120.0, integral_audit},
        {"kernel and advection estimate audits", 600.0, lemma_audits},
        {"io determinism", 600.0, io_determinism},
    };

    int failures = 0;
    for (size_t i = 0; i < criteria.size(); ++i) {
        auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o.pass = false;
            o.detail = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        if (i >= 4 && i <= 7) secs += sweep_secs / 4.0;  // share the one-off sweep cost
        if (secs > criteria[i].budget_s) {
            o.pass = false;
            o.detail += (o.detail.empty() ? "" : "; ") + std::string("over time budget ") +
                        fmt(criteria[i].budget_s) + " s";
        }
        if (!o.pass) ++failures;
        std::printf("[%s] criterion %zu: %s (%s; %.1f s)\n", o.pass ? "PASS" : "FAIL", i + 1,
                    criteria[i].name.c_str(), o.detail.c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
                criteria.size());
    return failures == 0 ? 0 : 1;
}
