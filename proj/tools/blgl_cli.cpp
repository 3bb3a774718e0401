// Command-line driver: single runs, viscosity sweeps, inequality audits, and
// norm evaluation on stored snapshots. All diagnostics go to standard error;
// data products are CSV files (or stdout for snapshot queries).
#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "blgl/audits.hpp"
#include "blgl/csv.hpp"
#include "blgl/snapshot.hpp"
#include "blgl/sweep.hpp"

namespace {

using namespace blgl;

std::string out_path(const FullConfig& c, const std::string& stem) {
    return (std::filesystem::path(c.output.dir) / (c.output.prefix + "_" + stem)).string();
}

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw FormatError("cannot open output file " + path);
    out << text;
}

int cmd_simulate(const std::string& config_path) {
    FullConfig c = load_config_file(config_path);
    Trajectory traj = evolve(c.run);
    std::string csv = csv_row({"t", "X", "Y", "Z", "triple", "x_vacuous", "y_vacuous"});
    for (const Sample& s : traj.samples) {
        csv += csv_row({fmt_double(s.t), fmt_double(s.norms.X), fmt_double(s.norms.Y),
                        fmt_double(s.norms.Z), fmt_double(s.norms.triple),
                        s.norms.x_vacuous ? "1" : "0", s.norms.y_vacuous ? "1" : "0"});
    }
    write_file(out_path(c, "norms.csv"), csv);
    if (!traj.samples.empty()) {
        const Sample& last = traj.samples.back();
        write_snapshot(out_path(c, "final.blgl"), last.omega, last.t);
    }
    std::cerr << "simulate: " << traj.samples.size() << " samples written\n";
    return 0;
}

int cmd_sweep(const std::string& config_path) {
    FullConfig c = load_config_file(config_path);
    SweepResult result = run_sweep(c);
    write_file(out_path(c, "sweep.csv"), sweep_csv(result));

    std::string summary;
    auto line = [&](const std::string& name, double e, double r2, bool valid) {
        if (valid)
            summary += name + " exponent = " + fmt_double(e) + "  (r^2 = " + fmt_double(r2) + ")\n";
        else {
            summary += name + " exponent: fit degenerate (too few usable points)\n";
            std::cerr << "warning: " << name << " fit degenerate\n";
        }
    };
    line("wall amplitude", result.amp_exponent, result.amp_r2, result.amp_fit_valid);
    line("layer width", result.width_exponent, result.width_r2, result.width_fit_valid);
    line("formation time", result.tform_exponent, result.tform_r2, result.tform_fit_valid);
    write_file(out_path(c, "exponents.txt"), summary);
    std::cout << summary;
    return 0;
}

std::string audit_csv(const AuditReport& report) {
    std::string out = csv_row({"name", "lhs", "rhs", "ratio", "vacuous"});
    for (const RatioEntry& e : report.entries)
        out += csv_row({e.name, fmt_double(e.lhs), fmt_double(e.rhs), fmt_double(e.ratio),
                        e.vacuous ? "1" : "0"});
    out += csv_row({"", "", "", "", ""});
    for (const auto& [name, r] : report.max_ratio)
        out += csv_row({"max:" + name, "", "", fmt_double(r), ""});
    return out;
}

int cmd_audit(const std::string& kind, const std::string& config_path) {
    FullConfig c = load_config_file(config_path);
    AuditReport report;
    if (kind == "integrals") {
        report = audit_appendix_integrals(default_integral_grid(c.audit.densify), c.audit.rel_tol);
    } else if (kind == "kernels") {
        LemmaAuditConfig lc;
        lc.K = c.audit.K;
        lc.J = c.audit.J;
        lc.weights = c.run.weights;
        lc.probes = c.audit.probes;
        lc.seed = c.audit.seed;
        report = audit_kernel_lemmas(lc);
    } else if (kind == "nonlinear") {
        auto grid = std::make_shared<const Grid>(
            make_grid(c.audit.K, c.audit.J, c.run.Ly, c.run.stretch, c.run.weights.nu));
        SpectralField probe = probe_field(grid, c.audit.seed);
        report = audit_nonlinear_estimates(probe, c.run.weights, c.run.weights.t_star() / 2.0);
    } else {
        throw ValidationError("audit kind must be kernels, integrals, or nonlinear");
    }
    write_file(out_path(c, "audit_" + kind + ".csv"), audit_csv(report));
    for (const auto& [name, r] : report.max_ratio)
        std::cerr << "audit " << kind << ": max ratio " << name << " = " << r << "\n";
    if (!report.all_finite) throw NumericalInstability("audit produced a non-finite ratio");
    return 0;
}

int cmd_norms(const std::string& snapshot_path, double t, bool t_given) {
    auto [field, stored_t] = read_snapshot(snapshot_path);
    double eval_t = t_given ? t : stored_t;
    WeightParams p;
    NormReport r = triple_norm(field, eval_t, p);
    std::cout << csv_row({"t", "X", "Y", "Z", "triple", "x_vacuous", "y_vacuous"});
    std::cout << csv_row({fmt_double(eval_t), fmt_double(r.X), fmt_double(r.Y), fmt_double(r.Z),
                          fmt_double(r.triple), r.x_vacuous ? "1" : "0",
                          r.y_vacuous ? "1" : "0"});
    return 0;
}

int cmd_euler_compare(const std::string& config_path) {
    FullConfig c = load_config_file(config_path);
    RunConfig ns = c.run;
    Trajectory traj_ns = evolve(ns);
    RunConfig eu = c.run;
    eu.backend = Backend::euler;
    eu.monitor_norms = false;
    Trajectory traj_eu = evolve(eu);
    auto dist = euler_distance(traj_ns, traj_eu);
    std::string csv = csv_row({"t", "l2_distance"});
    double sup = 0.0;
    for (const auto& [t, d] : dist) {
        csv += csv_row({fmt_double(t), fmt_double(d)});
        sup = std::max(sup, d);
    }
    write_file(out_path(c, "euler_distance.csv"), csv);
    std::cerr << "euler-compare: sup distance = " << sup << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"boundary-layer growth laboratory"};
    app.require_subcommand(1);

    std::string config_path, snapshot_path, audit_kind;
    double norm_t = 0.0;

    auto* simulate = app.add_subcommand("simulate", "one run; emits norm CSV and a snapshot");
    simulate->add_option("config", config_path, "config file")->required();

    auto* sweep = app.add_subcommand("sweep", "viscosity sweep with exponent fits");
    sweep->add_option("config", config_path, "config file")->required();

    auto* audit = app.add_subcommand("audit", "inequality audits");
    audit->add_option("kind", audit_kind, "kernels | integrals | nonlinear")->required();
    audit->add_option("config", config_path, "config file")->required();

    auto* norms = app.add_subcommand("norms", "evaluate the norms on a stored snapshot");
    norms->add_option("snapshot", snapshot_path, "snapshot file")->required();
    auto* topt = norms->add_option("--t", norm_t, "evaluation time (default: stored time)");

    auto* ec = app.add_subcommand("euler-compare", "viscous run vs matched inviscid run");
    ec->add_option("config", config_path, "config file")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? 0 : 1;
    }

    try {
        if (simulate->parsed()) return cmd_simulate(config_path);
        if (sweep->parsed()) return cmd_sweep(config_path);
        if (audit->parsed()) return cmd_audit(audit_kind, config_path);
        if (norms->parsed()) return cmd_norms(snapshot_path, norm_t, topt->count() > 0);
        if (ec->parsed()) return cmd_euler_compare(config_path);
    } catch (const ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const InvalidGrid& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const HorizonExceeded& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const GridMismatch& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const FormatError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const VersionError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const TruncationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const Error& e) {
        // remaining domain errors are numerical failures
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
