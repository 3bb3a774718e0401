#include "blgl/config.hpp"

#include <charconv>
#include <fstream>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "blgl/csv.hpp"
#include "blgl/errors.hpp"

namespace blgl {

namespace {

std::string trim(const std::string& s) {
    size_t a = s.find_first_not_of(" \t\r");
    if (a == std::string::npos) return "";
    size_t b = s.find_last_not_of(" \t\r");
    return s.substr(a, b - a + 1);
}

[[noreturn]] void fail(int line, int col, const std::string& msg) {
    throw ParseError("config line " + std::to_string(line) + ", column " + std::to_string(col) +
                     ": " + msg);
}

double to_double(const std::string& v, int line) {
    try {
        size_t pos = 0;
        double d = std::stod(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        fail(line, 1, "expected a number, got '" + v + "'");
    }
}

long to_int(const std::string& v, int line) {
    try {
        size_t pos = 0;
        long d = std::stol(v, &pos);
        if (pos != v.size()) throw std::invalid_argument("trailing");
        return d;
    } catch (const std::exception&) {
        fail(line, 1, "expected an integer, got '" + v + "'");
    }
}

bool to_bool(const std::string& v, int line) {
    if (v == "on" || v == "true" || v == "1") return true;
    if (v == "off" || v == "false" || v == "0") return false;
    fail(line, 1, "expected on/off, got '" + v + "'");
}

std::vector<double> to_list(const std::string& v, int line) {
    std::vector<double> out;
    std::stringstream ss(v);
    std::string item;
    while (std::getline(ss, item, ',')) {
        item = trim(item);
        if (!item.empty()) out.push_back(to_double(item, line));
    }
    if (out.empty()) fail(line, 1, "expected a comma-separated list of numbers");
    return out;
}

}  // namespace

FullConfig parse_config(const std::string& text) {
    FullConfig c;
    // setter table: section -> key -> assignment
    using Setter = std::function<void(const std::string&, int)>;
    std::map<std::string, std::map<std::string, Setter>> table;

    auto& grid = table["grid"];
    grid["K"] = [&](const std::string& v, int l) { c.run.K = static_cast<int>(to_int(v, l)); };
    grid["J"] = [&](const std::string& v, int l) { c.run.J = static_cast<int>(to_int(v, l)); };
    grid["Ly"] = [&](const std::string& v, int l) { c.run.Ly = to_double(v, l); };
    grid["stretch"] = [&](const std::string& v, int l) { c.run.stretch = to_double(v, l); };

    auto& weights = table["weights"];
    weights["nu"] = [&](const std::string& v, int l) { c.run.weights.nu = to_double(v, l); };
    weights["gamma"] = [&](const std::string& v, int l) { c.run.weights.gamma = to_double(v, l); };
    weights["beta"] = [&](const std::string& v, int l) { c.run.weights.beta = to_double(v, l); };
    weights["eps0"] = [&](const std::string& v, int l) { c.run.weights.eps0 = to_double(v, l); };
    weights["mu0"] = [&](const std::string& v, int l) { c.run.weights.mu0 = to_double(v, l); };
    weights["alpha"] = [&](const std::string& v, int l) { c.run.weights.alpha = to_double(v, l); };
    weights["n"] = [&](const std::string& v, int l) {
        c.run.weights.n = static_cast<int>(to_int(v, l));
    };

    auto& solver = table["solver"];
    solver["backend"] = [&](const std::string& v, int l) {
        if (v == "imex")
            c.run.backend = Backend::imex;
        else if (v == "duhamel")
            c.run.backend = Backend::duhamel;
        else if (v == "euler")
            c.run.backend = Backend::euler;
        else
            fail(l, 1, "backend must be imex, duhamel, or euler");
    };
    solver["dt"] = [&](const std::string& v, int l) { c.run.dt = to_double(v, l); };
    solver["T_end"] = [&](const std::string& v, int l) { c.run.T_end = to_double(v, l); };
    solver["datum"] = [&](const std::string& v, int l) {
        if (v == "bulk_vortex")
            c.run.datum.kind = InitialDatum::Kind::bulk_vortex;
        else if (v == "shear")
            c.run.datum.kind = InitialDatum::Kind::shear;
        else if (v == "custom")
            c.run.datum.kind = InitialDatum::Kind::custom;
        else
            fail(l, 1, "datum must be bulk_vortex, shear, or custom");
    };
    solver["amplitude"] = [&](const std::string& v, int l) { c.run.datum.A = to_double(v, l); };
    solver["xi0"] = [&](const std::string& v, int l) {
        c.run.datum.xi0 = static_cast<int>(to_int(v, l));
    };
    solver["y0"] = [&](const std::string& v, int l) { c.run.datum.y0 = to_double(v, l); };
    solver["sigma"] = [&](const std::string& v, int l) { c.run.datum.sigma = to_double(v, l); };
    solver["shear_profile"] = [&](const std::string& v, int l) {
        c.run.datum.shear_profile = static_cast<int>(to_int(v, l));
    };
    solver["snapshot"] = [&](const std::string& v, int) { c.run.datum.snapshot_path = v; };
    solver["dealias"] = [&](const std::string& v, int l) { c.run.dealias = to_bool(v, l); };
    solver["picard_iters"] = [&](const std::string& v, int l) {
        c.run.picard_iters = static_cast<int>(to_int(v, l));
    };
    solver["output_every"] = [&](const std::string& v, int l) {
        c.run.output_every = static_cast<int>(to_int(v, l));
    };
    solver["monitor_norms"] = [&](const std::string& v, int l) {
        c.run.monitor_norms = to_bool(v, l);
    };

    auto& sweep = table["sweep"];
    sweep["nu_values"] = [&](const std::string& v, int l) { c.sweep.nu_values = to_list(v, l); };
    sweep["K"] = [&](const std::string& v, int l) { c.sweep.K = static_cast<int>(to_int(v, l)); };
    sweep["J"] = [&](const std::string& v, int l) { c.sweep.J = static_cast<int>(to_int(v, l)); };
    sweep["Ly"] = [&](const std::string& v, int l) { c.sweep.Ly = to_double(v, l); };
    sweep["stretch"] = [&](const std::string& v, int l) { c.sweep.stretch = to_double(v, l); };
    sweep["dt"] = [&](const std::string& v, int l) { c.sweep.dt = to_double(v, l); };
    sweep["T_end"] = [&](const std::string& v, int l) { c.sweep.T_end = to_double(v, l); };
    sweep["amplitude"] = [&](const std::string& v, int l) { c.sweep.amplitude = to_double(v, l); };
    sweep["threshold"] = [&](const std::string& v, int l) { c.sweep.threshold = to_double(v, l); };
    sweep["output_every"] = [&](const std::string& v, int l) {
        c.sweep.output_every = static_cast<int>(to_int(v, l));
    };
    sweep["parallel"] = [&](const std::string& v, int l) { c.sweep.parallel = to_bool(v, l); };

    auto& audit = table["audit"];
    audit["probes"] = [&](const std::string& v, int l) {
        c.audit.probes = static_cast<int>(to_int(v, l));
    };
    audit["seed"] = [&](const std::string& v, int l) {
        c.audit.seed = static_cast<unsigned>(to_int(v, l));
    };
    audit["K"] = [&](const std::string& v, int l) { c.audit.K = static_cast<int>(to_int(v, l)); };
    audit["J"] = [&](const std::string& v, int l) { c.audit.J = static_cast<int>(to_int(v, l)); };
    audit["densify"] = [&](const std::string& v, int l) {
        c.audit.densify = static_cast<int>(to_int(v, l));
    };
    audit["rel_tol"] = [&](const std::string& v, int l) { c.audit.rel_tol = to_double(v, l); };

    auto& output = table["output"];
    output["dir"] = [&](const std::string& v, int) { c.output.dir = v; };
    output["prefix"] = [&](const std::string& v, int) { c.output.prefix = v; };

    std::istringstream in(text);
    std::string raw;
    std::string section;
    std::set<std::pair<std::string, std::string>> seen;
    int lineno = 0;
    while (std::getline(in, raw)) {
        ++lineno;
        std::string line = raw;
        size_t hash = line.find_first_of("#;");
        if (hash != std::string::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        if (line.front() == '[') {
            if (line.back() != ']') fail(lineno, static_cast<int>(line.size()), "unclosed section header");
            section = trim(line.substr(1, line.size() - 2));
            if (!table.count(section)) fail(lineno, 1, "unknown section [" + section + "]");
            continue;
        }
        size_t eq = line.find('=');
        if (eq == std::string::npos) fail(lineno, 1, "expected key = value");
        std::string key = trim(line.substr(0, eq));
        std::string value = trim(line.substr(eq + 1));
        if (section.empty()) fail(lineno, 1, "key outside any section");
        auto& keys = table[section];
        auto it = keys.find(key);
        if (it == keys.end()) fail(lineno, 1, "unknown key '" + key + "' in [" + section + "]");
        if (!seen.insert({section, key}).second)
            fail(lineno, 1, "duplicate key '" + key + "' in [" + section + "]");
        it->second(value, lineno);
    }

    c.run.weights.validate();
    if (c.run.K < 1 || c.run.J < 16) throw ValidationError("grid: K >= 1 and J >= 16 required");
    if (!(c.run.dt > 0.0)) throw ValidationError("solver: dt must be > 0");
    for (double nu : c.sweep.nu_values)
        if (!(nu > 0.0)) throw ValidationError("sweep: nu_values must be positive");
    if (c.audit.probes < 1) throw ValidationError("audit: probes must be >= 1");
    if (c.audit.densify < 1) throw ValidationError("audit: densify must be >= 1");
    return c;
}

std::string render_config(const FullConfig& c) {
    std::ostringstream out;
    auto d = fmt_double;
    out << "[grid]\n";
    out << "K = " << c.run.K << "\n";
    out << "J = " << c.run.J << "\n";
    out << "Ly = " << d(c.run.Ly) << "\n";
    out << "stretch = " << d(c.run.stretch) << "\n";
    out << "\n[weights]\n";
    out << "nu = " << d(c.run.weights.nu) << "\n";
    out << "gamma = " << d(c.run.weights.gamma) << "\n";
    out << "beta = " << d(c.run.weights.beta) << "\n";
    out << "eps0 = " << d(c.run.weights.eps0) << "\n";
    out << "mu0 = " << d(c.run.weights.mu0) << "\n";
    out << "alpha = " << d(c.run.weights.alpha) << "\n";
    out << "n = " << c.run.weights.n << "\n";
    out << "\n[solver]\n";
    out << "backend = "
        << (c.run.backend == Backend::imex ? "imex"
                                           : c.run.backend == Backend::duhamel ? "duhamel"
                                                                               : "euler")
        << "\n";
    out << "dt = " << d(c.run.dt) << "\n";
    out << "T_end = " << d(c.run.T_end) << "\n";
    out << "datum = "
        << (c.run.datum.kind == InitialDatum::Kind::bulk_vortex
                ? "bulk_vortex"
                : c.run.datum.kind == InitialDatum::Kind::shear ? "shear" : "custom")
        << "\n";
    out << "amplitude = " << d(c.run.datum.A) << "\n";
    out << "xi0 = " << c.run.datum.xi0 << "\n";
    out << "y0 = " << d(c.run.datum.y0) << "\n";
    out << "sigma = " << d(c.run.datum.sigma) << "\n";
    out << "shear_profile = " << c.run.datum.shear_profile << "\n";
    if (!c.run.datum.snapshot_path.empty())
        out << "snapshot = " << c.run.datum.snapshot_path << "\n";
    out << "dealias = " << (c.run.dealias ? "on" : "off") << "\n";
    out << "picard_iters = " << c.run.picard_iters << "\n";
    out << "output_every = " << c.run.output_every << "\n";
    out << "monitor_norms = " << (c.run.monitor_norms ? "on" : "off") << "\n";
    out << "\n[sweep]\n";
    out << "nu_values = ";
    for (size_t i = 0; i < c.sweep.nu_values.size(); ++i) {
        if (i) out << ", ";
        out << d(c.sweep.nu_values[i]);
    }
    out << "\n";
    out << "K = " << c.sweep.K << "\n";
    out << "J = " << c.sweep.J << "\n";
    out << "Ly = " << d(c.sweep.Ly) << "\n";
    out << "stretch = " << d(c.sweep.stretch) << "\n";
    out << "dt = " << d(c.sweep.dt) << "\n";
    out << "T_end = " << d(c.sweep.T_end) << "\n";
    out << "amplitude = " << d(c.sweep.amplitude) << "\n";
    out << "threshold = " << d(c.sweep.threshold) << "\n";
    out << "output_every = " << c.sweep.output_every << "\n";
    out << "parallel = " << (c.sweep.parallel ? "on" : "off") << "\n";
    out << "\n[audit]\n";
    out << "probes = " << c.audit.probes << "\n";
    out << "seed = " << c.audit.seed << "\n";
    out << "K = " << c.audit.K << "\n";
    out << "J = " << c.audit.J << "\n";
    out << "densify = " << c.audit.densify << "\n";
    out << "rel_tol = " << d(c.audit.rel_tol) << "\n";
    out << "\n[output]\n";
    out << "dir = " << c.output.dir << "\n";
    out << "prefix = " << c.output.prefix << "\n";
    return out.str();
}

FullConfig load_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open config file " + path);
    std::stringstream buf;
    buf << in.rdbuf();
    return parse_config(buf.str());
}

}  // namespace blgl
