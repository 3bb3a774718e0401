#include "blgl/audits.hpp"

#include <cmath>
#include <random>

#include "blgl/green.hpp"
#include "blgl/nonlinear.hpp"
#include "blgl/quadrature.hpp"

namespace blgl {

namespace {

void add_entry(AuditReport& rep, const std::string& name, double lhs, double rhs,
               bool vacuous = false) {
    RatioEntry e;
    e.name = name;
    e.lhs = lhs;
    e.rhs = rhs;
    e.vacuous = vacuous || (lhs == 0.0 && rhs == 0.0);
    e.ratio = e.vacuous ? 0.0 : lhs / rhs;
    if (!std::isfinite(e.ratio)) rep.all_finite = false;
    auto it = rep.max_ratio.find(name);
    if (it == rep.max_ratio.end())
        rep.max_ratio[name] = e.ratio;
    else
        it->second = std::max(it->second, e.ratio);
    rep.entries.push_back(std::move(e));
}

}  // namespace

std::vector<AuditPoint> default_integral_grid(int densify) {
    std::vector<double> dmu, frac;
    const int nd = 2 * densify + 1;  // samples of mu0 - mu in [0.02, 0.08]
    for (int i = 0; i < nd; ++i) dmu.push_back(0.02 + 0.06 * i / (nd - 1));
    const int nf = 4 * densify;  // samples of t as a fraction of nu^2/gamma^2
    for (int i = 0; i < nf; ++i) frac.push_back(0.1 + 0.8 * i / (nf - 1));

    std::vector<AuditPoint> pts;
    for (double d : dmu)
        for (double g : {5.0, 10.0, 20.0})
            for (double nu : {1e-2, 1e-3})
                for (double f : frac)
                    for (double a : {0.15, 0.25}) {
                        AuditPoint p;
                        p.mu0 = 0.09;
                        p.mu = p.mu0 - d;
                        p.gamma = g;
                        p.nu = nu;
                        p.t = f * nu * nu / (g * g);
                        p.s = 0.0;
                        p.alpha = a;
                        p.beta = 0.2;
                        // hypothesis: the horizon factor must stay positive
                        if (p.mu0 - p.mu - g * std::sqrt(p.t) > 1e-6) pts.push_back(p);
                    }
    return pts;
}

AuditReport audit_appendix_integrals(const std::vector<AuditPoint>& points, double rel_tol) {
    AuditReport rep;
    for (const AuditPoint& p : points) {
        const double d = p.mu0 - p.mu;
        const double rt = std::sqrt(p.t);
        const double margin = d - p.gamma * rt;
        const bool early = p.t <= p.nu * p.nu / (p.gamma * p.gamma);

        // theta-form of int_0^t f(sqrt(s)) / sqrt(t-s) ds with s = t sin^2(theta)
        auto theta_int = [&](double expo, double spow) {
            return integrate(
                [&](double th) {
                    double sn = std::sin(th);
                    return std::pow(d - p.gamma * rt * sn, -expo) * std::pow(sn, 1.0 + spow);
                },
                0.0, 0.5 * M_PI, rel_tol);
        };
        // int_0^{sqrt(t)} (d - gamma u)^{-expo} u du (u = sqrt(s) form)
        auto u_int = [&](double expo) {
            return integrate([&](double u) { return std::pow(d - p.gamma * u, -expo) * u; },
                             0.0, rt, rel_tol);
        };

        // terms feeding the second-order part of the cumulative estimate
        double lhs = early ? 2.0 * rt / std::sqrt(p.nu) * theta_int(1.0 + p.alpha, 0.0) : 0.0;
        add_entry(rep, "second1", lhs,
                  std::pow(p.gamma, -0.5) * std::pow(margin, -(0.5 + p.alpha)), !early);

        lhs = 2.0 * std::pow(p.t, 0.5 - p.beta) * theta_int(1.0 + p.alpha, -2.0 * p.beta);
        add_entry(rep, "second2", lhs,
                  std::pow(p.gamma, -0.5) / margin * std::pow(p.t, 0.25 - p.beta));

        lhs = early ? u_int(1.5 + p.alpha) / std::sqrt(p.nu) : 0.0;
        add_entry(rep, "second3", lhs,
                  std::pow(p.gamma, -0.5) * std::pow(margin, -(0.5 + p.alpha)), !early);

        lhs = u_int(1.5 + p.alpha);
        add_entry(rep, "second4", lhs,
                  std::pow(p.gamma, -0.5) * std::pow(margin, -(0.5 + p.alpha)));

        // terms feeding the first-order part
        lhs = early ? 2.0 * rt / std::sqrt(p.nu) * theta_int(p.alpha, 0.0) : 0.0;
        add_entry(rep, "first1", lhs, std::pow(p.gamma, 2.0 * p.alpha - 1.0), !early);

        lhs = 2.0 * std::pow(p.t, 0.5 - p.beta) * theta_int(p.alpha, -2.0 * p.beta);
        add_entry(rep, "first2", lhs, std::pow(p.gamma, -p.alpha));

        lhs = early ? 2.0 * u_int(0.5 + p.alpha) / std::sqrt(p.nu) : 0.0;
        add_entry(rep, "first3", lhs, 1.0 / p.gamma, !early);

        lhs = 2.0 * u_int(0.5 + p.alpha);
        add_entry(rep, "first4", lhs, 1.0 / p.gamma);
    }
    return rep;
}

SpectralField probe_field(std::shared_ptr<const Grid> grid, unsigned seed, double amplitude) {
    std::mt19937 rng(seed);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    SpectralField f(grid);
    const Grid& g = *grid;
    for (int xi = 0; xi <= g.K; ++xi) {
        double decay = amplitude / (1.0 + xi * xi);
        double a1 = unif(rng), a2 = unif(rng), b1 = unif(rng), b2 = unif(rng);
        for (int j = 0; j < g.J; ++j) {
            double y = g.nodes[j];
            double env = y * std::exp(-y);  // vanishes at the wall, decays upward
            double re = decay * env * (a1 * std::cos(2.0 * y) + a2 * std::sin(y));
            double im = (xi == 0) ? 0.0 : decay * env * (b1 * std::cos(3.0 * y) + b2);
            f.at(xi, j) = cd{re, im};
        }
    }
    f.enforce_hermitian();
    return f;
}

namespace {

/// Per-mode quadrature application of the exact reflected heat kernel.
SpectralField heat_convolve(const SpectralField& n, double tau, double nu) {
    const Grid& g = n.grid();
    SpectralField out(n.grid_ptr());
    for (int xi = -g.K; xi <= g.K; ++xi) {
        const cd* src = n.mode(xi);
        cd* dst = out.mode(xi);
        for (int j = 0; j < g.J; ++j) {
            cd acc{0.0, 0.0};
            for (int k = 0; k < g.J; ++k)
                acc += heat_kernel(tau, xi, g.nodes[j], g.nodes[k], nu) * src[k] * g.qw[k];
            dst[j] = acc;
        }
    }
    return out;
}

/// Per-mode application of precomputed tables indexed by |xi|.
SpectralField table_convolve(const SpectralField& n, const std::vector<KernelTable>& tabs) {
    const Grid& g = n.grid();
    SpectralField out(n.grid_ptr());
    for (int xi = -g.K; xi <= g.K; ++xi) {
        const KernelTable& tab = tabs[std::abs(xi)];
        const cd* src = n.mode(xi);
        cd* dst = out.mode(xi);
        for (int j = 0; j < g.J; ++j) {
            cd acc{0.0, 0.0};
            for (int k = 0; k < g.J; ++k) acc += tab.at(j, k) * src[k] * g.qw[k];
            dst[j] = acc;
        }
    }
    return out;
}

double plain_l2_tail(const SpectralField& f, int xi, double threshold) {
    const Grid& g = f.grid();
    const cd* row = f.mode(xi);
    double s2 = detail::trapezoid_mod(g, threshold, g.Ly, [&](int j) {
        double v = std::abs(row[j]);
        return v * v;
    });
    return std::sqrt(s2);
}

double sup_tail(const SpectralField& f, int xi, double threshold) {
    const Grid& g = f.grid();
    const cd* row = f.mode(xi);
    double m = 0.0;
    for (int j = 0; j < g.J; ++j)
        if (g.nodes[j] >= threshold) m = std::max(m, std::abs(row[j]));
    return m;
}

}  // namespace

AuditReport audit_kernel_lemmas(const LemmaAuditConfig& cfg) {
    AuditReport rep;
    const WeightParams& p = cfg.weights;
    auto grid =
        std::make_shared<const Grid>(make_grid(cfg.K, cfg.J, cfg.Ly, cfg.stretch, p.nu));
    const Grid& g = *grid;
    const double tau = cfg.t - cfg.s;
    if (!(tau > 0.0)) throw ValidationError("audit_kernel_lemmas: need s < t");
    const double hyp = p.mu0 - cfg.mu - p.gamma * std::sqrt(cfg.s);
    if (!(cfg.mu > 0.0 && cfg.mu < cfg.mu_tilde && cfg.mu_tilde < p.mu0 - p.gamma * std::sqrt(cfg.s)))
        throw ValidationError("audit_kernel_lemmas: mu, mu_tilde violate the hypothesis window");

    // kernel tables per |xi|, shared across probes
    std::vector<KernelTable> green_tau, resid_tau, green_t;
    for (int xi = 0; xi <= g.K; ++xi) {
        green_tau.push_back(green_numeric(tau, xi, p.nu, g, cfg.kernel_steps));
        resid_tau.push_back(residual_kernel(green_tau.back()));
        green_t.push_back(green_numeric(cfg.t, xi, p.nu, g, cfg.kernel_steps));
    }

    const bool early = cfg.t <= p.nu * p.nu / (p.gamma * p.gamma);
    const double ind = early ? 1.0 / std::sqrt(p.nu) : 0.0;

    for (int pr = 0; pr < cfg.probes; ++pr) {
        SpectralField n = probe_field(grid, cfg.seed + 1000u * pr);

        // scaled gradient of the smooth-kernel application
        {
            SpectralField conv = heat_convolve(n, tau, p.nu);
            double lhs = x_mu_norm(y_d_y(conv), cfg.mu, cfg.t, p);
            double tail = 0.0;
            SpectralField dn = d_y(n, 1);
            for (int xi = -g.K; xi <= g.K; ++xi)
                tail += plain_l2_tail(dn, xi, 1.0 + cfg.mu_tilde);
            double rhs = x_mu_norm(n, cfg.mu_tilde, cfg.s, p) +
                         x_mu_norm(y_d_y(n), cfg.mu_tilde, cfg.s, p) + tail / std::sqrt(hyp);
            add_entry(rep, "heat_scaled_gradient", lhs, rhs);
        }

        // residual-kernel application, first-order derivative family
        {
            SpectralField conv = table_convolve(n, resid_tau);
            SpectralField convs[3] = {conv, d_x(conv, 1), y_d_y(conv)};
            SpectralField ns[3] = {n, d_x(n, 1), y_d_y(n)};
            SpectralField nflat[3] = {n, d_x(n, 1), d_y(n, 1)};
            double worst = 0.0, wl = 0.0, wr = 1.0;
            for (int k = 0; k < 3; ++k) {
                double lhs = x_mu_norm(convs[k], cfg.mu, cfg.t, p);
                double tail = 0.0;
                for (int xi = -g.K; xi <= g.K; ++xi)
                    tail += plain_l2_tail(nflat[k], xi, 1.0 + cfg.mu_tilde);
                double rhs = x_mu_norm(ns[k], cfg.mu_tilde, cfg.s, p) +
                             x_mu_norm(n, cfg.mu_tilde, cfg.s, p) + tail / std::sqrt(hyp);
                if (rhs > 0.0 && lhs / rhs > worst) {
                    worst = lhs / rhs;
                    wl = lhs;
                    wr = rhs;
                }
            }
            add_entry(rep, "residual_application", wl, wr);
        }

        // wall-trace application of the boundary datum
        {
            std::vector<cd> b = boundary_datum_quadrature(n);
            SpectralField gb(grid);
            for (int xi = -g.K; xi <= g.K; ++xi) {
                const KernelTable& tab = green_tau[std::abs(xi)];
                cd bv = b[g.mode_index(xi)];
                cd* dst = gb.mode(xi);
                for (int j = 0; j < g.J; ++j) dst[j] = tab.at(j, 0) * bv;
            }
            double sing = (ind + std::pow(cfg.s, -p.beta)) / std::sqrt(tau);
            SpectralField lhs_fields[3] = {gb, d_x(gb, 1), y_d_y(gb)};
            int ix[3] = {0, 1, 0};
            double worst = 0.0, wl = 0.0, wr = 1.0;
            for (int k = 0; k < 3; ++k) {
                SpectralField dn = d_x(n, ix[k]);
                double lhs = x_mu_norm(lhs_fields[k], cfg.mu, cfg.t, p);
                double rhs = sing * (y_mu_norm(dn, cfg.mu, p) + s_mu_norm(dn, cfg.mu)) +
                             (1.0 + ind) * x_mu_norm(dn, cfg.mu, cfg.s, p);
                if (rhs > 0.0 && lhs / rhs > worst) {
                    worst = lhs / rhs;
                    wl = lhs;
                    wr = rhs;
                }
            }
            add_entry(rep, "boundary_trace", wl, wr);
        }

        // full-kernel propagation of initial data, second-order family
        {
            SpectralField conv = table_convolve(n, green_t);
            auto dl = detail::mixed_scaled_derivs(conv);
            auto dr = detail::mixed_scaled_derivs(n);
            double lhs = 0.0, rhs = 0.0;
            for (const auto& [ij, f] : dl) lhs += x_mu_norm(f, cfg.mu, cfg.t, p);
            for (const auto& [ij, f] : dr) rhs += x_mu_norm(f, cfg.mu, cfg.t, p);
            std::vector<SpectralField> dys;
            dys.push_back(n);
            dys.push_back(d_y(n, 1));
            dys.push_back(d_y(dys.back(), 1));
            for (int i = 0; i <= 2; ++i)
                for (int j = 0; i + j <= 2; ++j) {
                    SpectralField f = d_x(dys[j], i);
                    for (int xi = -g.K; xi <= g.K; ++xi)
                        rhs += sup_tail(f, xi, 1.0 + cfg.mu);
                }
            add_entry(rep, "initial_data", lhs, rhs);
        }
    }
    return rep;
}

AuditReport audit_nonlinear_estimates(const SpectralField& omega, const WeightParams& p,
                                      double t) {
    AuditReport rep;
    const double mu = 0.5 * p.mu0;
    if (!(mu < p.mu0 - p.gamma * t))
        throw ValidationError("audit_nonlinear_estimates: t too large for mu = mu0/2");
    SpectralField n = nonlinear_term(omega);

    auto xm = [&](const SpectralField& f) { return x_mu_norm(f, mu, t, p); };
    auto ym = [&](const SpectralField& f) { return y_mu_norm(f, mu, p); };
    auto sm = [&](const SpectralField& f) { return s_mu_norm(f, mu); };

    auto derivs_n = detail::mixed_scaled_derivs(n);
    auto derivs_w = detail::mixed_scaled_derivs(omega);

    auto sum_family = [&](auto& derivs, auto&& norm, int max_order) {
        double s = 0.0;
        for (const auto& [ij, f] : derivs)
            if (ij.first + ij.second <= max_order) s += norm(f);
        return s;
    };

    // velocity factors: sums of Y + S norms of tangential derivatives
    double ys1 = 0.0, ys2 = 0.0;
    for (int i = 0; i <= 2; ++i) {
        SpectralField f = d_x(omega, i);
        double v = ym(f) + sm(f);
        if (i <= 1) ys1 += v;
        ys2 += v;
    }
    double first_x = xm(derivs_w[{1, 0}]) + xm(derivs_w[{0, 1}]);
    double first_y = ym(derivs_w[{1, 0}]) + ym(derivs_w[{0, 1}]);

    {  // weighted-sup product bound
        double lhs = sum_family(derivs_n, xm, 1);
        double rhs = ys1 * sum_family(derivs_w, xm, 2) + ys2 * sum_family(derivs_w, xm, 1) +
                     xm(omega) * first_x;
        add_entry(rep, "product_sup", lhs, rhs);
    }
    {  // integral product bound
        double lhs = sum_family(derivs_n, ym, 1);
        double rhs = ys1 * sum_family(derivs_w, ym, 2) + ys2 * sum_family(derivs_w, ym, 1) +
                     xm(omega) * first_y;
        add_entry(rep, "product_l1", lhs, rhs);
    }
    {  // far-field tail product bound
        SpectralField dyn = d_y(n, 1);
        double lhs = sm(n) + sm(d_x(n, 1)) + sm(dyn);
        double tail = 0.0;
        std::vector<SpectralField> dys;
        dys.push_back(omega);
        for (int j = 1; j <= 3; ++j) dys.push_back(d_y(dys.back(), 1));
        for (int i = 0; i <= 3; ++i)
            for (int j = 0; i + j <= 3; ++j) tail += s_norm(d_x(dys[j], i), 0.5);
        double rhs = triple_norm(omega, t, p).triple * tail;
        add_entry(rep, "product_tail", lhs, rhs);
    }
    return rep;
}

}  // namespace blgl
