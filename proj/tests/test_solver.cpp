#include <cmath>

#include "blgl/analysis.hpp"
#include "blgl/green.hpp"
#include "blgl/nonlinear.hpp"
#include "blgl/solver.hpp"
#include "doctest.h"
#include "test_util.hpp"

using namespace blgl;

namespace {

SpectralField gaussian_mode(std::shared_ptr<const Grid> g, int xi, double y0, double s0,
                            double amp = 1.0) {
    SpectralField f(g);
    for (int j = 0; j < g->J; ++j) {
        double y = g->nodes[j];
        f.at(xi, j) = cd{amp * std::exp(-0.5 * (y - y0) * (y - y0) / (s0 * s0)), 0.0};
    }
    f.enforce_hermitian();
    return f;
}

double enstrophy(const SpectralField& f) {
    const Grid& g = f.grid();
    double e = 0.0;
    for (int xi = -g.K; xi <= g.K; ++xi)
        for (int j = 0; j < g.J; ++j) e += std::norm(f.at(xi, j)) * g.qw[j];
    return e;
}

}  // namespace

TEST_CASE("advection source: trivial cases and direct convolution oracle") {
    auto g = testutil::shared_grid(3, 128, 4.0, 3.0, 1e-2);

    SpectralField zero(g);
    CHECK(nonlinear_term(zero).sup_abs() == 0.0);

    // x-independent flow: u2 = 0 and d_x omega = 0
    SpectralField shear = shear_field(g, 0, 2.0);
    CHECK(nonlinear_term(shear).sup_abs() < 1e-12);

    // two carrier modes +-1: the product lands on modes 0 and +-2 only, and a
    // hand-rolled convolution over {xi1 + xi2 = xi} is the oracle
    SpectralField omega(g);
    for (int j = 0; j < g->J; ++j) {
        double y = g->nodes[j];
        omega.at(1, j) = cd{y * std::exp(-y), 0.5 * std::exp(-0.5 * (y - 1.2) * (y - 1.2) / 0.09)};
    }
    omega.enforce_hermitian();

    VelocityPair u = velocity_from_vorticity(omega);
    SpectralField dyo = d_y(omega, 1);
    auto conv = [&](int xi) {
        std::vector<cd> out(g->J, cd{0.0, 0.0});
        for (int x1 : {-1, 1}) {
            int x2 = xi - x1;
            if (x2 < -1 || x2 > 1 || x2 == 0) continue;
            for (int j = 0; j < g->J; ++j) {
                cd dxo = cd{0.0, static_cast<double>(x2)} * omega.at(x2, j);
                out[j] -= u.u1.at(x1, j) * dxo + u.u2.at(x1, j) * dyo.at(x2, j);
            }
        }
        return out;
    };

    for (bool dealias : {true, false}) {
        SpectralField n = nonlinear_term(omega, dealias);
        double scale = n.sup_abs();
        CHECK(scale > 0.0);
        for (int xi : {0, 2, -2}) {
            auto want = conv(xi);
            for (int j = 0; j < g->J; ++j)
                CHECK(std::abs(n.at(xi, j) - want[j]) <= 1e-10 * scale);
        }
        // no combination of +-1 sums to +-1 or +-3
        for (int j = 0; j < g->J; ++j) {
            CHECK(std::abs(n.at(1, j)) <= 1e-12 * scale);
            CHECK(std::abs(n.at(3, j)) <= 1e-12 * scale);
        }
    }
}

TEST_CASE("wall datum: closed-form oracle and path equivalence") {
    auto g = testutil::shared_grid(4, 384, 4.0, 3.0, 1e-2);

    SpectralField zero(g);
    for (cd b : boundary_datum_from_source(zero)) CHECK(std::abs(b) == 0.0);

    // N_1(z) = e^{-z}: B_1 = int_0^inf e^{-z} e^{-z} dz = 1/2
    SpectralField n(g);
    for (int j = 0; j < g->J; ++j) n.at(1, j) = cd{std::exp(-g->nodes[j]), 0.0};
    n.enforce_hermitian();
    auto bq = boundary_datum_quadrature(n);
    auto bs = boundary_datum_from_source(n);
    CHECK(bq[g->mode_index(1)].real() == doctest::Approx(0.5).epsilon(1e-3));
    CHECK(bs[g->mode_index(1)].real() == doctest::Approx(0.5).epsilon(1e-3));

    // the two computation paths agree mode by mode on random smooth data
    SpectralField r = testutil::random_field(g, 7);
    auto b1 = boundary_datum_from_source(r);
    auto b2 = boundary_datum_quadrature(r);
    for (int xi = -g->K; xi <= g->K; ++xi) {
        int i = g->mode_index(xi);
        CHECK(std::abs(b1[i] - b2[i]) <= 1e-4 * std::max(std::abs(b2[i]), 1e-10));
    }
}

TEST_CASE("implicit-explicit step: trivial state and stability guards") {
    auto g = testutil::shared_grid(2, 96, 4.0, 3.0, 1e-2);
    WeightParams p;

    SpectralField zero(g);
    SpectralField stepped = step_imex(zero, 1e-4, p);
    CHECK(stepped.sup_abs() == 0.0);

    SpectralField vortex = testutil::bulk_vortex(g, 8.0, 1, 1.0, 0.15);
    CHECK_THROWS_AS(step_imex(vortex, 1.0, p), CFLViolation);

    SpectralField next = step_imex(vortex, 1e-5, p);
    CHECK(next.finite());
    CHECK(next.hermitian_defect() < 1e-12);
}

TEST_CASE("implicit-explicit step reproduces linear diffusion of a shear profile") {
    // only the xi = 0 mode: the advection source and wall datum vanish, so the
    // step is pure Neumann diffusion of the profile, with a Gaussian closed form
    auto g = testutil::shared_grid(2, 256, 4.0, 4.0, 1e-2);
    WeightParams p;
    p.nu = 1e-2;
    const double y0 = 1.5, s0 = 0.2, T = 1e-2, dt = 1e-4;

    SpectralField w = gaussian_mode(g, 0, y0, s0);
    int steps = static_cast<int>(std::round(T / dt));
    for (int s = 0; s < steps; ++s) w = step_imex(w, dt, p);

    double var = s0 * s0 + 2.0 * p.nu * T;
    double amp = s0 / std::sqrt(var);
    double sup = 0.0, err = 0.0;
    for (int j = 0; j < g->J; ++j) {
        double y = g->nodes[j];
        double want = amp * (std::exp(-0.5 * (y - y0) * (y - y0) / var) +
                             std::exp(-0.5 * (y + y0) * (y + y0) / var));
        sup = std::max(sup, std::abs(want));
        err = std::max(err, std::abs(w.at(0, j).real() - want));
    }
    CHECK(err <= 1e-4 * sup);
}

TEST_CASE("single carrier mode decays under the tangential damping factor") {
    // modes +-2 alone source only 0 and +-4, so mode 2 itself evolves linearly
    auto g = testutil::shared_grid(4, 192, 4.0, 3.0, 1e-2);
    WeightParams p;
    p.nu = 1e-2;
    const double y0 = 2.0, s0 = 0.4, T = 0.05, dt = 5e-4;

    SpectralField w = gaussian_mode(g, 2, y0, s0, 0.3);
    int steps = static_cast<int>(std::round(T / dt));
    for (int s = 0; s < steps; ++s) w = step_imex(w, dt, p);

    int jc = 0;
    for (int j = 0; j < g->J; ++j)
        if (std::abs(g->nodes[j] - y0) < std::abs(g->nodes[jc] - y0)) jc = j;
    double var = s0 * s0 + 2.0 * p.nu * T;
    double want = 0.3 * std::exp(-p.nu * 4.0 * T) * (s0 / std::sqrt(var)) *
                  std::exp(-0.5 * (g->nodes[jc] - y0) * (g->nodes[jc] - y0) / var);
    CHECK(w.at(2, jc).real() == doctest::Approx(want).epsilon(2e-3));
    CHECK(std::abs(w.at(2, jc).imag()) <= 1e-10);
}

TEST_CASE("evolution driver: trajectory invariants and config guards") {
    RunConfig cfg;
    cfg.K = 4;
    cfg.J = 96;
    cfg.dt = 1e-4;
    cfg.datum.A = 1.0;
    Trajectory traj = evolve(cfg);
    CHECK(traj.samples.size() >= 2);
    CHECK(traj.config_hash == cfg.hash());
    for (size_t i = 0; i < traj.samples.size(); ++i) {
        const Sample& s = traj.samples[i];
        CHECK(s.omega.finite());
        CHECK(s.omega.hermitian_defect() < 1e-11);
        double scale = s.u.u1.sup_abs() + s.u.u2.sup_abs();
        CHECK(divergence_sup(s.u) <= 1e-8 * scale);
        if (i > 0) CHECK(s.t > traj.samples[i - 1].t);
    }

    RunConfig zero = cfg;
    zero.datum.A = 0.0;
    Trajectory zt = evolve(zero);
    for (const Sample& s : zt.samples) CHECK(s.omega.sup_abs() == 0.0);

    RunConfig bad = cfg;
    bad.T_end = 0.005;  // past mu0/(2 gamma) = 0.0045 with monitoring on
    CHECK_THROWS_AS(evolve(bad), HorizonExceeded);
    bad.T_end = cfg.T_end;
    bad.datum.sigma = 0.5;  // support reaches the wall
    CHECK_THROWS_AS(evolve(bad), ValidationError);
}

TEST_CASE("mild-solution backend matches the stepping backend") {
    RunConfig cfg;
    cfg.K = 4;
    cfg.J = 96;
    cfg.weights.nu = 1e-2;
    cfg.dt = 2e-4;
    cfg.T_end = 4e-3;
    cfg.datum.A = 1.0;
    cfg.output_every = 5;
    cfg.monitor_norms = false;

    // linear instance: shear datum keeps N = 0 and B = 0
    RunConfig lin = cfg;
    lin.datum.kind = InitialDatum::Kind::shear;
    Trajectory li = evolve_imex(lin);
    Trajectory ld = evolve_duhamel(lin);
    REQUIRE(li.samples.size() == ld.samples.size());
    for (size_t i = 0; i < li.samples.size(); ++i) {
        double scale = std::max(li.samples[i].omega.sup_abs(), 1e-12);
        CHECK(sup_diff(li.samples[i].omega, ld.samples[i].omega) <= 1e-3 * scale);
    }

    // full nonlinear instance
    Trajectory ni = evolve_imex(cfg);
    Trajectory nd = evolve_duhamel(cfg);
    REQUIRE(ni.samples.size() == nd.samples.size());
    for (size_t i = 0; i < ni.samples.size(); ++i) {
        CHECK(ni.samples[i].t == doctest::Approx(nd.samples[i].t).epsilon(1e-12));
        double scale = std::max(ni.samples[i].omega.sup_abs(), 1e-12);
        CHECK(sup_diff(ni.samples[i].omega, nd.samples[i].omega) <= 1e-3 * scale);
    }
}

TEST_CASE("inviscid reference evolution") {
    RunConfig cfg;
    cfg.backend = Backend::euler;
    cfg.K = 8;
    cfg.J = 128;
    cfg.dt = 2.5e-4;
    cfg.T_end = 0.004;
    cfg.datum.A = 1.0;
    cfg.monitor_norms = false;

    // shear datum is exactly steady (N = 0 and no diffusion)
    RunConfig sh = cfg;
    sh.datum.kind = InitialDatum::Kind::shear;
    Trajectory st = evolve(sh);
    double scale = st.samples.front().omega.sup_abs();
    CHECK(sup_diff(st.samples.front().omega, st.samples.back().omega) <= 1e-10 * scale);

    // transport conserves enstrophy up to truncation
    Trajectory tr = evolve(cfg);
    double e0 = enstrophy(tr.samples.front().omega);
    double eT = enstrophy(tr.samples.back().omega);
    CHECK(std::abs(eT - e0) <= 1e-3 * e0);

    // finite propagation speed: material below the vortex tail stays as small
    // as the initial tail, up to the transport distance c T
    double c = max_speed(tr.samples.front().u);
    const double ycut = 0.3;
    double edge = ycut - c * cfg.T_end;
    REQUIRE(edge > 0.0);
    const Grid& g = tr.samples.back().omega.grid();
    double below0 = 0.0, belowT = 0.0;
    for (int xi = -g.K; xi <= g.K; ++xi)
        for (int j = 0; j < g.J; ++j) {
            if (g.nodes[j] < ycut)
                below0 = std::max(below0, std::abs(tr.samples.front().omega.at(xi, j)));
            if (g.nodes[j] < edge)
                belowT = std::max(belowT, std::abs(tr.samples.back().omega.at(xi, j)));
        }
    CHECK(below0 <= 1e-4 * tr.samples.front().omega.sup_abs());
    CHECK(belowT <= below0 + 1e-8);

    RunConfig fast = cfg;
    fast.dt = 0.004;
    CHECK_THROWS_AS(evolve(fast), CFLViolation);
}
