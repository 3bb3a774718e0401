// Timing comparison between the OpenMP-parallel kernels and the serial
// reference path, with a cross-check that both produce identical results.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <functional>
#include <memory>
#include <string>

#include "blgl/green.hpp"
#include "blgl/nonlinear.hpp"
#include "blgl/norms.hpp"
#include "blgl/parallel.hpp"
#include "test_util.hpp"

using namespace blgl;

namespace {

double time_of(const std::function<void()>& fn, int reps) {
    fn();  // warm up
    auto t0 = std::chrono::steady_clock::now();
    for (int r = 0; r < reps; ++r) fn();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count() / reps;
}

void report(const char* name, double serial_s, double parallel_s, double max_diff) {
    std::printf("%-28s serial %8.3f ms   parallel %8.3f ms   speedup %5.2fx   max diff %g\n",
                name, serial_s * 1e3, parallel_s * 1e3, serial_s / parallel_s, max_diff);
}

}  // namespace

int main() {
    std::printf("workers available: %d\n", worker_count());

    {
        auto g = std::make_shared<const Grid>(make_grid(1, 256, 4.0, 4.0, 1e-3));
        const double t = 1e-3, nu = 1e-2;
        KernelTable gp = green_numeric(t, 1, nu, *g, 128, true);
        KernelTable gs = green_numeric(t, 1, nu, *g, 128, false);
        double diff = 0.0;
        for (size_t i = 0; i < gp.G.size(); ++i) diff = std::max(diff, std::abs(gp.G[i] - gs.G[i]));
        double ts = time_of([&] { green_numeric(t, 1, nu, *g, 128, false); }, 3);
        double tp = time_of([&] { green_numeric(t, 1, nu, *g, 128, true); }, 3);
        report("full kernel table", ts, tp, diff);

        KernelTable rp = residual_direct(t, 1, nu, *g, 256, true);
        KernelTable rs = residual_direct(t, 1, nu, *g, 256, false);
        diff = 0.0;
        for (size_t i = 0; i < rp.G.size(); ++i) diff = std::max(diff, std::abs(rp.G[i] - rs.G[i]));
        ts = time_of([&] { residual_direct(t, 1, nu, *g, 256, false); }, 3);
        tp = time_of([&] { residual_direct(t, 1, nu, *g, 256, true); }, 3);
        report("residual kernel table", ts, tp, diff);
    }

    {
        // the remaining hot paths select the serial reference via BLGL_WORKERS=1
        auto g = std::make_shared<const Grid>(make_grid(32, 512, 4.0, 3.0, 1e-3));
        SpectralField f = testutil::random_field(g, 11);

        setenv("BLGL_WORKERS", "1", 1);
        SpectralField ns = nonlinear_term(f);
        double ts = time_of([&] { nonlinear_term(f); }, 3);
        double ns_norm = time_of([&] { triple_norm(f, 1e-5, WeightParams{}); }, 3);
        NormReport rs = triple_norm(f, 1e-5, WeightParams{});

        unsetenv("BLGL_WORKERS");
        SpectralField np = nonlinear_term(f);
        double tp = time_of([&] { nonlinear_term(f); }, 3);
        double np_norm = time_of([&] { triple_norm(f, 1e-5, WeightParams{}); }, 3);
        NormReport rp = triple_norm(f, 1e-5, WeightParams{});

        report("advection source", ts, tp, sup_diff(ns, np));
        report("norm evaluation", ns_norm, np_norm, std::abs(rs.triple - rp.triple));
    }
    return 0;
}
