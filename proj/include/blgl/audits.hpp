#pragma once

#include <map>
#include <string>
#include <vector>

#include "blgl/norms.hpp"
#include "blgl/spectral_field.hpp"
#include "blgl/weights.hpp"

namespace blgl {

/// Parameter tuple for one inequality evaluation.
struct AuditPoint {
    double mu0 = 0.09;
    double mu = 0.04;
    double mu_tilde = 0.0;
    double gamma = 10.0;
    double nu = 1e-2;
    double t = 0.0;
    double s = 0.0;
    double alpha = 0.25;
    double beta = 0.2;
    double c = 2.0;
};

struct RatioEntry {
    std::string name;
    double lhs = 0.0;
    double rhs = 0.0;
    double ratio = 0.0;
    bool vacuous = false;  ///< both sides zero (or indicator inactive)
};

struct AuditReport {
    std::vector<RatioEntry> entries;
    std::map<std::string, double> max_ratio;  ///< per inequality, over all entries
    bool all_finite = true;
};

/// Hypothesis-respecting parameter grid for the singular-integral audit;
/// densify >= 1 multiplies the sampling density along mu and t.
std::vector<AuditPoint> default_integral_grid(int densify = 1);

/// Evaluate the eight singular time integrals against their claimed bounds.
/// The sqrt(t-s) endpoint singularity is removed by the substitution
/// s = t sin^2(theta) before adaptive quadrature.
AuditReport audit_appendix_integrals(const std::vector<AuditPoint>& points,
                                     double rel_tol = 1e-8);

struct LemmaAuditConfig {
    int K = 4;
    int J = 64;
    double Ly = 4.0;
    double stretch = 3.0;
    WeightParams weights;   ///< nu, gamma, etc.
    double t = 1.6e-5;      ///< evaluation time of the kernel application
    double s = 4e-6;        ///< source time, s < t
    double mu = 0.01;
    double mu_tilde = 0.04; ///< must satisfy mu < mu_tilde < mu0 - gamma sqrt(s)
    int probes = 32;
    unsigned seed = 20240801;
    int kernel_steps = 64;
};

/// Empirical constants for the four kernel-application inequalities, measured
/// on seeded random band-limited probes.
AuditReport audit_kernel_lemmas(const LemmaAuditConfig& cfg);

/// Empirical constants for the three advection-source product inequalities,
/// evaluated on one state at mu = mu0/2.
AuditReport audit_nonlinear_estimates(const SpectralField& omega, const WeightParams& p,
                                      double t);

/// Seeded smooth band-limited probe used by the lemma audits.
SpectralField probe_field(std::shared_ptr<const Grid> grid, unsigned seed, double amplitude = 1.0);

}  // namespace blgl
