#pragma once

#include <string>

#include "blgl/analysis.hpp"
#include "blgl/config.hpp"

namespace blgl {

struct SweepResult {
    std::vector<SweepRecord> records;  ///< sorted by nu, descending
    double amp_exponent = 0.0;         ///< slope of log max wall amp vs log nu
    double amp_r2 = 0.0;
    bool amp_fit_valid = false;
    double width_exponent = 0.0;  ///< slope of log width-at-onset vs log nu
    double width_r2 = 0.0;
    bool width_fit_valid = false;
    double tform_exponent = 0.0;  ///< slope of log formation time vs log nu
    double tform_r2 = 0.0;
    bool tform_fit_valid = false;  ///< false when too few runs reach the threshold
};

/// One viscosity of the sweep: a monitored run plus a matched inviscid run.
SweepRecord sweep_one(const SweepSpec& spec, const WeightParams& base_weights, double nu);

/// Full viscosity sweep with the cross-viscosity power-law fits.
SweepResult run_sweep(const FullConfig& config);

/// One row per viscosity; the fitted exponents are global and repeated.
std::string sweep_csv(const SweepResult& result);

}  // namespace blgl
