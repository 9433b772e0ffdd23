#pragma once

#include "triplewell/classical.hpp"

namespace triplewell {

/// Adaptive Taylor-series integrator for the Cartesian-chart flow.
/// The right-hand side is polynomial, so the Taylor coefficients are built
/// exactly by series recurrences; internal arithmetic is long double.
struct IntegratorOptions {
    double abs_tol = 1e-14;
    int order = 24;
    double max_step = 1.0;
    double min_step = 1e-10;
};

/// Integrate to t_final, sampling at multiples of sample_dt (dense output).
/// sample_dt <= 0 records only the endpoints. Drift fields are tracked at
/// every accepted step, not just at the samples.
Trajectory integrate(const CartesianState& s0, const ModelParams& params, double t_final,
                     double sample_dt, const IntegratorOptions& opts = {});

/// Advance a state by exactly dt (used for section-crossing refinement).
CartesianState advance(const CartesianState& s, const ModelParams& params, double dt,
                       const IntegratorOptions& opts = {});

}  // namespace triplewell
