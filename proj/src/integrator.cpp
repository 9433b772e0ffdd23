#include "triplewell/integrator.hpp"

#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace triplewell {

namespace {

constexpr int kMaxOrder = 40;

struct Jet {
    // coefficient m of variable i at c[i][m]
    long double c[6][kMaxOrder + 1];
};

long double conv(const long double* x, const long double* y, int k) {
    long double s = 0.0L;
    for (int j = 0; j <= k; ++j) s += x[j] * y[k - j];
    return s;
}

// Taylor coefficients of the solution through y, orders 0..order.
void build_jet(const long double y[6], const ModelParams& params, int order, Jet& jet) {
    const long double u = params.U;
    const long double e = params.epsilon;
    const long double j = params.J / std::sqrt(2.0L);
    long double a[kMaxOrder + 1];

    for (int i = 0; i < 6; ++i) jet.c[i][0] = y[i];
    auto* q1 = jet.c[0];
    auto* p1 = jet.c[1];
    auto* q2 = jet.c[2];
    auto* p2 = jet.c[3];
    auto* q3 = jet.c[4];
    auto* p3 = jet.c[5];

    for (int k = 0; k < order; ++k) {
        a[k] = conv(q1, q1, k) + conv(p1, p1, k) - conv(q2, q2, k) - conv(p2, p2, k) +
               conv(q3, q3, k) + conv(p3, p3, k);
        long double ap1 = conv(a, p1, k), aq1 = conv(a, q1, k);
        long double ap2 = conv(a, p2, k), aq2 = conv(a, q2, k);
        long double ap3 = conv(a, p3, k), aq3 = conv(a, q3, k);
        long double f[6] = {
            u * ap1 - e * p1[k] + j * p2[k],         // Q1'
            -u * aq1 + e * q1[k] - j * q2[k],        // P1'
            -u * ap2 + j * (p1[k] + p3[k]),          // Q2'
            u * aq2 - j * (q1[k] + q3[k]),           // P2'
            u * ap3 + e * p3[k] + j * p2[k],         // Q3'
            -u * aq3 - e * q3[k] - j * q2[k],        // P3'
        };
        for (int i = 0; i < 6; ++i) jet.c[i][k + 1] = f[i] / (k + 1);
    }
}

long double order_norm(const Jet& jet, int m) {
    long double mx = 0.0L;
    for (int i = 0; i < 6; ++i) mx = std::max(mx, std::abs(jet.c[i][m]));
    return mx;
}

// Step size from the magnitudes of the last two Taylor coefficients.
long double choose_step(const Jet& jet, int order, const IntegratorOptions& opts) {
    const long double tol = opts.abs_tol;
    long double h = opts.max_step;
    for (int m : {order - 1, order}) {
        long double nm = order_norm(jet, m);
        if (nm > 0.0L) h = std::min(h, std::pow(tol / nm, 1.0L / m));
    }
    return 0.9L * h;
}

void eval_jet(const Jet& jet, int order, long double h, long double out[6]) {
    for (int i = 0; i < 6; ++i) {
        long double s = jet.c[i][order];
        for (int m = order - 1; m >= 0; --m) s = s * h + jet.c[i][m];
        out[i] = s;
    }
}

long double energy_ld(const long double y[6], const ModelParams& params) {
    long double r1 = y[0] * y[0] + y[1] * y[1];
    long double r2 = y[2] * y[2] + y[3] * y[3];
    long double r3 = y[4] * y[4] + y[5] * y[5];
    long double a = r1 - r2 + r3;
    return (long double)params.U / 4.0L * a * a + (long double)params.epsilon / 2.0L * (r3 - r1) +
           (long double)params.J / std::sqrt(2.0L) * (y[0] * y[2] + y[1] * y[3] + y[2] * y[4] + y[3] * y[5]);
}

long double norm2_ld(const long double y[6]) {
    long double s = 0.0L;
    for (int i = 0; i < 6; ++i) s += y[i] * y[i];
    return 0.5L * s;
}

long double q_ld(const long double y[6]) {
    long double r1 = y[0] * y[0] + y[1] * y[1];
    long double r3 = y[4] * y[4] + y[5] * y[5];
    return 0.5L * (r1 + r3) - (y[0] * y[4] + y[1] * y[5]);
}

CartesianState to_state(const long double y[6]) {
    CartesianState s;
    for (int i = 0; i < 6; ++i) s.v[i] = double(y[i]);
    return s;
}

void check_finite(const long double y[6], double t) {
    for (int i = 0; i < 6; ++i)
        if (!std::isfinite(double(y[i])))
            throw std::runtime_error("integrate: NaN/Inf at t = " + std::to_string(t));
}

}  // namespace

Trajectory integrate(const CartesianState& s0, const ModelParams& params, double t_final,
                     double sample_dt, const IntegratorOptions& opts) {
    if (t_final < 0.0) throw std::invalid_argument("integrate: t_final must be >= 0");
    int order = std::min(std::max(opts.order, 4), kMaxOrder);

    long double y[6];
    for (int i = 0; i < 6; ++i) y[i] = s0.v[i];

    Trajectory traj;
    traj.times.push_back(0.0);
    traj.samples.push_back(s0);

    const long double e0 = energy_ld(y, params);
    const long double n0 = norm2_ld(y);
    const long double q0 = q_ld(y);
    long double ed = 0.0L, nd = 0.0L, qd = 0.0L;

    if (t_final == 0.0) return traj;

    long double t = 0.0L;
    long double next_sample = sample_dt > 0.0 ? sample_dt : t_final;
    Jet jet;
    while (t < t_final) {
        build_jet(y, params, order, jet);
        long double h = choose_step(jet, order, opts);
        if (h < opts.min_step)
            throw std::runtime_error("integrate: step size underflow at t = " +
                                     std::to_string(double(t)));
        bool last = false;
        if (t + h >= t_final) {
            h = (long double)t_final - t;
            last = true;
        }
        // dense output at sample times interior to this step
        while (next_sample <= t + h + 1e-12L * t_final && next_sample <= t_final) {
            long double ys[6];
            eval_jet(jet, order, next_sample - t, ys);
            traj.times.push_back(double(next_sample));
            traj.samples.push_back(to_state(ys));
            next_sample += sample_dt > 0.0 ? (long double)sample_dt : (long double)t_final;
            if (sample_dt <= 0.0) break;
        }
        long double ynew[6];
        eval_jet(jet, order, h, ynew);
        for (int i = 0; i < 6; ++i) y[i] = ynew[i];
        t = last ? (long double)t_final : t + h;
        check_finite(y, double(t));
        ed = std::max(ed, std::abs(energy_ld(y, params) - e0));
        nd = std::max(nd, std::abs(norm2_ld(y) - n0));
        qd = std::max(qd, std::abs(q_ld(y) - q0));
    }
    if (traj.times.back() < t_final) {
        traj.times.push_back(t_final);
        traj.samples.push_back(to_state(y));
    }
    traj.energy_drift = double(ed / std::max(std::abs(e0), 1e-300L));
    traj.norm_drift = double(nd);
    traj.q_drift = double(qd);
    return traj;
}

CartesianState advance(const CartesianState& s, const ModelParams& params, double dt,
                       const IntegratorOptions& opts) {
    if (dt < 0.0) throw std::invalid_argument("advance: dt must be >= 0");
    int order = std::min(std::max(opts.order, 4), kMaxOrder);
    long double y[6];
    for (int i = 0; i < 6; ++i) y[i] = s.v[i];
    long double t = 0.0L;
    Jet jet;
    while (t < dt) {
        build_jet(y, params, order, jet);
        long double h = choose_step(jet, order, opts);
        if (h < opts.min_step)
            throw std::runtime_error("advance: step size underflow");
        bool last = false;
        if (t + h >= dt) {
            h = (long double)dt - t;
            last = true;
        }
        long double ynew[6];
        eval_jet(jet, order, h, ynew);
        for (int i = 0; i < 6; ++i) y[i] = ynew[i];
        t = last ? (long double)dt : t + h;
        check_finite(y, double(t));
    }
    return to_state(y);
}

}  // namespace triplewell
