#include "triplewell/classical.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace triplewell {

namespace {
constexpr double kPi = std::numbers::pi;
}

double wrap_angle(double phi) {
    phi = std::remainder(phi, 2.0 * kPi);  // now in [-pi, pi]
    if (phi <= -kPi) phi += 2.0 * kPi;
    return phi;
}

double CartesianState::norm2() const {
    return 0.5 * (v[0] * v[0] + v[1] * v[1] + v[2] * v[2] + v[3] * v[3] + v[4] * v[4] + v[5] * v[5]);
}

AngleActionView to_angles(const CartesianState& s) {
    AngleActionView a;
    a.n1 = 0.5 * (s.q1() * s.q1() + s.p1() * s.p1());
    a.n3 = 0.5 * (s.q3() * s.q3() + s.p3() * s.p3());
    double phi1 = std::atan2(s.p1(), s.q1());
    double phi2 = std::atan2(s.p2(), s.q2());
    double phi3 = std::atan2(s.p3(), s.q3());
    a.phi12 = wrap_angle(phi1 - phi2);
    a.phi32 = wrap_angle(phi3 - phi2);
    return a;
}

CartesianState to_cartesian(const AngleActionView& a) {
    double rho2sq = 1.0 - a.n1 - a.n3;
    if (rho2sq < -1e-12) throw std::domain_error("to_cartesian: n1 + n3 > 1");
    rho2sq = std::max(rho2sq, 0.0);
    CartesianState s;
    double r1 = std::sqrt(2.0 * std::max(a.n1, 0.0));
    double r3 = std::sqrt(2.0 * std::max(a.n3, 0.0));
    // gauge phi2 = 0, so phi1 = phi12 and phi3 = phi32
    s.v[0] = r1 * std::cos(a.phi12);
    s.v[1] = r1 * std::sin(a.phi12);
    s.v[2] = std::sqrt(2.0 * rho2sq);
    s.v[3] = 0.0;
    s.v[4] = r3 * std::cos(a.phi32);
    s.v[5] = r3 * std::sin(a.phi32);
    return s;
}

ReducedState to_reduced(const AngleActionView& a) {
    ReducedState r;
    double r1 = std::sqrt(2.0 * std::max(a.n1, 0.0));
    double r3 = std::sqrt(2.0 * std::max(a.n3, 0.0));
    double phi23 = -a.phi32;
    r.q1 = r1 * std::cos(a.phi12);
    r.p1 = r1 * std::sin(a.phi12);
    r.q3 = r3 * std::cos(phi23);
    r.p3 = r3 * std::sin(phi23);
    return r;
}

ReducedState to_reduced(const CartesianState& s) { return to_reduced(to_angles(s)); }

AngleActionView to_angles(const ReducedState& r) {
    AngleActionView a;
    a.n1 = 0.5 * (r.q1 * r.q1 + r.p1 * r.p1);
    a.n3 = 0.5 * (r.q3 * r.q3 + r.p3 * r.p3);
    a.phi12 = wrap_angle(std::atan2(r.p1, r.q1));
    a.phi32 = wrap_angle(-std::atan2(r.p3, r.q3));
    return a;
}

CartesianState to_cartesian(const ReducedState& r) {
    if (r.s() > 2.0 + 1e-12) throw std::domain_error("to_cartesian: rho2^2 < 0");
    return to_cartesian(to_angles(r));
}

CartesianState rotate(const CartesianState& s, double theta) {
    const double c = std::cos(theta), sn = std::sin(theta);
    CartesianState out;
    for (int k = 0; k < 3; ++k) {
        double q = s.v[2 * k], p = s.v[2 * k + 1];
        out.v[2 * k] = q * c - p * sn;
        out.v[2 * k + 1] = p * c + q * sn;
    }
    return out;
}

double energy_cartesian(const CartesianState& s, const ModelParams& params) {
    double r1 = s.q1() * s.q1() + s.p1() * s.p1();
    double r2 = s.q2() * s.q2() + s.p2() * s.p2();
    double r3 = s.q3() * s.q3() + s.p3() * s.p3();
    double a = r1 - r2 + r3;
    return params.U / 4.0 * a * a + params.epsilon / 2.0 * (r3 - r1) +
           params.J / std::sqrt(2.0) *
               (s.q1() * s.q2() + s.p1() * s.p2() + s.q2() * s.q3() + s.p2() * s.p3());
}

double energy_reduced(const ReducedState& r, const ModelParams& params) {
    double s = r.s();
    if (s > 2.0 + 1e-12) throw std::domain_error("energy_reduced: rho2^2 < 0");
    double g2 = std::max(1.0 - s / 2.0, 0.0);
    double sm1 = s - 1.0;
    return params.U * sm1 * sm1 +
           params.epsilon / 2.0 * (r.q3 * r.q3 + r.p3 * r.p3 - r.q1 * r.q1 - r.p1 * r.p1) +
           params.J * (r.q1 + r.q3) * std::sqrt(g2);
}

CartesianState hamilton_rhs(const CartesianState& s, const ModelParams& params) {
    const double u = params.U, e = params.epsilon, j = params.J / std::sqrt(2.0);
    double r1 = s.q1() * s.q1() + s.p1() * s.p1();
    double r2 = s.q2() * s.q2() + s.p2() * s.p2();
    double r3 = s.q3() * s.q3() + s.p3() * s.p3();
    double a = r1 - r2 + r3;
    CartesianState d;
    d.v[0] = u * a * s.p1() - e * s.p1() + j * s.p2();            // Q1dot
    d.v[1] = -u * a * s.q1() + e * s.q1() - j * s.q2();           // P1dot
    d.v[2] = -u * a * s.p2() + j * (s.p1() + s.p3());             // Q2dot
    d.v[3] = u * a * s.q2() - j * (s.q1() + s.q3());              // P2dot
    d.v[4] = u * a * s.p3() + e * s.p3() + j * s.p2();            // Q3dot
    d.v[5] = -u * a * s.q3() - e * s.q3() - j * s.q2();           // P3dot
    return d;
}

double classical_Q(const CartesianState& s) {
    double r1 = s.q1() * s.q1() + s.p1() * s.p1();
    double r3 = s.q3() * s.q3() + s.p3() * s.p3();
    return 0.5 * (r1 + r3) - (s.q1() * s.q3() + s.p1() * s.p3());
}

AngleActionView solve_rho2_zero(const ModelParams& params, double energy) {
    if (params.epsilon == 0.0) {
        if (std::abs(energy - params.U) > 1e-12)
            throw std::domain_error("solve_rho2_zero: at epsilon = 0 the manifold has E = U only");
        return {0.5, 0.5, 0.0, 0.0};
    }
    double delta = (energy - params.U) / params.epsilon;  // = n3 - n1
    if (std::abs(delta) > 1.0 + 1e-12)
        throw std::domain_error("solve_rho2_zero: energy not reachable with rho2 = 0");
    delta = std::clamp(delta, -1.0, 1.0);
    return {(1.0 - delta) / 2.0, (1.0 + delta) / 2.0, 0.0, 0.0};
}

std::vector<AngleActionView> solve_on_section(const ModelParams& params, double energy, double n1,
                                              double phi12, double phi32) {
    if (n1 < 0.0 || n1 > 1.0) throw std::invalid_argument("solve_on_section: n1 outside [0,1]");
    auto f = [&](double n3) {
        return energy_reduced(to_reduced(AngleActionView{n1, n3, phi12, phi32}), params) - energy;
    };
    std::vector<AngleActionView> out;
    const int grid = 512;
    const double n3max = 1.0 - n1;
    double x0 = 0.0, f0 = f(0.0);
    for (int i = 1; i <= grid; ++i) {
        double x1 = n3max * double(i) / grid;
        double f1 = f(x1);
        if (f0 == 0.0) out.push_back({n1, x0, phi12, phi32});
        if (f0 * f1 < 0.0) {
            double a = x0, b = x1;
            while (b - a > 1e-12) {
                double m = 0.5 * (a + b);
                (f(a) * f(m) <= 0.0 ? b : a) = m;
            }
            out.push_back({n1, 0.5 * (a + b), phi12, phi32});
        }
        x0 = x1;
        f0 = f1;
    }
    if (f0 == 0.0) out.push_back({n1, n3max, phi12, phi32});
    return out;
}

std::array<double, 4> energy_reduced_gradient(const ReducedState& r, const ModelParams& params) {
    const double u = params.U, e = params.epsilon, j = params.J;
    double s = r.s();
    double g = std::sqrt(std::max(1.0 - s / 2.0, 0.0));
    double qsum = r.q1 + r.q3;
    double c = 4.0 * u * (s - 1.0);
    double dg = (g > 0.0) ? -j * qsum / (2.0 * g) : 0.0;  // coefficient of x_i in the J term
    return {c * r.q1 - e * r.q1 + j * g + dg * r.q1, c * r.p1 - e * r.p1 + dg * r.p1,
            c * r.q3 + e * r.q3 + j * g + dg * r.q3, c * r.p3 + e * r.p3 + dg * r.p3};
}

namespace {

double grad_norm(const std::array<double, 4>& g) {
    return std::sqrt(g[0] * g[0] + g[1] * g[1] + g[2] * g[2] + g[3] * g[3]);
}

// Hessian by central differences of the analytic gradient.
std::array<double, 16> hessian_fd(const ReducedState& r, const ModelParams& params) {
    std::array<double, 16> h{};
    const double step = 1e-6;
    double x[4] = {r.q1, r.p1, r.q3, r.p3};
    for (int i = 0; i < 4; ++i) {
        double xp[4], xm[4];
        std::copy(x, x + 4, xp);
        std::copy(x, x + 4, xm);
        xp[i] += step;
        xm[i] -= step;
        auto gp = energy_reduced_gradient({xp[0], xp[1], xp[2], xp[3]}, params);
        auto gm = energy_reduced_gradient({xm[0], xm[1], xm[2], xm[3]}, params);
        for (int k = 0; k < 4; ++k) h[i * 4 + k] = (gp[k] - gm[k]) / (2.0 * step);
    }
    // symmetrize
    for (int i = 0; i < 4; ++i)
        for (int k = i + 1; k < 4; ++k) {
            double m = 0.5 * (h[i * 4 + k] + h[k * 4 + i]);
            h[i * 4 + k] = h[k * 4 + i] = m;
        }
    return h;
}

bool solve4(std::array<double, 16> a, std::array<double, 4>& b) {
    lapack_int piv[4];
    lapack_int info =
        LAPACKE_dgesv(LAPACK_ROW_MAJOR, 4, 1, a.data(), 4, piv, b.data(), 1);
    return info == 0;
}

}  // namespace

std::vector<CriticalPoint> find_critical_points(const ModelParams& params, int seeds_per_axis) {
    std::vector<CriticalPoint> found;
    const double phases[2] = {0.0, kPi};
    for (int i1 = 1; i1 <= seeds_per_axis; ++i1) {
        for (int i3 = 1; i3 <= seeds_per_axis; ++i3) {
            double n1 = double(i1) / (seeds_per_axis + 1);
            double n3 = double(i3) / (seeds_per_axis + 1);
            if (n1 + n3 >= 1.0) continue;
            for (double f12 : phases) {
                for (double f32 : phases) {
                    ReducedState r = to_reduced(AngleActionView{n1, n3, f12, f32});
                    bool ok = true;
                    for (int it = 0; it < 60; ++it) {
                        auto g = energy_reduced_gradient(r, params);
                        if (grad_norm(g) <= 1e-12) break;
                        auto h = hessian_fd(r, params);
                        if (!solve4(h, g)) {
                            ok = false;
                            break;
                        }
                        r.q1 -= g[0];
                        r.p1 -= g[1];
                        r.q3 -= g[2];
                        r.p3 -= g[3];
                        if (r.s() >= 2.0 - 1e-9 || !std::isfinite(r.s())) {
                            ok = false;  // left the chart (J term singular on rho2 = 0)
                            break;
                        }
                    }
                    if (!ok) continue;
                    auto g = energy_reduced_gradient(r, params);
                    double gn = grad_norm(g);
                    if (gn > 1e-10) continue;
                    bool dup = false;
                    for (const auto& c : found) {
                        double dq1 = c.reduced.q1 - r.q1, dp1 = c.reduced.p1 - r.p1;
                        double dq3 = c.reduced.q3 - r.q3, dp3 = c.reduced.p3 - r.p3;
                        if (std::sqrt(dq1 * dq1 + dp1 * dp1 + dq3 * dq3 + dp3 * dp3) < 1e-6) {
                            dup = true;
                            break;
                        }
                    }
                    if (dup) continue;
                    CriticalPoint cp;
                    cp.reduced = r;
                    cp.state = to_angles(r);
                    cp.energy = energy_reduced(r, params);
                    cp.gradient_norm = gn;
                    auto h = hessian_fd(r, params);
                    std::array<double, 4> w{};
                    std::array<double, 16> hcopy = h;
                    LAPACKE_dsyevd(LAPACK_ROW_MAJOR, 'N', 'L', 4, hcopy.data(), 4, w.data());
                    int pos = 0, neg = 0;
                    for (double x : w) (x > 0 ? pos : neg)++;
                    cp.signature = {pos, neg};
                    cp.stability = (pos == 4 || neg == 4) ? "stable" : "unstable";
                    found.push_back(cp);
                }
            }
        }
    }
    std::sort(found.begin(), found.end(),
              [](const CriticalPoint& a, const CriticalPoint& b) { return a.energy < b.energy; });
    return found;
}

}  // namespace triplewell
