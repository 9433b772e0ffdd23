#pragma once

#include <array>
#include <string>
#include <vector>

#include "triplewell/spectra.hpp"

namespace triplewell {

/// Six-variable canonical chart: (Q1, P1, Q2, P2, Q3, P3), Qk = sqrt(2) rho_k cos(phi_k).
struct CartesianState {
    std::array<double, 6> v{};  // Q1 P1 Q2 P2 Q3 P3

    double q1() const { return v[0]; }
    double p1() const { return v[1]; }
    double q2() const { return v[2]; }
    double p2() const { return v[3]; }
    double q3() const { return v[4]; }
    double p3() const { return v[5]; }

    /// rho1^2 + rho2^2 + rho3^2; equals 1 on the constraint manifold.
    double norm2() const;
};

/// Reduced four-variable chart: q1 = sqrt(2) rho1 cos(phi12), etc. (phi23 for well 3).
struct ReducedState {
    double q1 = 0, p1 = 0, q3 = 0, p3 = 0;

    double s() const { return q1 * q1 + p1 * p1 + q3 * q3 + p3 * p3; }  // = 2(rho1^2+rho3^2)
};

/// Populations and relative phases; phases wrapped to (-pi, pi].
struct AngleActionView {
    double n1 = 0;      // N1/N
    double n3 = 0;      // N3/N
    double phi12 = 0;   // phi1 - phi2
    double phi32 = 0;   // phi3 - phi2
};

struct Trajectory {
    std::vector<double> times;
    std::vector<CartesianState> samples;
    double energy_drift = 0.0;  // max |E(t)-E(0)| / |E(0)|
    double norm_drift = 0.0;    // max |norm2(t) - norm2(0)|
    double q_drift = 0.0;       // max |Q(t)-Q(0)| (meaningful at epsilon = 0)
};

struct CriticalPoint {
    AngleActionView state;
    ReducedState reduced;
    double energy = 0.0;
    std::string stability;           // "stable" or "unstable"
    std::array<int, 2> signature{};  // (# positive, # negative) Hessian eigenvalues
    double gradient_norm = 0.0;
};

double wrap_angle(double phi);  // into (-pi, pi]

// Chart conversions. to_cartesian fixes the overall-phase gauge phi2 = 0.
ReducedState to_reduced(const CartesianState& s);
CartesianState to_cartesian(const ReducedState& s);
CartesianState to_cartesian(const AngleActionView& s);
AngleActionView to_angles(const CartesianState& s);
AngleActionView to_angles(const ReducedState& s);
ReducedState to_reduced(const AngleActionView& s);

/// Common phase rotation phi_k -> phi_k + theta in all three (Q_k, P_k) planes.
CartesianState rotate(const CartesianState& s, double theta);

double energy_cartesian(const CartesianState& s, const ModelParams& params);
double energy_reduced(const ReducedState& s, const ModelParams& params);

/// Hamilton's equations (Qdot, Pdot) = (dH/dP, -dH/dQ) in the Cartesian chart.
CartesianState hamilton_rhs(const CartesianState& s, const ModelParams& params);

/// Classical conserved quantity rho1^2 + rho3^2 - 2 rho1 rho3 cos(phi32 - phi12).
double classical_Q(const CartesianState& s);

/// The unique rho2 = 0 population pair at the given energy (phases are free there).
AngleActionView solve_rho2_zero(const ModelParams& params, double energy);

/// All n3 with energy_reduced(n1, n3, phi12, phi32) = energy, on [0, 1-n1].
std::vector<AngleActionView> solve_on_section(const ModelParams& params, double energy, double n1,
                                              double phi12, double phi32);

std::vector<CriticalPoint> find_critical_points(const ModelParams& params, int seeds_per_axis = 8);

// Reduced-chart gradient of the energy, used by the critical-point search.
std::array<double, 4> energy_reduced_gradient(const ReducedState& s, const ModelParams& params);

}  // namespace triplewell
