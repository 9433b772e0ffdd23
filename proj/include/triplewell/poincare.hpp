#pragma once

#include <vector>

#include "triplewell/classical.hpp"
#include "triplewell/integrator.hpp"

namespace triplewell {

enum class DirectionFilter { Both, Positive, Negative };

struct SectionEvent {
    double t = 0.0;
    double n1 = 0.0;
    double n3 = 0.0;
    double phi12 = 0.0;
    int direction = 0;  // sign of d(phi32)/dt at the crossing
    int seed_id = 0;
};

struct SectionResult {
    std::vector<SectionEvent> events;
    std::size_t dropped_ill_conditioned = 0;  // intervals near rho2 = 0 or rho3 = 0
};

/// Crossings of the surface phi32 = phi_section, refined by re-integrating the
/// bracketing sample interval (bisection to 1e-9 in phi32).
SectionResult section(const Trajectory& traj, const ModelParams& params, double phi_section,
                      DirectionFilter filter = DirectionFilter::Both);

/// Seeds initial conditions on the section at energy E over a uniform
/// (n1, phi12) grid (all energy roots per node), integrates each to t_short,
/// and accumulates the events of every trajectory.
SectionResult ensemble_section(const ModelParams& params, double energy, int count, double t_short,
                               double phi_section, double sample_dt = 0.01);

struct VisitationHistogram {
    int bins = 0;
    std::vector<double> counts;  // bins x bins, row-major in (i1, i3)
    std::size_t total = 0;

    double& at(int i1, int i3) { return counts[std::size_t(i1) * bins + i3]; }
    double at(int i1, int i3) const { return counts[std::size_t(i1) * bins + i3]; }
    void merge(const VisitationHistogram& other);
};

/// Residence-time histogram of trajectory samples on the (N1/N, N3/N) plane.
VisitationHistogram visitation(const Trajectory& traj, int bins);
VisitationHistogram visitation_of_events(const std::vector<SectionEvent>& events, int bins);

}  // namespace triplewell
