#pragma once

#include <complex>
#include <cstddef>
#include <vector>

#include "triplewell/spectra.hpp"

namespace triplewell {

/// Probability mass on the (n1, n3) lattice, n1 + n3 <= N, stored in
/// FockBasis order (one value per lattice point).
struct ProbabilityGrid {
    int N = 0;
    std::vector<double> values;

    static std::size_t index_of(int N, int n1, int n3) {
        std::size_t i1 = std::size_t(N - n1);
        return i1 * (i1 + 1) / 2 + std::size_t(n3);
    }
    double at(int n1, int n3) const { return values[index_of(N, n1, n3)]; }
    double& at(int n1, int n3) { return values[index_of(N, n1, n3)]; }
    double sum() const;
    /// Lattice point of the largest value.
    std::pair<int, int> argmax() const;
};

/// Parameters of a projected coherent state |N1, N3, phi12, phi32>.
struct CoherentSpec {
    double n1 = 0;  // N1/N
    double n3 = 0;  // N3/N
    double phi12 = 0;
    double phi32 = 0;
};

/// Squared eigenvector components arranged on the (n1, n3) lattice.
ProbabilityGrid fock_projection(const EigenSystem& es, std::size_t k);

/// |<E_k | spec>|^2 for the projected coherent state.
double coherent_overlap(const EigenSystem& es, const CoherentSpec& spec, std::size_t k);

/// Phase-integrated Husimi projection via the exact multinomial-smoothing
/// identity: value(N1,N3) = sum_n P(n; N1/N, N2/N, N3/N) * fock_projection(n).
ProbabilityGrid husimi_projection_closed(const EigenSystem& es, std::size_t k);

struct QuadratureGrid {
    ProbabilityGrid grid;
    int phase_points = 0;
    bool underresolved = false;  // phase_points < 2N+2
};

/// Double trapezoid quadrature of |<E|N1,N3,phi12,phi32>|^2 over both phases.
/// phase_offset shifts the quadrature nodes (the integrand is 2pi-periodic).
QuadratureGrid husimi_projection_quadrature(const EigenSystem& es, std::size_t k, int phase_points,
                                            double phase_offset = 0.0);

struct MicrocanonicalResult {
    ProbabilityGrid grid;
    std::vector<std::size_t> indices;
    double e_min = 0.0;  // actual E/N bounds of the window
    double e_max = 0.0;
};

/// Unweighted mean of fock_projection grids over eigenstates selected by an
/// energy window of full width delta_e around center (E/N units).
MicrocanonicalResult microcanonical_average(const EigenSystem& es, double center, double delta_e);
/// Same, selecting the `count` eigenstates nearest to center.
MicrocanonicalResult microcanonical_average_count(const EigenSystem& es, double center,
                                                  std::size_t count);
/// Smoothed variant: mean of closed-form Husimi grids instead of Fock grids.
MicrocanonicalResult microcanonical_average_husimi(const EigenSystem& es, double center,
                                                   double delta_e);

/// Per selected eigenstate, the per_state lattice points with the largest
/// squared components (ties broken by basis order), concatenated.
std::vector<std::pair<int, int>> top_components(const EigenSystem& es,
                                                const std::vector<std::size_t>& indices,
                                                std::size_t per_state);

/// Pointwise power transform for display contrast; not normalized.
ProbabilityGrid raise_power(const ProbabilityGrid& grid, double gamma);

}  // namespace triplewell
