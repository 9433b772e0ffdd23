#pragma once

#include <optional>
#include <string>
#include <vector>

#include "triplewell/poincare.hpp"
#include "triplewell/projections.hpp"

namespace triplewell {

/// Bin a lattice grid's mass into a bins x bins histogram on [0,1]^2.
VisitationHistogram rebin_grid(const ProbabilityGrid& grid, int bins);

struct CorrespondenceReport {
    double pearson = 0.0;
    std::size_t support_cells = 0;   // cells nonzero in both inputs
    double peak_distance = 0.0;      // euclidean distance between the two density peaks
    bool disjoint_support = false;
};

/// Pearson correlation of two normalized densities, restricted to the cells
/// where both are nonzero (the common support).
CorrespondenceReport compare_histograms(const VisitationHistogram& a, const VisitationHistogram& b);
CorrespondenceReport compare_grid_histogram(const ProbabilityGrid& grid,
                                            const VisitationHistogram& hist);

}  // namespace triplewell
