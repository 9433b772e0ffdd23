#pragma once

#include <string>

#include "triplewell/compare.hpp"
#include "triplewell/poincare.hpp"
#include "triplewell/projections.hpp"
#include "triplewell/spectra.hpp"

namespace triplewell {

inline constexpr const char* kToolkitVersion = "0.1.0";

/// Leading '#' comment line carried by every data file: toolkit version plus
/// the hash of the producing configuration.
std::string provenance_line(const std::string& config_hash);

void write_energies_csv(const EigenSystem& es, const std::string& path,
                        const std::string& provenance);
void write_entropy_csv(const EigenSystem& es, const EntropyProfile& profile,
                       const std::string& path, const std::string& provenance);

// Grid exports: sparse CSV (n1, n3, value), dense matrix text, JSON sidecar.
void write_grid_csv(const ProbabilityGrid& grid, const std::string& path,
                    const std::string& provenance);
void write_grid_matrix(const ProbabilityGrid& grid, const std::string& path,
                       const std::string& provenance);
ProbabilityGrid read_grid_csv(const std::string& path);

void write_trajectory_csv(const Trajectory& traj, const ModelParams& params,
                          const std::string& path, const std::string& provenance);
void write_events_csv(const std::vector<SectionEvent>& events, const std::string& path,
                      const std::string& provenance);

void write_histogram(const VisitationHistogram& hist, const std::string& path,
                     const std::string& provenance);  // plus <path>.json sidecar
VisitationHistogram read_histogram(const std::string& path);

void write_critical_points_json(const std::vector<CriticalPoint>& points, const std::string& path,
                                const std::string& provenance);

/// FNV-1a hash of a canonical config string, hex encoded.
std::string config_hash(const std::string& canonical);

}  // namespace triplewell
