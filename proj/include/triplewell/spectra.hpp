#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "triplewell/fock.hpp"

namespace triplewell {

struct ModelParams {
    double U = 0.7;
    double J = 1.0;
    double epsilon = 0.0;
    int N = 1;
};

/// Dense symmetric matrix, column-major (LAPACK layout).
struct SymMatrix {
    std::size_t dim = 0;
    std::vector<double> a;  // dim*dim, a[i + j*dim]

    explicit SymMatrix(std::size_t d = 0) : dim(d), a(d * d, 0.0) {}
    double& at(std::size_t i, std::size_t j) { return a[i + j * dim]; }
    double at(std::size_t i, std::size_t j) const { return a[i + j * dim]; }
};

/// Full eigendecomposition of the Hamiltonian in the Fock basis.
/// energies ascending; eigenvector k is the contiguous column vectors[k*D .. k*D+D).
struct EigenSystem {
    ModelParams params;
    FockBasis basis;
    std::vector<double> energies;
    std::vector<double> vectors;  // column-major D x D

    std::size_t dim() const { return energies.size(); }
    const double* vec(std::size_t k) const { return vectors.data() + k * dim(); }
};

struct EntropyRecord {
    double energy_over_n;
    double sh_total;
    double sh_upper;  // Fock states with n2 >= n1+n3
    double sh_lower;
    double sh_total_smooth;
    double sh_upper_smooth;
    double sh_lower_smooth;
};

struct EntropyProfile {
    std::vector<EntropyRecord> records;
};

SymMatrix build_hamiltonian(const ModelParams& params, const FockBasis& basis);

/// Matrix of Q = (N1 + N3) - (a1^dag a3 + a3^dag a1).
SymMatrix build_Q(const FockBasis& basis);

/// Full dense symmetric eigensolve (LAPACK dsyevd). H must be symmetric to 1e-12.
EigenSystem diagonalize(const SymMatrix& H, const FockBasis& basis, const ModelParams& params);

/// Q/N eigenvalue per eigenstate; requires epsilon = 0. Degenerate energy
/// groups are resolved by diagonalizing Q inside the group.
std::vector<double> q_labels(const EigenSystem& es);

EntropyProfile shannon_profile(const EigenSystem& es, int smooth_window = 200);

/// Indices of the `count` eigenstates with E/N closest to target.
std::vector<std::size_t> select_near(const EigenSystem& es, double target, std::size_t count);

/// Indices with |E/N - center| <= half_width.
std::vector<std::size_t> select_window(const EigenSystem& es, double center, double half_width);

struct SpacingRatioResult {
    double mean_r = 0.0;
    std::size_t used = 0;
    std::size_t skipped_degenerate = 0;
};

/// Mean consecutive-spacing ratio over energies[first, last).
SpacingRatioResult spacing_ratio(const std::vector<double>& energies, std::size_t first,
                                 std::size_t last);
SpacingRatioResult spacing_ratio(const EigenSystem& es, std::size_t first, std::size_t last);

// Binary cache (magic "TW3W", version, little-endian doubles).
void save_eigensystem(const EigenSystem& es, const std::string& path);
EigenSystem load_eigensystem(const std::string& path);
bool eigensystem_cache_matches(const std::string& path, const ModelParams& params);

}  // namespace triplewell
