#pragma once

#include <cstddef>
#include <vector>

namespace triplewell {

/// Occupation triple (n1, n2, n3) with n1+n2+n3 = N for the owning basis.
struct FockState {
    int n1 = 0;
    int n2 = 0;
    int n3 = 0;

    bool operator==(const FockState&) const = default;
};

/// Fixed-N three-mode Fock basis.
///
/// Ordering: n1 runs from N down to 0; for fixed n1, n3 runs from 0 up to
/// N-n1. All matrices and file formats in this toolkit assume this order.
class FockBasis {
public:
    explicit FockBasis(int total_particles);

    int total_particles() const { return n_; }
    std::size_t dimension() const { return states_.size(); }
    const std::vector<FockState>& states() const { return states_; }
    const FockState& state(std::size_t i) const { return states_[i]; }

    /// Index of the state with occupations (n1, n3); n2 is implied.
    std::size_t index(int n1, int n3) const;
    std::size_t index(const FockState& s) const { return index(s.n1, s.n3); }

    /// D = (N+1)(N+2)/2.
    static std::size_t dimension_for(int total_particles);

private:
    int n_;
    std::vector<FockState> states_;
};

/// log of the multinomial weight N!/(n1! n2! n3!) p1^n1 p2^n2 p3^n3,
/// with the convention 0^0 = 1. Returns -inf for an impossible outcome.
double log_multinomial_weight(const FockState& s, double p1, double p2, double p3);

/// Multinomial weight itself; validates p_i >= 0 and p1+p2+p3 = 1 (1e-12).
double multinomial_weight(const FockState& s, double p1, double p2, double p3);

}  // namespace triplewell
