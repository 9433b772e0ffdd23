#include "triplewell/fock.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace triplewell {

FockBasis::FockBasis(int total_particles) : n_(total_particles) {
    if (total_particles < 1)
        throw std::invalid_argument("FockBasis: N must be >= 1");
    states_.reserve(dimension_for(total_particles));
    for (int n1 = n_; n1 >= 0; --n1)
        for (int n3 = 0; n3 <= n_ - n1; ++n3)
            states_.push_back({n1, n_ - n1 - n3, n3});
}

std::size_t FockBasis::dimension_for(int total_particles) {
    return static_cast<std::size_t>(total_particles + 1) * (total_particles + 2) / 2;
}

std::size_t FockBasis::index(int n1, int n3) const {
    if (n1 < 0 || n3 < 0 || n1 + n3 > n_)
        throw std::out_of_range("FockBasis::index: occupations outside the simplex");
    // States with larger n1 come first; block for a given n1 has N-n1+1 entries.
    std::size_t i1 = static_cast<std::size_t>(n_ - n1);
    return i1 * (i1 + 1) / 2 + static_cast<std::size_t>(n3);
}

double log_multinomial_weight(const FockState& s, double p1, double p2, double p3) {
    const double inf = std::numeric_limits<double>::infinity();
    double lg = std::lgamma(double(s.n1 + s.n2 + s.n3) + 1.0) - std::lgamma(double(s.n1) + 1.0) -
                std::lgamma(double(s.n2) + 1.0) - std::lgamma(double(s.n3) + 1.0);
    const int n[3] = {s.n1, s.n2, s.n3};
    const double p[3] = {p1, p2, p3};
    for (int i = 0; i < 3; ++i) {
        if (n[i] == 0) continue;  // 0^0 = 1
        if (p[i] <= 0.0) return -inf;
        lg += n[i] * std::log(p[i]);
    }
    return lg;
}

double multinomial_weight(const FockState& s, double p1, double p2, double p3) {
    if (p1 < 0 || p2 < 0 || p3 < 0)
        throw std::domain_error("multinomial_weight: negative probability");
    if (std::abs(p1 + p2 + p3 - 1.0) > 1e-12)
        throw std::domain_error("multinomial_weight: probabilities must sum to 1");
    double lg = log_multinomial_weight(s, p1, p2, p3);
    return std::isinf(lg) ? 0.0 : std::exp(lg);
}

}  // namespace triplewell
