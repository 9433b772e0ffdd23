#include "triplewell/projections.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <stdexcept>

namespace triplewell {

namespace {
constexpr double kPi = std::numbers::pi;

// sqrt of the multinomial weight, via log-gamma (stable up to N of several hundred)
double sqrt_weight(const FockState& s, double p1, double p2, double p3) {
    double lg = log_multinomial_weight(s, p1, p2, p3);
    return std::isinf(lg) ? 0.0 : std::exp(0.5 * lg);
}

}  // namespace

double ProbabilityGrid::sum() const { return std::accumulate(values.begin(), values.end(), 0.0); }

std::pair<int, int> ProbabilityGrid::argmax() const {
    std::size_t best = 0;
    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] > values[best]) best = i;
    // invert the triangular lattice index
    std::size_t i1 = 0;
    while ((i1 + 1) * (i1 + 2) / 2 <= best) ++i1;
    int n1 = N - int(i1);
    int n3 = int(best - i1 * (i1 + 1) / 2);
    return {n1, n3};
}

ProbabilityGrid fock_projection(const EigenSystem& es, std::size_t k) {
    if (k >= es.dim()) throw std::out_of_range("fock_projection: eigenstate index out of range");
    ProbabilityGrid g{es.params.N, std::vector<double>(es.dim())};
    const double* v = es.vec(k);
    for (std::size_t i = 0; i < es.dim(); ++i) g.values[i] = v[i] * v[i];
    return g;
}

double coherent_overlap(const EigenSystem& es, const CoherentSpec& spec, std::size_t k) {
    if (k >= es.dim()) throw std::out_of_range("coherent_overlap: eigenstate index out of range");
    const double p2 = 1.0 - spec.n1 - spec.n3;
    if (spec.n1 < 0 || spec.n3 < 0 || p2 < -1e-12)
        throw std::domain_error("coherent_overlap: populations outside the simplex");
    const double* v = es.vec(k);
    std::complex<double> acc = 0.0;
    for (std::size_t i = 0; i < es.dim(); ++i) {
        const FockState& s = es.basis.state(i);
        double w = sqrt_weight(s, spec.n1, std::max(p2, 0.0), spec.n3);
        if (w == 0.0) continue;
        double phase = s.n1 * spec.phi12 + s.n3 * spec.phi32;
        acc += v[i] * w * std::polar(1.0, phase);
    }
    return std::norm(acc);
}

ProbabilityGrid husimi_projection_closed(const EigenSystem& es, std::size_t k) {
    ProbabilityGrid h = fock_projection(es, k);
    const int N = es.params.N;
    ProbabilityGrid out{N, std::vector<double>(es.dim(), 0.0)};
    for (int a = N; a >= 0; --a) {
        for (int b = 0; b <= N - a; ++b) {
            double p1 = double(a) / N, p3 = double(b) / N, p2 = 1.0 - p1 - p3;
            double acc = 0.0;
            for (std::size_t i = 0; i < es.dim(); ++i) {
                if (h.values[i] == 0.0) continue;
                double lg = log_multinomial_weight(es.basis.state(i), p1, std::max(p2, 0.0), p3);
                if (std::isinf(lg)) continue;
                acc += std::exp(lg) * h.values[i];
            }
            out.at(a, b) = acc;
        }
    }
    return out;
}

QuadratureGrid husimi_projection_quadrature(const EigenSystem& es, std::size_t k, int phase_points,
                                            double phase_offset) {
    if (phase_points < 2) throw std::invalid_argument("husimi quadrature: phase_points < 2");
    const int N = es.params.N;
    const int M = phase_points;
    QuadratureGrid result;
    result.phase_points = M;
    result.underresolved = M < 2 * N + 2;
    result.grid = ProbabilityGrid{N, std::vector<double>(es.dim(), 0.0)};

    const double* v = es.vec(k);
    std::vector<std::complex<double>> e12(std::size_t(N + 1) * M), e3(std::size_t(N + 1) * M);
    for (int n = 0; n <= N; ++n)
        for (int j = 0; j < M; ++j) {
            double phi = -kPi + phase_offset + 2.0 * kPi * j / M;
            e12[std::size_t(n) * M + j] = std::polar(1.0, n * phi);
            e3[std::size_t(n) * M + j] = std::polar(1.0, n * phi);
        }

    std::vector<std::complex<double>> B(std::size_t(N + 1) * M);
    for (int a = N; a >= 0; --a) {
        for (int b = 0; b <= N - a; ++b) {
            double p1 = double(a) / N, p3 = double(b) / N, p2 = 1.0 - p1 - p3;
            // A(n1, n3) = conj(c_n) sqrtP, factorized over the two phases:
            // B(n1, j32) = sum_n3 A e^{i n3 phi32_j}; overlap = sum_n1 e^{i n1 phi12} B
            std::fill(B.begin(), B.end(), std::complex<double>(0.0));
            for (int n1 = 0; n1 <= N; ++n1) {
                for (int n3 = 0; n3 <= N - n1; ++n3) {
                    const FockState s{n1, N - n1 - n3, n3};
                    double w = v[es.basis.index(n1, n3)] *
                               sqrt_weight(s, p1, std::max(p2, 0.0), p3);
                    if (w == 0.0) continue;
                    for (int j = 0; j < M; ++j)
                        B[std::size_t(n1) * M + j] += w * e3[std::size_t(n3) * M + j];
                }
            }
            double acc = 0.0;
            for (int j12 = 0; j12 < M; ++j12) {
                for (int j32 = 0; j32 < M; ++j32) {
                    std::complex<double> ov = 0.0;
                    for (int n1 = 0; n1 <= N; ++n1)
                        ov += e12[std::size_t(n1) * M + j12] * B[std::size_t(n1) * M + j32];
                    acc += std::norm(ov);
                }
            }
            result.grid.at(a, b) = acc / (double(M) * double(M));
        }
    }
    return result;
}

namespace {

MicrocanonicalResult average_over(const EigenSystem& es, std::vector<std::size_t> idx,
                                  bool husimi) {
    if (idx.empty()) throw std::invalid_argument("microcanonical_average: empty energy window");
    MicrocanonicalResult r;
    r.grid = ProbabilityGrid{es.params.N, std::vector<double>(es.dim(), 0.0)};
    for (std::size_t k : idx) {
        ProbabilityGrid g = husimi ? husimi_projection_closed(es, k) : fock_projection(es, k);
        for (std::size_t i = 0; i < g.values.size(); ++i) r.grid.values[i] += g.values[i];
    }
    for (double& x : r.grid.values) x /= double(idx.size());
    r.e_min = es.energies[idx.front()] / es.params.N;
    r.e_max = es.energies[idx.back()] / es.params.N;
    r.indices = std::move(idx);
    return r;
}

}  // namespace

MicrocanonicalResult microcanonical_average(const EigenSystem& es, double center, double delta_e) {
    return average_over(es, select_window(es, center, delta_e / 2.0), false);
}

MicrocanonicalResult microcanonical_average_count(const EigenSystem& es, double center,
                                                  std::size_t count) {
    return average_over(es, select_near(es, center, count), false);
}

MicrocanonicalResult microcanonical_average_husimi(const EigenSystem& es, double center,
                                                   double delta_e) {
    return average_over(es, select_window(es, center, delta_e / 2.0), true);
}

std::vector<std::pair<int, int>> top_components(const EigenSystem& es,
                                                const std::vector<std::size_t>& indices,
                                                std::size_t per_state) {
    if (per_state < 1) throw std::invalid_argument("top_components: per_state must be >= 1");
    const std::size_t d = es.dim();
    std::vector<std::pair<int, int>> out;
    std::vector<std::size_t> ord(d);
    for (std::size_t k : indices) {
        const double* v = es.vec(k);
        std::iota(ord.begin(), ord.end(), 0);
        std::size_t take = std::min(per_state, d);
        std::stable_sort(ord.begin(), ord.end(), [&](std::size_t a, std::size_t b) {
            return v[a] * v[a] > v[b] * v[b];  // stable: ties keep basis order
        });
        for (std::size_t i = 0; i < take; ++i) {
            const FockState& s = es.basis.state(ord[i]);
            out.emplace_back(s.n1, s.n3);
        }
    }
    return out;
}

ProbabilityGrid raise_power(const ProbabilityGrid& grid, double gamma) {
    if (gamma <= 0.0) throw std::invalid_argument("raise_power: gamma must be > 0");
    ProbabilityGrid out = grid;
    for (double& x : out.values) x = std::pow(x, gamma);
    return out;
}

}  // namespace triplewell
