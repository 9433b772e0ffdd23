#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "triplewell/projections.hpp"

using namespace triplewell;

namespace {

EigenSystem small_system(int n, double epsilon) {
    ModelParams p{0.7, 1.0, epsilon, n};
    FockBasis b(n);
    return diagonalize(build_hamiltonian(p, b), b, p);
}

// synthetic eigen-system whose "eigenvectors" are the Fock states themselves
EigenSystem fock_identity_system(int n) {
    ModelParams p{0.7, 1.0, 1.5, n};
    FockBasis b(n);
    const std::size_t d = b.dimension();
    EigenSystem es{p, b, std::vector<double>(d, 0.0), std::vector<double>(d * d, 0.0)};
    for (std::size_t k = 0; k < d; ++k) {
        es.vectors[k * d + k] = 1.0;
        es.energies[k] = double(k);
    }
    return es;
}

}  // namespace

TEST_CASE("fock projection of a pure Fock state") {
    auto es = fock_identity_system(2);
    std::size_t k = es.basis.index(2, 0);
    auto g = fock_projection(es, k);
    CHECK(g.at(2, 0) == 1.0);
    CHECK(g.sum() == doctest::Approx(1.0));
    CHECK(g.argmax() == std::pair<int, int>{2, 0});
    CHECK_THROWS_AS(fock_projection(es, 99), std::out_of_range);
}

TEST_CASE("fock projections are normalized") {
    auto es = small_system(10, 1.5);
    for (std::size_t k = 0; k < es.dim(); k += 7)
        CHECK(fock_projection(es, k).sum() == doctest::Approx(1.0).epsilon(1e-10));
}

TEST_CASE("epsilon=0 projections respect the 1<->3 exchange symmetry") {
    auto es = small_system(10, 0.0);
    // sum over a (near-)degenerate energy group is exchange symmetric
    const double tol = 1e-9 * std::max(std::abs(es.energies.front()), std::abs(es.energies.back()));
    std::size_t g0 = 0;
    while (g0 < es.dim()) {
        std::size_t g1 = g0 + 1;
        while (g1 < es.dim() && es.energies[g1] - es.energies[g1 - 1] < tol) ++g1;
        ProbabilityGrid acc{10, std::vector<double>(es.dim(), 0.0)};
        for (std::size_t k = g0; k < g1; ++k) {
            auto g = fock_projection(es, k);
            for (std::size_t i = 0; i < g.values.size(); ++i) acc.values[i] += g.values[i];
        }
        for (int n1 = 10; n1 >= 0; --n1)
            for (int n3 = 0; n3 <= 10 - n1; ++n3)
                CHECK(acc.at(n1, n3) == doctest::Approx(acc.at(n3, n1)).epsilon(1e-8));
        g0 = g1;
    }
}

TEST_CASE("coherent overlap basics") {
    auto es = small_system(8, 1.5);
    // populations (1, 0): multinomial collapses onto Fock state (N, 0, 0)
    for (std::size_t k = 0; k < es.dim(); k += 11) {
        double ov = coherent_overlap(es, {1.0, 0.0, 0.3, -0.7}, k);
        double c = es.vec(k)[es.basis.index(8, 0)];
        CHECK(ov == doctest::Approx(c * c).epsilon(1e-12));
    }
    // 2pi phase periodicity
    CoherentSpec s{0.3, 0.4, 0.7, -1.1};
    CoherentSpec s2{0.3, 0.4, 0.7 + 2 * M_PI, -1.1 - 2 * M_PI};
    CHECK(coherent_overlap(es, s, 3) == doctest::Approx(coherent_overlap(es, s2, 3)).epsilon(1e-12));
}

TEST_CASE("coherent-state completeness") {
    auto es = small_system(20, 1.5);
    std::mt19937 rng(5);
    std::uniform_real_distribution<double> uni(0.0, 1.0), ang(-M_PI, M_PI);
    for (int rep = 0; rep < 10; ++rep) {
        double a = uni(rng), b = uni(rng);
        if (a + b > 1.0) {
            a = 1.0 - a;
            b = 1.0 - b;
        }
        CoherentSpec spec{a, b, ang(rng), ang(rng)};
        double sum = 0.0;
        for (std::size_t k = 0; k < es.dim(); ++k) sum += coherent_overlap(es, spec, k);
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("closed form equals trapezoid quadrature") {
    auto es2 = small_system(2, 1.5);
    for (std::size_t k = 0; k < es2.dim(); ++k) {
        auto closed = husimi_projection_closed(es2, k);
        auto quad = husimi_projection_quadrature(es2, k, 8);
        CHECK(!quad.underresolved);
        for (std::size_t i = 0; i < closed.values.size(); ++i)
            CHECK(quad.grid.values[i] == doctest::Approx(closed.values[i]).epsilon(1e-12));
    }
    auto es = small_system(20, 0.7);
    for (std::size_t k : {std::size_t(0), es.dim() / 2}) {
        auto closed = husimi_projection_closed(es, k);
        auto quad = husimi_projection_quadrature(es, k, 2 * 20 + 2);
        for (std::size_t i = 0; i < closed.values.size(); ++i)
            CHECK(std::abs(quad.grid.values[i] - closed.values[i]) < 1e-10);
    }
}

TEST_CASE("quadrature offset invariance and under-resolution flag") {
    auto es = small_system(6, 1.5);
    auto q0 = husimi_projection_quadrature(es, 4, 14, 0.0);
    auto q1 = husimi_projection_quadrature(es, 4, 14, 0.37);
    for (std::size_t i = 0; i < q0.grid.values.size(); ++i)
        CHECK(q0.grid.values[i] == doctest::Approx(q1.grid.values[i]).epsilon(1e-12));
    CHECK(husimi_projection_quadrature(es, 0, 4).underresolved);
    CHECK_THROWS_AS(husimi_projection_quadrature(es, 0, 1), std::invalid_argument);
}

TEST_CASE("single-Fock eigenvector: smoothing peaks at the Fock point") {
    auto es = fock_identity_system(10);
    std::size_t k = es.basis.index(4, 3);
    auto closed = husimi_projection_closed(es, k);
    // grid value is the multinomial weight itself
    for (int a = 10; a >= 0; --a)
        for (int b = 0; b <= 10 - a; ++b)
            CHECK(closed.at(a, b) ==
                  doctest::Approx(multinomial_weight({4, 3, 3}, a / 10.0, (10.0 - a - b) / 10.0,
                                                     b / 10.0))
                      .epsilon(1e-12));
    CHECK(closed.argmax() == std::pair<int, int>{4, 3});
    // constant-in-phase integrand: quadrature is exact at any point count
    auto quad = husimi_projection_quadrature(es, k, 6);
    for (std::size_t i = 0; i < closed.values.size(); ++i)
        CHECK(quad.grid.values[i] == doctest::Approx(closed.values[i]).epsilon(1e-12));
}

TEST_CASE("microcanonical averages") {
    auto es = small_system(10, 1.5);
    // a single-state window reduces to the nearest eigenstate's projection
    auto one = microcanonical_average_count(es, es.energies[17] / 10.0, 1);
    REQUIRE(one.indices == std::vector<std::size_t>{17});
    auto direct = fock_projection(es, 17);
    for (std::size_t i = 0; i < direct.values.size(); ++i)
        CHECK(one.grid.values[i] == direct.values[i]);
    // averaging over the whole spectrum gives the uniform grid 1/D
    auto full = microcanonical_average_count(es, 0.0, es.dim());
    for (double v : full.grid.values)
        CHECK(v == doctest::Approx(1.0 / double(es.dim())).epsilon(1e-10));
    CHECK(full.grid.sum() == doctest::Approx(1.0).epsilon(1e-10));
    CHECK_THROWS_AS(microcanonical_average(es, 1e6, 1e-6), std::invalid_argument);
}

TEST_CASE("top components") {
    auto es = fock_identity_system(5);
    auto one = top_components(es, {es.basis.index(2, 1)}, 1);
    REQUIRE(one.size() == 1);
    CHECK(one[0] == std::pair<int, int>{2, 1});
    // per_state = D lists every lattice point once per selected state
    auto all = top_components(es, {0, 1}, es.dim());
    CHECK(all.size() == 2 * es.dim());
    CHECK_THROWS_AS(top_components(es, {0}, 0), std::invalid_argument);
}

TEST_CASE("raise_power") {
    ProbabilityGrid g{1, {0.0016, 0.5, 0.25}};
    auto same = raise_power(g, 1.0);
    CHECK(same.values == g.values);
    auto quarter = raise_power(g, 0.25);
    CHECK(quarter.values[0] == doctest::Approx(0.2).epsilon(1e-12));
    // monotone: ordering preserved
    CHECK((quarter.values[1] > quarter.values[2]) == (g.values[1] > g.values[2]));
    CHECK_THROWS_AS(raise_power(g, 0.0), std::invalid_argument);
}
