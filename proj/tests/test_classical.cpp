#include <cmath>
#include <stdexcept>
#include <random>

#include "doctest.h"
#include "triplewell/classical.hpp"

using namespace triplewell;

namespace {

const ModelParams kChaotic{0.7, 1.0, 1.5, 1};

std::mt19937 rng(11);

AngleActionView random_angles() {
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    double a = uni(rng), b = uni(rng);
    if (a + b > 1.0) {
        a = 1.0 - a;
        b = 1.0 - b;
    }
    return {a, b, ang(rng), ang(rng)};
}

}  // namespace

TEST_CASE("energy: all bosons in well 2") {
    CartesianState s;
    s.v[2] = std::sqrt(2.0);
    CHECK(energy_cartesian(s, kChaotic) == doctest::Approx(kChaotic.U).epsilon(1e-14));
    CHECK(energy_reduced(ReducedState{}, kChaotic) == doctest::Approx(kChaotic.U).epsilon(1e-14));
}

TEST_CASE("critical point energy from the angle chart") {
    AngleActionView cp{0.081, 0.294, 0.0, M_PI};
    CHECK(energy_cartesian(to_cartesian(cp), kChaotic) == doctest::Approx(0.0752).epsilon(2e-2));
    CHECK(std::abs(energy_cartesian(to_cartesian(cp), kChaotic) - 0.0752) < 1e-3);
}

TEST_CASE("rotation invariance of the energy") {
    std::uniform_real_distribution<double> ang(-M_PI, M_PI);
    for (int rep = 0; rep < 50; ++rep) {
        CartesianState s = to_cartesian(random_angles());
        double theta = ang(rng);
        CHECK(energy_cartesian(rotate(s, theta), kChaotic) ==
              doctest::Approx(energy_cartesian(s, kChaotic)).epsilon(1e-12));
        CHECK(rotate(s, theta).norm2() == doctest::Approx(s.norm2()).epsilon(1e-12));
    }
}

TEST_CASE("chart agreement on random states") {
    for (int rep = 0; rep < 1000; ++rep) {
        AngleActionView a = random_angles();
        double ec = energy_cartesian(to_cartesian(a), kChaotic);
        double er = energy_reduced(to_reduced(a), kChaotic);
        CHECK(std::abs(ec - er) < 1e-12);
    }
    // rho2 = 0 manifold: phase independent up to the sqrt(1 - s/2) rounding
    // amplification near s = 2
    double e0 = energy_reduced(to_reduced(AngleActionView{0.6, 0.4, 0.3, -1.2}), kChaotic);
    double e1 = energy_reduced(to_reduced(AngleActionView{0.6, 0.4, -2.0, 0.7}), kChaotic);
    CHECK(std::abs(e0 - e1) < 1e-7);
    ReducedState over{1.3, 0.0, 1.3, 0.0};  // s > 2
    CHECK_THROWS_AS(energy_reduced(over, kChaotic), std::domain_error);
}

TEST_CASE("conversion round trips") {
    AngleActionView half{0.5, 0.5, 0.0, 0.0};
    ReducedState r = to_reduced(half);
    CHECK(r.q1 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.p1 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.q3 == doctest::Approx(1.0).epsilon(1e-14));
    CHECK(r.p3 == doctest::Approx(0.0).epsilon(1e-14));

    for (int rep = 0; rep < 1000; ++rep) {
        AngleActionView a = random_angles();
        AngleActionView b = to_angles(to_cartesian(to_reduced(to_cartesian(a))));
        CHECK(b.n1 == doctest::Approx(a.n1).epsilon(1e-12));
        CHECK(b.n3 == doctest::Approx(a.n3).epsilon(1e-12));
        CHECK(wrap_angle(b.phi12 - a.phi12) == doctest::Approx(0.0).epsilon(1e-9));
        CHECK(wrap_angle(b.phi32 - a.phi32) == doctest::Approx(0.0).epsilon(1e-9));
    }
    // common rotation leaves the phase differences unchanged
    CartesianState s = to_cartesian(random_angles());
    AngleActionView a0 = to_angles(s);
    AngleActionView a1 = to_angles(rotate(s, 0.937));
    CHECK(wrap_angle(a1.phi12 - a0.phi12) == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(wrap_angle(a1.phi32 - a0.phi32) == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("hamilton_rhs matches finite differences of the energy") {
    for (int rep = 0; rep < 100; ++rep) {
        CartesianState s = to_cartesian(random_angles());
        CartesianState d = hamilton_rhs(s, kChaotic);
        const double h = 1e-6;
        for (int i = 0; i < 6; ++i) {
            CartesianState sp = s, sm = s;
            sp.v[i] += h;
            sm.v[i] -= h;
            double fd = (energy_cartesian(sp, kChaotic) - energy_cartesian(sm, kChaotic)) / (2 * h);
            // dH/dP = Qdot, dH/dQ = -Pdot
            double expect = (i % 2 == 0) ? -d.v[i + 1] : d.v[i - 1];
            CHECK(std::abs(fd - expect) < 1e-7);
        }
    }
}

TEST_CASE("classical Q values") {
    CartesianState well2;
    well2.v[2] = std::sqrt(2.0);
    CHECK(classical_Q(well2) == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(classical_Q(to_cartesian(AngleActionView{0.5, 0.5, 0.0, M_PI})) ==
          doctest::Approx(2.0).epsilon(1e-12));
    CHECK(classical_Q(to_cartesian(AngleActionView{0.5, 0.5, 0.0, 0.0})) ==
          doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("rho2 = 0 solver") {
    auto a = solve_rho2_zero(kChaotic, 0.0752);
    CHECK(std::abs(a.n1 - 0.7082) < 2e-4);
    CHECK(std::abs(a.n3 - 0.2917) < 2e-4);
    CHECK(a.n1 + a.n3 == doctest::Approx(1.0).epsilon(1e-14));

    auto sym = solve_rho2_zero(kChaotic, kChaotic.U);
    CHECK(sym.n1 == doctest::Approx(0.5).epsilon(1e-14));
    auto edge = solve_rho2_zero(kChaotic, kChaotic.U + kChaotic.epsilon);
    CHECK(edge.n1 == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(edge.n3 == doctest::Approx(1.0).epsilon(1e-14));

    CHECK_THROWS_AS(solve_rho2_zero(kChaotic, kChaotic.U + 2.0 * kChaotic.epsilon),
                    std::domain_error);
    CHECK_THROWS_AS(solve_rho2_zero(ModelParams{0.7, 1.0, 0.0, 1}, 0.5), std::domain_error);
}

TEST_CASE("section solver") {
    // below the global minimum nothing can match
    auto none = solve_on_section(kChaotic, -100.0, 0.3, 0.0, 0.0);
    CHECK(none.empty());
    // found states re-evaluate to E
    int hits = 0;
    for (double n1 = 0.05; n1 < 1.0; n1 += 0.1) {
        auto sols = solve_on_section(kChaotic, 0.0752, n1, 0.4, M_PI);
        for (const auto& s : sols) {
            CHECK(std::abs(energy_reduced(to_reduced(s), kChaotic) - 0.0752) < 1e-10);
            ++hits;
        }
    }
    CHECK(hits >= 1);  // chaotic sea is nonempty at E_Classic
}

TEST_CASE("critical points") {
    auto pts = find_critical_points(kChaotic);
    bool found = false;
    for (const auto& cp : pts) {
        CHECK(cp.gradient_norm <= 1e-10);
        // critical phases are extremal
        CHECK((std::abs(wrap_angle(cp.state.phi12)) < 1e-8 ||
               std::abs(std::abs(wrap_angle(cp.state.phi12)) - M_PI) < 1e-8));
        if (std::abs(cp.energy - 0.0752) < 1e-3 && cp.stability == "unstable" &&
            std::abs(cp.state.n1 - 0.081) < 1e-3 && std::abs(cp.state.n3 - 0.294) < 1e-3 &&
            std::abs(cp.state.phi12) < 1e-3 && std::abs(std::abs(cp.state.phi32) - M_PI) < 1e-3)
            found = true;
    }
    CHECK(found);

    // epsilon = 0: the critical set is symmetric under 1 <-> 3 exchange
    ModelParams sym{0.7, 1.0, 0.0, 1};
    auto pts0 = find_critical_points(sym);
    for (const auto& cp : pts0) {
        bool partner = false;
        for (const auto& other : pts0)
            if (std::abs(other.state.n1 - cp.state.n3) < 1e-6 &&
                std::abs(other.state.n3 - cp.state.n1) < 1e-6 &&
                std::abs(other.energy - cp.energy) < 1e-9)
                partner = true;
        CHECK(partner);
    }
}
