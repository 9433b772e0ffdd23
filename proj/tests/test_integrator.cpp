#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "triplewell/integrator.hpp"

using namespace triplewell;

namespace {
const ModelParams kChaotic{0.7, 1.0, 1.5, 1};
}

TEST_CASE("t_final = 0 returns the initial sample only") {
    CartesianState s0 = to_cartesian(AngleActionView{0.3, 0.2, 0.4, -0.9});
    Trajectory t = integrate(s0, kChaotic, 0.0, 0.1);
    REQUIRE(t.samples.size() == 1);
    CHECK(t.times[0] == 0.0);
    CHECK(t.samples[0].v == s0.v);
}

TEST_CASE("samples land on multiples of sample_dt") {
    CartesianState s0 = to_cartesian(AngleActionView{0.3, 0.2, 0.4, -0.9});
    Trajectory t = integrate(s0, kChaotic, 10.0, 0.5);
    REQUIRE(t.samples.size() == 21);
    for (std::size_t i = 0; i < t.times.size(); ++i)
        CHECK(t.times[i] == doctest::Approx(0.5 * double(i)).epsilon(1e-12));
}

TEST_CASE("energy and norm conservation, short horizon") {
    AngleActionView seed = solve_rho2_zero(kChaotic, 0.0752);
    seed.phi32 = M_PI / 3;
    Trajectory t = integrate(to_cartesian(seed), kChaotic, 1000.0, 1.0);
    CHECK(t.energy_drift <= 1e-10);
    CHECK(t.norm_drift <= 1e-10);
}

TEST_CASE("classical Q conserved at epsilon = 0") {
    ModelParams p{0.7, 1.0, 0.0, 1};
    Trajectory t = integrate(to_cartesian(AngleActionView{0.3, 0.2, 0.5, 1.0}), p, 1000.0, 1.0);
    CHECK(t.q_drift <= 1e-10);
}

TEST_CASE("J = 0, epsilon = 0: populations frozen") {
    ModelParams p{0.7, 0.0, 0.0, 1};
    CartesianState s0 = to_cartesian(AngleActionView{0.3, 0.2, 0.5, 1.0});
    Trajectory t = integrate(s0, p, 10.0, 1.0);
    AngleActionView a0 = to_angles(s0);
    for (const auto& s : t.samples) {
        AngleActionView a = to_angles(s);
        CHECK(a.n1 == doctest::Approx(a0.n1).epsilon(1e-12));
        CHECK(a.n3 == doctest::Approx(a0.n3).epsilon(1e-12));
    }
}

TEST_CASE("rotation covariance over t <= 100") {
    // a regular rho2 = 0 trajectory: on chaotic orbits the rounding asymmetry
    // of the rotated start grows exponentially and no integrator can hold a
    // 1e-6 match out to t = 100
    const double theta = M_PI / 4;
    AngleActionView base = solve_rho2_zero(kChaotic, 1.3);  // rho2 = 0, phases free
    AngleActionView shifted = base;
    shifted.phi12 = base.phi12 + theta;
    shifted.phi32 = base.phi32 + theta;
    // same phase difference => rotated trajectory (phi2 gauge pinned to 0)
    CartesianState s0 = to_cartesian(base);
    CartesianState s1 = to_cartesian(shifted);
    Trajectory t0 = integrate(s0, kChaotic, 100.0, 0.5);
    Trajectory t1 = integrate(s1, kChaotic, 100.0, 0.5);
    REQUIRE(t0.samples.size() == t1.samples.size());
    for (std::size_t i = 0; i < t0.samples.size(); ++i) {
        AngleActionView a0 = to_angles(t0.samples[i]);
        AngleActionView a1 = to_angles(t1.samples[i]);
        CHECK(std::abs(a0.n1 - a1.n1) < 1e-6);
        CHECK(std::abs(a0.n3 - a1.n3) < 1e-6);
        CartesianState rot = rotate(t0.samples[i], theta);
        CHECK(std::abs(rot.v[0] - t1.samples[i].v[0]) < 1e-6);  // (Q1, P1) plane
        CHECK(std::abs(rot.v[1] - t1.samples[i].v[1]) < 1e-6);
    }
}

TEST_CASE("full-rotation covariance: integrate(rotate) = rotate(integrate)") {
    const double theta = 1.1;
    CartesianState s0 = to_cartesian(solve_rho2_zero(kChaotic, 1.3));
    Trajectory t0 = integrate(s0, kChaotic, 100.0, 1.0);
    Trajectory t1 = integrate(rotate(s0, theta), kChaotic, 100.0, 1.0);
    for (std::size_t i = 0; i < t0.samples.size(); ++i) {
        CartesianState rot = rotate(t0.samples[i], theta);
        for (int c = 0; c < 6; ++c) CHECK(std::abs(rot.v[c] - t1.samples[i].v[c]) < 1e-6);
    }
}

TEST_CASE("advance agrees with integrate") {
    CartesianState s0 = to_cartesian(AngleActionView{0.3, 0.2, 0.4, -0.9});
    Trajectory t = integrate(s0, kChaotic, 7.3, 0.0);
    CartesianState end = advance(s0, kChaotic, 7.3);
    for (int c = 0; c < 6; ++c) CHECK(std::abs(end.v[c] - t.samples.back().v[c]) < 1e-10);
}

TEST_CASE("negative horizon rejected") {
    CartesianState s0;
    CHECK_THROWS_AS(integrate(s0, kChaotic, -1.0, 0.1), std::invalid_argument);
    CHECK_THROWS_AS(advance(s0, kChaotic, -1.0), std::invalid_argument);
}
