#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "triplewell/poincare.hpp"

using namespace triplewell;

namespace {

const ModelParams kChaotic{0.7, 1.0, 1.5, 1};

Trajectory constant_trajectory(const AngleActionView& a, std::size_t n) {
    Trajectory t;
    CartesianState s = to_cartesian(a);
    for (std::size_t i = 0; i < n; ++i) {
        t.times.push_back(double(i));
        t.samples.push_back(s);
    }
    return t;
}

}  // namespace

TEST_CASE("no crossings when phi32 stays away from the surface") {
    Trajectory t = constant_trajectory({0.3, 0.3, 0.2, M_PI / 2}, 20);
    auto r = section(t, kChaotic, 0.0);
    CHECK(r.events.empty());
    CHECK(r.dropped_ill_conditioned == 0);
    // fewer than two samples: trivially empty
    Trajectory stub = constant_trajectory({0.3, 0.3, 0.2, 0.0}, 1);
    CHECK(section(stub, kChaotic, 0.0).events.empty());
}

TEST_CASE("events lie on the surface and on the trajectory") {
    CartesianState s0 = to_cartesian(AngleActionView{0.3, 0.25, 0.4, 1.0});
    Trajectory t = integrate(s0, kChaotic, 200.0, 0.05);
    const double phi_section = M_PI;
    auto r = section(t, kChaotic, phi_section);
    REQUIRE(!r.events.empty());
    double t_prev = -1.0;
    for (const auto& ev : r.events) {
        CHECK(ev.t > t_prev);
        t_prev = ev.t;
        CartesianState at_t = advance(s0, kChaotic, ev.t);
        AngleActionView a = to_angles(at_t);
        CHECK(std::abs(wrap_angle(a.phi32 - phi_section)) < 1e-6);
        CHECK(std::abs(a.n1 - ev.n1) < 1e-6);
        CHECK(std::abs(a.n3 - ev.n3) < 1e-6);
        CHECK(std::abs(wrap_angle(a.phi12 - ev.phi12)) < 1e-6);
        // events stay on the energy shell
        CartesianState rebuilt = to_cartesian(AngleActionView{ev.n1, ev.n3, ev.phi12, phi_section});
        CHECK(std::abs(energy_cartesian(rebuilt, kChaotic) - energy_cartesian(s0, kChaotic)) <
              1e-8);
    }
}

TEST_CASE("direction filters partition the crossings") {
    CartesianState s0 = to_cartesian(AngleActionView{0.3, 0.25, 0.4, 1.0});
    Trajectory t = integrate(s0, kChaotic, 200.0, 0.05);
    auto both = section(t, kChaotic, M_PI, DirectionFilter::Both);
    auto pos = section(t, kChaotic, M_PI, DirectionFilter::Positive);
    auto neg = section(t, kChaotic, M_PI, DirectionFilter::Negative);
    CHECK(pos.events.size() + neg.events.size() == both.events.size());
    for (const auto& ev : pos.events) CHECK(ev.direction == +1);
    for (const auto& ev : neg.events) CHECK(ev.direction == -1);
}

TEST_CASE("epsilon = 0 events share the conserved charge") {
    ModelParams p{0.7, 1.0, 0.0, 1};
    CartesianState s0 = to_cartesian(AngleActionView{0.35, 0.2, 0.9, -0.4});
    const double q0 = classical_Q(s0);
    const double phi_section = 1.0;
    Trajectory t = integrate(s0, p, 200.0, 0.05);
    auto r = section(t, p, phi_section);
    REQUIRE(!r.events.empty());
    for (const auto& ev : r.events) {
        CartesianState rebuilt = to_cartesian(AngleActionView{ev.n1, ev.n3, ev.phi12, phi_section});
        CHECK(std::abs(classical_Q(rebuilt) - q0) < 1e-7);
    }
}

TEST_CASE("ensemble sections are deterministic") {
    auto a = ensemble_section(kChaotic, 0.0752, 4, 50.0, M_PI, 0.02);
    auto b = ensemble_section(kChaotic, 0.0752, 4, 50.0, M_PI, 0.02);
    REQUIRE(a.events.size() == b.events.size());
    for (std::size_t i = 0; i < a.events.size(); ++i) {
        CHECK(a.events[i].t == b.events[i].t);
        CHECK(a.events[i].n1 == b.events[i].n1);
        CHECK(a.events[i].seed_id == b.events[i].seed_id);
    }
    // sorted by (seed_id, t)
    for (std::size_t i = 1; i < a.events.size(); ++i) {
        const auto& x = a.events[i - 1];
        const auto& y = a.events[i];
        CHECK((x.seed_id < y.seed_id || (x.seed_id == y.seed_id && x.t <= y.t)));
    }
    CHECK(!a.events.empty());  // the chaotic sea produces crossings
    CHECK_THROWS_AS(ensemble_section(kChaotic, 0.0752, 0, 1.0, M_PI), std::invalid_argument);
}

TEST_CASE("visitation histograms") {
    Trajectory t = constant_trajectory({0.3, 0.3, 0.2, 0.1}, 25);
    auto h = visitation(t, 10);
    CHECK(h.total == 25);
    CHECK(h.at(3, 3) == 25.0);
    double sum = 0.0;
    for (double c : h.counts) sum += c;
    CHECK(sum == 25.0);
    CHECK_THROWS_AS(visitation(t, 1), std::invalid_argument);

    std::vector<SectionEvent> evs(3);
    evs[0].n1 = 0.05;
    evs[0].n3 = 0.05;
    evs[1].n1 = 0.95;
    evs[1].n3 = 0.01;
    evs[2].n1 = 1.0;  // boundary clamps into the last bin
    auto he = visitation_of_events(evs, 2);
    CHECK(he.total == 3);
    CHECK(he.at(0, 0) == 1.0);
    CHECK(he.at(1, 0) == 2.0);

    auto merged = h;
    VisitationHistogram other = visitation(t, 10);
    merged.merge(other);
    CHECK(merged.total == 50);
    CHECK(merged.at(3, 3) == 50.0);
    CHECK_THROWS_AS(merged.merge(he), std::invalid_argument);
}
