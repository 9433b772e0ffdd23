#include "triplewell/poincare.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace triplewell {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kIllCond = 1e-8;   // rho^2 below this makes the phase meaningless
constexpr double kFastPhase = 2e-3; // below this rho^2 the phase may rotate faster than sampling

double phi32_of(const CartesianState& s) {
    return wrap_angle(std::atan2(s.p3(), s.q3()) - std::atan2(s.p2(), s.q2()));
}

double dphi32_dt(const CartesianState& s, const ModelParams& params) {
    CartesianState d = hamilton_rhs(s, params);
    double r2 = s.q2() * s.q2() + s.p2() * s.p2();
    double r3 = s.q3() * s.q3() + s.p3() * s.p3();
    double dphi3 = (s.q3() * d.v[5] - s.p3() * d.v[4]) / r3;
    double dphi2 = (s.q2() * d.v[3] - s.p2() * d.v[2]) / r2;
    return dphi3 - dphi2;
}

double min_rho2(const CartesianState& s) {
    double rho2sq = 0.5 * (s.q2() * s.q2() + s.p2() * s.p2());
    double rho3sq = 0.5 * (s.q3() * s.q3() + s.p3() * s.p3());
    return std::min(rho2sq, rho3sq);
}

}  // namespace

SectionResult section(const Trajectory& traj, const ModelParams& params, double phi_section,
                      DirectionFilter filter) {
    SectionResult result;
    if (traj.samples.size() < 2) return result;
    IntegratorOptions opts;

    double d_prev = wrap_angle(phi32_of(traj.samples.front()) - phi_section);
    double rho_prev = min_rho2(traj.samples.front());
    for (std::size_t i = 1; i < traj.samples.size(); ++i) {
        const CartesianState& a = traj.samples[i - 1];
        const CartesianState& b = traj.samples[i];
        double d_cur = wrap_angle(phi32_of(b) - phi_section);
        double rho_cur = min_rho2(b);
        double d_old = d_prev;
        double rho_old = rho_prev;
        d_prev = d_cur;
        rho_prev = rho_cur;

        if (rho_old < kIllCond || rho_cur < kIllCond) {
            ++result.dropped_ill_conditioned;
            continue;
        }
        double jump = std::abs(wrap_angle(d_cur - d_old));
        if (jump >= kPi / 2.0) {
            // near rho2 = 0 or rho3 = 0 the phase rotates faster than any
            // reasonable sampling; those intervals are dropped and counted
            if (rho_old < kFastPhase || rho_cur < kFastPhase) {
                ++result.dropped_ill_conditioned;
                continue;
            }
            throw std::runtime_error("section: trajectory undersampled (phi32 moves >= pi/2 "
                                     "between samples)");
        }
        // a genuine crossing of the surface (not of the antipodal surface)
        if (std::abs(d_old) >= kPi / 2.0 || std::abs(d_cur) >= kPi / 2.0) continue;
        if (d_old == 0.0 || d_old * d_cur > 0.0) continue;
        // crossing inside [t_{i-1}, t_i]: bisection on the re-integrated interval
        double ta = 0.0, tb = traj.times[i] - traj.times[i - 1];
        double da = d_old;
        CartesianState sa = a;
        CartesianState mid = a;
        double dm = da;
        for (int it = 0; it < 200; ++it) {
            double tm = 0.5 * (ta + tb);
            mid = advance(sa, params, tm - ta, opts);
            dm = wrap_angle(phi32_of(mid) - phi_section);
            if (std::abs(dm) <= 1e-9) {
                ta = tm;
                sa = mid;
                break;
            }
            if (da * dm <= 0.0) {
                tb = tm;
            } else {
                ta = tm;
                da = dm;
                sa = mid;
            }
            if (tb - ta < 1e-15) break;
        }
        SectionEvent ev;
        ev.t = traj.times[i - 1] + ta;
        AngleActionView ang = to_angles(sa);
        ev.n1 = ang.n1;
        ev.n3 = ang.n3;
        ev.phi12 = ang.phi12;
        ev.direction = dphi32_dt(sa, params) >= 0.0 ? +1 : -1;
        if (filter == DirectionFilter::Positive && ev.direction < 0) continue;
        if (filter == DirectionFilter::Negative && ev.direction > 0) continue;
        result.events.push_back(ev);
    }
    return result;
}

SectionResult ensemble_section(const ModelParams& params, double energy, int count, double t_short,
                               double phi_section, double sample_dt) {
    if (count < 1) throw std::invalid_argument("ensemble_section: count must be >= 1");
    SectionResult all;
    // near-square (n1, phi12) grid with about `count` nodes
    int g1 = std::max(1, int(std::round(std::sqrt(double(count)))));
    int g2 = std::max(1, (count + g1 - 1) / g1);
    int seed_id = 0;
    for (int i = 0; i < g1; ++i) {
        double n1 = (i + 0.5) / g1;
        for (int j = 0; j < g2; ++j) {
            double phi12 = -kPi + 2.0 * kPi * (j + 0.5) / g2;
            std::vector<AngleActionView> roots;
            try {
                roots = solve_on_section(params, energy, n1, phi12, phi_section);
            } catch (const std::exception&) {
                continue;  // keep the rest of the ensemble
            }
            for (const auto& ic : roots) {
                try {
                    Trajectory traj = integrate(to_cartesian(ic), params, t_short, sample_dt);
                    SectionResult r = section(traj, params, phi_section);
                    for (auto& ev : r.events) {
                        ev.seed_id = seed_id;
                        all.events.push_back(ev);
                    }
                    all.dropped_ill_conditioned += r.dropped_ill_conditioned;
                } catch (const std::exception&) {
                    // per-seed integrator failures do not abort the ensemble
                }
                ++seed_id;
            }
        }
    }
    std::stable_sort(all.events.begin(), all.events.end(),
                     [](const SectionEvent& x, const SectionEvent& y) {
                         if (x.seed_id != y.seed_id) return x.seed_id < y.seed_id;
                         return x.t < y.t;
                     });
    return all;
}

void VisitationHistogram::merge(const VisitationHistogram& other) {
    if (bins != other.bins) throw std::invalid_argument("histogram merge: bin mismatch");
    for (std::size_t i = 0; i < counts.size(); ++i) counts[i] += other.counts[i];
    total += other.total;
}

namespace {

VisitationHistogram histogram_points(const std::vector<std::pair<double, double>>& pts, int bins) {
    if (bins < 2) throw std::invalid_argument("visitation: bins must be >= 2");
    VisitationHistogram h;
    h.bins = bins;
    h.counts.assign(std::size_t(bins) * bins, 0.0);
    for (auto [x, y] : pts) {
        int i1 = std::clamp(int(x * bins), 0, bins - 1);
        int i3 = std::clamp(int(y * bins), 0, bins - 1);
        h.at(i1, i3) += 1.0;
        ++h.total;
    }
    return h;
}

}  // namespace

VisitationHistogram visitation(const Trajectory& traj, int bins) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(traj.samples.size());
    for (const auto& s : traj.samples) {
        AngleActionView a = to_angles(s);
        pts.emplace_back(a.n1, a.n3);
    }
    return histogram_points(pts, bins);
}

VisitationHistogram visitation_of_events(const std::vector<SectionEvent>& events, int bins) {
    std::vector<std::pair<double, double>> pts;
    pts.reserve(events.size());
    for (const auto& ev : events) pts.emplace_back(ev.n1, ev.n3);
    return histogram_points(pts, bins);
}

}  // namespace triplewell
