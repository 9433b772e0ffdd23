// pybind11 surface for the triple-well toolkit: diagonalization, projections,
// classical dynamics and the correspondence metrics.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "triplewell/compare.hpp"
#include "triplewell/exports.hpp"
#include "triplewell/integrator.hpp"

namespace py = pybind11;
using namespace triplewell;

PYBIND11_MODULE(_triplewell, m) {
    m.doc() = "triple-well Bose-Hubbard toolkit";
    m.attr("__version__") = kToolkitVersion;

    py::class_<ModelParams>(m, "ModelParams")
        .def(py::init([](double U, double J, double epsilon, int N) {
                 return ModelParams{U, J, epsilon, N};
             }),
             py::arg("U") = 0.7, py::arg("J") = 1.0, py::arg("epsilon") = 0.0, py::arg("N") = 1)
        .def_readwrite("U", &ModelParams::U)
        .def_readwrite("J", &ModelParams::J)
        .def_readwrite("epsilon", &ModelParams::epsilon)
        .def_readwrite("N", &ModelParams::N)
        .def("__repr__", [](const ModelParams& p) {
            return "ModelParams(U=" + std::to_string(p.U) + ", J=" + std::to_string(p.J) +
                   ", epsilon=" + std::to_string(p.epsilon) + ", N=" + std::to_string(p.N) + ")";
        });

    m.def("dimension_for", &FockBasis::dimension_for, py::arg("n"));

    py::class_<EigenSystem>(m, "EigenSystem")
        .def_property_readonly("params", [](const EigenSystem& es) { return es.params; })
        .def_property_readonly("energies", [](const EigenSystem& es) { return es.energies; })
        .def("dim", &EigenSystem::dim)
        .def("vector", [](const EigenSystem& es, std::size_t k) {
            if (k >= es.dim()) throw py::index_error();
            return std::vector<double>(es.vec(k), es.vec(k) + es.dim());
        });

    m.def(
        "diagonalize",
        [](const ModelParams& p) {
            FockBasis basis(p.N);
            return diagonalize(build_hamiltonian(p, basis), basis, p);
        },
        py::arg("params"), "Full eigendecomposition in the Fock basis.");
    m.def("q_labels", &q_labels, py::arg("es"));
    m.def("select_near", &select_near, py::arg("es"), py::arg("target"), py::arg("count"));
    m.def("select_window", &select_window, py::arg("es"), py::arg("center"),
          py::arg("half_width"));
    m.def(
        "spacing_ratio",
        [](const EigenSystem& es, std::size_t first, std::size_t last) {
            SpacingRatioResult r = spacing_ratio(es, first, last);
            return py::make_tuple(r.mean_r, r.used, r.skipped_degenerate);
        },
        py::arg("es"), py::arg("first"), py::arg("last"),
        "Mean consecutive-spacing ratio; returns (mean_r, used, skipped_degenerate).");
    m.def(
        "shannon_profile",
        [](const EigenSystem& es, int smooth_window) {
            EntropyProfile prof = shannon_profile(es, smooth_window);
            std::vector<std::tuple<double, double, double>> rows;
            rows.reserve(prof.records.size());
            for (const auto& r : prof.records)
                rows.emplace_back(r.energy_over_n, r.sh_total, r.sh_total_smooth);
            return rows;
        },
        py::arg("es"), py::arg("smooth_window") = 200,
        "(E/N, sh_total, sh_total_smooth) per eigenstate.");

    py::class_<ProbabilityGrid>(m, "ProbabilityGrid")
        .def_readonly("N", &ProbabilityGrid::N)
        .def_readonly("values", &ProbabilityGrid::values)
        .def("at", py::overload_cast<int, int>(&ProbabilityGrid::at, py::const_),
             py::arg("n1"), py::arg("n3"))
        .def("sum", &ProbabilityGrid::sum)
        .def("argmax", &ProbabilityGrid::argmax);

    m.def("fock_projection", &fock_projection, py::arg("es"), py::arg("k"));
    m.def("husimi_projection", &husimi_projection_closed, py::arg("es"), py::arg("k"));
    m.def(
        "microcanonical_average",
        [](const EigenSystem& es, double center, double delta_e) {
            MicrocanonicalResult r = microcanonical_average(es, center, delta_e);
            return py::make_tuple(r.grid, r.indices);
        },
        py::arg("es"), py::arg("center"), py::arg("delta_e"));

    m.def(
        "energy",
        [](const std::array<double, 6>& v, const ModelParams& p) {
            CartesianState s;
            s.v = v;
            return energy_cartesian(s, p);
        },
        py::arg("state"), py::arg("params"),
        "Classical energy per particle of (Q1, P1, Q2, P2, Q3, P3).");
    m.def(
        "from_angles",
        [](double n1, double n3, double phi12, double phi32) {
            return to_cartesian(AngleActionView{n1, n3, phi12, phi32}).v;
        },
        py::arg("n1"), py::arg("n3"), py::arg("phi12"), py::arg("phi32"));
    m.def(
        "to_angles",
        [](const std::array<double, 6>& v) {
            CartesianState s;
            s.v = v;
            AngleActionView a = to_angles(s);
            return py::make_tuple(a.n1, a.n3, a.phi12, a.phi32);
        },
        py::arg("state"));
    m.def(
        "classical_Q",
        [](const std::array<double, 6>& v) {
            CartesianState s;
            s.v = v;
            return classical_Q(s);
        },
        py::arg("state"));
    m.def(
        "solve_rho2_zero",
        [](const ModelParams& p, double energy) {
            AngleActionView a = solve_rho2_zero(p, energy);
            return py::make_tuple(a.n1, a.n3);
        },
        py::arg("params"), py::arg("energy"));
    m.def(
        "find_critical_points",
        [](const ModelParams& p) {
            std::vector<py::dict> out;
            for (const CriticalPoint& cp : find_critical_points(p)) {
                py::dict d;
                d["n1"] = cp.state.n1;
                d["n3"] = cp.state.n3;
                d["phi12"] = cp.state.phi12;
                d["phi32"] = cp.state.phi32;
                d["energy"] = cp.energy;
                d["stability"] = cp.stability;
                out.push_back(d);
            }
            return out;
        },
        py::arg("params"));
    m.def(
        "integrate",
        [](const std::array<double, 6>& v, const ModelParams& p, double t_final,
           double sample_dt) {
            CartesianState s;
            s.v = v;
            Trajectory t = integrate(s, p, t_final, sample_dt);
            std::vector<std::array<double, 6>> samples;
            samples.reserve(t.samples.size());
            for (const auto& x : t.samples) samples.push_back(x.v);
            py::dict d;
            d["times"] = t.times;
            d["samples"] = samples;
            d["energy_drift"] = t.energy_drift;
            d["norm_drift"] = t.norm_drift;
            d["q_drift"] = t.q_drift;
            return d;
        },
        py::arg("state"), py::arg("params"), py::arg("t_final"), py::arg("sample_dt"));

    py::class_<VisitationHistogram>(m, "VisitationHistogram")
        .def_readonly("bins", &VisitationHistogram::bins)
        .def_readonly("counts", &VisitationHistogram::counts)
        .def_readonly("total", &VisitationHistogram::total);

    m.def(
        "ensemble_section",
        [](const ModelParams& p, double energy, int count, double t_short, double phi_section) {
            SectionResult r = ensemble_section(p, energy, count, t_short, phi_section);
            std::vector<std::tuple<double, double, double, double, int, int>> events;
            events.reserve(r.events.size());
            for (const auto& e : r.events)
                events.emplace_back(e.t, e.n1, e.n3, e.phi12, e.direction, e.seed_id);
            return events;
        },
        py::arg("params"), py::arg("energy"), py::arg("count"), py::arg("t_short"),
        py::arg("phi_section"), "(t, n1, n3, phi12, direction, seed_id) per crossing.");
    m.def(
        "visitation_of_points",
        [](const std::vector<std::pair<double, double>>& pts, int bins) {
            std::vector<SectionEvent> evs(pts.size());
            for (std::size_t i = 0; i < pts.size(); ++i) {
                evs[i].n1 = pts[i].first;
                evs[i].n3 = pts[i].second;
            }
            return visitation_of_events(evs, bins);
        },
        py::arg("points"), py::arg("bins"));
    m.def("rebin_grid", &rebin_grid, py::arg("grid"), py::arg("bins"));
    m.def(
        "compare_histograms",
        [](const VisitationHistogram& a, const VisitationHistogram& b) {
            CorrespondenceReport r = compare_histograms(a, b);
            py::dict d;
            d["pearson"] = r.pearson;
            d["support_cells"] = r.support_cells;
            d["peak_distance"] = r.peak_distance;
            d["disjoint_support"] = r.disjoint_support;
            return d;
        },
        py::arg("a"), py::arg("b"));
    m.def(
        "compare_grid_histogram",
        [](const ProbabilityGrid& g, const VisitationHistogram& h) {
            CorrespondenceReport r = compare_grid_histogram(g, h);
            py::dict d;
            d["pearson"] = r.pearson;
            d["support_cells"] = r.support_cells;
            d["peak_distance"] = r.peak_distance;
            d["disjoint_support"] = r.disjoint_support;
            return d;
        },
        py::arg("grid"), py::arg("hist"));
}
