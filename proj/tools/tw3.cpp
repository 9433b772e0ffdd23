// tw3: batch driver for the triple-well toolkit.
//
// Subcommands: spectrum | entropy | project | classical | compare.
// Every data file starts with a provenance comment (toolkit version + config
// hash) so identical configs reproduce byte-identical outputs.

#include <cmath>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "nlohmann/json.hpp"
#include "triplewell/exports.hpp"
#include "triplewell/integrator.hpp"

extern "C" void openblas_set_num_threads(int);

namespace tw = triplewell;
namespace fs = std::filesystem;

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Global {
    std::string out = "out";
    int threads = 1;
    bool verbose = false;
};

std::string resolve(const Global& g, const std::string& name) {
    fs::create_directories(g.out);
    return (fs::path(g.out) / name).string();
}

std::string provenance_for(const std::string& canonical) {
    return tw::provenance_line(tw::config_hash(canonical));
}

tw::EigenSystem ensure_eigensystem(const Global& g, const tw::ModelParams& p) {
    fs::create_directories(fs::path(g.out) / "cache");
    std::ostringstream key;
    key << "N=" << p.N << " U=" << p.U << " J=" << p.J << " eps=" << p.epsilon
        << " v=" << tw::kToolkitVersion;
    fs::path path = fs::path(g.out) / "cache" / ("es_" + tw::config_hash(key.str()) + ".tw3w");
    if (tw::eigensystem_cache_matches(path.string(), p)) {
        std::cerr << "tw3: warm cache, skipping diagonalization (" << path.filename().string()
                  << ")\n";
        return tw::load_eigensystem(path.string());
    }
    if (g.verbose)
        std::cerr << "tw3: diagonalizing D=" << tw::FockBasis::dimension_for(p.N) << "\n";
    tw::FockBasis basis(p.N);
    tw::EigenSystem es = tw::diagonalize(tw::build_hamiltonian(p, basis), basis, p);
    tw::save_eigensystem(es, path.string());
    return es;
}

// seeds on the surface phi32 = phi_section at the given energy, from a
// near-square (n1, phi12) grid with about `count` nodes
std::vector<tw::AngleActionView> section_seeds(const tw::ModelParams& p, double energy, int count,
                                               double phi_section) {
    std::vector<tw::AngleActionView> seeds;
    int g1 = std::max(1, int(std::round(std::sqrt(double(count)))));
    int g2 = std::max(1, (count + g1 - 1) / g1);
    for (int i = 0; i < g1; ++i) {
        double n1 = (i + 0.5) / g1;
        for (int j = 0; j < g2; ++j) {
            double phi12 = -kPi + 2.0 * kPi * (j + 0.5) / g2;
            try {
                for (const auto& ic : tw::solve_on_section(p, energy, n1, phi12, phi_section))
                    seeds.push_back(ic);
            } catch (const std::exception&) {
                // off-shell nodes are simply skipped
            }
        }
    }
    return seeds;
}

struct SpectrumOpts {
    tw::ModelParams params;
};

struct EntropyOpts {
    tw::ModelParams params;
    int smooth_window = 200;
};

struct ProjectOpts {
    tw::ModelParams params;
    int state = -1;        // explicit eigenstate index, or
    double energy = 0.0752;  // nearest-to-E/N selection
    int count = 1;
    double window = 0.0;   // full width; 0 selects by count
    bool husimi = false;
    double power = 1.0;
};

struct ClassicalOpts {
    tw::ModelParams params{0.7, 1.0, 1.5, 1};
    std::string recipe = "critical";
    double energy = 0.0752;
    double t_final = 1e4;
    double t_short = 1000.0;
    double sample_dt = 0.01;
    double phi_section = kPi;
    int seeds = 20;
    int bins = 200;
    double window = 0.02;
};

struct CompareOpts {
    std::string grid_a, grid_b, hist_a, hist_b;
    int bins = 200;
};

void run_spectrum(const Global& g, const SpectrumOpts& o) {
    std::ostringstream c;
    c << "spectrum N=" << o.params.N << " U=" << o.params.U << " J=" << o.params.J
      << " eps=" << o.params.epsilon;
    tw::EigenSystem es = ensure_eigensystem(g, o.params);
    std::string path = resolve(g, "energies.csv");
    tw::write_energies_csv(es, path, provenance_for(c.str()));
    std::cout << "tw3: wrote " << path << " (" << es.dim() << " levels)\n";
}

void run_entropy(const Global& g, const EntropyOpts& o) {
    std::ostringstream c;
    c << "entropy N=" << o.params.N << " U=" << o.params.U << " J=" << o.params.J
      << " eps=" << o.params.epsilon << " smooth=" << o.smooth_window;
    tw::EigenSystem es = ensure_eigensystem(g, o.params);
    tw::EntropyProfile prof = tw::shannon_profile(es, o.smooth_window);
    std::string path = resolve(g, "entropy.csv");
    tw::write_entropy_csv(es, prof, path, provenance_for(c.str()));
    std::cout << "tw3: wrote " << path << "\n";
}

void run_project(const Global& g, const ProjectOpts& o) {
    std::ostringstream c;
    c << "project N=" << o.params.N << " U=" << o.params.U << " J=" << o.params.J
      << " eps=" << o.params.epsilon << " state=" << o.state << " E=" << o.energy
      << " count=" << o.count << " window=" << o.window << " husimi=" << o.husimi
      << " power=" << o.power;
    std::string prov = provenance_for(c.str());
    tw::EigenSystem es = ensure_eigensystem(g, o.params);

    auto emit = [&](const tw::ProbabilityGrid& grid, const std::string& stem) {
        tw::ProbabilityGrid out = (o.power == 1.0) ? grid : tw::raise_power(grid, o.power);
        tw::write_grid_csv(out, resolve(g, stem + ".csv"), prov);
        tw::write_grid_matrix(out, resolve(g, stem + ".mat"), prov);
        std::cout << "tw3: wrote " << resolve(g, stem + ".csv") << "\n";
    };

    if (o.state >= 0) {
        std::size_t k = std::size_t(o.state);
        emit(o.husimi ? tw::husimi_projection_closed(es, k) : tw::fock_projection(es, k),
             "state_" + std::to_string(k));
        return;
    }
    if (o.window > 0.0) {
        tw::MicrocanonicalResult avg =
            o.husimi ? tw::microcanonical_average_husimi(es, o.energy, o.window)
                     : tw::microcanonical_average(es, o.energy, o.window);
        std::cerr << "tw3: averaged " << avg.indices.size() << " eigenstates in ["
                  << avg.e_min << ", " << avg.e_max << "]\n";
        emit(avg.grid, "avg_grid");
        return;
    }
    for (std::size_t k : tw::select_near(es, o.energy, std::size_t(o.count)))
        emit(o.husimi ? tw::husimi_projection_closed(es, k) : tw::fock_projection(es, k),
             "state_" + std::to_string(k));
}

void run_classical(const Global& g, const ClassicalOpts& o) {
    std::ostringstream c;
    c << "classical recipe=" << o.recipe << " U=" << o.params.U << " J=" << o.params.J
      << " eps=" << o.params.epsilon << " E=" << o.energy << " tf=" << o.t_final
      << " ts=" << o.t_short << " dt=" << o.sample_dt << " phi=" << o.phi_section
      << " seeds=" << o.seeds << " bins=" << o.bins;
    std::string prov = provenance_for(c.str());
    const tw::ModelParams& p = o.params;

    if (o.recipe == "critical") {
        auto pts = tw::find_critical_points(p);
        std::string path = resolve(g, "critical_points.json");
        tw::write_critical_points_json(pts, path, prov);
        std::cout << "tw3: wrote " << path << " (" << pts.size() << " points)\n";
        return;
    }
    if (o.recipe == "fig2") {
        tw::AngleActionView base = tw::solve_rho2_zero(p, o.energy);
        const double dphi[] = {0.0, kPi / 4, kPi / 2, 3 * kPi / 4, kPi, 5 * kPi / 4};
        for (int k = 0; k < 6; ++k) {
            tw::AngleActionView seed = base;
            seed.phi12 = 0.0;
            seed.phi32 = dphi[k];
            tw::Trajectory t =
                tw::integrate(tw::to_cartesian(seed), p, o.t_final, o.sample_dt);
            std::string path = resolve(g, "fig2_" + std::to_string(k) + ".csv");
            tw::write_trajectory_csv(t, p, path, prov);
            std::cout << "tw3: wrote " << path << " (drift " << t.energy_drift << ")\n";
        }
        return;
    }
    if (o.recipe == "fig3") {
        tw::AngleActionView base = tw::solve_rho2_zero(p, o.energy);
        for (int k = 0; k < 2; ++k) {
            tw::AngleActionView seed = base;
            seed.phi12 = k * kPi / 4;
            seed.phi32 = k * kPi / 4;
            tw::Trajectory t =
                tw::integrate(tw::to_cartesian(seed), p, o.t_final, o.sample_dt);
            std::string path = resolve(g, std::string("fig3_") + (k == 0 ? "a" : "b") + ".csv");
            tw::write_trajectory_csv(t, p, path, prov);
            std::cout << "tw3: wrote " << path << "\n";
        }
        return;
    }
    if (o.recipe == "section") {
        tw::SectionResult r =
            tw::ensemble_section(p, o.energy, o.seeds, o.t_short, o.phi_section, o.sample_dt);
        tw::write_events_csv(r.events, resolve(g, "events.csv"), prov);
        tw::write_histogram(tw::visitation_of_events(r.events, o.bins),
                            resolve(g, "section_hist.txt"), prov);
        std::cout << "tw3: wrote " << resolve(g, "events.csv") << " (" << r.events.size()
                  << " events, " << r.dropped_ill_conditioned << " intervals dropped)\n";
        return;
    }
    if (o.recipe == "fig13") {
        tw::VisitationHistogram overlap;
        for (double phi : {0.0, kPi}) {
            tw::SectionResult r =
                tw::ensemble_section(p, o.energy, o.seeds, o.t_short, phi, o.sample_dt);
            std::string tag = phi == 0.0 ? "phi0" : "phipi";
            tw::write_events_csv(r.events, resolve(g, "events_" + tag + ".csv"), prov);
            tw::VisitationHistogram h = tw::visitation_of_events(r.events, o.bins);
            if (overlap.bins == 0)
                overlap = h;
            else
                overlap.merge(h);
            std::cout << "tw3: section " << tag << ": " << r.events.size() << " events\n";
        }
        tw::write_histogram(overlap, resolve(g, "overlap_hist.txt"), prov);
        // long-time residence of one energy-shell trajectory for the overlay
        auto seeds = section_seeds(p, o.energy, 1, o.phi_section);
        if (!seeds.empty()) {
            tw::Trajectory t =
                tw::integrate(tw::to_cartesian(seeds.front()), p, o.t_final, o.sample_dt);
            tw::write_histogram(tw::visitation(t, o.bins), resolve(g, "longtime_hist.txt"), prov);
        }
        std::cout << "tw3: wrote " << resolve(g, "overlap_hist.txt") << "\n";
        return;
    }
    if (o.recipe == "fig14") {
        auto seeds = section_seeds(p, o.energy, o.seeds, o.phi_section);
        if (seeds.empty()) throw std::runtime_error("fig14: no seeds on the energy shell");
        tw::VisitationHistogram hist;
        for (const auto& ic : seeds) {
            tw::Trajectory t = tw::integrate(tw::to_cartesian(ic), p, o.t_final, o.sample_dt);
            tw::VisitationHistogram h = tw::visitation(t, o.bins);
            if (hist.bins == 0)
                hist = h;
            else
                hist.merge(h);
        }
        tw::write_histogram(hist, resolve(g, "classical_hist.txt"), prov);
        std::cout << "tw3: wrote " << resolve(g, "classical_hist.txt") << " (" << seeds.size()
                  << " trajectories)\n";
        tw::ModelParams qp = o.params;
        tw::EigenSystem es = ensure_eigensystem(g, qp);
        tw::MicrocanonicalResult avg = tw::microcanonical_average(es, o.energy, o.window);
        std::cerr << "tw3: microcanonical window holds " << avg.indices.size() << " states\n";
        tw::write_grid_csv(avg.grid, resolve(g, "avg_grid.csv"), prov);
        std::cout << "tw3: wrote " << resolve(g, "avg_grid.csv") << "\n";
        return;
    }
    throw std::invalid_argument("unknown recipe: " + o.recipe);
}

void run_compare(const Global& g, const CompareOpts& o) {
    std::ostringstream c;
    c << "compare ga=" << o.grid_a << " gb=" << o.grid_b << " ha=" << o.hist_a
      << " hb=" << o.hist_b << " bins=" << o.bins;

    tw::CorrespondenceReport rep;
    if (!o.grid_a.empty() && !o.hist_a.empty()) {
        rep = tw::compare_grid_histogram(tw::read_grid_csv(o.grid_a),
                                         tw::read_histogram(o.hist_a));
    } else if (!o.grid_a.empty() && !o.grid_b.empty()) {
        rep = tw::compare_histograms(tw::rebin_grid(tw::read_grid_csv(o.grid_a), o.bins),
                                     tw::rebin_grid(tw::read_grid_csv(o.grid_b), o.bins));
    } else if (!o.hist_a.empty() && !o.hist_b.empty()) {
        rep = tw::compare_histograms(tw::read_histogram(o.hist_a), tw::read_histogram(o.hist_b));
    } else {
        throw std::invalid_argument("compare: need two of --grid-a/--grid-b/--hist-a/--hist-b");
    }
    if (rep.disjoint_support)
        std::cerr << "tw3: warning: inputs have (nearly) disjoint support\n";

    nlohmann::json j = {{"pearson", rep.pearson},
                        {"support_cells", rep.support_cells},
                        {"peak_distance", rep.peak_distance},
                        {"disjoint_support", rep.disjoint_support}};
    std::string path = resolve(g, "compare.json");
    std::ofstream out(path);
    out << "// " << provenance_for(c.str()) << "\n" << j.dump(2) << "\n";
    std::cout << j.dump(2) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"triple-well Bose-Hubbard toolkit"};
    app.require_subcommand(1);
    app.set_config("--config", "", "key=value config file; flags override");

    Global g;
    app.add_option("--out", g.out, "output directory")->capture_default_str();
    app.add_option("--threads", g.threads, "BLAS threads")->capture_default_str();
    app.add_flag("--verbose", g.verbose, "diagnostics on stderr");

    auto add_model = [](CLI::App* sub, tw::ModelParams& p, bool with_n = true) {
        sub->add_option("-U,--U", p.U, "interaction")->capture_default_str();
        sub->add_option("-J,--J", p.J, "hopping")->capture_default_str();
        sub->add_option("-e,--epsilon", p.epsilon, "tilt")->capture_default_str();
        if (with_n) sub->add_option("-N,--bosons", p.N, "boson number")->capture_default_str();
    };

    SpectrumOpts so;
    so.params = {0.7, 1.0, 1.5, 2};
    CLI::App* spectrum = app.add_subcommand("spectrum", "diagonalize and export energies");
    spectrum->fallthrough();  // global flags may follow the subcommand
    add_model(spectrum, so.params);

    EntropyOpts eo;
    eo.params = {0.7, 1.0, 1.5, 120};
    CLI::App* entropy = app.add_subcommand("entropy", "Shannon entropy profile");
    entropy->fallthrough();  // global flags may follow the subcommand
    add_model(entropy, eo.params);
    entropy->add_option("--smooth", eo.smooth_window, "running-mean window")
        ->capture_default_str();

    ProjectOpts po;
    po.params = {0.7, 1.0, 1.5, 130};
    CLI::App* project = app.add_subcommand("project", "eigenstate projections on (n1, n3)");
    project->fallthrough();  // global flags may follow the subcommand
    add_model(project, po.params);
    project->add_option("--state", po.state, "explicit eigenstate index");
    project->add_option("--energy", po.energy, "target E/N")->capture_default_str();
    project->add_option("--count", po.count, "states nearest to --energy")->capture_default_str();
    project->add_option("--window", po.window, "average over |E/N - energy| <= window/2");
    project->add_flag("--husimi", po.husimi, "smoothed (Husimi) projection");
    project->add_option("--power", po.power, "display exponent")->capture_default_str();

    ClassicalOpts co;
    CLI::App* classical = app.add_subcommand("classical", "trajectories, sections, histograms");
    classical->fallthrough();  // global flags may follow the subcommand
    add_model(classical, co.params, false);
    classical
        ->add_option("--recipe", co.recipe, "critical|fig2|fig3|section|fig13|fig14")
        ->capture_default_str();
    classical->add_option("--energy", co.energy, "target E/N")->capture_default_str();
    classical->add_option("--t-final", co.t_final, "trajectory horizon")->capture_default_str();
    classical->add_option("--t-short", co.t_short, "per-seed section horizon")
        ->capture_default_str();
    classical->add_option("--sample-dt", co.sample_dt, "sampling step")->capture_default_str();
    classical->add_option("--phi-section", co.phi_section, "section phase")->capture_default_str();
    classical->add_option("--seeds", co.seeds, "ensemble size")->capture_default_str();
    classical->add_option("--bins", co.bins, "histogram bins per axis")->capture_default_str();
    classical->add_option("--window", co.window, "microcanonical window (fig14)")
        ->capture_default_str();

    CompareOpts xo;
    CLI::App* compare = app.add_subcommand("compare", "correlate two densities");
    compare->fallthrough();  // global flags may follow the subcommand
    compare->add_option("--grid-a", xo.grid_a, "lattice grid CSV");
    compare->add_option("--grid-b", xo.grid_b, "lattice grid CSV");
    compare->add_option("--hist-a", xo.hist_a, "histogram matrix file");
    compare->add_option("--hist-b", xo.hist_b, "histogram matrix file");
    compare->add_option("--bins", xo.bins, "rebin resolution for grid inputs")
        ->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    openblas_set_num_threads(std::max(1, g.threads));
    try {
        if (spectrum->parsed()) run_spectrum(g, so);
        if (entropy->parsed()) run_entropy(g, eo);
        if (project->parsed()) run_project(g, po);
        if (classical->parsed()) run_classical(g, co);
        if (compare->parsed()) run_compare(g, xo);
    } catch (const std::invalid_argument& e) {
        std::cerr << "tw3: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::domain_error& e) {
        std::cerr << "tw3: config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "tw3: numeric failure: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
