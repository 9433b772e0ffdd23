#include "triplewell/exports.hpp"

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

namespace triplewell {

using nlohmann::json;

std::string provenance_line(const std::string& hash) {
    return "# tw3 v" + std::string(kToolkitVersion) + " config=" + hash;
}

std::string config_hash(const std::string& canonical) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : canonical) {
        h ^= c;
        h *= 1099511628211ull;
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

namespace {

std::ofstream open_out(const std::string& path) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw std::runtime_error("cannot open " + path);
    out << std::setprecision(17);
    return out;
}

std::ifstream open_in(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    return in;
}

void skip_comments(std::ifstream& in) {
    while (in.peek() == '#') {
        std::string line;
        std::getline(in, line);
    }
}

}  // namespace

void write_energies_csv(const EigenSystem& es, const std::string& path,
                        const std::string& provenance) {
    auto out = open_out(path);
    out << provenance << "\n";
    out << "index,E,E_over_N\n";
    for (std::size_t k = 0; k < es.dim(); ++k)
        out << k << "," << es.energies[k] << "," << es.energies[k] / es.params.N << "\n";
}

void write_entropy_csv(const EigenSystem& es, const EntropyProfile& profile,
                       const std::string& path, const std::string& provenance) {
    auto out = open_out(path);
    out << provenance << "\n";
    out << "index,E,E_over_N,sh_total,sh_upper,sh_lower,sh_total_smooth,sh_upper_smooth,"
           "sh_lower_smooth\n";
    for (std::size_t k = 0; k < profile.records.size(); ++k) {
        const auto& r = profile.records[k];
        out << k << "," << es.energies[k] << "," << r.energy_over_n << "," << r.sh_total << ","
            << r.sh_upper << "," << r.sh_lower << "," << r.sh_total_smooth << ","
            << r.sh_upper_smooth << "," << r.sh_lower_smooth << "\n";
    }
}

void write_grid_csv(const ProbabilityGrid& grid, const std::string& path,
                    const std::string& provenance) {
    auto out = open_out(path);
    out << provenance << "\n";
    out << "n1,n3,value\n";
    for (int n1 = grid.N; n1 >= 0; --n1)
        for (int n3 = 0; n3 <= grid.N - n1; ++n3)
            out << n1 << "," << n3 << "," << grid.at(n1, n3) << "\n";
}

void write_grid_matrix(const ProbabilityGrid& grid, const std::string& path,
                       const std::string& provenance) {
    auto out = open_out(path);
    out << provenance << "\n";
    for (int n1 = 0; n1 <= grid.N; ++n1) {
        for (int n3 = 0; n3 <= grid.N; ++n3) {
            double v = (n1 + n3 <= grid.N) ? grid.at(n1, n3) : 0.0;
            out << v << (n3 == grid.N ? '\n' : ' ');
        }
    }
}

ProbabilityGrid read_grid_csv(const std::string& path) {
    auto in = open_in(path);
    skip_comments(in);
    std::string header;
    std::getline(in, header);
    std::vector<std::tuple<int, int, double>> rows;
    int nmax = 0;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        int n1, n3;
        double v;
        char c;
        ls >> n1 >> c >> n3 >> c >> v;
        if (!ls) throw std::runtime_error("bad grid row in " + path + ": " + line);
        rows.emplace_back(n1, n3, v);
        nmax = std::max(nmax, n1 + n3);
    }
    ProbabilityGrid g{nmax, std::vector<double>(FockBasis::dimension_for(nmax), 0.0)};
    for (auto [n1, n3, v] : rows) g.at(n1, n3) = v;
    return g;
}

void write_trajectory_csv(const Trajectory& traj, const ModelParams& params,
                          const std::string& path, const std::string& provenance) {
    auto out = open_out(path);
    out << provenance << "\n";
    out << "t,n1,n2,n3,phi12,phi32,E,Q_classical\n";
    for (std::size_t i = 0; i < traj.samples.size(); ++i) {
        const CartesianState& s = traj.samples[i];
        AngleActionView a = to_angles(s);
        out << traj.times[i] << "," << a.n1 << "," << (1.0 - a.n1 - a.n3) << "," << a.n3 << ","
            << a.phi12 << "," << a.phi32 << "," << energy_cartesian(s, params) << ","
            << classical_Q(s) << "\n";
    }
}

void write_events_csv(const std::vector<SectionEvent>& events, const std::string& path,
                      const std::string& provenance) {
    auto out = open_out(path);
    out << provenance << "\n";
    out << "t,n1,n3,phi12,direction,seed_id\n";
    for (const auto& ev : events)
        out << ev.t << "," << ev.n1 << "," << ev.n3 << "," << ev.phi12 << "," << ev.direction
            << "," << ev.seed_id << "\n";
}

void write_histogram(const VisitationHistogram& hist, const std::string& path,
                     const std::string& provenance) {
    auto out = open_out(path);
    out << provenance << "\n";
    for (int i1 = 0; i1 < hist.bins; ++i1)
        for (int i3 = 0; i3 < hist.bins; ++i3)
            out << hist.at(i1, i3) << (i3 == hist.bins - 1 ? '\n' : ' ');
    json meta;
    meta["bins"] = hist.bins;
    meta["total_samples"] = hist.total;
    meta["provenance"] = provenance;
    std::ofstream mout(path + ".json", std::ios::trunc);
    mout << meta.dump(2) << "\n";
}

VisitationHistogram read_histogram(const std::string& path) {
    auto in = open_in(path);
    skip_comments(in);
    std::vector<std::vector<double>> rows;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        std::vector<double> row;
        double v;
        while (ls >> v) row.push_back(v);
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty() || rows.size() != rows[0].size())
        throw std::runtime_error("histogram file is not a square matrix: " + path);
    VisitationHistogram h;
    h.bins = int(rows.size());
    h.counts.reserve(rows.size() * rows.size());
    double total = 0.0;
    for (const auto& row : rows)
        for (double v : row) {
            h.counts.push_back(v);
            total += v;
        }
    h.total = std::size_t(total);
    return h;
}

void write_critical_points_json(const std::vector<CriticalPoint>& points, const std::string& path,
                                const std::string& provenance) {
    json arr = json::array();
    for (const auto& cp : points) {
        json rec;
        rec["n1"] = cp.state.n1;
        rec["n3"] = cp.state.n3;
        rec["phi12"] = cp.state.phi12;
        rec["phi32"] = cp.state.phi32;
        rec["energy"] = cp.energy;
        rec["stability"] = cp.stability;
        rec["hessian_signature"] = {cp.signature[0], cp.signature[1]};
        rec["gradient_norm"] = cp.gradient_norm;
        arr.push_back(rec);
    }
    json doc;
    doc["provenance"] = provenance;
    doc["critical_points"] = arr;
    auto out = open_out(path);
    out << doc.dump(2) << "\n";
}

}  // namespace triplewell
