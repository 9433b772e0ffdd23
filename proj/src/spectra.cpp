#include "triplewell/spectra.hpp"

#include <lapacke.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace triplewell {

SymMatrix build_hamiltonian(const ModelParams& params, const FockBasis& basis) {
    if (basis.total_particles() != params.N)
        throw std::invalid_argument("build_hamiltonian: basis/params N mismatch");
    const std::size_t d = basis.dimension();
    SymMatrix h(d);
    const double hop = params.J / std::sqrt(2.0);
    for (std::size_t i = 0; i < d; ++i) {
        const FockState& s = basis.state(i);
        double imb = double(s.n1 - s.n2 + s.n3);
        h.at(i, i) = params.U / params.N * imb * imb + params.epsilon * double(s.n3 - s.n1);
        // one boson hops 2 -> 1: (n1+1, n2-1, n3)
        if (s.n2 > 0) {
            std::size_t j = basis.index(s.n1 + 1, s.n3);
            double v = hop * std::sqrt(double(s.n1 + 1) * double(s.n2));
            h.at(i, j) = v;
            h.at(j, i) = v;
        }
        // one boson hops 2 -> 3: (n1, n2-1, n3+1)
        if (s.n2 > 0) {
            std::size_t j = basis.index(s.n1, s.n3 + 1);
            double v = hop * std::sqrt(double(s.n3 + 1) * double(s.n2));
            h.at(i, j) = v;
            h.at(j, i) = v;
        }
    }
    return h;
}

SymMatrix build_Q(const FockBasis& basis) {
    const std::size_t d = basis.dimension();
    SymMatrix q(d);
    for (std::size_t i = 0; i < d; ++i) {
        const FockState& s = basis.state(i);
        q.at(i, i) = double(s.n1 + s.n3);
        // -a1^dag a3: (n1+1, n2, n3-1)
        if (s.n3 > 0) {
            std::size_t j = basis.index(s.n1 + 1, s.n3 - 1);
            double v = -std::sqrt(double(s.n1 + 1) * double(s.n3));
            q.at(i, j) = v;
            q.at(j, i) = v;
        }
    }
    return q;
}

EigenSystem diagonalize(const SymMatrix& H, const FockBasis& basis, const ModelParams& params) {
    const std::size_t d = H.dim;
    if (d != basis.dimension())
        throw std::invalid_argument("diagonalize: matrix/basis dimension mismatch");
    for (std::size_t j = 0; j < d; ++j)
        for (std::size_t i = 0; i < j; ++i)
            if (std::abs(H.at(i, j) - H.at(j, i)) > 1e-12)
                throw std::invalid_argument("diagonalize: matrix not symmetric");
    EigenSystem es{params, basis, std::vector<double>(d), H.a};
    lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'V', 'L', lapack_int(d),
                                     es.vectors.data(), lapack_int(d), es.energies.data());
    if (info != 0)
        throw std::runtime_error("diagonalize: dsyevd failed, info=" + std::to_string(info));
    return es;
}

namespace {

// y = Q x, exploiting that Q has <= 3 entries per row.
void apply_Q(const FockBasis& basis, const double* x, double* y) {
    const std::size_t d = basis.dimension();
    for (std::size_t i = 0; i < d; ++i) {
        const FockState& s = basis.state(i);
        double acc = double(s.n1 + s.n3) * x[i];
        if (s.n3 > 0)
            acc -= std::sqrt(double(s.n1 + 1) * double(s.n3)) * x[basis.index(s.n1 + 1, s.n3 - 1)];
        if (s.n1 > 0)
            acc -= std::sqrt(double(s.n1) * double(s.n3 + 1)) * x[basis.index(s.n1 - 1, s.n3 + 1)];
        y[i] = acc;
    }
}

}  // namespace

std::vector<double> q_labels(const EigenSystem& es) {
    if (es.params.epsilon != 0.0)
        throw std::invalid_argument("q_labels: requires epsilon = 0");
    const std::size_t d = es.dim();
    const double emax = std::max(std::abs(es.energies.front()), std::abs(es.energies.back()));
    const double tol = 1e-9 * std::max(emax, 1.0);

    std::vector<double> labels(d, 0.0);
    std::vector<double> qx(d);
    std::size_t g0 = 0;
    while (g0 < d) {
        std::size_t g1 = g0 + 1;
        while (g1 < d && es.energies[g1] - es.energies[g1 - 1] < tol) ++g1;
        const std::size_t m = g1 - g0;
        if (m == 1) {
            apply_Q(es.basis, es.vec(g0), qx.data());
            double q = std::inner_product(es.vec(g0), es.vec(g0) + d, qx.begin(), 0.0);
            labels[g0] = q / es.params.N;
        } else {
            // diagonalize Q restricted to the degenerate subspace
            std::vector<double> sub(m * m);
            std::vector<std::vector<double>> qcols(m, std::vector<double>(d));
            for (std::size_t a = 0; a < m; ++a) apply_Q(es.basis, es.vec(g0 + a), qcols[a].data());
            for (std::size_t a = 0; a < m; ++a)
                for (std::size_t b = 0; b < m; ++b)
                    sub[a + b * m] = std::inner_product(es.vec(g0 + a), es.vec(g0 + a) + d,
                                                        qcols[b].begin(), 0.0);
            std::vector<double> w(m);
            lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, 'N', 'L', lapack_int(m), sub.data(),
                                             lapack_int(m), w.data());
            if (info != 0) throw std::runtime_error("q_labels: subspace eigensolve failed");
            for (std::size_t a = 0; a < m; ++a) labels[g0 + a] = w[a] / es.params.N;
        }
        g0 = g1;
    }
    // snap to the exact grid q_m = 2(m-1)/N
    for (double& q : labels) {
        double m = std::round(q * es.params.N / 2.0);
        double snapped = 2.0 * m / es.params.N;
        if (std::abs(q - snapped) < 1e-8) q = snapped;
    }
    return labels;
}

EntropyProfile shannon_profile(const EigenSystem& es, int smooth_window) {
    const std::size_t d = es.dim();
    EntropyProfile profile;
    profile.records.resize(d);
    for (std::size_t k = 0; k < d; ++k) {
        const double* v = es.vec(k);
        double up = 0.0, lo = 0.0;
        for (std::size_t i = 0; i < d; ++i) {
            double p = v[i] * v[i];
            if (p < 1e-300) continue;
            double term = -p * std::log(p);
            const FockState& s = es.basis.state(i);
            if (s.n2 >= s.n1 + s.n3)
                up += term;
            else
                lo += term;
        }
        auto& r = profile.records[k];
        r.energy_over_n = es.energies[k] / es.params.N;
        r.sh_upper = up;
        r.sh_lower = lo;
        r.sh_total = up + lo;
    }
    // flat running mean over the smooth_window nearest-in-energy states,
    // truncated at the spectrum edges
    const long w = smooth_window;
    for (long k = 0; k < long(d); ++k) {
        long lo = std::max(0l, k - w / 2);
        long hi = std::min(long(d), lo + w);
        lo = std::max(0l, hi - w);
        double st = 0, su = 0, sl = 0;
        for (long i = lo; i < hi; ++i) {
            st += profile.records[i].sh_total;
            su += profile.records[i].sh_upper;
            sl += profile.records[i].sh_lower;
        }
        double n = double(hi - lo);
        profile.records[k].sh_total_smooth = st / n;
        profile.records[k].sh_upper_smooth = su / n;
        profile.records[k].sh_lower_smooth = sl / n;
    }
    return profile;
}

std::vector<std::size_t> select_near(const EigenSystem& es, double target, std::size_t count) {
    const std::size_t d = es.dim();
    if (count < 1 || count > d) throw std::invalid_argument("select_near: bad count");
    std::vector<std::size_t> idx(d);
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
        double da = std::abs(es.energies[a] / es.params.N - target);
        double db = std::abs(es.energies[b] / es.params.N - target);
        if (da != db) return da < db;
        return a < b;
    });
    idx.resize(count);
    std::sort(idx.begin(), idx.end());
    return idx;
}

std::vector<std::size_t> select_window(const EigenSystem& es, double center, double half_width) {
    std::vector<std::size_t> out;
    for (std::size_t k = 0; k < es.dim(); ++k)
        if (std::abs(es.energies[k] / es.params.N - center) <= half_width) out.push_back(k);
    return out;
}

SpacingRatioResult spacing_ratio(const std::vector<double>& energies, std::size_t first,
                                 std::size_t last) {
    if (last > energies.size() || first >= last || last - first < 50)
        throw std::invalid_argument("spacing_ratio: window must contain >= 50 levels");
    SpacingRatioResult res;
    double sum = 0.0;
    for (std::size_t k = first; k + 2 < last; ++k) {
        double s0 = energies[k + 1] - energies[k];
        double s1 = energies[k + 2] - energies[k + 1];
        if (s0 == 0.0 || s1 == 0.0) {
            ++res.skipped_degenerate;
            continue;
        }
        sum += std::min(s0, s1) / std::max(s0, s1);
        ++res.used;
    }
    if (res.used) res.mean_r = sum / double(res.used);
    return res;
}

SpacingRatioResult spacing_ratio(const EigenSystem& es, std::size_t first, std::size_t last) {
    return spacing_ratio(es.energies, first, last);
}

}  // namespace triplewell
