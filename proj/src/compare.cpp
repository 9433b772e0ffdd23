#include "triplewell/compare.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace triplewell {

VisitationHistogram rebin_grid(const ProbabilityGrid& grid, int bins) {
    if (bins < 2) throw std::invalid_argument("rebin_grid: bins must be >= 2");
    VisitationHistogram h;
    h.bins = bins;
    h.counts.assign(std::size_t(bins) * bins, 0.0);
    const int N = grid.N;
    for (int n1 = N; n1 >= 0; --n1) {
        for (int n3 = 0; n3 <= N - n1; ++n3) {
            int i1 = std::clamp(int(double(n1) / N * bins), 0, bins - 1);
            int i3 = std::clamp(int(double(n3) / N * bins), 0, bins - 1);
            h.at(i1, i3) += grid.at(n1, n3);
        }
    }
    h.total = grid.values.size();
    return h;
}

CorrespondenceReport compare_histograms(const VisitationHistogram& a,
                                        const VisitationHistogram& b) {
    if (a.bins != b.bins) throw std::invalid_argument("compare: bin count mismatch");
    const std::size_t n = a.counts.size();
    double suma = 0.0, sumb = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        suma += a.counts[i];
        sumb += b.counts[i];
    }
    if (suma <= 0.0 || sumb <= 0.0) throw std::invalid_argument("compare: empty histogram");

    CorrespondenceReport rep;
    // common support, normalized densities
    std::vector<double> xs, ys;
    for (std::size_t i = 0; i < n; ++i) {
        if (a.counts[i] > 0.0 && b.counts[i] > 0.0) {
            xs.push_back(a.counts[i] / suma);
            ys.push_back(b.counts[i] / sumb);
        }
    }
    rep.support_cells = xs.size();
    if (xs.size() < 2) {
        rep.disjoint_support = true;
        return rep;
    }
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        mx += xs[i];
        my += ys[i];
    }
    mx /= double(xs.size());
    my /= double(xs.size());
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sxy += (xs[i] - mx) * (ys[i] - my);
        sxx += (xs[i] - mx) * (xs[i] - mx);
        syy += (ys[i] - my) * (ys[i] - my);
    }
    rep.pearson = (sxx > 0.0 && syy > 0.0) ? sxy / std::sqrt(sxx * syy) : 0.0;

    auto peak = [](const VisitationHistogram& h) {
        std::size_t best = 0;
        for (std::size_t i = 1; i < h.counts.size(); ++i)
            if (h.counts[i] > h.counts[best]) best = i;
        double x = (double(best / std::size_t(h.bins)) + 0.5) / h.bins;
        double y = (double(best % std::size_t(h.bins)) + 0.5) / h.bins;
        return std::pair<double, double>{x, y};
    };
    auto [ax, ay] = peak(a);
    auto [bx, by] = peak(b);
    rep.peak_distance = std::hypot(ax - bx, ay - by);
    return rep;
}

CorrespondenceReport compare_grid_histogram(const ProbabilityGrid& grid,
                                            const VisitationHistogram& hist) {
    return compare_histograms(rebin_grid(grid, hist.bins), hist);
}

}  // namespace triplewell
