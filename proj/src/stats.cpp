#include "theonlab/stats.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace theonlab {

double chi2_sf(double stat, double dof) {
    if (dof <= 0) return 1.0;
    boost::math::chi_squared_distribution<double> dist(dof);
    return boost::math::cdf(boost::math::complement(dist, std::max(0.0, stat)));
}

namespace {

using Table = std::vector<std::vector<std::uint64_t>>;

void merge_rows(Table& t, size_t a, size_t b) { // b into a, erase b
    for (size_t j = 0; j < t[a].size(); ++j) t[a][j] += t[b][j];
    t.erase(t.begin() + b);
}

void transpose(Table& t) {
    Table out(t[0].size(), std::vector<std::uint64_t>(t.size()));
    for (size_t i = 0; i < t.size(); ++i)
        for (size_t j = 0; j < t[i].size(); ++j) out[j][i] = t[i][j];
    t = std::move(out);
}

std::pair<size_t, size_t> two_smallest(const std::vector<double>& totals) {
    size_t a = 0, b = 1;
    if (totals[b] < totals[a]) std::swap(a, b);
    for (size_t i = 2; i < totals.size(); ++i) {
        if (totals[i] < totals[a]) { b = a; a = i; }
        else if (totals[i] < totals[b]) b = i;
    }
    if (a > b) std::swap(a, b);
    return {a, b};
}

} // namespace

Chi2Result contingency_chi2(Table counts, double min_expected) {
    Chi2Result res;
    if (counts.empty() || counts[0].empty()) {
        res.degenerate = true;
        return res;
    }
    // drop all-zero rows/columns
    counts.erase(std::remove_if(counts.begin(), counts.end(),
                                [](const auto& r) { return std::accumulate(r.begin(), r.end(), 0ULL) == 0; }),
                 counts.end());
    if (!counts.empty()) {
        transpose(counts);
        counts.erase(std::remove_if(counts.begin(), counts.end(),
                                    [](const auto& r) { return std::accumulate(r.begin(), r.end(), 0ULL) == 0; }),
                     counts.end());
        if (!counts.empty()) transpose(counts);
    }
    if (counts.size() < 2 || counts[0].size() < 2) {
        res.degenerate = true;
        return res;
    }

    auto totals = [&](bool rows) {
        std::vector<double> t(rows ? counts.size() : counts[0].size(), 0.0);
        for (size_t i = 0; i < counts.size(); ++i)
            for (size_t j = 0; j < counts[i].size(); ++j) t[rows ? i : j] += (double)counts[i][j];
        return t;
    };

    // deterministic pooling
    for (;;) {
        auto rt = totals(true);
        auto ct = totals(false);
        const double grand = std::accumulate(rt.begin(), rt.end(), 0.0);
        double worst = grand;
        for (double r : rt)
            for (double c : ct) worst = std::min(worst, r * c / grand);
        if (worst >= min_expected) break;
        const size_t R = counts.size(), C = counts[0].size();
        if ((R >= C && R > 2) || (C <= 2 && R > 2)) {
            auto [a, b] = two_smallest(rt);
            merge_rows(counts, a, b);
        } else if (C > 2) {
            transpose(counts);
            auto [a, b] = two_smallest(ct);
            merge_rows(counts, a, b);
            transpose(counts);
        } else {
            break; // 2x2 stays as is
        }
    }

    const size_t R = counts.size(), C = counts[0].size();
    auto rt = totals(true);
    auto ct = totals(false);
    const double grand = std::accumulate(rt.begin(), rt.end(), 0.0);
    if (grand == 0.0) {
        res.degenerate = true;
        return res;
    }
    double stat = 0.0;
    for (size_t i = 0; i < R; ++i)
        for (size_t j = 0; j < C; ++j) {
            const double e = rt[i] * ct[j] / grand;
            if (e > 0) {
                const double d = (double)counts[i][j] - e;
                stat += d * d / e;
            }
        }
    res.statistic = stat;
    res.rows = (int)R;
    res.cols = (int)C;
    res.dof = (double)((R - 1) * (C - 1));
    res.p_value = chi2_sf(stat, res.dof);
    return res;
}

Chi2Result product_margin_chi2(const std::vector<std::uint64_t>& counts, const std::vector<int>& dims,
                               double min_expected) {
    Chi2Result res;
    size_t cells = 1;
    for (int d : dims) cells *= (size_t)d;
    if (cells != counts.size()) throw std::invalid_argument("product_margin_chi2: dims do not match counts");
    if (dims.size() == 2) {
        Table t((size_t)dims[0], std::vector<std::uint64_t>((size_t)dims[1]));
        for (int i = 0; i < dims[0]; ++i)
            for (int j = 0; j < dims[1]; ++j) t[i][j] = counts[(size_t)i * dims[1] + j];
        return contingency_chi2(std::move(t), min_expected);
    }

    const double grand = (double)std::accumulate(counts.begin(), counts.end(), 0ULL);
    if (grand == 0.0) {
        res.degenerate = true;
        return res;
    }
    // margins
    std::vector<std::vector<double>> margin(dims.size());
    for (size_t v = 0; v < dims.size(); ++v) margin[v].assign((size_t)dims[v], 0.0);
    for (size_t cell = 0; cell < cells; ++cell) {
        size_t rest = cell;
        for (size_t v = dims.size(); v-- > 0;) {
            margin[v][rest % dims[v]] += (double)counts[cell];
            rest /= dims[v];
        }
    }
    int informative = 0;
    for (size_t v = 0; v < dims.size(); ++v) {
        int nonzero = 0;
        for (double m : margin[v])
            if (m > 0) ++nonzero;
        informative += nonzero - 1;
        if (nonzero < 2) { // constant variable: nothing to test on this axis
            res.degenerate = true;
        }
    }
    double stat = 0.0;
    int used_cells = 0;
    double pooled_obs = 0.0, pooled_exp = 0.0; // catch-all for thin cells
    for (size_t cell = 0; cell < cells; ++cell) {
        size_t rest = cell;
        double e = grand;
        for (size_t v = dims.size(); v-- > 0;) {
            e *= margin[v][rest % dims[v]] / grand;
            rest /= dims[v];
        }
        if (e <= 0.0) continue;
        if (e < min_expected) {
            pooled_obs += (double)counts[cell];
            pooled_exp += e;
            continue;
        }
        const double d = (double)counts[cell] - e;
        stat += d * d / e;
        ++used_cells;
    }
    if (pooled_exp >= min_expected) {
        const double d = pooled_obs - pooled_exp;
        stat += d * d / pooled_exp;
        ++used_cells;
    }
    const double dof = (double)used_cells - 1.0 - (double)informative;
    res.statistic = stat;
    res.dof = std::max(1.0, dof);
    res.rows = used_cells;
    res.cols = 1;
    if (res.degenerate || used_cells < 2) {
        res.degenerate = true;
        res.p_value = 1.0;
        return res;
    }
    res.p_value = chi2_sf(stat, res.dof);
    return res;
}

} // namespace theonlab
