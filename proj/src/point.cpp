#include "theonlab/point.hpp"

#include <bit>

namespace theonlab {

SubsetTable::SubsetTable(int n, int maxar) : n(n), maxar(maxar) {
    index.assign(1u << n, -1);
    for (std::uint32_t mask = 1; mask < (1u << n); ++mask) {
        if (std::popcount(mask) > maxar) continue;
        index[mask] = (int)masks.size();
        masks.push_back(mask);
    }
}

void sample_point_into(Point& p, Rng& rng) {
    for (auto& v : p.vals) v = rng.unit();
}

Point sample_point(int n, int maxar, int dims, std::uint64_t seed) {
    Point p(n, maxar, dims);
    Rng rng(seed);
    sample_point_into(p, rng);
    return p;
}

void resample_low(Point& p, int ell, Rng& rng) {
    for (size_t i = 0; i < p.table.masks.size(); ++i)
        if (std::popcount(p.table.masks[i]) <= ell)
            for (int f = 0; f < p.dims; ++f) p.vals[i * p.dims + f] = rng.unit();
}

void resample_high(Point& p, int ell, Rng& rng) {
    for (size_t i = 0; i < p.table.masks.size(); ++i)
        if (std::popcount(p.table.masks[i]) > ell)
            for (int f = 0; f < p.dims; ++f) p.vals[i * p.dims + f] = rng.unit();
}

Point permute_point(const Point& p, const Perm& perm) {
    Point out = p;
    for (size_t i = 0; i < p.table.masks.size(); ++i) {
        std::uint32_t mask = p.table.masks[i];
        std::uint32_t image = 0;
        for (int v = 1; v <= p.table.n; ++v)
            if (mask >> (v - 1) & 1) image |= 1u << (perm[v - 1] - 1);
        for (int f = 0; f < p.dims; ++f)
            out.vals[(size_t)p.table.of(mask) * p.dims + f] = p.vals[(size_t)p.table.of(image) * p.dims + f];
    }
    return out;
}

} // namespace theonlab
