#pragma once

#include <cstdint>
#include <vector>

#include "theonlab/model.hpp"
#include "theonlab/rng.hpp"

namespace theonlab {

// Product of `dims` unit intervals; the only ground spaces used here.
struct GroundSpace {
    int dims = 1;
};

// Nonempty subsets of [n] with size <= maxar, as bitmasks in ascending
// numeric order. The coordinate sampling order is exactly this order, so it
// is part of the reproducibility contract.
struct SubsetTable {
    int n = 0, maxar = 0;
    std::vector<std::uint32_t> masks;
    std::vector<int> index; // 1<<n entries, -1 where absent

    SubsetTable() = default;
    SubsetTable(int n, int maxar);
    int of(std::uint32_t mask) const { return index[mask]; }
    size_t count() const { return masks.size(); }
};

// Point of E_{[n],maxar}([0,1]^d): one d-tuple per subset in the table.
struct Point {
    SubsetTable table;
    int dims = 1;
    std::vector<double> vals; // vals[idx*dims + factor]

    Point() = default;
    Point(int n, int maxar, int dims) : table(n, maxar), dims(dims), vals(table.count() * dims, 0.0) {}

    double coord(std::uint32_t mask, int factor) const { return vals[(size_t)table.of(mask) * dims + factor]; }
    double& coord(std::uint32_t mask, int factor) { return vals[(size_t)table.of(mask) * dims + factor]; }
    int n() const { return table.n; }
};

// i.i.d. uniform refill in subset-table order, factors innermost.
void sample_point_into(Point& p, Rng& rng);
Point sample_point(int n, int maxar, int dims, std::uint64_t seed);

// Resample only coordinates with |A| <= ell (or > ell).
void resample_low(Point& p, int ell, Rng& rng);
void resample_high(Point& p, int ell, Rng& rng);

// theta'_A = theta_{perm(A)}; realize(theon, theta') is the perm-pullback of
// realize(theon, theta) (exchangeability tests rely on this).
Point permute_point(const Point& p, const Perm& perm);

} // namespace theonlab
