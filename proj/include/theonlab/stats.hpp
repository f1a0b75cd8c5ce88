#pragma once

#include <cstdint>
#include <vector>

namespace theonlab {

// Upper tail of the chi-squared distribution.
double chi2_sf(double stat, double dof);

struct Chi2Result {
    double statistic = 0.0;
    double dof = 0.0;
    double p_value = 1.0;
    int rows = 0, cols = 0; // after pooling
    bool degenerate = false; // too little structure to test; p_value = 1
};

// Pearson chi-square independence test on an r x c count table. Cells with
// expected count < 5 are pooled first by a deterministic rule: repeatedly
// merge the two rows (or columns, whichever side is longer) with the
// smallest totals, lowest indices on ties, stopping at 2x2.
Chi2Result contingency_chi2(std::vector<std::vector<std::uint64_t>> counts, double min_expected = 5.0);

// Goodness of fit of joint counts against the product of their own margins
// (mutual independence of >= 2 categorical variables). `dims[i]` is the
// number of levels of variable i; `counts` is indexed row-major.
Chi2Result product_margin_chi2(const std::vector<std::uint64_t>& counts, const std::vector<int>& dims,
                               double min_expected = 5.0);

} // namespace theonlab
