#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qbc {

// 95% by default (z for two-sided 0.95).
struct WilsonInterval {
    double lo = 0.0;
    double hi = 0.0;
};

// Wilson score interval for a binomial proportion. Behaves correctly at
// proportions near 0, unlike the normal approximation.
WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n,
                               double z = 1.959963984540054);

struct ChiSquareResult {
    double statistic = 0.0;
    double p_value = 1.0;
    int dof = 0;
    int n_bins = 0;
    std::string note;
};

// Two-sample chi-square homogeneity test for integer-valued samples (here:
// announced-detection counts per session). Pooled equal-frequency binning;
// bins are merged until every expected cell count is at least 5. Degenerate
// binning (everything in one bin) is reported in `note` with p = 1.
ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b);

// Survival function of the chi-square distribution.
double chi_square_sf(double x, int dof);

struct LinearFit {
    double slope = 0.0;
    double intercept = 0.0;
};

LinearFit least_squares(const std::vector<double>& x,
                        const std::vector<double>& y);

}  // namespace qbc
