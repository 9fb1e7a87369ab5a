#include "qbc/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <boost/math/distributions/chi_squared.hpp>

namespace qbc {

WilsonInterval wilson_interval(std::uint64_t successes, std::uint64_t n,
                               double z) {
    if (n == 0) return {0.0, 1.0};
    if (successes > n) {
        throw std::invalid_argument("wilson_interval: successes > n");
    }
    const double nn = static_cast<double>(n);
    const double p = static_cast<double>(successes) / nn;
    const double z2 = z * z;
    const double denom = 1.0 + z2 / nn;
    const double center = p + z2 / (2.0 * nn);
    const double margin =
        z * std::sqrt(p * (1.0 - p) / nn + z2 / (4.0 * nn * nn));
    return {std::max(0.0, (center - margin) / denom),
            std::min(1.0, (center + margin) / denom)};
}

double chi_square_sf(double x, int dof) {
    if (dof < 1) throw std::invalid_argument("chi_square_sf: dof must be >= 1");
    if (x <= 0.0) return 1.0;
    boost::math::chi_squared dist(dof);
    return boost::math::cdf(boost::math::complement(dist, x));
}

ChiSquareResult chi_square_two_sample(const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b) {
    ChiSquareResult res;
    if (a.empty() || b.empty()) {
        throw std::invalid_argument("chi_square_two_sample: empty sample");
    }

    std::vector<std::uint64_t> pooled;
    pooled.reserve(a.size() + b.size());
    pooled.insert(pooled.end(), a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    std::sort(pooled.begin(), pooled.end());

    // Equal-frequency bin edges over the pooled sample. A value v falls in
    // bin i when v < edge[i]; the last bin is open-ended.
    const std::size_t total = pooled.size();
    std::size_t target_bins = std::clamp<std::size_t>(total / 20, 2, 10);
    std::vector<std::uint64_t> edges;
    for (std::size_t i = 1; i < target_bins; ++i) {
        std::uint64_t q = pooled[i * total / target_bins];
        if (edges.empty() || q > edges.back()) edges.push_back(q);
    }

    auto bin_of = [&edges](std::uint64_t v) {
        std::size_t lo = 0;
        while (lo < edges.size() && v >= edges[lo]) ++lo;
        return lo;
    };

    const std::size_t k0 = edges.size() + 1;
    std::vector<double> count_a(k0, 0.0), count_b(k0, 0.0);
    for (std::uint64_t v : a) count_a[bin_of(v)] += 1.0;
    for (std::uint64_t v : b) count_b[bin_of(v)] += 1.0;

    // Merge forward until every expected cell count is >= 5.
    const double n_a = static_cast<double>(a.size());
    const double n_b = static_cast<double>(b.size());
    const double grand = n_a + n_b;
    std::vector<double> col_a, col_b;
    double acc_a = 0.0, acc_b = 0.0;
    for (std::size_t i = 0; i < k0; ++i) {
        acc_a += count_a[i];
        acc_b += count_b[i];
        const double col_total = acc_a + acc_b;
        const double min_expected =
            col_total * std::min(n_a, n_b) / grand;
        if (min_expected >= 5.0) {
            col_a.push_back(acc_a);
            col_b.push_back(acc_b);
            acc_a = acc_b = 0.0;
        }
    }
    if (acc_a + acc_b > 0.0) {
        if (col_a.empty()) {
            col_a.push_back(acc_a);
            col_b.push_back(acc_b);
        } else {
            col_a.back() += acc_a;
            col_b.back() += acc_b;
        }
    }

    res.n_bins = static_cast<int>(col_a.size());
    if (res.n_bins < 2) {
        res.note = "degenerate binning: all counts fall in one bin";
        res.statistic = 0.0;
        res.dof = 0;
        res.p_value = 1.0;
        return res;
    }

    double stat = 0.0;
    for (std::size_t i = 0; i < col_a.size(); ++i) {
        const double col_total = col_a[i] + col_b[i];
        const double exp_a = col_total * n_a / grand;
        const double exp_b = col_total * n_b / grand;
        stat += (col_a[i] - exp_a) * (col_a[i] - exp_a) / exp_a;
        stat += (col_b[i] - exp_b) * (col_b[i] - exp_b) / exp_b;
    }
    res.statistic = stat;
    res.dof = res.n_bins - 1;
    res.p_value = chi_square_sf(stat, res.dof);
    return res;
}

LinearFit least_squares(const std::vector<double>& x,
                        const std::vector<double>& y) {
    if (x.size() != y.size() || x.size() < 2) {
        throw std::invalid_argument("least_squares: need >= 2 paired points");
    }
    const double n = static_cast<double>(x.size());
    double sx = 0.0, sy = 0.0, sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxx += x[i] * x[i];
        sxy += x[i] * y[i];
    }
    const double denom = n * sxx - sx * sx;
    if (denom == 0.0) {
        throw std::invalid_argument("least_squares: degenerate x values");
    }
    LinearFit fit;
    fit.slope = (n * sxy - sx * sy) / denom;
    fit.intercept = (sy - fit.slope * sx) / n;
    return fit;
}

}  // namespace qbc
