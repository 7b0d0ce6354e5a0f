#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace depthdegen::stats {

struct Moments {
    std::size_t count = 0;
    double mean = 0.0;
    double variance = 0.0;  // unbiased (n - 1)
    double skewness = 0.0;  // g1, population form
    double excess_kurtosis = 0.0;  // g2, population form
};

/// Two-pass moments; order of accumulation follows the input order.
Moments moments(std::span<const double> values);

double mean(std::span<const double> values);
double variance(std::span<const double> values);

/// Linear-interpolated sample quantile, q in [0, 1].
double quantile(std::vector<double> values, double q);

/// Average ranks (ties share the mean rank), 1-based.
std::vector<double> ranks(std::span<const double> values);

double pearson(std::span<const double> a, std::span<const double> b);
double spearman(std::span<const double> a, std::span<const double> b);

double normal_pdf(double x, double mean, double variance);

/// Silverman's rule of thumb: 0.9 min(sd, IQR / 1.34) n^{-1/5}.
double silverman_bandwidth(std::span<const double> values);

/// Gaussian kernel density estimate evaluated on `grid`. Each sample has
/// weight 1 / total_count so the result integrates to
/// values.size() / total_count.
std::vector<double> gaussian_kde(std::span<const double> values, std::span<const double> grid,
                                 double bandwidth, std::size_t total_count);

/// Trapezoid rule over an increasing grid.
double trapezoid(std::span<const double> grid, std::span<const double> f);

/// Least-squares slope of y on x.
double fit_slope(std::span<const double> x, std::span<const double> y);

}  // namespace depthdegen::stats
