#include "depthdegen/statistics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "depthdegen/angle_math.hpp"
#include "depthdegen/errors.hpp"

namespace depthdegen::stats {

Moments moments(std::span<const double> values) {
    Moments m;
    m.count = values.size();
    if (values.empty()) {
        return m;
    }
    m.mean = mean(values);
    double s2 = 0.0;
    double s3 = 0.0;
    double s4 = 0.0;
    for (const double v : values) {
        const double d = v - m.mean;
        const double d2 = d * d;
        s2 += d2;
        s3 += d2 * d;
        s4 += d2 * d2;
    }
    const auto n = static_cast<double>(values.size());
    if (values.size() > 1) {
        m.variance = s2 / (n - 1.0);
    }
    const double pop_var = s2 / n;
    if (pop_var > 0.0) {
        m.skewness = (s3 / n) / std::pow(pop_var, 1.5);
        m.excess_kurtosis = (s4 / n) / (pop_var * pop_var) - 3.0;
    }
    return m;
}

double mean(std::span<const double> values) {
    if (values.empty()) {
        return 0.0;
    }
    double sum = 0.0;
    for (const double v : values) {
        sum += v;
    }
    return sum / static_cast<double>(values.size());
}

double variance(std::span<const double> values) {
    if (values.size() < 2) {
        return 0.0;
    }
    const double m = mean(values);
    double s2 = 0.0;
    for (const double v : values) {
        s2 += (v - m) * (v - m);
    }
    return s2 / static_cast<double>(values.size() - 1);
}

double quantile(std::vector<double> values, double q) {
    if (values.empty()) {
        throw ValidationError("quantile of an empty sample");
    }
    std::sort(values.begin(), values.end());
    const double pos = q * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const auto hi = std::min(lo + 1, values.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return values[lo] + frac * (values[hi] - values[lo]);
}

std::vector<double> ranks(std::span<const double> values) {
    std::vector<std::size_t> order(values.size());
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> r(values.size());
    std::size_t i = 0;
    while (i < order.size()) {
        std::size_t j = i;
        while (j + 1 < order.size() && values[order[j + 1]] == values[order[i]]) {
            ++j;
        }
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t k = i; k <= j; ++k) {
            r[order[k]] = shared;
        }
        i = j + 1;
    }
    return r;
}

double pearson(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size() || a.size() < 2) {
        throw ValidationError("pearson: need two samples of equal length >= 2");
    }
    const double ma = mean(a);
    const double mb = mean(b);
    double sab = 0.0;
    double saa = 0.0;
    double sbb = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) {
        sab += (a[i] - ma) * (b[i] - mb);
        saa += (a[i] - ma) * (a[i] - ma);
        sbb += (b[i] - mb) * (b[i] - mb);
    }
    return sab / std::sqrt(saa * sbb);
}

double spearman(std::span<const double> a, std::span<const double> b) {
    const auto ra = ranks(a);
    const auto rb = ranks(b);
    return pearson(ra, rb);
}

double normal_pdf(double x, double mean, double variance) {
    const double d = x - mean;
    return std::exp(-0.5 * d * d / variance) / std::sqrt(2.0 * kPi * variance);
}

double silverman_bandwidth(std::span<const double> values) {
    if (values.size() < 2) {
        throw ValidationError("bandwidth needs at least two samples");
    }
    const double sd = std::sqrt(variance(values));
    std::vector<double> copy(values.begin(), values.end());
    const double iqr = quantile(copy, 0.75) - quantile(copy, 0.25);
    double spread = sd;
    if (iqr > 0.0) {
        spread = std::min(sd, iqr / 1.34);
    }
    if (!(spread > 0.0)) {
        throw ValidationError("bandwidth undefined for a degenerate sample");
    }
    return 0.9 * spread * std::pow(static_cast<double>(values.size()), -0.2);
}

std::vector<double> gaussian_kde(std::span<const double> values, std::span<const double> grid,
                                 double bandwidth, std::size_t total_count) {
    std::vector<double> density(grid.size(), 0.0);
    if (values.empty() || total_count == 0) {
        return density;
    }
    const double norm = 1.0 / (static_cast<double>(total_count) * bandwidth * std::sqrt(2.0 * kPi));
    // Kernels beyond 8 bandwidths contribute below 1e-14 relative.
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    const double reach = 8.0 * bandwidth;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        const auto lo = std::lower_bound(sorted.begin(), sorted.end(), grid[g] - reach);
        const auto hi = std::upper_bound(sorted.begin(), sorted.end(), grid[g] + reach);
        double sum = 0.0;
        for (auto it = lo; it != hi; ++it) {
            const double u = (grid[g] - *it) / bandwidth;
            sum += std::exp(-0.5 * u * u);
        }
        density[g] = sum * norm;
    }
    return density;
}

double trapezoid(std::span<const double> grid, std::span<const double> f) {
    double total = 0.0;
    for (std::size_t i = 1; i < grid.size(); ++i) {
        total += 0.5 * (f[i] + f[i - 1]) * (grid[i] - grid[i - 1]);
    }
    return total;
}

double fit_slope(std::span<const double> x, std::span<const double> y) {
    const double mx = mean(x);
    const double my = mean(y);
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sxy += (x[i] - mx) * (y[i] - my);
        sxx += (x[i] - mx) * (x[i] - mx);
    }
    return sxy / sxx;
}

}  // namespace depthdegen::stats
