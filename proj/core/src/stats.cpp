#include "sieve/stats.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "sieve/error.hpp"

namespace sieve {

double percentile_sorted(std::span<const double> sorted, double p) {
    if (sorted.empty()) throw ParameterError("percentile of an empty sample");
    if (p < 0 || p > 100) throw ParameterError("percentile outside [0, 100]");
    const double pos = p / 100.0 * static_cast<double>(sorted.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(pos));
    const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
    const double frac = pos - static_cast<double>(lo);
    return sorted[lo] + (sorted[hi] - sorted[lo]) * frac;
}

Summary summarize(std::vector<double> values, std::span<const double> percentiles) {
    Summary s;
    s.count = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    const double n = static_cast<double>(values.size());
    const double mean = std::accumulate(values.begin(), values.end(), 0.0) / n;
    s.mean = mean;
    s.min = values.front();
    s.max = values.back();
    if (values.size() > 1) {
        double ss = 0;
        for (double v : values) ss += (v - mean) * (v - mean);
        s.std = std::sqrt(ss / (n - 1));
    }
    for (double p : percentiles) s.percentiles.emplace_back(p, percentile_sorted(values, p));
    return s;
}

std::map<std::int64_t, std::size_t> value_counts(std::span<const std::int64_t> values) {
    std::map<std::int64_t, std::size_t> out;
    for (auto v : values) ++out[v];
    return out;
}

std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bins) {
    if (bins == 0) throw ParameterError("histogram needs at least one bin");
    std::vector<HistogramBin> out;
    if (values.empty()) return out;
    const auto [lo_it, hi_it] = std::minmax_element(values.begin(), values.end());
    const double lo = *lo_it;
    const double hi = *hi_it;
    if (lo == hi) bins = 1;
    const double width = (hi - lo) / static_cast<double>(bins);
    out.resize(bins);
    for (std::size_t b = 0; b < bins; ++b) {
        out[b].lower = lo + width * static_cast<double>(b);
        out[b].upper = b + 1 == bins ? hi : lo + width * static_cast<double>(b + 1);
    }
    for (double v : values) {
        std::size_t b = width > 0 ? static_cast<std::size_t>((v - lo) / width) : 0;
        b = std::min(b, bins - 1);
        // Guard against rounding putting a value on the wrong side of an edge.
        while (b > 0 && v < out[b].lower) --b;
        while (b + 1 < bins && v >= out[b + 1].lower) ++b;
        ++out[b].frequency;
    }
    const double n = static_cast<double>(values.size());
    std::size_t running = 0;
    for (auto& bin : out) {
        running += bin.frequency;
        bin.cumulative = running;
        bin.proportion = 100.0 * static_cast<double>(bin.frequency) / n;
        bin.cumulative_proportion = 100.0 * static_cast<double>(running) / n;
    }
    return out;
}

}  // namespace sieve
