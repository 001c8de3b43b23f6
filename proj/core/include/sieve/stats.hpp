#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <vector>

namespace sieve {

inline constexpr std::array<double, 7> kReportedPercentiles{10, 30, 50, 70, 90, 95, 99};

struct Summary {
    std::size_t count = 0;
    // Moments are absent for an empty sample; std needs at least two values.
    std::optional<double> mean;
    std::optional<double> std;
    std::optional<double> min;
    std::optional<double> max;
    std::vector<std::pair<double, double>> percentiles;  // (p, value)
};

// Linear interpolation between closest ranks over an ascending sample:
// position p/100 * (n - 1). Requires a non-empty sample.
double percentile_sorted(std::span<const double> sorted, double p);

// Sample standard deviation (n - 1 denominator).
Summary summarize(std::vector<double> values,
                  std::span<const double> percentiles = kReportedPercentiles);

std::map<std::int64_t, std::size_t> value_counts(std::span<const std::int64_t> values);

struct HistogramBin {
    double lower = 0;
    double upper = 0;
    std::size_t frequency = 0;
    std::size_t cumulative = 0;
    double proportion = 0;             // percent of the sample
    double cumulative_proportion = 0;  // percent
};

// Equal-width bins over [min, max]; every bin is half-open except the last,
// which also takes values equal to max. A constant sample yields one bin.
std::vector<HistogramBin> histogram(std::span<const double> values, std::size_t bins);

}  // namespace sieve
