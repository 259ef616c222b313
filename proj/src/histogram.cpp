#include "fimhe/histogram.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fimhe {

IntensityStats intensity_stats(const Histogram& hist) {
    if (hist.total == 0) {
        throw std::invalid_argument("empty histogram");
    }
    const double total = static_cast<double>(hist.total);
    double mean = 0.0;
    for (int m = 0; m < kGreyLevels; ++m) {
        mean += m * static_cast<double>(hist.bins[m]);
    }
    mean /= total;

    double var = 0.0;
    for (int m = 0; m < kGreyLevels; ++m) {
        const double d = m - mean;
        var += d * d * static_cast<double>(hist.bins[m]);
    }
    var /= total;

    IntensityStats stats;
    stats.mean = mean;
    stats.stddev = std::sqrt(var);
    stats.fuzzy_measure = mean > 0.0 ? stats.stddev / mean : 0.0;
    return stats;
}

FuzzyThreshold fuzzy_threshold(const IntensityStats& stats) {
    if (stats.mean <= 0.0 || stats.stddev <= 0.0) {
        return {0, true};
    }
    const int raw = round_half_up(kGreyLevels * (stats.stddev / stats.mean));
    // Clamped so each of the four segments can hold at least one grey level.
    return {std::clamp(raw, 1, 253), false};
}

std::optional<int> equal_mass_split(const Histogram& hist, int lo, int hi) {
    if (lo < 0 || hi > kGreyLevels - 1 || lo >= hi) {
        throw std::invalid_argument("equal_mass_split: bad range");
    }
    std::uint64_t total = 0;
    for (int k = lo; k <= hi; ++k) {
        total += hist.bins[k];
    }
    if (total == 0) {
        return std::nullopt;
    }
    std::uint64_t cum = 0;
    for (int k = lo; k < hi; ++k) {
        cum += hist.bins[k];
        if (2 * cum >= total) {
            return k;
        }
    }
    // More than half the mass sits at level hi.
    return hi - 1;
}

SegmentBounds segment_bounds(const Histogram& hist) {
    const FuzzyThreshold t = fuzzy_threshold(intensity_stats(hist));
    if (t.degenerate) {
        return {0, 0, 0, true};
    }
    const auto t_low = equal_mass_split(hist, 0, t.level);
    const auto t_high = equal_mass_split(hist, t.level + 1, kGreyLevels - 1);
    if (!t_low || !t_high) {
        return {0, 0, 0, true};
    }
    return {*t_low, t.level, *t_high, false};
}

std::array<SegmentRange, 4> segment_ranges(const SegmentBounds& bounds) {
    return {{{0, bounds.t_low},
             {bounds.t_low + 1, bounds.t_mid},
             {bounds.t_mid + 1, bounds.t_high},
             {bounds.t_high + 1, kGreyLevels - 1}}};
}

}  // namespace fimhe
