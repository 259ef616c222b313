#include "fimhe/fimhe.hpp"

#include <algorithm>
#include <stdexcept>
#include <vector>

namespace fimhe {

namespace {

// Median of the bin counts over [lo, hi], zero bins included; even-width
// segments take the mean of the two central order statistics.
double median_of_bins(const Histogram& hist, int lo, int hi) {
    std::vector<std::uint64_t> counts(hist.bins.begin() + lo, hist.bins.begin() + hi + 1);
    std::sort(counts.begin(), counts.end());
    const std::size_t n = counts.size();
    if (n % 2 == 1) {
        return static_cast<double>(counts[n / 2]);
    }
    return 0.5 * (static_cast<double>(counts[n / 2 - 1]) + static_cast<double>(counts[n / 2]));
}

}  // namespace

GreyLevelMap identity_map() {
    GreyLevelMap map;
    for (int k = 0; k < kGreyLevels; ++k) {
        map.mapping[k] = static_cast<std::uint8_t>(k);
    }
    return map;
}

ClipThresholds clip_thresholds(const Histogram& hist, const SegmentBounds& bounds) {
    if (bounds.degenerate) {
        throw std::invalid_argument("clip_thresholds: degenerate bounds");
    }
    ClipThresholds thr;
    const auto ranges = segment_ranges(bounds);
    for (int s = 0; s < 4; ++s) {
        std::uint64_t seg_total = 0;
        for (int k = ranges[s].lo; k <= ranges[s].hi; ++k) {
            seg_total += hist.bins[k];
        }
        if (seg_total == 0) {
            thr.limit[s] = 0.0;
            thr.empty[s] = true;
            continue;
        }
        const double median = median_of_bins(hist, ranges[s].lo, ranges[s].hi);
        if (median > 0.0) {
            thr.limit[s] = median;
            thr.from_median[s] = true;
        } else {
            thr.limit[s] = static_cast<double>(seg_total) / ranges[s].width();
            thr.from_median[s] = false;
        }
    }
    return thr;
}

ClippedHistogram clip_histogram(const Histogram& hist, const SegmentBounds& bounds,
                                const ClipThresholds& thresholds) {
    ClippedHistogram out;
    const auto ranges = segment_ranges(bounds);
    for (int s = 0; s < 4; ++s) {
        if (thresholds.empty[s]) {
            continue;
        }
        double total = 0.0;
        for (int k = ranges[s].lo; k <= ranges[s].hi; ++k) {
            out.bins[k] = std::min(static_cast<double>(hist.bins[k]), thresholds.limit[s]);
            total += out.bins[k];
        }
        out.segment_total[s] = total;
    }
    return out;
}

GreyLevelMap transfer_map(const ClippedHistogram& clipped, const SegmentBounds& bounds) {
    if (bounds.degenerate) {
        throw std::invalid_argument("transfer_map: degenerate bounds");
    }
    GreyLevelMap map = identity_map();
    const auto ranges = segment_ranges(bounds);
    // Each segment stretches over its own range: offset + factor spans
    // exactly [lo, hi], so the output stays segment-contained.
    for (int s = 0; s < 4; ++s) {
        const int lo = ranges[s].lo;
        const int hi = ranges[s].hi;
        const double factor = hi - lo;
        const double n = clipped.segment_total[s];
        if (n <= 0.0) {
            continue;  // empty segment keeps the identity for its levels
        }
        double cdf = 0.0;
        for (int k = lo; k <= hi; ++k) {
            const double pdf = clipped.bins[k] / n;
            cdf += pdf;
            const double f = factor * (cdf - 0.5 * pdf) + lo;
            map.mapping[k] = static_cast<std::uint8_t>(std::clamp(round_half_up(f), lo, hi));
        }
    }
    return map;
}

GreyLevelMap fimhe_map(const Histogram& hist) {
    const SegmentBounds bounds = segment_bounds(hist);
    if (bounds.degenerate) {
        return identity_map();
    }
    const ClipThresholds thresholds = clip_thresholds(hist, bounds);
    const ClippedHistogram clipped = clip_histogram(hist, bounds, thresholds);
    return transfer_map(clipped, bounds);
}

GrayImage enhance(const GrayImage& image) {
    const Histogram hist = compute_histogram(image);
    const GreyLevelMap map = fimhe_map(hist);
    return apply_map(image, map.mapping);
}

}  // namespace fimhe
