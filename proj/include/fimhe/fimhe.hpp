#pragma once

#include <array>
#include <cstdint>

#include "fimhe/histogram.hpp"
#include "fimhe/kernels.hpp"

namespace fimhe {

// Per-segment plateau limits. A limit comes from the median of the segment's
// bin counts when that median is positive, from the mean otherwise. Segments
// whose bins are all zero carry limit 0 and the empty flag.
struct ClipThresholds {
    std::array<double, 4> limit{};
    std::array<bool, 4> from_median{};
    std::array<bool, 4> empty{};
};

// Histogram after plateau clipping; counts become real-valued because the
// limits are medians or means of integer counts.
struct ClippedHistogram {
    std::array<double, kGreyLevels> bins{};
    std::array<double, 4> segment_total{};
};

// 256-entry input -> output grey-level lookup. Non-decreasing; split-based
// methods keep each segment's levels inside that segment's output range.
struct GreyLevelMap {
    GreyLut mapping{};
};

GreyLevelMap identity_map();

// Adaptive plateau limits of the four sub-histograms. Requires non-degenerate
// bounds.
ClipThresholds clip_thresholds(const Histogram& hist, const SegmentBounds& bounds);

// Elementwise min of each bin against its segment's limit.
ClippedHistogram clip_histogram(const Histogram& hist, const SegmentBounds& bounds,
                                const ClipThresholds& thresholds);

// Per-segment PDF/CDF equalization of the clipped sub-histograms. Empty
// segments keep the identity mapping for their levels.
GreyLevelMap transfer_map(const ClippedHistogram& clipped, const SegmentBounds& bounds);

// Full map pipeline: segment, clip, equalize. Identity when the histogram is
// degenerate. Throws std::invalid_argument on an empty histogram.
GreyLevelMap fimhe_map(const Histogram& hist);

// Enhance one image. Degenerate inputs (constant image, empty half-range)
// come back unchanged.
GrayImage enhance(const GrayImage& image);

}  // namespace fimhe
