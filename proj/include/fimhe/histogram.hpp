#pragma once

#include <array>
#include <cstdint>
#include <optional>

#include "fimhe/gray_image.hpp"

namespace fimhe {

struct Histogram {
    std::array<std::uint64_t, kGreyLevels> bins{};
    std::uint64_t total = 0;
};

// Mean (g_a), standard deviation (g_d) and their ratio over the grey-level
// distribution of a histogram.
struct IntensityStats {
    double mean = 0.0;
    double stddev = 0.0;
    double fuzzy_measure = 0.0;
};

struct FuzzyThreshold {
    int level = 0;
    bool degenerate = false;
};

// The three split levels T_l < T < T_u that partition the grey range into
// four segments [0,T_l], [T_l+1,T], [T+1,T_u], [T_u+1,255].
struct SegmentBounds {
    int t_low = 0;
    int t_mid = 0;
    int t_high = 0;
    bool degenerate = false;
};

struct SegmentRange {
    int lo = 0;
    int hi = 0;
    int width() const { return hi - lo + 1; }
};

// Histogram of an image; total equals the pixel count. Uses OpenMP when the
// library is built with it; see fimhe::serial for the reference version.
Histogram compute_histogram(const GrayImage& image);

// Throws std::invalid_argument on an empty histogram.
IntensityStats intensity_stats(const Histogram& hist);

// T = round(L * g_d / g_a) clamped into [1, 253]. Degenerate when the ratio
// is zero or undefined (constant image), in which case level is meaningless.
FuzzyThreshold fuzzy_threshold(const IntensityStats& stats);

// Smallest k in [lo, hi-1] whose cumulative count reaches half the mass of
// [lo, hi]; hi-1 if more than half the mass sits at level hi. Requires
// lo < hi. Returns nullopt when the range holds no pixels.
std::optional<int> equal_mass_split(const Histogram& hist, int lo, int hi);

// Fuzzy threshold plus the two equal-mass splits. Degenerate when the image
// is constant or one half-range holds no pixels.
SegmentBounds segment_bounds(const Histogram& hist);

// The four grey-level segments of non-degenerate bounds.
std::array<SegmentRange, 4> segment_ranges(const SegmentBounds& bounds);

}  // namespace fimhe
