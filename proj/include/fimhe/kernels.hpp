#pragma once

#include <array>
#include <cstdint>

#include "fimhe/gray_image.hpp"
#include "fimhe/histogram.hpp"

// Data-parallel pixel kernels. The public entry points run under OpenMP when
// the library is built with it and fall back to the serial versions below
// otherwise. All accumulators are integral, so the parallel results are
// bit-identical to the serial ones for any thread count.

namespace fimhe {

// Exact integer pixel sums of an image pair, shared by every metric.
struct PairStats {
    std::uint64_t n = 0;
    std::uint64_t sum_x = 0;
    std::uint64_t sum_y = 0;
    std::uint64_t sum_xx = 0;
    std::uint64_t sum_yy = 0;
    std::uint64_t sum_xy = 0;
    std::uint64_t sum_sq_diff = 0;
};

using GreyLut = std::array<std::uint8_t, kGreyLevels>;

namespace serial {

Histogram compute_histogram(const GrayImage& image);
GrayImage apply_map(const GrayImage& image, const GreyLut& lut);
PairStats pair_stats(const GrayImage& x, const GrayImage& y);

}  // namespace serial

GrayImage apply_map(const GrayImage& image, const GreyLut& lut);

// Requires identical dimensions.
PairStats pair_stats(const GrayImage& x, const GrayImage& y);

}  // namespace fimhe
