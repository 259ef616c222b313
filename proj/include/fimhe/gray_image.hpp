#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

namespace fimhe {

// Number of grey levels; every algorithm here assumes 8-bit data.
inline constexpr int kGreyLevels = 256;

// Row-major 8-bit grayscale raster.
struct GrayImage {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::size_t pixel_count() const { return pixels.size(); }

    bool valid() const {
        return width > 0 && height > 0 &&
               pixels.size() == static_cast<std::size_t>(width) * static_cast<std::size_t>(height);
    }
};

// Committed rounding for grey-level quantities: round half-up.
inline int round_half_up(double x) {
    return static_cast<int>(std::floor(x + 0.5));
}

}  // namespace fimhe
