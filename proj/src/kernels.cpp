#include "fimhe/kernels.hpp"

#include <cstddef>
#include <stdexcept>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fimhe {

namespace {

// Below this pixel count the parallel kernels are not worth the fork/join.
constexpr std::ptrdiff_t kParallelCutoff = 1 << 15;

void check_same_dims(const GrayImage& x, const GrayImage& y) {
    if (x.width != y.width || x.height != y.height) {
        throw std::invalid_argument("image dimensions differ");
    }
}

}  // namespace

namespace serial {

Histogram compute_histogram(const GrayImage& image) {
    Histogram hist;
    for (std::uint8_t p : image.pixels) {
        hist.bins[p]++;
    }
    hist.total = image.pixels.size();
    return hist;
}

GrayImage apply_map(const GrayImage& image, const GreyLut& lut) {
    GrayImage out;
    out.width = image.width;
    out.height = image.height;
    out.pixels.resize(image.pixels.size());
    for (std::size_t i = 0; i < image.pixels.size(); ++i) {
        out.pixels[i] = lut[image.pixels[i]];
    }
    return out;
}

PairStats pair_stats(const GrayImage& x, const GrayImage& y) {
    check_same_dims(x, y);
    PairStats s;
    s.n = x.pixels.size();
    for (std::size_t i = 0; i < x.pixels.size(); ++i) {
        const std::uint64_t a = x.pixels[i];
        const std::uint64_t b = y.pixels[i];
        s.sum_x += a;
        s.sum_y += b;
        s.sum_xx += a * a;
        s.sum_yy += b * b;
        s.sum_xy += a * b;
        const std::int64_t d = static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b);
        s.sum_sq_diff += static_cast<std::uint64_t>(d * d);
    }
    return s;
}

}  // namespace serial

Histogram compute_histogram(const GrayImage& image) {
#ifdef _OPENMP
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(image.pixels.size());
    if (n < kParallelCutoff) {
        return serial::compute_histogram(image);
    }
    Histogram hist;
    const std::uint8_t* px = image.pixels.data();
#pragma omp parallel
    {
        std::array<std::uint64_t, kGreyLevels> local{};
#pragma omp for schedule(static) nowait
        for (std::ptrdiff_t i = 0; i < n; ++i) {
            local[px[i]]++;
        }
        // Integer adds commute, so the merge order cannot change the result.
#pragma omp critical(fimhe_hist_merge)
        for (int v = 0; v < kGreyLevels; ++v) {
            hist.bins[v] += local[v];
        }
    }
    hist.total = image.pixels.size();
    return hist;
#else
    return serial::compute_histogram(image);
#endif
}

GrayImage apply_map(const GrayImage& image, const GreyLut& lut) {
#ifdef _OPENMP
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(image.pixels.size());
    if (n < kParallelCutoff) {
        return serial::apply_map(image, lut);
    }
    GrayImage out;
    out.width = image.width;
    out.height = image.height;
    out.pixels.resize(image.pixels.size());
    const std::uint8_t* src = image.pixels.data();
    std::uint8_t* dst = out.pixels.data();
#pragma omp parallel for schedule(static)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        dst[i] = lut[src[i]];
    }
    return out;
#else
    return serial::apply_map(image, lut);
#endif
}

PairStats pair_stats(const GrayImage& x, const GrayImage& y) {
#ifdef _OPENMP
    check_same_dims(x, y);
    const std::ptrdiff_t n = static_cast<std::ptrdiff_t>(x.pixels.size());
    if (n < kParallelCutoff) {
        return serial::pair_stats(x, y);
    }
    const std::uint8_t* px = x.pixels.data();
    const std::uint8_t* py = y.pixels.data();
    std::uint64_t sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0, sdd = 0;
#pragma omp parallel for schedule(static) reduction(+ : sx, sy, sxx, syy, sxy, sdd)
    for (std::ptrdiff_t i = 0; i < n; ++i) {
        const std::uint64_t a = px[i];
        const std::uint64_t b = py[i];
        sx += a;
        sy += b;
        sxx += a * a;
        syy += b * b;
        sxy += a * b;
        const std::int64_t d = static_cast<std::int64_t>(a) - static_cast<std::int64_t>(b);
        sdd += static_cast<std::uint64_t>(d * d);
    }
    PairStats s;
    s.n = static_cast<std::uint64_t>(n);
    s.sum_x = sx;
    s.sum_y = sy;
    s.sum_xx = sxx;
    s.sum_yy = syy;
    s.sum_xy = sxy;
    s.sum_sq_diff = sdd;
    return s;
#else
    return serial::pair_stats(x, y);
#endif
}

}  // namespace fimhe
