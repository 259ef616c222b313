// Times the OpenMP pixel kernels against the serial reference implementations
// on a synthetic image and prints one row per kernel.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <vector>

#include <CLI11.hpp>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fimhe/baselines.hpp"
#include "fimhe/fimhe.hpp"
#include "fimhe/kernels.hpp"

namespace {

using Clock = std::chrono::steady_clock;

fimhe::GrayImage make_image(int width, int height, unsigned seed) {
    fimhe::GrayImage image;
    image.width = width;
    image.height = height;
    image.pixels.resize(static_cast<std::size_t>(width) * height);
    std::mt19937 rng(seed);
    // Low-contrast Gaussian-ish content so the full pipeline has work to do.
    std::normal_distribution<double> dist(110.0, 45.0);
    for (auto& p : image.pixels) {
        p = static_cast<std::uint8_t>(std::clamp(static_cast<int>(dist(rng)), 0, 255));
    }
    return image;
}

double median_ms(std::vector<double>& samples) {
    std::sort(samples.begin(), samples.end());
    return samples[samples.size() / 2];
}

double time_ms(const std::function<void()>& fn, int iters) {
    std::vector<double> samples;
    samples.reserve(iters);
    fn();  // warm-up
    for (int i = 0; i < iters; ++i) {
        const auto t0 = Clock::now();
        fn();
        const auto t1 = Clock::now();
        samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
    return median_ms(samples);
}

void print_row(const char* name, double serial_ms, double parallel_ms) {
    std::printf("%-16s %12.3f %12.3f %10.2fx\n", name, serial_ms, parallel_ms,
                serial_ms / parallel_ms);
}

}  // namespace

int main(int argc, char** argv) {
    int width = 4096;
    int height = 4096;
    int iters = 9;

    CLI::App app{"serial vs OpenMP kernel comparison"};
    app.add_option("--width", width)->check(CLI::PositiveNumber);
    app.add_option("--height", height)->check(CLI::PositiveNumber);
    app.add_option("--iters", iters)->check(CLI::PositiveNumber);
    CLI11_PARSE(app, argc, argv);

    const fimhe::GrayImage image = make_image(width, height, 20260810);
    const fimhe::Histogram hist = fimhe::compute_histogram(image);
    const fimhe::GreyLevelMap lut = fimhe::classic_he(hist);
    const fimhe::GrayImage mapped = fimhe::apply_map(image, lut.mapping);

#ifdef _OPENMP
    std::printf("image %dx%d, %d OpenMP threads, median of %d runs\n", width, height,
                omp_get_max_threads(), iters);
#else
    std::printf("image %dx%d, OpenMP disabled, median of %d runs\n", width, height, iters);
#endif
    std::printf("%-16s %12s %12s %10s\n", "kernel", "serial_ms", "openmp_ms", "speedup");

    print_row("histogram",
              time_ms([&] { fimhe::serial::compute_histogram(image); }, iters),
              time_ms([&] { fimhe::compute_histogram(image); }, iters));

    print_row("apply_map",
              time_ms([&] { fimhe::serial::apply_map(image, lut.mapping); }, iters),
              time_ms([&] { fimhe::apply_map(image, lut.mapping); }, iters));

    print_row("pair_stats",
              time_ms([&] { fimhe::serial::pair_stats(image, mapped); }, iters),
              time_ms([&] { fimhe::pair_stats(image, mapped); }, iters));

    // Full pipeline: the serial column composes the reference kernels, the
    // OpenMP column is the production enhance().
    print_row("fimhe_enhance",
              time_ms(
                  [&] {
                      const fimhe::Histogram h = fimhe::serial::compute_histogram(image);
                      const fimhe::GreyLevelMap m = fimhe::fimhe_map(h);
                      fimhe::serial::apply_map(image, m.mapping);
                  },
                  iters),
              time_ms([&] { fimhe::enhance(image); }, iters));

    return 0;
}
