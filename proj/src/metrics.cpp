#include "fimhe/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "fimhe/kernels.hpp"

namespace fimhe {

namespace {

constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);

double ssim_from_stats(const PairStats& s) {
    const double n = static_cast<double>(s.n);
    const double mu_x = static_cast<double>(s.sum_x) / n;
    const double mu_y = static_cast<double>(s.sum_y) / n;
    const double var_x = static_cast<double>(s.sum_xx) / n - mu_x * mu_x;
    const double var_y = static_cast<double>(s.sum_yy) / n - mu_y * mu_y;
    const double cov = static_cast<double>(s.sum_xy) / n - mu_x * mu_y;
    return ((2.0 * mu_x * mu_y + kC1) * (2.0 * cov + kC2)) /
           ((mu_x * mu_x + mu_y * mu_y + kC1) * (var_x + var_y + kC2));
}

PairStats window_stats(const GrayImage& x, const GrayImage& y, int row, int col, int w) {
    PairStats s;
    s.n = static_cast<std::uint64_t>(w) * w;
    for (int r = row; r < row + w; ++r) {
        const std::uint8_t* px = x.pixels.data() + static_cast<std::size_t>(r) * x.width + col;
        const std::uint8_t* py = y.pixels.data() + static_cast<std::size_t>(r) * y.width + col;
        for (int c = 0; c < w; ++c) {
            const std::uint64_t a = px[c];
            const std::uint64_t b = py[c];
            s.sum_x += a;
            s.sum_y += b;
            s.sum_xx += a * a;
            s.sum_yy += b * b;
            s.sum_xy += a * b;
        }
    }
    return s;
}

void check_same_dims(const GrayImage& x, const GrayImage& y) {
    if (x.width != y.width || x.height != y.height) {
        throw std::invalid_argument("image dimensions differ");
    }
}

}  // namespace

double entropy(const Histogram& hist) {
    if (hist.total == 0) {
        throw std::invalid_argument("empty histogram");
    }
    const double total = static_cast<double>(hist.total);
    double e = 0.0;
    for (int k = 0; k < kGreyLevels; ++k) {
        if (hist.bins[k] == 0) {
            continue;
        }
        const double p = static_cast<double>(hist.bins[k]) / total;
        e -= p * std::log2(p);
    }
    return e;
}

double entropy_percent(double e_out, double e_in) {
    if (e_in <= 0.0) {
        throw std::invalid_argument("entropy_percent: input entropy is zero");
    }
    return 100.0 * e_out / e_in;
}

double mse(const GrayImage& x, const GrayImage& y) {
    check_same_dims(x, y);
    const PairStats s = pair_stats(x, y);
    return static_cast<double>(s.sum_sq_diff) / static_cast<double>(s.n);
}

double psnr(const GrayImage& x, const GrayImage& y) {
    const double m = mse(x, y);
    if (m == 0.0) {
        return std::numeric_limits<double>::infinity();
    }
    return 10.0 * std::log10(255.0 * 255.0 / m);
}

double ambe(const GrayImage& x, const GrayImage& y) {
    check_same_dims(x, y);
    const PairStats s = pair_stats(x, y);
    const double n = static_cast<double>(s.n);
    return std::fabs(static_cast<double>(s.sum_x) / n - static_cast<double>(s.sum_y) / n);
}

double ssim(const GrayImage& x, const GrayImage& y, int window) {
    check_same_dims(x, y);
    if (x.pixels.empty()) {
        throw std::invalid_argument("ssim: empty image");
    }
    if (window <= 0) {
        return ssim_from_stats(pair_stats(x, y));
    }
    const int w = std::min(window, std::min(x.width, x.height));
    const int rows = x.height - w + 1;
    const int cols = x.width - w + 1;
    // Per-row partial sums are merged in row order so the result does not
    // depend on scheduling.
    std::vector<double> row_sums(rows, 0.0);
#ifdef _OPENMP
#pragma omp parallel for schedule(static)
#endif
    for (int r = 0; r < rows; ++r) {
        double acc = 0.0;
        for (int c = 0; c < cols; ++c) {
            acc += ssim_from_stats(window_stats(x, y, r, c, w));
        }
        row_sums[r] = acc;
    }
    double total = 0.0;
    for (double v : row_sums) {
        total += v;
    }
    return total / (static_cast<double>(rows) * cols);
}

MetricsReport compute_report(const GrayImage& original, const GrayImage& enhanced,
                             int ssim_window) {
    check_same_dims(original, enhanced);
    const double e_in = entropy(compute_histogram(original));
    const double e_out = entropy(compute_histogram(enhanced));
    MetricsReport report;
    report.entropy_out = e_out;
    report.entropy_pct =
        e_in > 0.0 ? entropy_percent(e_out, e_in) : std::numeric_limits<double>::quiet_NaN();
    report.psnr_db = psnr(original, enhanced);
    report.ambe = ambe(original, enhanced);
    report.ssim = ssim(original, enhanced, ssim_window);
    return report;
}

}  // namespace fimhe
