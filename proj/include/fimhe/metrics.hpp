#pragma once

#include "fimhe/gray_image.hpp"
#include "fimhe/histogram.hpp"

namespace fimhe {

// Quality indices of one enhanced image against its original. psnr_db is
// +infinity for identical images; entropy_pct is NaN when the original image
// has zero entropy.
struct MetricsReport {
    double entropy_out = 0.0;
    double entropy_pct = 0.0;
    double psnr_db = 0.0;
    double ambe = 0.0;
    double ssim = 0.0;
};

// Shannon entropy in bits, 0*log(0) taken as 0. Throws on an empty histogram.
double entropy(const Histogram& hist);

// 100 * e_out / e_in. Throws std::invalid_argument when e_in is zero.
double entropy_percent(double e_out, double e_in);

// Mean squared error. All pairwise metrics throw std::invalid_argument on a
// dimension mismatch.
double mse(const GrayImage& x, const GrayImage& y);

// 10 * log10(255^2 / MSE); +infinity when MSE is zero.
double psnr(const GrayImage& x, const GrayImage& y);

// Absolute difference of the mean grey levels.
double ambe(const GrayImage& x, const GrayImage& y);

// Structural similarity with C1 = (0.01*255)^2, C2 = (0.03*255)^2. window = 0
// computes the single-window (whole image) statistic; window > 0 averages the
// index over all window x window patches at stride 1.
double ssim(const GrayImage& x, const GrayImage& y, int window = 0);

MetricsReport compute_report(const GrayImage& original, const GrayImage& enhanced,
                             int ssim_window = 0);

}  // namespace fimhe
