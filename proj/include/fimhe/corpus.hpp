#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "fimhe/baselines.hpp"
#include "fimhe/metrics.hpp"

namespace fimhe {

struct BenchmarkRow {
    std::string image;
    MethodId method = MethodId::FIMHE;
    MetricsReport metrics;
};

// Per-image rows in (image, method) order plus one arithmetic-mean row per
// method. Files that fail to load are skipped and counted.
struct BenchmarkRun {
    std::string corpus_path;
    std::vector<MethodId> methods;
    std::vector<BenchmarkRow> rows;
    std::vector<BenchmarkRow> averages;  // image == "AVERAGE"
    std::size_t images_ok = 0;
    std::size_t images_skipped = 0;
};

struct BenchmarkOptions {
    int rsihe_depth = 2;
    int ssim_window = 0;
};

enum class ReportFormat { csv, json };

// Enhance every image with every method and collect metric rows. Rows are
// merged in image-id-sorted order no matter how the per-image work is
// scheduled, so permuting `files` cannot change the result. Throws
// std::invalid_argument when no file loads.
BenchmarkRun run_benchmark(const std::vector<std::string>& files,
                           const std::vector<MethodId>& methods,
                           const BenchmarkOptions& options = {});

// Same over all regular files of a directory.
BenchmarkRun run_benchmark_dir(const std::string& directory,
                               const std::vector<MethodId>& methods,
                               const BenchmarkOptions& options = {});

// CSV with header image,method,entropy,entropy_pct,psnr,ambe,ssim and the
// average rows keyed AVERAGE trailing; or JSON mirroring the same fields.
// Floats carry 3 decimals; infinite PSNR is the literal `inf`.
std::string write_report(const BenchmarkRun& run, ReportFormat format);

// 256 lines "k,count" for external plotting.
std::string dump_histogram(const GrayImage& image);

}  // namespace fimhe
