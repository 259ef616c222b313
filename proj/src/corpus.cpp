#include "fimhe/corpus.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "fimhe/image_io.hpp"
#include "fimhe/kernels.hpp"

namespace fimhe {

namespace {

std::string format_float3(double v) {
    if (std::isinf(v)) {
        return v > 0 ? "inf" : "-inf";
    }
    if (std::isnan(v)) {
        return "nan";
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3f", v);
    return buf;
}

// JSON mirrors the CSV precision: numbers rounded to 3 decimals, infinities
// and NaN as strings since JSON has no literal for them.
nlohmann::json json_float3(double v) {
    if (std::isinf(v) || std::isnan(v)) {
        return format_float3(v);
    }
    return std::round(v * 1000.0) / 1000.0;
}

nlohmann::json row_to_json(const BenchmarkRow& row, bool with_image) {
    nlohmann::json j;
    if (with_image) {
        j["image"] = row.image;
    }
    j["method"] = method_name(row.method);
    j["entropy"] = json_float3(row.metrics.entropy_out);
    j["entropy_pct"] = json_float3(row.metrics.entropy_pct);
    j["psnr"] = json_float3(row.metrics.psnr_db);
    j["ambe"] = json_float3(row.metrics.ambe);
    j["ssim"] = json_float3(row.metrics.ssim);
    return j;
}

struct ImageResult {
    bool ok = false;
    std::string error;
    std::vector<MetricsReport> reports;  // one per method
};

}  // namespace

BenchmarkRun run_benchmark(const std::vector<std::string>& files,
                           const std::vector<MethodId>& methods,
                           const BenchmarkOptions& options) {
    if (methods.empty()) {
        throw std::invalid_argument("run_benchmark: no methods");
    }

    // Deterministic processing order: sort by basename, then full path.
    std::vector<std::string> sorted = files;
    const auto basename = [](const std::string& p) {
        return std::filesystem::path(p).filename().string();
    };
    std::sort(sorted.begin(), sorted.end(), [&](const std::string& a, const std::string& b) {
        const std::string na = basename(a), nb = basename(b);
        return na != nb ? na < nb : a < b;
    });

    const int n = static_cast<int>(sorted.size());
    std::vector<ImageResult> results(n);

    // Per-image work items are independent; rows are merged in sorted order
    // below, so scheduling cannot affect the output.
#ifdef _OPENMP
#pragma omp parallel for schedule(dynamic)
#endif
    for (int i = 0; i < n; ++i) {
        ImageResult& res = results[i];
        try {
            const GrayImage original = load_image_file(sorted[i]);
            const Histogram hist = compute_histogram(original);
            for (MethodId method : methods) {
                const GreyLevelMap map = method_map(method, hist, options.rsihe_depth);
                const GrayImage enhanced = apply_map(original, map.mapping);
                res.reports.push_back(compute_report(original, enhanced, options.ssim_window));
            }
            res.ok = true;
        } catch (const std::exception& e) {
            res.ok = false;
            res.error = e.what();
            res.reports.clear();
        }
    }

    BenchmarkRun run;
    run.methods = methods;
    for (int i = 0; i < n; ++i) {
        if (!results[i].ok) {
            std::cerr << "skipping " << sorted[i] << ": " << results[i].error << "\n";
            run.images_skipped++;
            continue;
        }
        run.images_ok++;
        for (std::size_t m = 0; m < methods.size(); ++m) {
            run.rows.push_back({basename(sorted[i]), methods[m], results[i].reports[m]});
        }
    }
    if (run.images_ok == 0) {
        throw std::invalid_argument("run_benchmark: no loadable image in corpus");
    }

    // Arithmetic mean of the per-image rows, one row per method.
    for (std::size_t m = 0; m < methods.size(); ++m) {
        MetricsReport mean;
        for (const BenchmarkRow& row : run.rows) {
            if (row.method != methods[m]) {
                continue;
            }
            mean.entropy_out += row.metrics.entropy_out;
            mean.entropy_pct += row.metrics.entropy_pct;
            mean.psnr_db += row.metrics.psnr_db;
            mean.ambe += row.metrics.ambe;
            mean.ssim += row.metrics.ssim;
        }
        const double count = static_cast<double>(run.images_ok);
        mean.entropy_out /= count;
        mean.entropy_pct /= count;
        mean.psnr_db /= count;
        mean.ambe /= count;
        mean.ssim /= count;
        run.averages.push_back({"AVERAGE", methods[m], mean});
    }
    return run;
}

BenchmarkRun run_benchmark_dir(const std::string& directory,
                               const std::vector<MethodId>& methods,
                               const BenchmarkOptions& options) {
    if (!std::filesystem::is_directory(directory)) {
        throw std::invalid_argument("not a directory: " + directory);
    }
    std::vector<std::string> files;
    for (const auto& entry : std::filesystem::directory_iterator(directory)) {
        if (entry.is_regular_file()) {
            files.push_back(entry.path().string());
        }
    }
    if (files.empty()) {
        throw std::invalid_argument("empty corpus: " + directory);
    }
    BenchmarkRun run = run_benchmark(files, methods, options);
    run.corpus_path = directory;
    return run;
}

std::string write_report(const BenchmarkRun& run, ReportFormat format) {
    if (run.rows.empty()) {
        throw std::invalid_argument("write_report: empty run");
    }
    if (format == ReportFormat::csv) {
        std::ostringstream out;
        out << "image,method,entropy,entropy_pct,psnr,ambe,ssim\n";
        const auto emit = [&out](const BenchmarkRow& row) {
            out << row.image << ',' << method_name(row.method) << ','
                << format_float3(row.metrics.entropy_out) << ','
                << format_float3(row.metrics.entropy_pct) << ','
                << format_float3(row.metrics.psnr_db) << ','
                << format_float3(row.metrics.ambe) << ','
                << format_float3(row.metrics.ssim) << '\n';
        };
        for (const BenchmarkRow& row : run.rows) {
            emit(row);
        }
        for (const BenchmarkRow& row : run.averages) {
            emit(row);
        }
        return out.str();
    }

    nlohmann::json j;
    j["corpus"] = run.corpus_path;
    j["methods"] = nlohmann::json::array();
    for (MethodId m : run.methods) {
        j["methods"].push_back(method_name(m));
    }
    j["rows"] = nlohmann::json::array();
    for (const BenchmarkRow& row : run.rows) {
        j["rows"].push_back(row_to_json(row, true));
    }
    j["AVERAGE"] = nlohmann::json::array();
    for (const BenchmarkRow& row : run.averages) {
        j["AVERAGE"].push_back(row_to_json(row, false));
    }
    j["images_ok"] = run.images_ok;
    j["images_skipped"] = run.images_skipped;
    return j.dump(2) + "\n";
}

std::string dump_histogram(const GrayImage& image) {
    const Histogram hist = compute_histogram(image);
    std::ostringstream out;
    for (int k = 0; k < kGreyLevels; ++k) {
        out << k << ',' << hist.bins[k] << '\n';
    }
    return out.str();
}

}  // namespace fimhe
