#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "fimhe/baselines.hpp"
#include "fimhe/corpus.hpp"
#include "fimhe/fimhe.hpp"
#include "fimhe/image_io.hpp"
#include "fimhe/kernels.hpp"
#include "fimhe/metrics.hpp"

namespace {

// Exit codes: 0 success, 1 usage error, 2 I/O or format error.
constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIo = 2;

fimhe::MethodId parse_method_or_die(const std::string& token) {
    const auto method = fimhe::parse_method(token);
    if (!method) {
        throw CLI::ValidationError("method", "unknown method '" + token +
                                                 "' (use he, bbhe, dsihe, rsihe, bhepl, mhe, "
                                                 "fimhe, or all)");
    }
    return *method;
}

std::vector<fimhe::MethodId> parse_method_list(const std::string& csv) {
    std::vector<fimhe::MethodId> methods;
    std::stringstream ss(csv);
    std::string token;
    while (std::getline(ss, token, ',')) {
        if (token.empty()) {
            continue;
        }
        if (token == "all") {
            return fimhe::all_methods();
        }
        methods.push_back(parse_method_or_die(token));
    }
    if (methods.empty()) {
        throw CLI::ValidationError("method", "no method given");
    }
    return methods;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        throw std::runtime_error("cannot open " + path + " for writing");
    }
    out << content;
    if (!out) {
        throw std::runtime_error("write failed: " + path);
    }
}

std::string format_metric(double v) {
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

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"grayscale contrast enhancement toolkit"};
    app.require_subcommand(1);

    // enhance
    auto* enhance_cmd = app.add_subcommand("enhance", "enhance one image");
    std::string enhance_method = "fimhe";
    int rsihe_depth = 2;
    std::string enhance_in, enhance_out;
    enhance_cmd->add_option("-m,--method", enhance_method, "method (default fimhe)");
    enhance_cmd->add_option("-r,--rsihe-depth", rsihe_depth, "recursion depth for rsihe")
        ->check(CLI::Range(1, 8));
    enhance_cmd->add_option("input", enhance_in, "input image (PGM or PNG)")->required();
    enhance_cmd->add_option("output", enhance_out, "output image (PGM, or PNG by extension)")
        ->required();

    // metrics
    auto* metrics_cmd = app.add_subcommand("metrics", "compare two images");
    std::string metrics_orig, metrics_enh;
    int ssim_window = 0;
    metrics_cmd->add_option("original", metrics_orig)->required();
    metrics_cmd->add_option("enhanced", metrics_enh)->required();
    metrics_cmd->add_option("--ssim-window", ssim_window,
                            "sliding-window size for mean SSIM (0 = whole image)")
        ->check(CLI::Range(0, 255));

    // benchmark
    auto* bench_cmd = app.add_subcommand("benchmark", "run all methods over an image directory");
    std::string bench_dir;
    std::string bench_methods = "all";
    std::string bench_out = "-";
    std::string bench_format = "csv";
    int bench_depth = 2;
    int bench_window = 0;
    bench_cmd->add_option("directory", bench_dir, "corpus directory")->required();
    bench_cmd->add_option("-m,--methods", bench_methods, "comma-separated methods or 'all'");
    bench_cmd->add_option("-o,--output", bench_out, "report path ('-' for stdout)");
    bench_cmd->add_option("-f,--format", bench_format, "csv or json")
        ->check(CLI::IsMember({"csv", "json"}));
    bench_cmd->add_option("-r,--rsihe-depth", bench_depth)->check(CLI::Range(1, 8));
    bench_cmd->add_option("--ssim-window", bench_window)->check(CLI::Range(0, 255));

    // histogram
    auto* hist_cmd = app.add_subcommand("histogram", "dump the 256-bin histogram as k,count");
    std::string hist_in, hist_out;
    hist_cmd->add_option("input", hist_in)->required();
    hist_cmd->add_option("output", hist_out, "dump path ('-' for stdout)")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);  // help goes to stdout, exit 0
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (*enhance_cmd) {
            const fimhe::MethodId method = parse_method_or_die(enhance_method);
            const fimhe::GrayImage input = fimhe::load_image_file(enhance_in);
            const fimhe::Histogram hist = fimhe::compute_histogram(input);
            const fimhe::GreyLevelMap map = fimhe::method_map(method, hist, rsihe_depth);
            const fimhe::GrayImage output = fimhe::apply_map(input, map.mapping);
            fimhe::save_image_file(output, enhance_out);
        } else if (*metrics_cmd) {
            const fimhe::GrayImage original = fimhe::load_image_file(metrics_orig);
            const fimhe::GrayImage enhanced = fimhe::load_image_file(metrics_enh);
            const fimhe::MetricsReport r =
                fimhe::compute_report(original, enhanced, ssim_window);
            std::cout << "entropy=" << format_metric(r.entropy_out)
                      << " entropy_pct=" << format_metric(r.entropy_pct)
                      << " psnr=" << format_metric(r.psnr_db)
                      << " ambe=" << format_metric(r.ambe)
                      << " ssim=" << format_metric(r.ssim) << "\n";
        } else if (*bench_cmd) {
            const std::vector<fimhe::MethodId> methods = parse_method_list(bench_methods);
            fimhe::BenchmarkOptions options;
            options.rsihe_depth = bench_depth;
            options.ssim_window = bench_window;
            const fimhe::BenchmarkRun run = fimhe::run_benchmark_dir(bench_dir, methods, options);
            const fimhe::ReportFormat format =
                bench_format == "json" ? fimhe::ReportFormat::json : fimhe::ReportFormat::csv;
            const std::string report = fimhe::write_report(run, format);
            if (bench_out == "-") {
                std::cout << report;
            } else {
                write_text_file(bench_out, report);
            }
        } else if (*hist_cmd) {
            const fimhe::GrayImage image = fimhe::load_image_file(hist_in);
            const std::string dump = fimhe::dump_histogram(image);
            if (hist_out == "-") {
                std::cout << dump;
            } else {
                write_text_file(hist_out, dump);
            }
        }
    } catch (const CLI::ValidationError& e) {
        std::cerr << e.what() << "\n";
        return kExitUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitIo;
    }
    return kExitOk;
}
