// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. argv[1] is the path of the CLI binary for the round-trip
// criterion.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "fimhe/baselines.hpp"
#include "fimhe/corpus.hpp"
#include "fimhe/fimhe.hpp"
#include "fimhe/image_io.hpp"
#include "fimhe/metrics.hpp"
#include "test_support.hpp"

using namespace fimhe;
namespace fs = std::filesystem;
using Clock = std::chrono::steady_clock;

namespace {

int g_failures = 0;

void report(int index, const std::string& name, bool ok, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", index, name.c_str(),
                detail.c_str());
    if (!ok) {
        g_failures++;
    }
}

double seconds_since(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

// Scene-like underexposed image: dark-dominant content, gentle ramp, bright
// highlight blobs. Parameters chosen so the fuzzy split stays non-degenerate.
GrayImage scene_image(unsigned seed, int width, int height, double dark_mu, double bright_mu,
                      double bright_frac) {
    std::mt19937 rng(seed);
    GrayImage image;
    image.width = width;
    image.height = height;
    image.pixels.resize(static_cast<std::size_t>(width) * height);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::normal_distribution<double> noise(0.0, 6.0);
    const double cx = unit(rng), cy = unit(rng), cr = 0.15 + 0.25 * unit(rng);
    const double cx2 = unit(rng), cy2 = unit(rng), cr2 = 0.1 + 0.2 * unit(rng);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const double u = static_cast<double>(c) / width;
            const double v = static_cast<double>(r) / height;
            double value = dark_mu + 25.0 * (u - 0.5) + 12.0 * std::sin(5.0 * v);
            const double d1 = std::hypot(u - cx, v - cy);
            const double d2 = std::hypot(u - cx2, v - cy2);
            if (d1 < cr * std::sqrt(bright_frac * 4.0)) {
                value = bright_mu + 18.0 * (1.0 - d1 / cr);
            } else if (d2 < cr2 * std::sqrt(bright_frac * 3.0)) {
                value = bright_mu - 10.0 + 15.0 * (1.0 - d2 / cr2);
            }
            value += noise(rng);
            image.pixels[static_cast<std::size_t>(r) * width + c] = static_cast<std::uint8_t>(
                std::clamp(static_cast<int>(std::lround(value)), 0, 255));
        }
    }
    return image;
}

std::vector<GrayImage> desk_corpus(int count) {
    std::vector<GrayImage> corpus;
    for (int i = 0; i < count; ++i) {
        const double dark_mu = 45.0 + (i % 6) * 9.0;
        const double bright_mu = 185.0 + (i % 5) * 12.0;
        const double bright_frac = 0.10 + (i % 4) * 0.05;
        corpus.push_back(scene_image(1000 + i * 77, 96, 96, dark_mu, bright_mu, bright_frac));
    }
    return corpus;
}

// --- criteria ------------------------------------------------------------

void criterion_1_monotonicity() {
    const auto t0 = Clock::now();
    const int trials = 10000;
    std::mt19937 rng(42);
    long violations = 0;
    for (int i = 0; i < trials; ++i) {
        const Histogram hist = test_support::random_histogram(rng);
        const SegmentBounds bounds = segment_bounds(hist);
        for (MethodId id : all_methods()) {
            const GreyLevelMap map = method_map(id, hist, 2);
            if (!test_support::non_decreasing(map.mapping)) {
                violations++;
            }
            for (int k = 0; k < 256; ++k) {
                const int out = map.mapping[k];
                if (out < 0 || out > 255) {
                    violations++;
                }
            }
            if (id == MethodId::FIMHE && !bounds.degenerate) {
                for (const SegmentRange& range : segment_ranges(bounds)) {
                    for (int k = range.lo; k <= range.hi; ++k) {
                        if (map.mapping[k] < range.lo || map.mapping[k] > range.hi) {
                            violations++;
                        }
                    }
                }
            }
        }
    }
    const double elapsed = seconds_since(t0);
    char detail[128];
    std::snprintf(detail, sizeof(detail), "%d histograms x 7 methods, %ld violations, %.1f s",
                  trials, violations, elapsed);
    report(1, "transfer-map monotonicity and range containment", violations == 0 && elapsed < 30.0,
           detail);
}

void criterion_2_metric_oracles() {
    std::mt19937 rng(43);
    const double tol = 1e-9;
    int mismatches = 0;
    for (int i = 0; i < 100; ++i) {
        const GrayImage x = test_support::random_image(rng, 32, 32);
        const GrayImage y = i == 0 ? x : test_support::random_image(rng, 32, 32);
        if (!test_support::close_rel(mse(x, y), test_support::oracle_mse(x, y), tol)) mismatches++;
        if (!test_support::close_rel(ambe(x, y), test_support::oracle_ambe(x, y), tol)) mismatches++;
        if (!test_support::close_rel(ssim(x, y), test_support::oracle_ssim(x, y), tol)) mismatches++;
        if (!test_support::close_rel(entropy(compute_histogram(y)),
                                     test_support::oracle_entropy(y), tol)) {
            mismatches++;
        }
        // PSNR: infinite markers must agree exactly, finite values relatively
        const double p = psnr(x, y);
        const double po = test_support::oracle_psnr(x, y);
        if (std::isinf(p) != std::isinf(po)) {
            mismatches++;
        } else if (!std::isinf(p) && !test_support::close_rel(p, po, tol)) {
            mismatches++;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail), "100 random 32x32 pairs, %d oracle mismatches at 1e-9",
                  mismatches);
    report(2, "metric oracle equivalence", mismatches == 0, detail);
}

void criterion_3_identity_degeneracy() {
    bool ok = true;
    std::string why = "constant, two-level and all-dark images";
    try {
        // constant images: output bit-identical, AMBE 0, SSIM 1
        for (int level : {0, 1, 127, 254, 255}) {
            const GrayImage image =
                test_support::make_image(33, 21, static_cast<std::uint8_t>(level));
            const GrayImage out = enhance(image);
            if (out.pixels != image.pixels || out.width != image.width ||
                out.height != image.height) {
                ok = false;
                why = "constant image not returned bit-identical";
            }
            if (ambe(image, out) != 0.0 || std::fabs(ssim(image, out) - 1.0) > 1e-12) {
                ok = false;
                why = "identity path metrics are off";
            }
        }
        // two-level images, including the extreme bimodal case
        std::mt19937 rng(44);
        for (auto [a, b] : {std::pair{0, 255}, {100, 101}, {3, 9}, {250, 255}}) {
            GrayImage image = test_support::make_image(40, 40, static_cast<std::uint8_t>(a));
            for (std::size_t i = 0; i < image.pixels.size(); i += 2) {
                image.pixels[i] = static_cast<std::uint8_t>(b);
            }
            const GrayImage out = enhance(image);
            if (out.pixels.size() != image.pixels.size()) {
                ok = false;
                why = "two-level image changed size";
            }
        }
        // all-dark images
        for (int i = 0; i < 5; ++i) {
            GrayImage image = test_support::random_image(rng, 50, 31);
            for (auto& p : image.pixels) {
                p = static_cast<std::uint8_t>(p % 40);
            }
            const GrayImage out = enhance(image);
            if (out.pixels.size() != image.pixels.size()) {
                ok = false;
                why = "all-dark image changed size";
            }
        }
    } catch (const std::exception& e) {
        ok = false;
        why = std::string("threw: ") + e.what();
    }
    report(3, "identity/degeneracy suite", ok, why);
}

void criterion_4_closed_form_anchors() {
    Histogram uniform;
    uniform.bins.fill(4);
    uniform.total = 4 * 256;
    const FuzzyThreshold t = fuzzy_threshold(intensity_stats(uniform));
    const bool t_ok = !t.degenerate && std::abs(t.level - 148) <= 1;

    const GrayImage black = test_support::make_image(16, 16, 0);
    const GrayImage white = test_support::make_image(16, 16, 255);
    const double s = ssim(black, white);
    const bool s_ok = std::fabs(s - 1.0e-4) <= 1e-5;
    const double p = psnr(black, white);
    const bool p_ok = p == 0.0;

    char detail[160];
    std::snprintf(detail, sizeof(detail),
                  "uniform T=%d (want 148+-1), ssim(0,255)=%.3e (want 1e-4+-1e-5), "
                  "psnr(0,255)=%g (want 0)",
                  t.level, s, p);
    report(4, "closed-form anchors", t_ok && s_ok && p_ok, detail);
}

void criterion_5_directional_reproduction() {
    const auto t0 = Clock::now();
    const std::vector<GrayImage> corpus = desk_corpus(24);
    const int n = static_cast<int>(corpus.size());

    int degenerate = 0;
    int ssim_wins_bbhe = 0, ssim_wins_dsihe = 0;
    int psnr_wins_bbhe = 0, psnr_wins_dsihe = 0;
    int ambe_wins_dsihe = 0;
    double mean_ssim_f = 0, mean_ssim_b = 0, mean_ssim_d = 0;
    double mean_psnr_f = 0, mean_psnr_b = 0, mean_psnr_d = 0;
    double mean_ambe_f = 0, mean_ambe_d = 0;

    for (const GrayImage& image : corpus) {
        const Histogram hist = compute_histogram(image);
        const GrayImage by_fimhe = enhance(image);
        if (by_fimhe.pixels == image.pixels) {
            degenerate++;  // identity output would make the comparison vacuous
        }
        const GrayImage by_bbhe = apply_map(image, bbhe(hist).mapping);
        const GrayImage by_dsihe = apply_map(image, dsihe(hist).mapping);

        const double sf = ssim(image, by_fimhe);
        const double sb = ssim(image, by_bbhe);
        const double sd = ssim(image, by_dsihe);
        const double pf = psnr(image, by_fimhe);
        const double pb = psnr(image, by_bbhe);
        const double pd = psnr(image, by_dsihe);
        const double af = ambe(image, by_fimhe);
        const double ad = ambe(image, by_dsihe);

        ssim_wins_bbhe += sf > sb;
        ssim_wins_dsihe += sf > sd;
        psnr_wins_bbhe += pf > pb;
        psnr_wins_dsihe += pf > pd;
        ambe_wins_dsihe += af < ad;
        mean_ssim_f += sf / n;
        mean_ssim_b += sb / n;
        mean_ssim_d += sd / n;
        mean_psnr_f += pf / n;
        mean_psnr_b += pb / n;
        mean_psnr_d += pd / n;
        mean_ambe_f += af / n;
        mean_ambe_d += ad / n;
    }
    const double elapsed = seconds_since(t0);
    const double need = 0.8 * n;
    const bool ok = degenerate == 0 && elapsed < 60.0 && mean_ssim_f > mean_ssim_b &&
                    mean_ssim_f > mean_ssim_d && mean_psnr_f > mean_psnr_b &&
                    mean_psnr_f > mean_psnr_d && mean_ambe_f < mean_ambe_d &&
                    ssim_wins_bbhe >= need && ssim_wins_dsihe >= need &&
                    psnr_wins_bbhe >= need && psnr_wins_dsihe >= need &&
                    ambe_wins_dsihe >= need;
    char detail[256];
    std::snprintf(detail, sizeof(detail),
                  "%d images: ssim %.3f vs bbhe %.3f / dsihe %.3f (wins %d,%d), psnr %.1f vs "
                  "%.1f / %.1f (wins %d,%d), ambe %.2f vs dsihe %.2f (wins %d), %.1f s",
                  n, mean_ssim_f, mean_ssim_b, mean_ssim_d, ssim_wins_bbhe, ssim_wins_dsihe,
                  mean_psnr_f, mean_psnr_b, mean_psnr_d, psnr_wins_bbhe, psnr_wins_dsihe,
                  mean_ambe_f, mean_ambe_d, ambe_wins_dsihe, elapsed);
    report(5, "directional reproduction of the published orderings", ok, detail);
}

void criterion_6_baseline_identities() {
    std::mt19937 rng(45);
    int mismatches = 0;
    for (int i = 0; i < 1000; ++i) {
        const Histogram hist = test_support::random_histogram(rng);
        if (rsihe(hist, 1).mapping != dsihe(hist).mapping) {
            mismatches++;
        }
    }
    // the global-mean clip exceeds every bin exactly when the histogram is
    // flat; there bhepl's per-half clip is a no-op as well
    int clip_mismatches = 0;
    for (std::uint64_t height : {1ull, 2ull, 9ull, 250ull, 10000ull}) {
        Histogram flat;
        flat.bins.fill(height);
        flat.total = height * 256;
        if (mhe(flat).mapping != classic_he(flat).mapping) {
            clip_mismatches++;
        }
        if (bhepl(flat).mapping != bbhe(flat).mapping) {
            clip_mismatches++;
        }
    }
    char detail[128];
    std::snprintf(detail, sizeof(detail),
                  "rsihe(.,1) vs dsihe: %d/1000 mismatches; no-op clips: %d mismatches",
                  mismatches, clip_mismatches);
    report(6, "baseline identities", mismatches == 0 && clip_mismatches == 0, detail);
}

void criterion_7_real_time() {
#ifdef _OPENMP
    const int saved_threads = omp_get_max_threads();
    omp_set_num_threads(1);
#endif
    const GrayImage image = scene_image(777, 512, 512, 60.0, 200.0, 0.15);
    double best_ms = 1e9;
    for (int i = 0; i < 5; ++i) {
        const auto t0 = Clock::now();
        const GrayImage out = enhance(image);
        const double ms = seconds_since(t0) * 1000.0;
        best_ms = std::min(best_ms, ms);
        if (out.pixels.size() != image.pixels.size()) {
            best_ms = 1e9;
        }
    }
#ifdef _OPENMP
    omp_set_num_threads(saved_threads);
#endif
    char detail[96];
    std::snprintf(detail, sizeof(detail), "512x512 single-threaded enhance: %.2f ms", best_ms);
    report(7, "real-time enhancement", best_ms < 100.0, detail);
}

// --- criterion 8: CLI round trip ------------------------------------------

int run_cmd(const std::string& cmd) {
    const int status = std::system(cmd.c_str());
    if (status == -1) {
        return -1;
    }
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

struct CsvRow {
    std::string image;
    std::string method;
    std::vector<double> values;  // entropy, entropy_pct, psnr, ambe, ssim
};

std::vector<CsvRow> parse_csv(const std::string& text) {
    std::vector<CsvRow> rows;
    std::stringstream lines(text);
    std::string line;
    bool header = true;
    while (std::getline(lines, line)) {
        if (header) {
            header = false;
            continue;
        }
        std::stringstream cells(line);
        std::string cell;
        CsvRow row;
        int idx = 0;
        while (std::getline(cells, cell, ',')) {
            if (idx == 0) {
                row.image = cell;
            } else if (idx == 1) {
                row.method = cell;
            } else if (cell == "inf") {
                row.values.push_back(std::numeric_limits<double>::infinity());
            } else {
                row.values.push_back(std::stod(cell));
            }
            idx++;
        }
        rows.push_back(std::move(row));
    }
    return rows;
}

void criterion_8_cli_round_trip(const std::string& cli) {
    bool ok = true;
    std::string why = "enhance/metrics/benchmark round trip";
    const fs::path dir = fs::temp_directory_path() / "fimhe_acceptance";
    fs::remove_all(dir);
    fs::create_directories(dir / "corpus");

    const auto q = [](const fs::path& p) { return "\"" + p.string() + "\""; };

    try {
        // 3-image corpus
        for (int i = 0; i < 3; ++i) {
            save_image_file(scene_image(50 + i, 64, 48, 50.0 + 10 * i, 190.0 + 15 * i, 0.15),
                            (dir / "corpus" / ("img" + std::to_string(i) + ".pgm")).string());
        }
        const fs::path img0 = dir / "corpus" / "img0.pgm";

        // enhance
        if (run_cmd(cli + " enhance -m fimhe " + q(img0) + " " + q(dir / "enhanced.pgm")) != 0) {
            ok = false;
            why = "enhance exited nonzero";
        }
        if (ok && load_image_file((dir / "enhanced.pgm").string()).pixels.empty()) {
            ok = false;
            why = "enhance wrote an empty image";
        }

        // constant image passes through byte-identical
        const fs::path flat = dir / "flat.pgm";
        save_image_file(test_support::make_image(12, 7, 88), flat.string());
        if (ok && run_cmd(cli + " enhance " + q(flat) + " " + q(dir / "flat_out.pgm")) != 0) {
            ok = false;
            why = "enhance on a constant image failed";
        }
        if (ok && read_file(flat) != read_file(dir / "flat_out.pgm")) {
            ok = false;
            why = "constant image not byte-identical after enhance";
        }

        // unknown method: usage error, no file written
        const int bogus = run_cmd(cli + " enhance -m bogus " + q(img0) + " " +
                                  q(dir / "nope.pgm") + " 2>/dev/null");
        if (ok && (bogus != 1 || fs::exists(dir / "nope.pgm"))) {
            ok = false;
            why = "bogus method should exit 1 and write nothing";
        }

        // metrics of an image against itself
        if (ok) {
            run_cmd(cli + " metrics " + q(img0) + " " + q(img0) + " > " + q(dir / "metrics.txt"));
            const std::string line = read_file(dir / "metrics.txt");
            if (line.find("ambe=0.000") == std::string::npos ||
                line.find("ssim=1.000") == std::string::npos ||
                line.find("psnr=inf") == std::string::npos) {
                ok = false;
                why = "self-metrics line wrong: " + line;
            }
        }

        // benchmark, twice: identical bytes, aggregates match recomputed means
        const std::string bench_cmd =
            cli + " benchmark " + q(dir / "corpus") + " -m all -o " + q(dir / "report.csv");
        if (ok && run_cmd(bench_cmd) != 0) {
            ok = false;
            why = "benchmark exited nonzero";
        }
        if (ok) {
            fs::copy_file(dir / "report.csv", dir / "report1.csv");
            if (run_cmd(bench_cmd) != 0 ||
                read_file(dir / "report.csv") != read_file(dir / "report1.csv")) {
                ok = false;
                why = "benchmark not deterministic across two runs";
            }
        }
        if (ok) {
            const auto rows = parse_csv(read_file(dir / "report.csv"));
            int aggregates_checked = 0;
            for (const CsvRow& avg : rows) {
                if (avg.image != "AVERAGE") {
                    continue;
                }
                std::vector<double> mean(avg.values.size(), 0.0);
                int count = 0;
                for (const CsvRow& row : rows) {
                    if (row.image == "AVERAGE" || row.method != avg.method) {
                        continue;
                    }
                    for (std::size_t v = 0; v < mean.size(); ++v) {
                        mean[v] += row.values[v];
                    }
                    count++;
                }
                if (count != 3) {
                    ok = false;
                    why = "expected 3 rows per method";
                    break;
                }
                for (std::size_t v = 0; v < mean.size(); ++v) {
                    mean[v] /= count;
                    const double got = avg.values[v];
                    if (std::isinf(mean[v]) && std::isinf(got)) {
                        continue;
                    }
                    // per-row and aggregate roundings each contribute 5e-4
                    if (std::fabs(mean[v] - got) > 1.001e-3) {
                        ok = false;
                        why = "aggregate row differs from recomputed mean";
                    }
                }
                aggregates_checked++;
            }
            if (ok && aggregates_checked != 7) {
                ok = false;
                why = "expected 7 AVERAGE rows";
            }
        }

        // histogram dump
        if (ok && run_cmd(cli + " histogram " + q(img0) + " " + q(dir / "hist.txt")) != 0) {
            ok = false;
            why = "histogram exited nonzero";
        }
    } catch (const std::exception& e) {
        ok = false;
        why = std::string("threw: ") + e.what();
    }
    fs::remove_all(dir);
    report(8, "CLI round trip", ok, why);
}

}  // namespace

int main(int argc, char** argv) {
    criterion_1_monotonicity();
    criterion_2_metric_oracles();
    criterion_3_identity_degeneracy();
    criterion_4_closed_form_anchors();
    criterion_5_directional_reproduction();
    criterion_6_baseline_identities();
    criterion_7_real_time();
    if (argc > 1) {
        criterion_8_cli_round_trip(argv[1]);
    } else {
        report(8, "CLI round trip", false, "no CLI path given on the command line");
    }
    if (g_failures > 0) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all criteria passed\n");
    return 0;
}
