#include "fimhe/baselines.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <stdexcept>

namespace fimhe {

namespace {

using RealBins = std::array<double, kGreyLevels>;

RealBins to_real(const Histogram& hist) {
    RealBins bins;
    for (int k = 0; k < kGreyLevels; ++k) {
        bins[k] = static_cast<double>(hist.bins[k]);
    }
    return bins;
}

// HE of [lo, hi] onto [lo, hi]: f(k) = lo + (hi-lo) * CDF(k). A segment with
// no mass keeps whatever the map already holds (identity).
void sub_equalize(const RealBins& bins, int lo, int hi, GreyLevelMap& map) {
    if (lo > hi) {
        return;
    }
    double total = 0.0;
    for (int k = lo; k <= hi; ++k) {
        total += bins[k];
    }
    if (total <= 0.0) {
        return;
    }
    const double factor = hi - lo;
    double cum = 0.0;
    for (int k = lo; k <= hi; ++k) {
        cum += bins[k];
        const double f = lo + factor * (cum / total);
        map.mapping[k] = static_cast<std::uint8_t>(std::clamp(round_half_up(f), lo, hi));
    }
}

void require_nonempty(const Histogram& hist) {
    if (hist.total == 0) {
        throw std::invalid_argument("empty histogram");
    }
}

int mean_split_level(const Histogram& hist) {
    return static_cast<int>(std::floor(intensity_stats(hist).mean));
}

// Smallest k in [lo, hi] whose cumulative count reaches half the mass of the
// range. Ties break low, matching the equal-mass convention.
int median_split_level(const Histogram& hist, int lo, int hi) {
    std::uint64_t total = 0;
    for (int k = lo; k <= hi; ++k) {
        total += hist.bins[k];
    }
    std::uint64_t cum = 0;
    for (int k = lo; k <= hi; ++k) {
        cum += hist.bins[k];
        if (2 * cum >= total) {
            return k;
        }
    }
    return hi;
}

std::uint64_t range_total(const Histogram& hist, int lo, int hi) {
    std::uint64_t total = 0;
    for (int k = lo; k <= hi; ++k) {
        total += hist.bins[k];
    }
    return total;
}

void rsihe_split(const Histogram& hist, const RealBins& bins, int lo, int hi, int depth,
                 GreyLevelMap& map) {
    if (range_total(hist, lo, hi) == 0) {
        return;
    }
    if (depth == 0 || lo == hi) {
        sub_equalize(bins, lo, hi, map);
        return;
    }
    const int split = median_split_level(hist, lo, hi);
    rsihe_split(hist, bins, lo, split, depth - 1, map);
    if (split < hi) {
        rsihe_split(hist, bins, split + 1, hi, depth - 1, map);
    }
}

}  // namespace

const char* method_name(MethodId id) {
    switch (id) {
        case MethodId::HE:
            return "HE";
        case MethodId::BBHE:
            return "BBHE";
        case MethodId::DSIHE:
            return "DSIHE";
        case MethodId::RSIHE:
            return "RSIHE";
        case MethodId::BHEPL:
            return "BHEPL";
        case MethodId::MHE:
            return "MHE";
        case MethodId::FIMHE:
            return "FIMHE";
    }
    return "?";
}

std::optional<MethodId> parse_method(std::string_view token) {
    std::string lower(token);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "he") return MethodId::HE;
    if (lower == "bbhe") return MethodId::BBHE;
    if (lower == "dsihe") return MethodId::DSIHE;
    if (lower == "rsihe") return MethodId::RSIHE;
    if (lower == "bhepl") return MethodId::BHEPL;
    if (lower == "mhe") return MethodId::MHE;
    if (lower == "fimhe") return MethodId::FIMHE;
    return std::nullopt;
}

std::vector<MethodId> all_methods() {
    return {MethodId::HE,    MethodId::BBHE, MethodId::DSIHE, MethodId::RSIHE,
            MethodId::BHEPL, MethodId::MHE,  MethodId::FIMHE};
}

GreyLevelMap classic_he(const Histogram& hist) {
    require_nonempty(hist);
    GreyLevelMap map = identity_map();
    sub_equalize(to_real(hist), 0, kGreyLevels - 1, map);
    return map;
}

GreyLevelMap bbhe(const Histogram& hist) {
    require_nonempty(hist);
    const int split = mean_split_level(hist);
    GreyLevelMap map = identity_map();
    const RealBins bins = to_real(hist);
    sub_equalize(bins, 0, split, map);
    if (split < kGreyLevels - 1) {
        sub_equalize(bins, split + 1, kGreyLevels - 1, map);
    }
    return map;
}

GreyLevelMap dsihe(const Histogram& hist) {
    return rsihe(hist, 1);
}

GreyLevelMap rsihe(const Histogram& hist, int depth) {
    require_nonempty(hist);
    if (depth < 1) {
        throw std::invalid_argument("rsihe: depth must be >= 1");
    }
    GreyLevelMap map = identity_map();
    rsihe_split(hist, to_real(hist), 0, kGreyLevels - 1, depth, map);
    return map;
}

GreyLevelMap bhepl(const Histogram& hist) {
    require_nonempty(hist);
    const int split = mean_split_level(hist);
    RealBins bins = to_real(hist);
    // Each half is clipped at its own mean bin count before equalization.
    const auto clip_half = [&bins, &hist](int lo, int hi) {
        const std::uint64_t total = range_total(hist, lo, hi);
        if (total == 0) {
            return;
        }
        const double plateau = static_cast<double>(total) / (hi - lo + 1);
        for (int k = lo; k <= hi; ++k) {
            bins[k] = std::min(bins[k], plateau);
        }
    };
    clip_half(0, split);
    if (split < kGreyLevels - 1) {
        clip_half(split + 1, kGreyLevels - 1);
    }
    GreyLevelMap map = identity_map();
    sub_equalize(bins, 0, split, map);
    if (split < kGreyLevels - 1) {
        sub_equalize(bins, split + 1, kGreyLevels - 1, map);
    }
    return map;
}

GreyLevelMap mhe(const Histogram& hist) {
    require_nonempty(hist);
    const double plateau = static_cast<double>(hist.total) / kGreyLevels;
    RealBins bins = to_real(hist);
    for (int k = 0; k < kGreyLevels; ++k) {
        bins[k] = std::min(bins[k], plateau);
    }
    GreyLevelMap map = identity_map();
    sub_equalize(bins, 0, kGreyLevels - 1, map);
    return map;
}

GreyLevelMap method_map(MethodId id, const Histogram& hist, int rsihe_depth) {
    switch (id) {
        case MethodId::HE:
            return classic_he(hist);
        case MethodId::BBHE:
            return bbhe(hist);
        case MethodId::DSIHE:
            return dsihe(hist);
        case MethodId::RSIHE:
            return rsihe(hist, rsihe_depth);
        case MethodId::BHEPL:
            return bhepl(hist);
        case MethodId::MHE:
            return mhe(hist);
        case MethodId::FIMHE:
            return fimhe_map(hist);
    }
    throw std::invalid_argument("unknown method");
}

}  // namespace fimhe
