#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "fimhe/fimhe.hpp"
#include "fimhe/histogram.hpp"

namespace fimhe {

enum class MethodId { HE, BBHE, DSIHE, RSIHE, BHEPL, MHE, FIMHE };

// Canonical (uppercase) method name as used in reports.
const char* method_name(MethodId id);

// Case-insensitive parse of a method token. Recognizes the reserved but
// unimplemented names "bhepl-d" and "esihe" as nullopt, same as unknowns.
std::optional<MethodId> parse_method(std::string_view token);

std::vector<MethodId> all_methods();

// Classical global HE: f(k) = round(255 * CDF(k)).
GreyLevelMap classic_he(const Histogram& hist);

// Two-part HE split at floor of the histogram mean.
GreyLevelMap bbhe(const Histogram& hist);

// Two-part HE split at the grey-level median.
GreyLevelMap dsihe(const Histogram& hist);

// Recursive median splitting to depth r (2^r segments), HE within each.
// Throws std::invalid_argument for r < 1.
GreyLevelMap rsihe(const Histogram& hist, int depth);

// Mean split as BBHE, each half clipped at its own mean bin count before
// equalization. The plateau value is an interpretation: the source paper for
// FIMHE does not give BHEPL's formula, so the sub-histogram mean is used.
GreyLevelMap bhepl(const Histogram& hist);

// Every bin clipped at the global mean bin count (total/256), then classic
// HE on the clipped histogram.
GreyLevelMap mhe(const Histogram& hist);

// Dispatch by method id; rsihe_depth only affects RSIHE.
GreyLevelMap method_map(MethodId id, const Histogram& hist, int rsihe_depth = 2);

}  // namespace fimhe
