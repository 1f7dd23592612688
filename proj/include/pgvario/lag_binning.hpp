#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <vector>

#include "pgvario/site_set.hpp"

namespace pgv {

enum class LagMode { omnidirectional, directional };

// Lag classes along increasing distance centers. Directional mode keeps only
// pairs whose separation direction lies within angular_tolerance (radians) of
// the given direction (sign ignored).
struct LagSpec {
    LagMode mode = LagMode::omnidirectional;
    std::vector<double> centers;
    double tolerance = 0.0; // 0 means: half the minimum center spacing
    std::array<double, 2> direction = {1.0, 0.0};
    double angular_tolerance = 0.0;

    static LagSpec regular(std::size_t n_lags, double lag_width);

    double resolved_tolerance() const;
    void validate() const;
};

struct SitePair {
    std::uint32_t i;
    std::uint32_t j; // i < j
};

// Site pairs grouped by nearest lag center; a pair appears at most once.
struct PairGroups {
    std::vector<double> lag_centers;
    std::vector<std::vector<SitePair>> pairs; // one list per lag

    std::size_t n_lags() const { return lag_centers.size(); }
    std::size_t count(std::size_t lag) const { return pairs[lag].size(); }
};

PairGroups build_pair_groups(const SiteSet& sites, const LagSpec& spec);

} // namespace pgv
