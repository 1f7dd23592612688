#include "pgvario/lag_binning.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "pgvario/errors.hpp"

namespace pgv {

LagSpec LagSpec::regular(std::size_t n_lags, double lag_width) {
    if (n_lags == 0) throw ConfigError("need at least one lag");
    if (!(lag_width > 0.0)) throw ConfigError("lag width must be positive");
    LagSpec s;
    s.centers.resize(n_lags);
    for (std::size_t a = 0; a < n_lags; ++a)
        s.centers[a] = static_cast<double>(a + 1) * lag_width;
    return s;
}

double LagSpec::resolved_tolerance() const {
    if (tolerance > 0.0) return tolerance;
    double min_spacing = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a + 1 < centers.size(); ++a)
        min_spacing = std::min(min_spacing, centers[a + 1] - centers[a]);
    if (!std::isfinite(min_spacing))
        throw ConfigError("a single lag center needs an explicit tolerance");
    return min_spacing / 2.0;
}

void LagSpec::validate() const {
    if (centers.empty()) throw ConfigError("need at least one lag center");
    for (double c : centers)
        if (!std::isfinite(c) || c < 0.0)
            throw ConfigError("lag centers must be finite and non-negative");
    for (std::size_t a = 0; a + 1 < centers.size(); ++a)
        if (!(centers[a] < centers[a + 1]))
            throw ConfigError("lag centers must be strictly increasing");
    if (tolerance < 0.0 || std::isnan(tolerance))
        throw ConfigError("lag tolerance must be non-negative");

    const double tol = resolved_tolerance();
    for (std::size_t a = 0; a + 1 < centers.size(); ++a) {
        const double spacing = centers[a + 1] - centers[a];
        // Touching windows are fine (midpoint ties break to the smaller lag);
        // interior overlap makes the assignment ambiguous.
        if (spacing + 1e-12 * std::max(1.0, spacing) < 2.0 * tol)
            throw ConfigError("lag windows overlap: spacing " + std::to_string(spacing) +
                              " is less than twice the tolerance " + std::to_string(tol));
    }

    if (mode == LagMode::directional) {
        if (std::hypot(direction[0], direction[1]) == 0.0)
            throw ConfigError("directional mode needs a non-zero direction");
        if (!(angular_tolerance > 0.0))
            throw ConfigError("directional mode needs a positive angular tolerance");
    }
}

PairGroups build_pair_groups(const SiteSet& sites, const LagSpec& spec) {
    sites.validate();
    spec.validate();
    if (spec.mode == LagMode::directional && sites.dim != 2)
        throw ConfigError("directional lag classes need 2-D sites");

    const double tol = spec.resolved_tolerance();
    const auto& centers = spec.centers;
    const double cos_tol = std::cos(spec.angular_tolerance);
    double ux = 0.0, uy = 0.0;
    if (spec.mode == LagMode::directional) {
        const double norm = std::hypot(spec.direction[0], spec.direction[1]);
        ux = spec.direction[0] / norm;
        uy = spec.direction[1] / norm;
    }

    PairGroups groups;
    groups.lag_centers = centers;
    groups.pairs.resize(centers.size());

    const std::size_t n = sites.size();
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = i + 1; j < n; ++j) {
            const double d = site_distance(sites, i, j);

            // Nearest center; ties break to the smaller lag.
            auto it = std::lower_bound(centers.begin(), centers.end(), d);
            std::size_t alpha;
            if (it == centers.begin()) {
                alpha = 0;
            } else if (it == centers.end()) {
                alpha = centers.size() - 1;
            } else {
                const std::size_t hi = static_cast<std::size_t>(it - centers.begin());
                alpha = (d - centers[hi - 1] <= centers[hi] - d) ? hi - 1 : hi;
            }
            if (std::fabs(d - centers[alpha]) > tol) continue;

            if (spec.mode == LagMode::directional) {
                if (d == 0.0) continue;
                const double dx = (sites.coord(j, 0) - sites.coord(i, 0)) / d;
                const double dy = (sites.coord(j, 1) - sites.coord(i, 1)) / d;
                if (std::fabs(dx * ux + dy * uy) < cos_tol) continue;
            }

            groups.pairs[alpha].push_back(
                {static_cast<std::uint32_t>(i), static_cast<std::uint32_t>(j)});
        }
    }
    return groups;
}

} // namespace pgv
