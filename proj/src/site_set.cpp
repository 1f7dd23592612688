#include "pgvario/site_set.hpp"

#include <cmath>

#include "pgvario/errors.hpp"
#include "pgvario/rng.hpp"

namespace pgv {

void SiteSet::validate() const {
    if (dim != 1 && dim != 2)
        throw ConfigError("site set dimension must be 1 or 2");
    if (coords.size() % dim != 0)
        throw ConfigError("site coordinate array size is not a multiple of dim");
    for (double c : coords)
        if (!std::isfinite(c))
            throw ConfigError("site coordinates must be finite");
}

double site_distance(const SiteSet& sites, std::size_t i, std::size_t j) {
    if (sites.dim == 1)
        return std::fabs(sites.coord(i, 0) - sites.coord(j, 0));
    const double dx = sites.coord(i, 0) - sites.coord(j, 0);
    const double dy = sites.coord(i, 1) - sites.coord(j, 1);
    return std::hypot(dx, dy);
}

SiteSet make_grid_1d(std::size_t n, double mesh) {
    if (n == 0) throw ConfigError("grid needs at least one node");
    if (!(mesh > 0.0)) throw ConfigError("grid mesh must be positive");
    SiteSet s;
    s.dim = 1;
    s.coords.resize(n);
    for (std::size_t i = 0; i < n; ++i) s.coords[i] = static_cast<double>(i) * mesh;
    return s;
}

SiteSet sample_uniform_square(std::size_t n, double side, std::uint64_t seed) {
    if (n == 0) throw ConfigError("site sample needs at least one site");
    if (!(side > 0.0)) throw ConfigError("square side must be positive");
    SiteSet s;
    s.dim = 2;
    s.coords = standard_uniforms(seed, 2 * n);
    for (auto& c : s.coords) c *= side;
    return s;
}

} // namespace pgv
