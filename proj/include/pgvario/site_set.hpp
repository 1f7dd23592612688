#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace pgv {

// Point locations in 1 or 2 dimensions, row-major: coords[i*dim + d].
struct SiteSet {
    std::size_t dim = 1;
    std::vector<double> coords;

    std::size_t size() const { return dim == 0 ? 0 : coords.size() / dim; }
    double coord(std::size_t i, std::size_t d) const { return coords[i * dim + d]; }

    void validate() const;
};

double site_distance(const SiteSet& sites, std::size_t i, std::size_t j);

// n nodes at 0, mesh, 2*mesh, ...
SiteSet make_grid_1d(std::size_t n, double mesh);

// n sites uniform on [0, side]^2; reproducible from the seed.
SiteSet sample_uniform_square(std::size_t n, double side, std::uint64_t seed);

} // namespace pgv
