#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <vector>

#include "pgvario/covariance.hpp"
#include "pgvario/site_set.hpp"

namespace pgv {

// Values of q independent standardized fields at n sites, column-major:
// values[r*n_sites + i] is field r at site i.
struct GRFRealization {
    std::size_t n_sites = 0;
    std::size_t n_grfs = 0;
    std::vector<double> values;

    double at(std::size_t site, std::size_t grf) const {
        return values[grf * n_sites + site];
    }
    std::span<const double> column(std::size_t grf) const {
        return {values.data() + grf * n_sites, n_sites};
    }
};

// Caches the Cholesky factor of the site covariance matrix so repeated draws
// cost one matrix-vector product each. Factorization retries once with a
// 1e-10 diagonal jitter; a second failure raises NumericalError.
class GrfSimulator {
public:
    GrfSimulator(const SiteSet& sites, const CovarianceModel& model);
    ~GrfSimulator();
    GrfSimulator(GrfSimulator&&) noexcept;
    GrfSimulator& operator=(GrfSimulator&&) noexcept;

    std::size_t n_sites() const;

    // Deterministic in the seed; safe to call concurrently.
    std::vector<double> draw(std::uint64_t seed) const;

private:
    struct Impl;
    std::unique_ptr<Impl> impl_;
};

// One field at the given sites.
GRFRealization simulate_grf(const SiteSet& sites, const CovarianceModel& model,
                            std::uint64_t seed);

// q independent fields; field r uses derive_seed(seed, r), so the q = 1 case
// reduces to simulate_grf(sites, models[0], derive_seed(seed, 0)).
GRFRealization simulate_independent_grfs(const SiteSet& sites,
                                         std::span<const CovarianceModel> models,
                                         std::uint64_t seed);

} // namespace pgv
