#pragma once

#include <span>
#include <vector>

#include "pgvario/coding.hpp"
#include "pgvario/lag_binning.hpp"
#include "pgvario/variogram.hpp"

namespace pgv {

// P(category at the site is k) under the standardized-GRF model.
double indicator_expectation(const CodingFunction& coding, std::size_t site,
                             int k);

// E[1_k(x) 1_l(x')] for independent GRFs: a product over GRFs of bivariate
// rectangle probabilities, one correlation per GRF.
double joint_indicator_expectation(const CodingFunction& coding, std::size_t site_i,
                                   std::size_t site_j, int k, int l,
                                   std::span<const double> rho);

// Theoretical point-pair indicator variogram (simple for k == l, cross
// otherwise) implied by the coding and the per-GRF correlations.
double indicator_variogram_between_points(const CodingFunction& coding,
                                          std::size_t site_i, std::size_t site_j,
                                          int k, int l, std::span<const double> rho);

// Lag averages over the given pair groups; rho_per_lag[alpha] holds one
// correlation per GRF, or is empty where no model value is available (the
// corresponding lag is reported missing). Tracks are "model_ind_k_l",
// row-major by (k, l) as in empirical_indicator_variograms.
std::vector<EmpiricalVariogram> averaged_indicator_variogram(
    const CodingFunction& coding, const std::vector<std::vector<double>>& rho_per_lag,
    const PairGroups& groups);

} // namespace pgv
