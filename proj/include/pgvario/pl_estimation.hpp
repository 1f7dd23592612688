#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "pgvario/coding.hpp"
#include "pgvario/gaussian.hpp"
#include "pgvario/lag_binning.hpp"
#include "pgvario/variogram.hpp"

namespace pgv {

// One observed site pair on a single GRF axis: the intervals the two field
// values are known to lie in, with a multiplicity for repeated classes.
struct WeightedIntervalPair {
    Interval first;
    Interval second;
    std::int64_t count = 1;
};

// Sum of count * log P((Y_i, Y_j) in first x second) under correlation rho.
double pl_objective(std::span<const WeightedIntervalPair> pairs, Correlation rho);

// Per-lag, per-GRF estimate. gamma_hat = 1 - rho_hat by the unit-sill
// identity; n_effective_pairs counts pairs whose likelihood factor actually
// varies with rho (both intervals proper).
struct LagEstimate {
    double rho_hat = 0.0;
    double gamma_hat = 1.0;
    double log_pl = 0.0;
    std::int64_t n_effective_pairs = 0;
    bool converged = false;
    bool at_boundary = false; // within 1e-3 of the correlation clamp
};

// Maximizes pl_objective over the clamped correlation box: a coarse 21-point
// scan picks a bracket, golden section (at most 60 iterations) narrows it to
// rho_tolerance, and a final quadratic step polishes. Throws
// NoInformationError when every pair is constant in rho.
LagEstimate estimate_lag_correlation(std::span<const WeightedIntervalPair> pairs,
                                     double rho_tolerance = 1e-4);

struct PLLagResult {
    double lag = 0.0;
    std::int64_t n_pairs = 0;
    std::vector<std::optional<LagEstimate>> per_grf;
};

// The full estimator: for every lag and every GRF axis, gather the interval
// pairs implied by the observed categories, collapse them into multiplicity
// classes, and maximize the pairwise likelihood. Lags with no informative
// pairs on an axis are recorded missing, never fatal.
std::vector<PLLagResult> empirical_underlying_variogram(const CategoricalField& f,
                                                        const CodingFunction& coding,
                                                        const PairGroups& groups,
                                                        int n_threads = 1);

// One track per GRF ("grf_1", ...); estimate = gamma_hat, pair counts are the
// effective counts.
std::vector<EmpiricalVariogram> pl_variogram_tracks(std::span<const PLLagResult> results,
                                                    std::size_t n_grfs);

} // namespace pgv
