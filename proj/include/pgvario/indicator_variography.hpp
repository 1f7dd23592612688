#pragma once

#include <span>
#include <vector>

#include "pgvario/coding.hpp"
#include "pgvario/lag_binning.hpp"
#include "pgvario/variogram.hpp"

namespace pgv {

// All K*K indicator simple and cross variograms, row-major by (k, l):
// track "ind_k_l" at index (k-1)*K + (l-1). Built from per-lag category
// transition counts, so symmetry and the zero row-sum identity are exact.
std::vector<EmpiricalVariogram> empirical_indicator_variograms(const CategoricalField& f,
                                                               const PairGroups& groups);

// Matheron estimator of continuous values. Sites with keep[i] == 0 are
// excluded from every pair; empty keep means all sites participate.
EmpiricalVariogram empirical_variogram_continuous(std::span<const double> values,
                                                  const PairGroups& groups,
                                                  std::span<const unsigned char> keep = {});

} // namespace pgv
