#pragma once

#include "pgvario/covariance.hpp"
#include "pgvario/variogram.hpp"

namespace pgv {

struct FitResult {
    CovarianceModel model; // sill fixed at 1
    double objective = 0.0;
    bool range_at_lower_bound = false; // pure-nugget behavior
};

// Weighted least squares of 1 - C_range(h) against the estimated track,
// weights N(h)/h, range searched by golden section. Needs at least 3
// non-missing lags with h > 0.
FitResult fit_unit_sill_model(const EmpiricalVariogram& v, CovarianceKind kind);

} // namespace pgv
