#include "pgvario/fitting.hpp"

#include <cmath>
#include <vector>

#include "pgvario/errors.hpp"

namespace pgv {

FitResult fit_unit_sill_model(const EmpiricalVariogram& v, CovarianceKind kind) {
    struct Obs {
        double h, gamma, w;
    };
    std::vector<Obs> obs;
    for (const auto& pt : v.points) {
        if (!pt.estimate || pt.n_pairs < 1) continue;
        if (!(pt.lag > 0.0)) continue; // weight N/h is undefined at h = 0
        obs.push_back({pt.lag, *pt.estimate, static_cast<double>(pt.n_pairs) / pt.lag});
    }
    if (obs.size() < 3)
        throw NoInformationError("model fit needs at least 3 estimated lags");

    const auto objective = [&](double range) {
        const CovarianceModel m{kind, range, 1.0};
        double s = 0.0;
        for (const auto& o : obs) {
            const double resid = o.gamma - (1.0 - covariance_eval(m, o.h));
            s += o.w * resid * resid;
        }
        return s;
    };

    const double lo = obs.front().h / 10.0;
    const double hi = obs.back().h * 10.0;
    const double tol = 1e-6 * (hi - lo);

    constexpr double invphi = 0.6180339887498948482;
    double a = lo, b = hi;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = objective(x1);
    double f2 = objective(x2);
    int iter = 0;
    while (b - a > tol && iter < 200) {
        if (f1 <= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = objective(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = objective(x2);
        }
        ++iter;
    }
    const double range = (a + b) / 2.0;

    FitResult fit;
    fit.model = {kind, range, 1.0};
    fit.objective = objective(range);
    fit.range_at_lower_bound = range <= lo + 10.0 * tol;
    return fit;
}

} // namespace pgv
