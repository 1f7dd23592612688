#include "pgvario/pl_estimation.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <string>

#include "pgvario/errors.hpp"
#include "pgvario/parallel.hpp"

namespace pgv {

double pl_objective(std::span<const WeightedIntervalPair> pairs, Correlation rho) {
    double v = 0.0;
    for (const auto& p : pairs) {
        if (p.count < 1) throw ConfigError("pair multiplicity must be >= 1");
        v += static_cast<double>(p.count) *
             log_bivariate_rect_prob(p.first, p.second, rho);
    }
    return v;
}

namespace {

// Dedup key: quantized canonical endpoints. 1e-9 steps are far below any
// meaningful threshold separation, so collapsing by key is lossless.
std::int64_t quantize(double x) {
    if (std::isinf(x))
        return x > 0 ? std::numeric_limits<std::int64_t>::max()
                     : std::numeric_limits<std::int64_t>::min();
    return std::llround(std::clamp(x, -1e8, 1e8) * 1e9);
}

struct PairClass {
    Interval first;
    Interval second;
    std::int64_t count;
};

// Canonicalize pair order, then merge duplicates. The map is ordered by key,
// so the evaluation order (hence the floating-point result) is independent
// of the input order.
std::vector<PairClass> merge_classes(std::span<const WeightedIntervalPair> pairs) {
    std::map<std::array<std::int64_t, 4>, PairClass> classes;
    for (const auto& p : pairs) {
        if (p.count < 1) throw ConfigError("pair multiplicity must be >= 1");
        const Interval* a = &p.first;
        const Interval* b = &p.second;
        if (b->lower < a->lower || (b->lower == a->lower && b->upper < a->upper))
            std::swap(a, b);
        const std::array<std::int64_t, 4> key = {quantize(a->lower), quantize(a->upper),
                                                 quantize(b->lower), quantize(b->upper)};
        auto [it, inserted] = classes.try_emplace(key, PairClass{*a, *b, p.count});
        if (!inserted) it->second.count += p.count;
    }
    std::vector<PairClass> out;
    out.reserve(classes.size());
    for (auto& [key, cls] : classes) out.push_back(cls);
    return out;
}

} // namespace

LagEstimate estimate_lag_correlation(std::span<const WeightedIntervalPair> pairs,
                                     double rho_tolerance) {
    if (!(rho_tolerance > 0.0))
        throw ConfigError("search tolerance must be positive");

    const std::vector<PairClass> classes = merge_classes(pairs);

    // Factors with a whole-line interval reduce to a marginal probability:
    // constant in rho, so they only shift the objective.
    double const_log = 0.0;
    std::int64_t n_effective = 0;
    std::vector<PairClass> informative;
    informative.reserve(classes.size());
    for (const auto& cls : classes) {
        if (cls.first.is_whole_line() || cls.second.is_whole_line()) {
            const_log += static_cast<double>(cls.count) *
                         log_bivariate_rect_prob(cls.first, cls.second, Correlation(0.0));
        } else {
            informative.push_back(cls);
            n_effective += cls.count;
        }
    }
    if (informative.empty())
        throw NoInformationError("every interval pair is constant in rho");

    const auto objective = [&](double rho) {
        double v = 0.0;
        const Correlation c(rho);
        for (const auto& cls : informative)
            v += static_cast<double>(cls.count) *
                 log_bivariate_rect_prob(cls.first, cls.second, c);
        if (!std::isfinite(v))
            throw NumericalError("pairwise likelihood non-finite at rho = " +
                                 std::to_string(rho));
        return v;
    };

    double best_x = 0.0;
    double best_f = -std::numeric_limits<double>::infinity();
    const auto evaluate = [&](double x) {
        const double f = objective(x);
        if (f > best_f) {
            best_f = f;
            best_x = x;
        }
        return f;
    };

    // Coarse scan; the center point is exactly 0, so the reported optimum can
    // never fall below the independence baseline.
    constexpr int n_scan = 21;
    std::array<double, n_scan> grid_x;
    std::array<double, n_scan> grid_f;
    int best_i = 0;
    for (int i = 0; i < n_scan; ++i) {
        const double t = static_cast<double>(i) / (n_scan - 1);
        grid_x[i] = i == (n_scan - 1) / 2
                        ? 0.0
                        : -Correlation::max_abs + 2.0 * Correlation::max_abs * t;
        grid_f[i] = evaluate(grid_x[i]);
        if (grid_f[i] > grid_f[best_i]) best_i = i;
    }

    double a = grid_x[std::max(best_i - 1, 0)];
    double b = grid_x[std::min(best_i + 1, n_scan - 1)];

    constexpr double invphi = 0.6180339887498948482;
    double x1 = b - invphi * (b - a);
    double x2 = a + invphi * (b - a);
    double f1 = evaluate(x1);
    double f2 = evaluate(x2);
    int iter = 0;
    while (b - a > rho_tolerance && iter < 60) {
        if (f1 >= f2) {
            b = x2;
            x2 = x1;
            f2 = f1;
            x1 = b - invphi * (b - a);
            f1 = evaluate(x1);
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + invphi * (b - a);
            f2 = evaluate(x2);
        }
        ++iter;
    }
    const bool converged = (b - a) <= rho_tolerance;

    // One parabola through the final interior points polishes the estimate
    // below the golden-section resolution.
    const double xm = (a + b) / 2.0;
    if (xm != x1 && xm != x2) {
        const double fm = evaluate(xm);
        const double num =
            (xm - x1) * (xm - x1) * (fm - f2) - (xm - x2) * (xm - x2) * (fm - f1);
        const double den = (xm - x1) * (fm - f2) - (xm - x2) * (fm - f1);
        if (den != 0.0) {
            const double vertex = xm - 0.5 * num / den;
            if (std::isfinite(vertex) && std::fabs(vertex) <= Correlation::max_abs)
                evaluate(vertex);
        }
    }

    LagEstimate est;
    est.rho_hat = best_x;
    est.gamma_hat = 1.0 - best_x;
    est.log_pl = best_f + const_log;
    est.n_effective_pairs = n_effective;
    est.converged = converged;
    est.at_boundary = Correlation::max_abs - std::fabs(best_x) <= 1e-3;
    return est;
}

std::vector<PLLagResult> empirical_underlying_variogram(const CategoricalField& f,
                                                        const CodingFunction& coding,
                                                        const PairGroups& groups,
                                                        int n_threads) {
    if (f.n_categories != coding.n_categories())
        throw ConfigError("field and coding disagree on the number of categories");
    const std::size_t q = coding.n_grfs();

    std::vector<PLLagResult> results(groups.n_lags());
    parallel_for(groups.n_lags(), n_threads, [&](std::size_t alpha) {
        PLLagResult& res = results[alpha];
        res.lag = groups.lag_centers[alpha];
        res.n_pairs = static_cast<std::int64_t>(groups.count(alpha));
        res.per_grf.resize(q);

        std::vector<WeightedIntervalPair> raw;
        for (std::size_t r = 0; r < q; ++r) {
            raw.clear();
            raw.reserve(groups.count(alpha));
            for (const SitePair& p : groups.pairs[alpha]) {
                if (p.j >= f.categories.size())
                    throw ConfigError("pair group references a site beyond the field");
                raw.push_back({coding.interval(f.categories[p.i], r, p.i),
                               coding.interval(f.categories[p.j], r, p.j), 1});
            }
            try {
                res.per_grf[r] = estimate_lag_correlation(raw);
            } catch (const NoInformationError&) {
                res.per_grf[r] = std::nullopt;
            }
        }
    });
    return results;
}

std::vector<EmpiricalVariogram> pl_variogram_tracks(std::span<const PLLagResult> results,
                                                    std::size_t n_grfs) {
    std::vector<EmpiricalVariogram> tracks(n_grfs);
    for (std::size_t r = 0; r < n_grfs; ++r)
        tracks[r].track = "grf_" + std::to_string(r + 1);
    for (const auto& res : results) {
        if (res.per_grf.size() != n_grfs)
            throw ConfigError("lag result does not match the number of GRFs");
        for (std::size_t r = 0; r < n_grfs; ++r) {
            VariogramPoint pt;
            pt.lag = res.lag;
            if (res.per_grf[r]) {
                pt.estimate = res.per_grf[r]->gamma_hat;
                pt.n_pairs = res.per_grf[r]->n_effective_pairs;
            }
            tracks[r].points.push_back(pt);
        }
    }
    return tracks;
}

} // namespace pgv
