#include "pgvario/model_indicator.hpp"

#include <string>

#include "pgvario/errors.hpp"
#include "pgvario/gaussian.hpp"

namespace pgv {

double indicator_expectation(const CodingFunction& coding, std::size_t site, int k) {
    double p = 1.0;
    for (std::size_t r = 0; r < coding.n_grfs(); ++r) {
        const Interval& iv = coding.interval(k, r, site);
        p *= std_normal_cdf(iv.upper) - std_normal_cdf(iv.lower);
    }
    return p;
}

double joint_indicator_expectation(const CodingFunction& coding, std::size_t site_i,
                                   std::size_t site_j, int k, int l,
                                   std::span<const double> rho) {
    if (rho.size() != coding.n_grfs())
        throw ConfigError("need one correlation per GRF");
    double p = 1.0;
    for (std::size_t r = 0; r < coding.n_grfs(); ++r)
        p *= bivariate_rect_prob(coding.interval(k, r, site_i),
                                 coding.interval(l, r, site_j), Correlation(rho[r]));
    return p;
}

double indicator_variogram_between_points(const CodingFunction& coding,
                                          std::size_t site_i, std::size_t site_j,
                                          int k, int l, std::span<const double> rho) {
    if (k == l) {
        const double pk_i = indicator_expectation(coding, site_i, k);
        const double pk_j = indicator_expectation(coding, site_j, k);
        return (pk_i + pk_j) / 2.0 -
               joint_indicator_expectation(coding, site_i, site_j, k, k, rho);
    }
    return -(joint_indicator_expectation(coding, site_j, site_i, k, l, rho) +
             joint_indicator_expectation(coding, site_j, site_i, l, k, rho)) /
           2.0;
}

std::vector<EmpiricalVariogram> averaged_indicator_variogram(
    const CodingFunction& coding, const std::vector<std::vector<double>>& rho_per_lag,
    const PairGroups& groups) {
    if (rho_per_lag.size() != groups.n_lags())
        throw ConfigError("need one correlation vector per lag");
    const std::size_t K = coding.n_categories();

    std::vector<EmpiricalVariogram> tracks(K * K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < K; ++l)
            tracks[k * K + l].track =
                "model_ind_" + std::to_string(k + 1) + "_" + std::to_string(l + 1);

    for (std::size_t alpha = 0; alpha < groups.n_lags(); ++alpha) {
        const auto& rho = rho_per_lag[alpha];
        const auto n = static_cast<std::int64_t>(groups.count(alpha));
        const bool have = !rho.empty() && n > 0;
        if (!rho.empty() && rho.size() != coding.n_grfs())
            throw ConfigError("need one correlation per GRF at every lag");

        for (std::size_t k = 1; k <= K; ++k) {
            for (std::size_t l = 1; l <= K; ++l) {
                VariogramPoint pt;
                pt.lag = groups.lag_centers[alpha];
                pt.n_pairs = n;
                if (have) {
                    if (coding.site_dependent()) {
                        double sum = 0.0;
                        for (const SitePair& p : groups.pairs[alpha])
                            sum += indicator_variogram_between_points(
                                coding, p.i, p.j, static_cast<int>(k),
                                static_cast<int>(l), rho);
                        pt.estimate = sum / static_cast<double>(n);
                    } else {
                        pt.estimate = indicator_variogram_between_points(
                            coding, 0, 0, static_cast<int>(k), static_cast<int>(l),
                            rho);
                    }
                }
                tracks[(k - 1) * K + (l - 1)].points.push_back(pt);
            }
        }
    }
    return tracks;
}

} // namespace pgv
