#include "pgvario/indicator_variography.hpp"

#include <cstdint>
#include <string>

#include "pgvario/errors.hpp"

namespace pgv {

std::vector<EmpiricalVariogram> empirical_indicator_variograms(const CategoricalField& f,
                                                               const PairGroups& groups) {
    const std::size_t K = f.n_categories;
    if (K == 0) throw ConfigError("categorical field has no categories");
    for (int c : f.categories)
        if (c < 1 || static_cast<std::size_t>(c) > K)
            throw ConfigError("category label outside 1..K");

    std::vector<EmpiricalVariogram> tracks(K * K);
    for (std::size_t k = 0; k < K; ++k)
        for (std::size_t l = 0; l < K; ++l)
            tracks[k * K + l].track =
                "ind_" + std::to_string(k + 1) + "_" + std::to_string(l + 1);

    std::vector<std::int64_t> m(K * K);
    for (std::size_t alpha = 0; alpha < groups.n_lags(); ++alpha) {
        std::fill(m.begin(), m.end(), 0);
        for (const SitePair& p : groups.pairs[alpha]) {
            if (p.j >= f.categories.size())
                throw ConfigError("pair group references a site beyond the field");
            const auto a = static_cast<std::size_t>(f.categories[p.i] - 1);
            const auto b = static_cast<std::size_t>(f.categories[p.j] - 1);
            ++m[a * K + b];
        }
        const auto n = static_cast<std::int64_t>(groups.count(alpha));

        for (std::size_t k = 0; k < K; ++k) {
            for (std::size_t l = 0; l < K; ++l) {
                VariogramPoint pt;
                pt.lag = groups.lag_centers[alpha];
                pt.n_pairs = n;
                if (n > 0) {
                    // Integer sum of (1_k(j)-1_k(i)) * (1_l(j)-1_l(i)) over pairs.
                    std::int64_t s = 0;
                    for (std::size_t a = 0; a < K; ++a) {
                        for (std::size_t b = 0; b < K; ++b) {
                            if (a == b || m[a * K + b] == 0) continue;
                            const int ek = (b == k ? 1 : 0) - (a == k ? 1 : 0);
                            const int el = (b == l ? 1 : 0) - (a == l ? 1 : 0);
                            s += m[a * K + b] * ek * el;
                        }
                    }
                    pt.estimate = static_cast<double>(s) / (2.0 * static_cast<double>(n));
                }
                tracks[k * K + l].points.push_back(pt);
            }
        }
    }
    return tracks;
}

EmpiricalVariogram empirical_variogram_continuous(std::span<const double> values,
                                                  const PairGroups& groups,
                                                  std::span<const unsigned char> keep) {
    if (!keep.empty() && keep.size() != values.size())
        throw ConfigError("mask length does not match value count");

    EmpiricalVariogram out;
    out.track = "values";
    for (std::size_t alpha = 0; alpha < groups.n_lags(); ++alpha) {
        double sum = 0.0;
        std::int64_t n = 0;
        for (const SitePair& p : groups.pairs[alpha]) {
            if (p.j >= values.size())
                throw ConfigError("pair group references a site beyond the values");
            if (!keep.empty() && (!keep[p.i] || !keep[p.j])) continue;
            const double d = values[p.j] - values[p.i];
            sum += d * d;
            ++n;
        }
        VariogramPoint pt;
        pt.lag = groups.lag_centers[alpha];
        pt.n_pairs = n;
        if (n > 0) pt.estimate = sum / (2.0 * static_cast<double>(n));
        out.points.push_back(pt);
    }
    return out;
}

} // namespace pgv
