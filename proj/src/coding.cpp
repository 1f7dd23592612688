#include "pgvario/coding.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "pgvario/errors.hpp"
#include "pgvario/rng.hpp"

namespace pgv {

void ProportionSpec::validate() const {
    if (proportions.size() < 2)
        throw ConfigError("need at least two category proportions");
    double sum = 0.0;
    for (double p : proportions) {
        if (!(p > 0.0) || !(p < 1.0))
            throw ConfigError("each proportion must lie strictly in (0, 1)");
        sum += p;
    }
    if (std::fabs(sum - 1.0) > 1e-12)
        throw ConfigError("proportions must sum to 1 (got " + std::to_string(sum) + ")");
}

std::vector<double> thresholds_from_proportions(const ProportionSpec& p) {
    p.validate();
    std::vector<double> thresholds(p.proportions.size() - 1);
    double cum = 0.0;
    for (std::size_t j = 0; j + 1 < p.proportions.size(); ++j) {
        cum += p.proportions[j];
        thresholds[j] = std_normal_quantile(cum);
    }
    return thresholds;
}

namespace {

void require_strictly_increasing(const std::vector<double>& s) {
    for (double v : s)
        if (std::isnan(v)) throw ConfigError("threshold is NaN");
    for (std::size_t j = 0; j + 1 < s.size(); ++j)
        if (!(s[j] < s[j + 1]))
            throw ConfigError("thresholds must be strictly increasing");
}

void append_sequential_cells(std::vector<Interval>& cells, const std::vector<double>& s) {
    const double inf = std::numeric_limits<double>::infinity();
    for (std::size_t k = 0; k <= s.size(); ++k) {
        const double lo = k == 0 ? -inf : s[k - 1];
        const double hi = k == s.size() ? inf : s[k];
        cells.emplace_back(lo, hi);
    }
}

} // namespace

CodingFunction CodingFunction::sequential(std::vector<double> thresholds) {
    if (thresholds.empty())
        throw ConfigError("sequential rule needs at least one threshold");
    require_strictly_increasing(thresholds);
    CodingFunction c;
    c.q_ = 1;
    c.k_ = thresholds.size() + 1;
    c.n_profiles_ = 1;
    append_sequential_cells(c.cells_, thresholds);
    return c;
}

CodingFunction CodingFunction::sequential_from_proportions(const ProportionSpec& p) {
    return sequential(thresholds_from_proportions(p));
}

CodingFunction CodingFunction::sequential_varying(std::vector<std::vector<double>> per_site) {
    if (per_site.empty())
        throw ConfigError("varying rule needs at least one site");
    const std::size_t m = per_site.front().size();
    if (m == 0)
        throw ConfigError("varying rule needs at least one threshold per site");
    CodingFunction c;
    c.q_ = 1;
    c.k_ = m + 1;
    c.n_profiles_ = per_site.size();
    c.cells_.reserve(c.n_profiles_ * c.k_);
    for (const auto& row : per_site) {
        if (row.size() != m)
            throw ConfigError("per-site threshold rows must all have the same length");
        require_strictly_increasing(row);
        append_sequential_cells(c.cells_, row);
    }
    return c;
}

CodingFunction CodingFunction::flag2(double s1, double t1) {
    if (!std::isfinite(s1) || !std::isfinite(t1))
        throw ConfigError("flag rule thresholds must be finite");
    CodingFunction c;
    c.q_ = 2;
    c.k_ = 3;
    c.n_profiles_ = 1;
    c.cells_ = {
        Interval::below(s1), Interval::whole_line(), // category 1
        Interval::above(s1), Interval::below(t1),    // category 2
        Interval::above(s1), Interval::above(t1),    // category 3
    };
    return c;
}

CodingFunction CodingFunction::explicit_rectangles(std::size_t n_grfs,
                                                   std::vector<std::vector<Interval>> cells) {
    if (n_grfs == 0) throw ConfigError("explicit rule needs at least one GRF");
    if (cells.empty()) throw ConfigError("explicit rule needs at least one category");
    CodingFunction c;
    c.q_ = n_grfs;
    c.k_ = cells.size();
    c.n_profiles_ = 1;
    for (const auto& cell : cells) {
        if (cell.size() != n_grfs)
            throw ConfigError("each category cell needs one interval per GRF");
        c.cells_.insert(c.cells_.end(), cell.begin(), cell.end());
    }
    c.check_partition();
    return c;
}

// Endpoint bookkeeping: the K rectangles tile R^q iff every elementary cell
// of the endpoint grid is covered by exactly one category.
void CodingFunction::check_partition() const {
    std::vector<std::vector<double>> reps(q_);
    std::size_t total = 1;
    for (std::size_t r = 0; r < q_; ++r) {
        std::vector<double> ends;
        for (std::size_t k = 1; k <= k_; ++k) {
            const Interval& iv = interval(static_cast<int>(k), r);
            if (std::isfinite(iv.lower)) ends.push_back(iv.lower);
            if (std::isfinite(iv.upper)) ends.push_back(iv.upper);
        }
        std::sort(ends.begin(), ends.end());
        ends.erase(std::unique(ends.begin(), ends.end()), ends.end());
        auto& rep = reps[r];
        if (ends.empty()) {
            rep.push_back(0.0);
        } else {
            rep.push_back(ends.front() - 1.0);
            for (std::size_t e = 0; e + 1 < ends.size(); ++e)
                rep.push_back((ends[e] + ends[e + 1]) / 2.0);
            rep.push_back(ends.back() + 1.0);
        }
        total *= rep.size();
        if (total > 1000000)
            throw ConfigError("explicit coding has too many endpoint cells to validate");
    }

    std::vector<std::size_t> idx(q_, 0);
    std::vector<double> point(q_);
    for (std::size_t cell = 0; cell < total; ++cell) {
        for (std::size_t r = 0; r < q_; ++r) point[r] = reps[r][idx[r]];
        int hits = 0;
        for (std::size_t k = 1; k <= k_; ++k) {
            bool inside = true;
            for (std::size_t r = 0; r < q_ && inside; ++r)
                inside = interval(static_cast<int>(k), r).contains(point[r]);
            hits += inside ? 1 : 0;
        }
        if (hits == 0)
            throw ConfigError("category rectangles leave a gap: they do not cover R^q");
        if (hits > 1)
            throw ConfigError("category rectangles overlap");
        for (std::size_t r = 0; r < q_; ++r) {
            if (++idx[r] < reps[r].size()) break;
            idx[r] = 0;
        }
    }
}

std::size_t CodingFunction::profile_of(std::size_t site) const {
    if (n_profiles_ == 1) return 0;
    if (site >= n_profiles_)
        throw ConfigError("site index " + std::to_string(site) +
                          " outside the varying coding's " +
                          std::to_string(n_profiles_) + " site profiles");
    return site;
}

const Interval& CodingFunction::interval(int category, std::size_t grf,
                                         std::size_t site) const {
    if (category < 1 || static_cast<std::size_t>(category) > k_)
        throw ConfigError("category label " + std::to_string(category) +
                          " outside 1.." + std::to_string(k_));
    if (grf >= q_)
        throw ConfigError("GRF index out of range");
    const std::size_t p = profile_of(site);
    return cells_[(p * k_ + static_cast<std::size_t>(category - 1)) * q_ + grf];
}

int CodingFunction::category_of(std::span<const double> y, std::size_t site) const {
    if (y.size() != q_)
        throw ConfigError("value vector length does not match number of GRFs");
    for (double v : y)
        if (std::isnan(v)) throw NumericalError("field value is NaN");
    const std::size_t p = profile_of(site);
    for (std::size_t k = 0; k < k_; ++k) {
        bool inside = true;
        for (std::size_t r = 0; r < q_ && inside; ++r)
            inside = cells_[(p * k_ + k) * q_ + r].contains(y[r]);
        if (inside) return static_cast<int>(k + 1);
    }
    throw ConfigError("no category contains the value vector; coding is not a partition");
}

CategoricalField truncate(const GRFRealization& y, const CodingFunction& coding) {
    if (y.n_grfs != coding.n_grfs())
        throw ConfigError("realization has " + std::to_string(y.n_grfs) +
                          " fields but the coding expects " +
                          std::to_string(coding.n_grfs()));
    if (coding.site_dependent() && coding.n_profiles() != y.n_sites)
        throw ConfigError("varying coding covers " + std::to_string(coding.n_profiles()) +
                          " sites but the realization has " + std::to_string(y.n_sites));
    CategoricalField f;
    f.n_categories = coding.n_categories();
    f.categories.resize(y.n_sites);
    std::vector<double> v(y.n_grfs);
    for (std::size_t i = 0; i < y.n_sites; ++i) {
        for (std::size_t r = 0; r < y.n_grfs; ++r) v[r] = y.at(i, r);
        f.categories[i] = coding.category_of(v, i);
    }
    return f;
}

CodingFunction simulate_varying_thresholds(const SiteSet& sites, std::uint64_t seed,
                                           double smoothness_range) {
    sites.validate();
    const std::size_t n = sites.size();

    std::vector<double> z1, z2;
    if (std::isinf(smoothness_range)) {
        z1.assign(n, standard_normals(derive_seed(seed, 0), 1)[0]);
        z2.assign(n, standard_normals(derive_seed(seed, 1), 1)[0]);
    } else {
        const GrfSimulator sim(sites,
                               CovarianceModel{CovarianceKind::gaussian, smoothness_range});
        z1 = sim.draw(derive_seed(seed, 0));
        z2 = sim.draw(derive_seed(seed, 1));
    }

    // Category-1 mass between 0.2 and 0.5; the second threshold splits the
    // remaining mass so that the cumulative stays strictly inside (0, 1).
    std::vector<std::vector<double>> rows(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double p1 = 0.2 + 0.3 * std_normal_cdf(z1[i]);
        const double cum2 = p1 + (0.15 + 0.4 * std_normal_cdf(z2[i])) * (1.0 - p1);
        rows[i] = {std_normal_quantile(p1), std_normal_quantile(cum2)};
    }
    return CodingFunction::sequential_varying(std::move(rows));
}

} // namespace pgv
