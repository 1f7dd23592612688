#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "pgvario/gaussian.hpp"
#include "pgvario/simulation.hpp"
#include "pgvario/site_set.hpp"

namespace pgv {

// Ordered category proportions, each strictly positive, summing to 1.
struct ProportionSpec {
    std::vector<double> proportions;
    void validate() const;
};

// Category labels 1..n_categories, one per site.
struct CategoricalField {
    std::size_t n_categories = 0;
    std::vector<int> categories;

    std::size_t size() const { return categories.size(); }
};

// Truncation rule: per site, category k occupies the hyper-rectangle
// T_k^1 x ... x T_k^q. Site-dependent rules store one profile per site;
// constant rules store a single shared profile.
class CodingFunction {
public:
    // q = 1, K = thresholds.size() + 1, category k between s_{k-1} and s_k.
    static CodingFunction sequential(std::vector<double> thresholds);
    static CodingFunction sequential_from_proportions(const ProportionSpec& p);
    // Per-site thresholds, indexed by site; all rows must share a length.
    static CodingFunction sequential_varying(std::vector<std::vector<double>> per_site);
    // q = 2, K = 3 flag rule: category 1 is y1 < s1; categories 2 and 3 split
    // the rest on y2 < t1 / y2 >= t1.
    static CodingFunction flag2(double s1, double t1);
    // Arbitrary constant rectangles, cells[k][r]; validated to tile R^q.
    static CodingFunction explicit_rectangles(std::size_t n_grfs,
                                              std::vector<std::vector<Interval>> cells);

    std::size_t n_grfs() const { return q_; }
    std::size_t n_categories() const { return k_; }
    bool site_dependent() const { return n_profiles_ > 1; }
    std::size_t n_profiles() const { return n_profiles_; }

    // Interval the grf-th field is known to lie in, given the category there.
    const Interval& interval(int category, std::size_t grf, std::size_t site = 0) const;

    // Category of a value vector (one value per GRF); half-open boundaries
    // assign to the upper category.
    int category_of(std::span<const double> y, std::size_t site = 0) const;

private:
    CodingFunction() = default;
    void check_partition() const;
    std::size_t profile_of(std::size_t site) const;

    std::size_t q_ = 0;
    std::size_t k_ = 0;
    std::size_t n_profiles_ = 1;
    std::vector<Interval> cells_; // [(profile * K + (k-1)) * q + r]
};

// s_j = quantile of the cumulative proportions; q = 1 sequential rule.
std::vector<double> thresholds_from_proportions(const ProportionSpec& p);

CategoricalField truncate(const GRFRealization& y, const CodingFunction& coding);

// q = 1, K = 3 rule with smoothly varying per-site thresholds, drawn once
// from two auxiliary fields with gaussian covariance of the given range.
// An infinite range degenerates to a single shared draw (constant rule).
CodingFunction simulate_varying_thresholds(const SiteSet& sites, std::uint64_t seed,
                                           double smoothness_range);

} // namespace pgv
