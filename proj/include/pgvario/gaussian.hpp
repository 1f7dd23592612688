#pragma once

#include <cmath>
#include <limits>

#include "pgvario/errors.hpp"

namespace pgv {

// Half-open interval [lower, upper) on the real line; either end may be
// infinite. The half-open convention matters only for contains(); as an
// integration domain the boundary carries no mass.
struct Interval {
    double lower;
    double upper;

    Interval(double lo, double hi) : lower(lo), upper(hi) {
        if (std::isnan(lo) || std::isnan(hi))
            throw ConfigError("interval bound is NaN");
        if (!(lo < hi))
            throw ConfigError("interval requires lower < upper");
    }

    static Interval whole_line() {
        return {-std::numeric_limits<double>::infinity(),
                std::numeric_limits<double>::infinity()};
    }
    static Interval below(double x) {
        return {-std::numeric_limits<double>::infinity(), x};
    }
    static Interval above(double x) {
        return {x, std::numeric_limits<double>::infinity()};
    }

    bool is_whole_line() const {
        return std::isinf(lower) && lower < 0 && std::isinf(upper) && upper > 0;
    }
    bool contains(double y) const { return lower <= y && y < upper; }

    friend bool operator==(const Interval& a, const Interval& b) {
        return a.lower == b.lower && a.upper == b.upper;
    }
};

// Correlation coefficient clamped away from +-1 so that bivariate densities
// stay proper; the clamp bound doubles as the optimizer's search box.
class Correlation {
public:
    static constexpr double max_abs = 1.0 - 1e-6;

    explicit Correlation(double rho) {
        if (std::isnan(rho))
            throw std::domain_error("correlation is NaN");
        if (rho > max_abs) rho = max_abs;
        if (rho < -max_abs) rho = -max_abs;
        value_ = rho;
    }

    double value() const { return value_; }

private:
    double value_;
};

// Log values below this are floored; exp(log_floor) underflows to 0 anyway.
inline constexpr double log_floor = -745.0;

double std_normal_cdf(double x);

// Inverse standard normal CDF; throws std::domain_error outside (0, 1).
double std_normal_quantile(double p);

// P((X, Y) in i1 x i2) for standard bivariate normal with correlation rho.
// Infinite bounds marginalize exactly; swapping the two intervals gives a
// bit-identical result.
double bivariate_rect_prob(const Interval& i1, const Interval& i2, Correlation rho);

// log of the above, floored at log_floor so callers can sum safely.
double log_bivariate_rect_prob(const Interval& i1, const Interval& i2, Correlation rho);

} // namespace pgv
