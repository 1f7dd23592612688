#pragma once

#include <string>

namespace pgv {

enum class CovarianceKind { exponential, gaussian, spherical, nugget };

// Isotropic stationary covariance with unit sill by default. The hidden
// fields are standardized, so sill != 1 only arises in fitting diagnostics.
struct CovarianceModel {
    CovarianceKind kind;
    double range; // scale parameter; exponential(h) = sill * exp(-h/range)
    double sill = 1.0;
};

CovarianceKind covariance_kind_from_string(const std::string& name);
std::string to_string(CovarianceKind kind);

// C(h) for h >= 0; throws std::domain_error for h < 0.
double covariance_eval(const CovarianceModel& model, double h);

} // namespace pgv
