#include "pgvario/covariance.hpp"

#include <cmath>
#include <stdexcept>

#include "pgvario/errors.hpp"

namespace pgv {

CovarianceKind covariance_kind_from_string(const std::string& name) {
    if (name == "exponential") return CovarianceKind::exponential;
    if (name == "gaussian") return CovarianceKind::gaussian;
    if (name == "spherical") return CovarianceKind::spherical;
    if (name == "nugget") return CovarianceKind::nugget;
    throw ConfigError("unknown covariance kind: " + name);
}

std::string to_string(CovarianceKind kind) {
    switch (kind) {
        case CovarianceKind::exponential: return "exponential";
        case CovarianceKind::gaussian: return "gaussian";
        case CovarianceKind::spherical: return "spherical";
        case CovarianceKind::nugget: return "nugget";
    }
    throw ConfigError("invalid covariance kind");
}

double covariance_eval(const CovarianceModel& model, double h) {
    if (std::isnan(h) || h < 0.0)
        throw std::domain_error("covariance_eval requires h >= 0");
    if (model.kind != CovarianceKind::nugget && !(model.range > 0.0))
        throw ConfigError("covariance range must be positive");

    switch (model.kind) {
        case CovarianceKind::exponential:
            return model.sill * std::exp(-h / model.range);
        case CovarianceKind::gaussian: {
            const double u = h / model.range;
            return model.sill * std::exp(-u * u);
        }
        case CovarianceKind::spherical: {
            if (h >= model.range) return 0.0;
            const double u = h / model.range;
            return model.sill * (1.0 - 1.5 * u + 0.5 * u * u * u);
        }
        case CovarianceKind::nugget:
            return h == 0.0 ? model.sill : 0.0;
    }
    throw ConfigError("invalid covariance kind");
}

} // namespace pgv
