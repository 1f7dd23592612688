#include "pgvario/simulation.hpp"

#include <Eigen/Cholesky>
#include <Eigen/Dense>
#include <string>

#include "pgvario/errors.hpp"
#include "pgvario/rng.hpp"

namespace pgv {

struct GrfSimulator::Impl {
    Eigen::MatrixXd chol_lower;
};

GrfSimulator::GrfSimulator(const SiteSet& sites, const CovarianceModel& model)
    : impl_(std::make_unique<Impl>()) {
    sites.validate();
    const auto n = static_cast<Eigen::Index>(sites.size());

    Eigen::MatrixXd cov(n, n);
    for (Eigen::Index i = 0; i < n; ++i) {
        cov(i, i) = covariance_eval(model, 0.0);
        for (Eigen::Index j = 0; j < i; ++j) {
            const double c = covariance_eval(model, site_distance(sites, i, j));
            cov(i, j) = c;
            cov(j, i) = c;
        }
    }

    Eigen::LLT<Eigen::MatrixXd> llt(cov);
    if (llt.info() != Eigen::Success) {
        const double jitter = 1e-10;
        cov.diagonal().array() += jitter;
        llt.compute(cov);
        if (llt.info() != Eigen::Success)
            throw NumericalError(
                "covariance matrix for " + to_string(model.kind) + " (range " +
                std::to_string(model.range) + ", " + std::to_string(sites.size()) +
                " sites) is not positive definite, even with 1e-10 diagonal jitter");
    }
    impl_->chol_lower = llt.matrixL();
}

GrfSimulator::~GrfSimulator() = default;
GrfSimulator::GrfSimulator(GrfSimulator&&) noexcept = default;
GrfSimulator& GrfSimulator::operator=(GrfSimulator&&) noexcept = default;

std::size_t GrfSimulator::n_sites() const {
    return static_cast<std::size_t>(impl_->chol_lower.rows());
}

std::vector<double> GrfSimulator::draw(std::uint64_t seed) const {
    const auto n = impl_->chol_lower.rows();
    const std::vector<double> z = standard_normals(seed, static_cast<std::size_t>(n));
    Eigen::Map<const Eigen::VectorXd> zv(z.data(), n);
    Eigen::VectorXd y = impl_->chol_lower.triangularView<Eigen::Lower>() * zv;
    return {y.data(), y.data() + n};
}

GRFRealization simulate_grf(const SiteSet& sites, const CovarianceModel& model,
                            std::uint64_t seed) {
    GrfSimulator sim(sites, model);
    GRFRealization out;
    out.n_sites = sites.size();
    out.n_grfs = 1;
    out.values = sim.draw(seed);
    return out;
}

GRFRealization simulate_independent_grfs(const SiteSet& sites,
                                         std::span<const CovarianceModel> models,
                                         std::uint64_t seed) {
    if (models.empty()) throw ConfigError("need at least one covariance model");
    GRFRealization out;
    out.n_sites = sites.size();
    out.n_grfs = models.size();
    out.values.reserve(out.n_sites * out.n_grfs);
    for (std::size_t r = 0; r < models.size(); ++r) {
        GrfSimulator sim(sites, models[r]);
        auto col = sim.draw(derive_seed(seed, r));
        out.values.insert(out.values.end(), col.begin(), col.end());
    }
    return out;
}

} // namespace pgv
