#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "pgvario/covariance.hpp"
#include "pgvario/errors.hpp"
#include "pgvario/fitting.hpp"

using namespace pgv;

namespace {
EmpiricalVariogram track_from_model(const CovarianceModel& model, std::size_t n_lags,
                                    double mesh) {
    EmpiricalVariogram v;
    v.track = "grf_1";
    for (std::size_t a = 1; a <= n_lags; ++a) {
        VariogramPoint pt;
        pt.lag = static_cast<double>(a) * mesh;
        pt.estimate = 1.0 - covariance_eval(model, pt.lag);
        pt.n_pairs = 1000 - static_cast<std::int64_t>(a);
        v.points.push_back(pt);
    }
    return v;
}

double weighted_sse(const EmpiricalVariogram& v, const CovarianceModel& model) {
    double sse = 0.0;
    for (const auto& pt : v.points) {
        if (!pt.estimate || pt.n_pairs < 1 || pt.lag <= 0.0) continue;
        const double r = *pt.estimate - (1.0 - covariance_eval(model, pt.lag));
        sse += static_cast<double>(pt.n_pairs) / pt.lag * r * r;
    }
    return sse;
}
} // namespace

TEST_CASE("noise-free tracks recover their generating range") {
    const CovarianceModel expo{CovarianceKind::exponential, 20.0};
    const auto v_expo = track_from_model(expo, 30, 1.0);
    const auto fit_expo = fit_unit_sill_model(v_expo, CovarianceKind::exponential);
    CHECK(std::fabs(fit_expo.model.range - 20.0) <= 0.1);
    CHECK(std::fabs(fit_expo.model.range - 20.0) <= 1e-3);
    CHECK(fit_expo.model.sill == 1.0);
    CHECK(!fit_expo.range_at_lower_bound);

    const CovarianceModel gauss{CovarianceKind::gaussian, 40.0};
    const auto v_gauss = track_from_model(gauss, 30, 5.0);
    const auto fit_gauss = fit_unit_sill_model(v_gauss, CovarianceKind::gaussian);
    CHECK(std::fabs(fit_gauss.model.range - 40.0) <= 0.2);
    CHECK(!fit_gauss.range_at_lower_bound);
}

TEST_CASE("fitted range is no worse than a grid scan") {
    // Mismatched family: gaussian-shaped data, exponential fit. The result
    // must still beat every grid-sampled candidate range.
    const auto v = track_from_model(CovarianceModel{CovarianceKind::gaussian, 25.0}, 25, 2.0);
    const auto fit = fit_unit_sill_model(v, CovarianceKind::exponential);
    const double lo = v.points.front().lag / 10.0;
    const double hi = 10.0 * v.points.back().lag;
    for (int g = 0; g <= 100; ++g) {
        const double range = lo + (hi - lo) * static_cast<double>(g) / 100.0;
        const CovarianceModel cand{CovarianceKind::exponential, range};
        CHECK(fit.objective <= weighted_sse(v, cand) + 1e-9);
    }
    CHECK(fit.objective == doctest::Approx(weighted_sse(v, fit.model)).epsilon(1e-12));
}

TEST_CASE("flat tracks at the sill push the range to the lower bound") {
    EmpiricalVariogram flat;
    flat.track = "grf_1";
    for (std::size_t a = 1; a <= 12; ++a) {
        VariogramPoint pt;
        pt.lag = static_cast<double>(a);
        pt.estimate = 1.0;
        pt.n_pairs = 100;
        flat.points.push_back(pt);
    }
    const auto fit = fit_unit_sill_model(flat, CovarianceKind::exponential);
    CHECK(fit.range_at_lower_bound);
}

TEST_CASE("missing and empty lags are skipped") {
    auto v = track_from_model(CovarianceModel{CovarianceKind::exponential, 20.0}, 30, 1.0);
    v.points[4].estimate.reset();
    v.points[9].n_pairs = 0;
    const auto fit = fit_unit_sill_model(v, CovarianceKind::exponential);
    CHECK(std::fabs(fit.model.range - 20.0) <= 1e-3);

    EmpiricalVariogram thin;
    thin.track = "grf_1";
    for (std::size_t a = 1; a <= 2; ++a) {
        VariogramPoint pt;
        pt.lag = static_cast<double>(a);
        pt.estimate = 0.1 * static_cast<double>(a);
        pt.n_pairs = 10;
        thin.points.push_back(pt);
    }
    CHECK_THROWS_AS((void)fit_unit_sill_model(thin, CovarianceKind::exponential),
                    NoInformationError);

    EmpiricalVariogram holey = track_from_model(
        CovarianceModel{CovarianceKind::exponential, 20.0}, 10, 1.0);
    for (std::size_t a = 0; a < 8; ++a) holey.points[a].estimate.reset();
    CHECK_THROWS_AS((void)fit_unit_sill_model(holey, CovarianceKind::exponential),
                    NoInformationError);
}
