#include "pgvario/mc_study.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "pgvario/coding.hpp"
#include "pgvario/errors.hpp"
#include "pgvario/indicator_variography.hpp"
#include "pgvario/parallel.hpp"
#include "pgvario/pl_estimation.hpp"
#include "pgvario/rng.hpp"
#include "pgvario/simulation.hpp"

namespace pgv {

namespace {

constexpr double nan_value = std::numeric_limits<double>::quiet_NaN();

// Seed streams: 0 = site sampling, 1 = varying thresholds, 16 + s = sim s.
constexpr std::uint64_t stream_sites = 0;
constexpr std::uint64_t stream_thresholds = 1;
constexpr std::uint64_t stream_first_sim = 16;

const CovarianceModel c1_model{CovarianceKind::exponential, 20.0, 1.0};
const CovarianceModel c2_model{CovarianceKind::gaussian, 40.0, 1.0};

double nearest_rank(const std::vector<double>& sorted, double pct) {
    const auto m = sorted.size();
    auto rank = static_cast<std::size_t>(
        std::ceil(pct / 100.0 * static_cast<double>(m)));
    if (rank == 0) rank = 1;
    if (rank > m) rank = m;
    return sorted[rank - 1];
}

// One summary row from the per-simulation estimates of a single cell
// (NaN = missing at that simulation).
SummaryRow summarize_cell(double lag, int grf, std::string estimator,
                          const std::vector<double>& estimates, double truth) {
    SummaryRow row;
    row.lag = lag;
    row.grf = grf;
    row.estimator = std::move(estimator);
    row.truth = truth;

    std::vector<double> present;
    present.reserve(estimates.size());
    for (double v : estimates)
        if (!std::isnan(v)) present.push_back(v);
    row.n_missing = static_cast<int>(estimates.size() - present.size());

    if (present.empty()) {
        row.mean = row.p5 = row.p25 = row.p75 = row.p95 = nan_value;
        return row;
    }
    double sum = 0.0;
    for (double v : present) sum += v;
    row.mean = sum / static_cast<double>(present.size());
    std::sort(present.begin(), present.end());
    row.p5 = nearest_rank(present, 5.0);
    row.p25 = nearest_rank(present, 25.0);
    row.p75 = nearest_rank(present, 75.0);
    row.p95 = nearest_rank(present, 95.0);
    return row;
}

} // namespace

StudyKind study_kind_from_string(const std::string& name) {
    if (name == "mono-c1-constant") return StudyKind::mono_c1_constant;
    if (name == "mono-c2-constant") return StudyKind::mono_c2_constant;
    if (name == "mono-c1-varying") return StudyKind::mono_c1_varying;
    if (name == "mono-c2-varying") return StudyKind::mono_c2_varying;
    if (name == "bigaussian") return StudyKind::bigaussian;
    throw ConfigError("unknown study kind: " + name);
}

std::string to_string(StudyKind kind) {
    switch (kind) {
        case StudyKind::mono_c1_constant: return "mono-c1-constant";
        case StudyKind::mono_c2_constant: return "mono-c2-constant";
        case StudyKind::mono_c1_varying: return "mono-c1-varying";
        case StudyKind::mono_c2_varying: return "mono-c2-varying";
        case StudyKind::bigaussian: return "bigaussian";
    }
    throw ConfigError("invalid study kind");
}

void StudyConfig::validate() const {
    if (n_sims < 1) throw ConfigError("n_sims must be >= 1");
    if (is_mono()) {
        if (grid_nodes < 2) throw ConfigError("mono study needs at least 2 grid nodes");
        if (!(grid_mesh > 0.0)) throw ConfigError("grid mesh must be positive");
    } else {
        if (n_sites < 2) throw ConfigError("bigaussian study needs at least 2 sites");
        if (!(square_side > 0.0)) throw ConfigError("square side must be positive");
    }
    if (!(threshold_smoothness_range > 0.0))
        throw ConfigError("threshold smoothness range must be positive");
    if (lags) lags->validate();
}

LagSpec StudyConfig::resolved_lags() const {
    if (lags) return *lags;
    if (is_mono()) {
        // 150 unit lags on the grid scale.
        return LagSpec::regular(150, grid_mesh);
    }
    LagSpec spec;
    spec.centers.resize(30);
    for (std::size_t a = 0; a < 30; ++a)
        spec.centers[a] = 150.0 * static_cast<double>(a) / 29.0;
    return spec;
}

std::vector<CovarianceModel> StudyConfig::grf_models() const {
    switch (kind) {
        case StudyKind::mono_c1_constant:
        case StudyKind::mono_c1_varying:
            return {c1_model};
        case StudyKind::mono_c2_constant:
        case StudyKind::mono_c2_varying:
            return {c2_model};
        case StudyKind::bigaussian:
            return {c1_model, c2_model};
    }
    throw ConfigError("invalid study kind");
}

StudySummary run_mono_study(const StudyConfig& cfg) {
    if (!cfg.is_mono()) throw ConfigError("run_mono_study needs a mono study kind");
    cfg.validate();

    const SiteSet sites = make_grid_1d(cfg.grid_nodes, cfg.grid_mesh);
    const CovarianceModel model = cfg.grf_models()[0];
    const bool varying = cfg.kind == StudyKind::mono_c1_varying ||
                         cfg.kind == StudyKind::mono_c2_varying;
    const CodingFunction coding =
        varying ? simulate_varying_thresholds(sites,
                                              derive_seed(cfg.seed, stream_thresholds),
                                              cfg.threshold_smoothness_range)
                : CodingFunction::sequential_from_proportions(
                      {{1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0}});

    const PairGroups groups = build_pair_groups(sites, cfg.resolved_lags());
    const std::size_t n_lags = groups.n_lags();
    const GrfSimulator simulator(sites, model);

    const auto n_sims = static_cast<std::size_t>(cfg.n_sims);
    std::vector<double> pl(n_sims * n_lags, nan_value);
    std::vector<double> gauss(n_sims * n_lags, nan_value);

    const int threads = cfg.n_threads > 0 ? cfg.n_threads : default_thread_count();
    parallel_for(n_sims, threads, [&](std::size_t s) {
        const std::uint64_t sim_seed = derive_seed(cfg.seed, stream_first_sim + s);
        GRFRealization y;
        y.n_sites = sites.size();
        y.n_grfs = 1;
        y.values = simulator.draw(derive_seed(sim_seed, 0));

        const CategoricalField f = truncate(y, coding);
        const auto lag_results = empirical_underlying_variogram(f, coding, groups, 1);
        for (std::size_t a = 0; a < n_lags; ++a)
            if (lag_results[a].per_grf[0])
                pl[s * n_lags + a] = lag_results[a].per_grf[0]->gamma_hat;

        const auto classical = empirical_variogram_continuous(y.values, groups);
        for (std::size_t a = 0; a < n_lags; ++a)
            if (classical.points[a].estimate)
                gauss[s * n_lags + a] = *classical.points[a].estimate;
    });

    StudySummary summary;
    summary.kind = cfg.kind;
    summary.lag_centers = groups.lag_centers;
    summary.lag_pair_counts.reserve(n_lags);
    for (std::size_t a = 0; a < n_lags; ++a)
        summary.lag_pair_counts.push_back(static_cast<std::int64_t>(groups.count(a)));

    std::vector<double> cell(n_sims);
    for (std::size_t a = 0; a < n_lags; ++a) {
        const double h = groups.lag_centers[a];
        const double truth = 1.0 - covariance_eval(model, h);
        for (std::size_t s = 0; s < n_sims; ++s) cell[s] = pl[s * n_lags + a];
        summary.rows.push_back(summarize_cell(h, 1, "pl", cell, truth));
        for (std::size_t s = 0; s < n_sims; ++s) cell[s] = gauss[s * n_lags + a];
        summary.rows.push_back(summarize_cell(h, 1, "gauss", cell, truth));
    }
    return summary;
}

StudySummary run_bigaussian_study(const StudyConfig& cfg) {
    if (cfg.kind != StudyKind::bigaussian)
        throw ConfigError("run_bigaussian_study needs the bigaussian study kind");
    cfg.validate();

    const SiteSet sites = sample_uniform_square(cfg.n_sites, cfg.square_side,
                                                derive_seed(cfg.seed, stream_sites));
    const auto models = cfg.grf_models();
    const CodingFunction coding = CodingFunction::flag2(0.0, 0.0);
    const PairGroups groups = build_pair_groups(sites, cfg.resolved_lags());
    const std::size_t n_lags = groups.n_lags();
    const std::size_t n = sites.size();

    const GrfSimulator sim1(sites, models[0]);
    const GrfSimulator sim2(sites, models[1]);

    const auto n_sims = static_cast<std::size_t>(cfg.n_sims);
    std::vector<double> pl1(n_sims * n_lags, nan_value);
    std::vector<double> pl2(n_sims * n_lags, nan_value);
    std::vector<double> gauss1(n_sims * n_lags, nan_value);
    std::vector<double> gauss2(n_sims * n_lags, nan_value);

    const int threads = cfg.n_threads > 0 ? cfg.n_threads : default_thread_count();
    parallel_for(n_sims, threads, [&](std::size_t s) {
        const std::uint64_t sim_seed = derive_seed(cfg.seed, stream_first_sim + s);
        GRFRealization y;
        y.n_sites = n;
        y.n_grfs = 2;
        y.values = sim1.draw(derive_seed(sim_seed, 0));
        const auto y2 = sim2.draw(derive_seed(sim_seed, 1));
        y.values.insert(y.values.end(), y2.begin(), y2.end());

        const CategoricalField f = truncate(y, coding);
        const auto lag_results = empirical_underlying_variogram(f, coding, groups, 1);
        for (std::size_t a = 0; a < n_lags; ++a) {
            if (lag_results[a].per_grf[0])
                pl1[s * n_lags + a] = lag_results[a].per_grf[0]->gamma_hat;
            if (lag_results[a].per_grf[1])
                pl2[s * n_lags + a] = lag_results[a].per_grf[1]->gamma_hat;
        }

        const auto cls1 = empirical_variogram_continuous(y.column(0), groups);
        // The comparison track for the second field only sees sites where the
        // first field is positive (where the category reveals something).
        std::vector<unsigned char> keep(n);
        for (std::size_t i = 0; i < n; ++i) keep[i] = y.at(i, 0) > 0.0 ? 1 : 0;
        const auto cls2 = empirical_variogram_continuous(y.column(1), groups, keep);
        for (std::size_t a = 0; a < n_lags; ++a) {
            if (cls1.points[a].estimate)
                gauss1[s * n_lags + a] = *cls1.points[a].estimate;
            if (cls2.points[a].estimate)
                gauss2[s * n_lags + a] = *cls2.points[a].estimate;
        }
    });

    StudySummary summary;
    summary.kind = cfg.kind;
    summary.lag_centers = groups.lag_centers;
    summary.lag_pair_counts.reserve(n_lags);
    for (std::size_t a = 0; a < n_lags; ++a)
        summary.lag_pair_counts.push_back(static_cast<std::int64_t>(groups.count(a)));

    std::vector<double> cell(n_sims);
    const auto emit = [&](std::size_t a, int grf, const char* est,
                          const std::vector<double>& mat, double truth) {
        for (std::size_t s = 0; s < n_sims; ++s) cell[s] = mat[s * n_lags + a];
        summary.rows.push_back(
            summarize_cell(groups.lag_centers[a], grf, est, cell, truth));
    };
    for (std::size_t a = 0; a < n_lags; ++a) {
        const double h = groups.lag_centers[a];
        emit(a, 1, "pl", pl1, 1.0 - covariance_eval(models[0], h));
        emit(a, 1, "gauss", gauss1, 1.0 - covariance_eval(models[0], h));
        emit(a, 2, "pl", pl2, 1.0 - covariance_eval(models[1], h));
        emit(a, 2, "gauss", gauss2, 1.0 - covariance_eval(models[1], h));
    }
    return summary;
}

StudySummary run_study(const StudyConfig& cfg) {
    return cfg.is_mono() ? run_mono_study(cfg) : run_bigaussian_study(cfg);
}

} // namespace pgv
