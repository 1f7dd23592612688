// End-to-end acceptance checks. Each criterion prints one [PASS]/[FAIL] line;
// the process exits nonzero if any fails. The Monte-Carlo studies dominate
// the runtime (a few minutes single-core).
#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include "pgvario/coding.hpp"
#include "pgvario/covariance.hpp"
#include "pgvario/fitting.hpp"
#include "pgvario/gaussian.hpp"
#include "pgvario/indicator_variography.hpp"
#include "pgvario/mc_study.hpp"
#include "pgvario/model_indicator.hpp"
#include "pgvario/pl_estimation.hpp"
#include "pgvario/rng.hpp"
#include "pgvario/simulation.hpp"

using namespace pgv;

namespace {
constexpr double inf = std::numeric_limits<double>::infinity();

bool all_ok = true;

void report(int criterion, bool ok, const std::string& what, const std::string& detail) {
    std::printf("[%s] criterion %d: %s (%s)\n", ok ? "PASS" : "FAIL", criterion,
                what.c_str(), detail.c_str());
    std::fflush(stdout);
    if (!ok) all_ok = false;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string fmt(const char* pattern, double a, double b = 0.0, double c = 0.0) {
    char buf[256];
    std::snprintf(buf, sizeof buf, pattern, a, b, c);
    return buf;
}

// Indexing helpers for SummaryRow layout: lag-major, grf-major, pl before gauss.
const SummaryRow& row_of(const StudySummary& s, std::size_t lag_idx, int grf,
                         const char* estimator) {
    const std::size_t n_grfs = s.kind == StudyKind::bigaussian ? 2 : 1;
    const std::size_t base = lag_idx * n_grfs * 2 + static_cast<std::size_t>(grf - 1) * 2;
    const auto& row = s.rows[base + (std::string(estimator) == "pl" ? 0 : 1)];
    return row;
}

// ---- criterion 1 --------------------------------------------------------

void criterion_1() {
    const auto t0 = std::chrono::steady_clock::now();
    const double pi = 3.14159265358979323846;
    const Interval neg = Interval::below(0.0);

    double worst_orthant = 0.0;
    for (int i = 1; i <= 99; ++i) {
        const double rho = -0.99 + 0.02 * (i - 1);
        const double got = bivariate_rect_prob(neg, neg, Correlation(rho));
        const double want = 0.25 + std::asin(rho) / (2.0 * pi);
        worst_orthant = std::max(worst_orthant, std::fabs(got - want));
    }

    std::mt19937 gen(424242);
    std::normal_distribution<double> cut(0.0, 1.5);
    double worst_partition = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
        double c1[3] = {cut(gen), cut(gen), cut(gen)};
        double c2[3] = {cut(gen), cut(gen), cut(gen)};
        std::sort(c1, c1 + 3);
        std::sort(c2, c2 + 3);
        const Interval rows[4] = {Interval(-inf, c1[0]), Interval(c1[0], c1[1]),
                                  Interval(c1[1], c1[2]), Interval(c1[2], inf)};
        const Interval cols[4] = {Interval(-inf, c2[0]), Interval(c2[0], c2[1]),
                                  Interval(c2[1], c2[2]), Interval(c2[2], inf)};
        const double rho = -0.95 + 1.9 * trial / 24.0;
        double total = 0.0;
        for (const auto& a : rows)
            for (const auto& b : cols) total += bivariate_rect_prob(a, b, Correlation(rho));
        worst_partition = std::max(worst_partition, std::fabs(total - 1.0));
    }

    const double dt = seconds_since(t0);
    const bool ok = worst_orthant <= 1e-7 && worst_partition <= 1e-6 && dt < 1.0;
    report(1, ok, "bivariate kernel accuracy",
           fmt("orthant err %.2e, partition err %.2e, %.2fs", worst_orthant,
               worst_partition, dt));
}

// ---- criterion 2 --------------------------------------------------------

void criterion_2() {
    const auto t0 = std::chrono::steady_clock::now();
    const auto coding = CodingFunction::sequential_from_proportions(
        ProportionSpec{{1.0 / 3, 1.0 / 3, 1.0 / 3}});
    const std::size_t n_pairs = 100000;

    double worst = 0.0;
    bool ok = true;
    int which = 0;
    const double rhos[5] = {-0.8, -0.3, 0.0, 0.3, 0.8};
    for (int t = 0; t < 5; ++t) {
        const double rho = rhos[t];
        const auto z = standard_normals(derive_seed(2024, static_cast<std::uint64_t>(t)),
                                        2 * n_pairs);
        const double s = std::sqrt(1.0 - rho * rho);

        std::int64_t counts[9] = {0};
        for (std::size_t i = 0; i < n_pairs; ++i) {
            const double u = z[2 * i];
            const double v = rho * u + s * z[2 * i + 1];
            const int k = coding.category_of({&u, 1});
            const int l = coding.category_of({&v, 1});
            ++counts[(k - 1) * 3 + (l - 1)];
        }
        std::vector<WeightedIntervalPair> classes;
        for (int k = 1; k <= 3; ++k)
            for (int l = 1; l <= 3; ++l) {
                const auto c = counts[(k - 1) * 3 + (l - 1)];
                if (c > 0)
                    classes.push_back({coding.interval(k, 0), coding.interval(l, 0), c});
            }
        const auto est = estimate_lag_correlation(classes);
        const double err = std::fabs(est.rho_hat - rho);
        if (err > worst) {
            worst = err;
            which = t;
        }
        ok = ok && err <= 0.02 && est.converged;
    }
    const double dt = seconds_since(t0);
    ok = ok && dt < 30.0;
    report(2, ok, "oracle recovery over rho grid",
           fmt("worst |rho_hat - rho| = %.4f at rho = %.1f, %.1fs", worst, rhos[which], dt));
}

// ---- criteria 3 and 4 ----------------------------------------------------

StudyConfig study_config(StudyKind kind) {
    StudyConfig cfg;
    cfg.kind = kind;
    cfg.n_sims = 200;
    cfg.seed = 13;
    return cfg;
}

void criterion_3(const StudySummary& c1) {
    bool ok = true;
    double worst_60 = 0.0, worst_150 = 0.0;
    std::size_t covered = 0;
    const std::size_t n_lags = c1.lag_centers.size();
    for (std::size_t a = 0; a < n_lags; ++a) {
        const auto& row = row_of(c1, a, 1, "pl");
        if (row.n_missing > 0 || !std::isfinite(row.mean)) {
            ok = false;
            continue;
        }
        const double err = std::fabs(row.mean - row.truth);
        if (row.lag <= 60.0) worst_60 = std::max(worst_60, err);
        worst_150 = std::max(worst_150, err);
        if (row.p5 <= row.truth && row.truth <= row.p95) ++covered;
    }
    ok = ok && worst_60 <= 0.03 && worst_150 <= 0.06 &&
         covered * 10 >= n_lags * 9;
    report(3, ok, "mean PL variogram tracks the C1 curve",
           fmt("max err %.4f (h<=60) / %.4f (all), band covers truth at %.0f%% of lags",
               worst_60, worst_150,
               100.0 * static_cast<double>(covered) / static_cast<double>(n_lags)));
}

void criterion_4(const StudySummary& c1, const StudySummary& c1v, const StudySummary& c2) {
    const std::size_t n_lags = c1.lag_centers.size();

    std::size_t varying_wider = 0;
    for (std::size_t a = 0; a < n_lags; ++a) {
        const auto& v = row_of(c1v, a, 1, "pl");
        const auto& c = row_of(c1, a, 1, "pl");
        if ((v.p95 - v.p5) > (c.p95 - c.p5)) ++varying_wider;
    }
    const bool ok_a = varying_wider * 10 >= n_lags * 8;
    report(4, ok_a, "varying thresholds widen the 5-95 band",
           fmt("wider at %.0f%% of lags (need 80%%)",
               100.0 * static_cast<double>(varying_wider) / static_cast<double>(n_lags)));

    std::size_t c1_wider = 0;
    for (std::size_t a = 0; a < n_lags; ++a) {
        const auto& r1 = row_of(c1, a, 1, "pl");
        const auto& r2 = row_of(c2, a, 1, "pl");
        if ((r1.p95 - r1.p5) > (r2.p95 - r2.p5)) ++c1_wider;
    }
    const bool ok_b = c1_wider * 10 >= n_lags * 7;
    report(4, ok_b, "C1 bands wider than C2 bands",
           fmt("wider at %.0f%% of lags (need 70%%)",
               100.0 * static_cast<double>(c1_wider) / static_cast<double>(n_lags)));

    bool ok_c = true;
    double worst_ratio = 0.0;
    for (std::size_t a = 0; a < n_lags; ++a) {
        const auto& pl = row_of(c1, a, 1, "pl");
        if (pl.lag < 100.0) continue;
        const auto& gs = row_of(c1, a, 1, "gauss");
        const double ratio = (pl.p75 - pl.p25) / (gs.p75 - gs.p25);
        worst_ratio = std::max(worst_ratio, ratio);
        if (ratio > 1.2) ok_c = false;
    }
    report(4, ok_c, "PL interquartile band competitive at long lags",
           fmt("max IQR ratio %.3f at lags >= 100 (allow 1.2)", worst_ratio));
}

// ---- criterion 5 ---------------------------------------------------------

void criterion_5() {
    const auto cfg = study_config(StudyKind::bigaussian);
    const auto summary = run_bigaussian_study(cfg);

    bool ok = true;
    double worst = 0.0;
    for (std::size_t a = 0; a < summary.lag_centers.size(); ++a) {
        if (summary.lag_pair_counts[a] < 200) continue;
        for (int grf : {1, 2}) {
            const auto& row = row_of(summary, a, grf, "pl");
            if (!std::isfinite(row.mean)) {
                ok = false;
                continue;
            }
            worst = std::max(worst, std::fabs(row.mean - row.truth));
        }
    }
    ok = ok && worst <= 0.05;

    // The second field is constrained only where neither site shows the
    // first category; the estimator must count exactly those pairs.
    const SiteSet sites = sample_uniform_square(cfg.n_sites, cfg.square_side,
                                                derive_seed(cfg.seed, 0));
    const auto groups = build_pair_groups(sites, cfg.resolved_lags());
    const auto models = cfg.grf_models();
    const GrfSimulator sim1(sites, models[0]);
    const GrfSimulator sim2(sites, models[1]);
    const std::uint64_t seed_s = derive_seed(cfg.seed, 16);
    GRFRealization real;
    real.n_sites = sites.size();
    real.n_grfs = 2;
    real.values = sim1.draw(derive_seed(seed_s, 0));
    const auto y2 = sim2.draw(derive_seed(seed_s, 1));
    real.values.insert(real.values.end(), y2.begin(), y2.end());
    const auto coding = CodingFunction::flag2(0.0, 0.0);
    const auto field = truncate(real, coding);
    const auto results = empirical_underlying_variogram(field, coding, groups);

    bool informative_ok = true;
    for (std::size_t a = 0; a < results.size(); ++a) {
        std::int64_t both_informative = 0;
        for (const auto& pr : groups.pairs[a]) {
            if (field.categories[pr.i] != 1 && field.categories[pr.j] != 1)
                ++both_informative;
        }
        if (results[a].per_grf[1].has_value()) {
            if (results[a].per_grf[1]->n_effective_pairs != both_informative)
                informative_ok = false;
        } else if (both_informative != 0) {
            informative_ok = false;
        }
    }
    ok = ok && informative_ok;

    report(5, ok, "two-field flag study tracks both true curves",
           fmt("max |mean - truth| = %.4f at N >= 200", worst) +
               (informative_ok ? ", informative-pair counts exact"
                               : ", informative-pair counts WRONG"));
}

// ---- criterion 6 ---------------------------------------------------------

void criterion_6() {
    const std::size_t n = 500, n_sims = 500;
    const auto coding = CodingFunction::sequential_from_proportions(
        ProportionSpec{{1.0 / 3, 1.0 / 3, 1.0 / 3}});
    const SiteSet grid = make_grid_1d(n, 1.0);
    const CovarianceModel model{CovarianceKind::exponential, 20.0};
    const GrfSimulator sim(grid, model);

    LagSpec spec;
    spec.centers = {1.0, 2.0, 5.0, 10.0, 20.0, 40.0};
    spec.tolerance = 0.5;
    const auto groups = build_pair_groups(grid, spec);
    const std::size_t n_lags = groups.n_lags();

    std::vector<std::vector<double>> rho_per_lag;
    for (double h : spec.centers) rho_per_lag.push_back({covariance_eval(model, h)});
    const auto model_tracks = averaged_indicator_variogram(coding, rho_per_lag, groups);

    std::vector<double> acc(9 * n_lags, 0.0);
    for (std::size_t s = 0; s < n_sims; ++s) {
        GRFRealization real;
        real.n_sites = n;
        real.n_grfs = 1;
        real.values = sim.draw(derive_seed(606, s));
        const auto field = truncate(real, coding);
        const auto emp = empirical_indicator_variograms(field, groups);
        for (std::size_t t = 0; t < 9; ++t)
            for (std::size_t a = 0; a < n_lags; ++a)
                acc[t * n_lags + a] += *emp[t].points[a].estimate;
    }

    double worst_gap = 0.0;
    for (std::size_t t = 0; t < 9; ++t)
        for (std::size_t a = 0; a < n_lags; ++a) {
            const double mean = acc[t * n_lags + a] / static_cast<double>(n_sims);
            worst_gap = std::max(worst_gap,
                                 std::fabs(mean - *model_tracks[t].points[a].estimate));
        }

    double worst_rowsum = 0.0;
    for (int l = 1; l <= 3; ++l)
        for (std::size_t a = 0; a < n_lags; ++a) {
            double row = 0.0;
            for (int k = 1; k <= 3; ++k)
                row += *model_tracks[static_cast<std::size_t>(k - 1) * 3 +
                                     static_cast<std::size_t>(l - 1)]
                            .points[a]
                            .estimate;
            worst_rowsum = std::max(worst_rowsum, std::fabs(row));
        }

    const bool ok = worst_gap <= 0.01 && worst_rowsum <= 1e-8;
    report(6, ok, "forward map agrees with simulated indicator variograms",
           fmt("max gap %.4f over 500 sims, max row sum %.1e", worst_gap, worst_rowsum));
}

// ---- criterion 7 ---------------------------------------------------------

void criterion_7() {
    bool ok = true;
    std::string detail;

    // Partition checks accept a tiling and reject gaps and overlaps.
    try {
        (void)CodingFunction::explicit_rectangles(
            2, {{Interval::below(0.0), Interval::whole_line()},
                {Interval::above(0.0), Interval::below(1.0)},
                {Interval::above(0.0), Interval::above(1.0)}});
    } catch (const std::exception&) {
        ok = false;
        detail += "tiling rejected; ";
    }
    try {
        (void)CodingFunction::explicit_rectangles(
            2, {{Interval::below(0.0), Interval::whole_line()},
                {Interval::above(0.0), Interval::below(1.0)}});
        ok = false;
        detail += "gap accepted; ";
    } catch (const ConfigError&) {
    }
    try {
        (void)CodingFunction::explicit_rectangles(
            2, {{Interval::below(0.0), Interval::whole_line()},
                {Interval::above(-1.0), Interval::whole_line()}});
        ok = false;
        detail += "overlap accepted; ";
    } catch (const ConfigError&) {
    }

    // Label permutation invariance.
    {
        const SiteSet grid = make_grid_1d(300, 1.0);
        const auto real =
            simulate_grf(grid, CovarianceModel{CovarianceKind::exponential, 20.0}, 7);
        const auto thirds = CodingFunction::sequential_from_proportions(
            ProportionSpec{{1.0 / 3, 1.0 / 3, 1.0 / 3}});
        const auto field = truncate(real, thirds);
        const auto groups = build_pair_groups(grid, LagSpec::regular(5, 1.0));
        const double s1 = thirds.interval(1, 0).upper;
        const double s2 = thirds.interval(2, 0).upper;
        const auto permuted_coding = CodingFunction::explicit_rectangles(
            1, {{Interval(s2, inf)}, {Interval(s1, s2)}, {Interval(-inf, s1)}});
        CategoricalField permuted{3, field.categories};
        for (int& c : permuted.categories) c = (c == 1) ? 3 : (c == 3) ? 1 : 2;
        const auto base = empirical_underlying_variogram(field, thirds, groups);
        const auto perm = empirical_underlying_variogram(permuted, permuted_coding, groups);
        for (std::size_t a = 0; a < base.size(); ++a)
            if (base[a].per_grf[0]->rho_hat != perm[a].per_grf[0]->rho_hat) {
                ok = false;
                detail += "label permutation changed rho_hat; ";
                break;
            }
    }

    // Deduplication invariance.
    {
        const auto halves = CodingFunction::sequential({0.0});
        std::vector<WeightedIntervalPair> merged;
        for (int k = 1; k <= 2; ++k)
            for (int l = 1; l <= 2; ++l) {
                const double p = bivariate_rect_prob(halves.interval(k, 0),
                                                     halves.interval(l, 0),
                                                     Correlation(0.4));
                merged.push_back({halves.interval(k, 0), halves.interval(l, 0),
                                  std::llround(p * 20000)});
            }
        std::vector<WeightedIntervalPair> unrolled;
        for (const auto& pr : merged)
            for (std::int64_t rep = 0; rep < 10; ++rep)
                unrolled.push_back(
                    {pr.first, pr.second, pr.count / 10 + (rep < pr.count % 10 ? 1 : 0)});
        std::shuffle(unrolled.begin(), unrolled.end(), std::mt19937(5));
        const auto a = estimate_lag_correlation(merged);
        const auto b = estimate_lag_correlation(unrolled);
        if (a.rho_hat != b.rho_hat || a.log_pl != b.log_pl) {
            ok = false;
            detail += "dedup changed the estimate; ";
        }
    }

    // Determinism across thread counts.
    {
        StudyConfig cfg;
        cfg.kind = StudyKind::mono_c1_constant;
        cfg.n_sims = 3;
        cfg.grid_nodes = 100;
        cfg.lags = LagSpec::regular(6, 1.0);
        cfg.n_threads = 1;
        const auto s1 = run_study(cfg);
        cfg.n_threads = 3;
        const auto s3 = run_study(cfg);
        for (std::size_t i = 0; i < s1.rows.size(); ++i) {
            const bool same_mean = (std::isnan(s1.rows[i].mean) && std::isnan(s3.rows[i].mean)) ||
                                   s1.rows[i].mean == s3.rows[i].mean;
            if (!same_mean || s1.rows[i].p5 != s3.rows[i].p5) {
                if (!(std::isnan(s1.rows[i].p5) && std::isnan(s3.rows[i].p5))) {
                    ok = false;
                    detail += "thread count changed results; ";
                    break;
                }
            }
        }
    }

    // Fit self-consistency on noiseless tracks.
    {
        for (auto [kind, range] : {std::pair{CovarianceKind::exponential, 20.0},
                                   std::pair{CovarianceKind::gaussian, 40.0}}) {
            EmpiricalVariogram v;
            v.track = "grf_1";
            for (std::size_t a = 1; a <= 30; ++a) {
                VariogramPoint pt;
                pt.lag = static_cast<double>(a) * 2.0;
                pt.estimate = 1.0 - covariance_eval(CovarianceModel{kind, range}, pt.lag);
                pt.n_pairs = 500;
                v.points.push_back(pt);
            }
            const auto fit = fit_unit_sill_model(v, kind);
            if (std::fabs(fit.model.range - range) / range > 0.005) {
                ok = false;
                detail += "fit recovery off; ";
            }
        }
    }

    if (detail.empty()) detail = "tiling, permutation, dedup, threads, fit recovery";
    report(7, ok, "invariant suite", detail);
}

} // namespace

int main() {
    const auto t0 = std::chrono::steady_clock::now();
    criterion_1();
    criterion_2();

    std::printf("running Monte-Carlo studies (200 simulations each)...\n");
    std::fflush(stdout);
    const auto c1 = run_mono_study(study_config(StudyKind::mono_c1_constant));
    std::printf("  mono-c1-constant done at %.0fs\n", seconds_since(t0));
    std::fflush(stdout);
    const auto c1v = run_mono_study(study_config(StudyKind::mono_c1_varying));
    std::printf("  mono-c1-varying done at %.0fs\n", seconds_since(t0));
    std::fflush(stdout);
    const auto c2 = run_mono_study(study_config(StudyKind::mono_c2_constant));
    std::printf("  mono-c2-constant done at %.0fs\n", seconds_since(t0));
    std::fflush(stdout);

    criterion_3(c1);
    criterion_4(c1, c1v, c2);
    criterion_5();
    criterion_6();
    criterion_7();

    std::printf("total %.0fs\n", seconds_since(t0));
    return all_ok ? 0 : 1;
}
