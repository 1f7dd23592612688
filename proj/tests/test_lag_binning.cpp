#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <set>

#include "pgvario/errors.hpp"
#include "pgvario/lag_binning.hpp"
#include "pgvario/site_set.hpp"

using namespace pgv;

TEST_CASE("regular lag spec") {
    const LagSpec spec = LagSpec::regular(4, 2.5);
    CHECK(spec.centers == std::vector<double>{2.5, 5.0, 7.5, 10.0});
    CHECK(spec.resolved_tolerance() == 1.25);
    spec.validate();

    LagSpec custom;
    custom.centers = {1.0, 4.0, 5.0};
    CHECK(custom.resolved_tolerance() == 0.5);
    custom.tolerance = 0.4;
    CHECK(custom.resolved_tolerance() == 0.4);
}

TEST_CASE("lag spec validation") {
    LagSpec bad;
    bad.centers = {1.0, 1.0, 2.0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.centers = {2.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.centers = {-1.0, 1.0};
    CHECK_THROWS_AS(bad.validate(), ConfigError);
    bad.centers = {};
    CHECK_THROWS_AS(bad.validate(), ConfigError);

    LagSpec single;
    single.centers = {5.0};
    CHECK_THROWS_AS(single.validate(), ConfigError); // needs explicit tolerance
    single.tolerance = 1.0;
    single.validate();

    // Windows [0.4, 1.6] and [1.4, 2.6] overlap in the interior.
    LagSpec lap;
    lap.centers = {1.0, 2.0};
    lap.tolerance = 0.6;
    CHECK_THROWS_AS(lap.validate(), ConfigError);
    // Touching windows are fine.
    lap.tolerance = 0.5;
    lap.validate();
}

TEST_CASE("grid pair counts are exact") {
    const std::size_t n = 40;
    const SiteSet grid = make_grid_1d(n, 1.0);
    const auto groups = build_pair_groups(grid, LagSpec::regular(10, 1.0));
    REQUIRE(groups.n_lags() == 10);
    for (std::size_t a = 0; a < 10; ++a)
        CHECK(groups.count(a) == n - (a + 1));
    for (const auto& pair_list : groups.pairs)
        for (const auto& pr : pair_list)
            CHECK(pr.i < pr.j);
}

TEST_CASE("assignment to the nearest center, ties to the smaller lag") {
    SiteSet two{1, {0.0, 7.0}};
    LagSpec spec;
    spec.centers = {5.0, 10.0};
    spec.tolerance = 2.0;
    auto groups = build_pair_groups(two, spec);
    CHECK(groups.count(0) == 1); // |7-5| = 2 <= tol, nearer than 10
    CHECK(groups.count(1) == 0);

    SiteSet mid{1, {0.0, 1.5}};
    LagSpec tie;
    tie.centers = {1.0, 2.0};
    tie.tolerance = 0.5;
    groups = build_pair_groups(mid, tie);
    CHECK(groups.count(0) == 1); // equidistant, smaller lag wins
    CHECK(groups.count(1) == 0);

    SiteSet far{1, {0.0, 30.0}};
    groups = build_pair_groups(far, spec);
    CHECK(groups.count(0) + groups.count(1) == 0);
}

TEST_CASE("coincident sites follow the window rule like any pair") {
    SiteSet dup{1, {3.0, 3.0, 4.0}};
    LagSpec wide;
    wide.centers = {1.0};
    wide.tolerance = 1.0; // window [0, 2] admits the d = 0 pair
    CHECK(build_pair_groups(dup, wide).count(0) == 3);

    LagSpec tight;
    tight.centers = {1.0};
    tight.tolerance = 0.5; // window [0.5, 1.5] drops it
    CHECK(build_pair_groups(dup, tight).count(0) == 2);
}

TEST_CASE("each pair lands in at most one group and satisfies the window") {
    const SiteSet sites = sample_uniform_square(800, 200.0, 31);
    const auto spec = LagSpec::regular(30, 150.0 / 29.0);
    const auto groups = build_pair_groups(sites, spec);

    const double tol = spec.resolved_tolerance();
    std::set<std::pair<std::uint32_t, std::uint32_t>> seen;
    std::size_t total = 0;
    for (std::size_t a = 0; a < groups.n_lags(); ++a) {
        for (const auto& pr : groups.pairs[a]) {
            CHECK(seen.emplace(pr.i, pr.j).second);
            const double d = site_distance(sites, pr.i, pr.j);
            CHECK(std::fabs(d - groups.lag_centers[a]) <= tol + 1e-12);
            ++total;
        }
    }
    CHECK(total <= 800 * 799 / 2);
    CHECK(total > 0);

    const auto again = build_pair_groups(sites, spec);
    for (std::size_t a = 0; a < groups.n_lags(); ++a) {
        REQUIRE(again.count(a) == groups.count(a));
        for (std::size_t p = 0; p < groups.count(a); ++p) {
            CHECK(again.pairs[a][p].i == groups.pairs[a][p].i);
            CHECK(again.pairs[a][p].j == groups.pairs[a][p].j);
        }
    }
}

TEST_CASE("directional filter keeps aligned pairs only") {
    // Unit square of 4 sites: two x-aligned pairs, two y-aligned, two diagonal.
    SiteSet sites{2, {0.0, 0.0, 1.0, 0.0, 0.0, 1.0, 1.0, 1.0}};
    LagSpec spec;
    spec.mode = LagMode::directional;
    spec.centers = {1.0, 2.0};
    spec.tolerance = 0.5;
    spec.direction = {1.0, 0.0};
    spec.angular_tolerance = 0.3;
    const auto groups = build_pair_groups(sites, spec);
    CHECK(groups.count(0) == 2); // (0,1) and (2,3)
    CHECK(groups.count(1) == 0);

    spec.direction = {0.0, 1.0};
    const auto vert = build_pair_groups(sites, spec);
    CHECK(vert.count(0) == 2); // (0,2) and (1,3)

    spec.angular_tolerance = 1.0; // wide cone picks up the diagonals too
    const auto wide = build_pair_groups(sites, spec);
    CHECK(wide.count(0) == 4);

    // Directional binning needs 2-D sites.
    const SiteSet line = make_grid_1d(5, 1.0);
    CHECK_THROWS_AS((void)build_pair_groups(line, spec), ConfigError);
}
