// Command-line front end: simulation, truncation, variography, model
// fitting, and the Monte-Carlo study driver, wired through CSV/JSON files.

#include <cstdio>
#include <exception>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "pgvario/coding.hpp"
#include "pgvario/errors.hpp"
#include "pgvario/indicator_variography.hpp"
#include "pgvario/io.hpp"
#include "pgvario/mc_study.hpp"
#include "pgvario/model_indicator.hpp"
#include "pgvario/parallel.hpp"
#include "pgvario/pl_estimation.hpp"
#include "pgvario/rng.hpp"
#include "pgvario/simulation.hpp"

namespace {

namespace fs = std::filesystem;

pgv::CovarianceModel parse_model_arg(const std::string& arg) {
    // KIND:RANGE[:SILL], e.g. exponential:20 or gaussian:40:1
    std::vector<std::string> parts;
    std::size_t start = 0;
    for (;;) {
        const auto colon = arg.find(':', start);
        if (colon == std::string::npos) {
            parts.push_back(arg.substr(start));
            break;
        }
        parts.push_back(arg.substr(start, colon - start));
        start = colon + 1;
    }
    if (parts.size() < 2 || parts.size() > 3)
        throw pgv::ConfigError("model '" + arg + "' is not KIND:RANGE[:SILL]");
    pgv::CovarianceModel m;
    m.kind = pgv::covariance_kind_from_string(parts[0]);
    try {
        m.range = std::stod(parts[1]);
        m.sill = parts.size() == 3 ? std::stod(parts[2]) : 1.0;
    } catch (const std::exception&) {
        throw pgv::ConfigError("model '" + arg + "' has a non-numeric parameter");
    }
    return m;
}

pgv::CategoricalField field_for_coding(const pgv::io::CategoricalData& data,
                                       const pgv::CodingFunction& coding) {
    for (int c : data.field.categories)
        if (static_cast<std::size_t>(c) > coding.n_categories())
            throw pgv::ConfigError("categories file uses label " + std::to_string(c) +
                                   " but the coding has only " +
                                   std::to_string(coding.n_categories()) + " categories");
    pgv::CategoricalField f = data.field;
    f.n_categories = coding.n_categories();
    return f;
}

struct SimulateArgs {
    std::string sites_file;
    std::size_t grid_nodes = 0;
    double grid_mesh = 1.0;
    std::size_t uniform_sites = 0;
    double square_side = 0.0;
    std::vector<std::string> models;
    std::uint64_t seed = 13;
    std::string out;
};

int run_simulate(const SimulateArgs& a) {
    pgv::SiteSet sites;
    const int sources = (!a.sites_file.empty() ? 1 : 0) + (a.grid_nodes > 0 ? 1 : 0) +
                        (a.uniform_sites > 0 ? 1 : 0);
    if (sources != 1)
        throw pgv::ConfigError(
            "choose exactly one site source: --sites, --grid-nodes, or --uniform-sites");
    if (!a.sites_file.empty()) {
        sites = pgv::io::read_sites_csv(a.sites_file);
    } else if (a.grid_nodes > 0) {
        sites = pgv::make_grid_1d(a.grid_nodes, a.grid_mesh);
    } else {
        if (!(a.square_side > 0.0))
            throw pgv::ConfigError("--uniform-sites needs --square-side > 0");
        sites = pgv::sample_uniform_square(a.uniform_sites, a.square_side,
                                           pgv::derive_seed(a.seed, 0));
    }

    std::vector<pgv::CovarianceModel> models;
    for (const auto& m : a.models) models.push_back(parse_model_arg(m));
    if (models.empty()) throw pgv::ConfigError("need at least one --model");

    const auto y =
        pgv::simulate_independent_grfs(sites, models, pgv::derive_seed(a.seed, 16));
    pgv::io::write_realization_csv(a.out, sites, y);
    return 0;
}

int run_truncate(const std::string& realization_file, const std::string& coding_file,
                 const std::string& out) {
    const auto data = pgv::io::read_realization_csv(realization_file);
    const auto coding = pgv::io::coding_from_json(pgv::io::load_json_file(coding_file),
                                                  fs::path(coding_file).parent_path());
    const auto field = pgv::truncate(data.values, coding);
    pgv::io::write_categories_csv(out, data.sites, field);
    return 0;
}

int run_vario_indicator(const std::string& categories_file, const std::string& lags_file,
                        const std::string& out) {
    const auto data = pgv::io::read_categories_csv(categories_file);
    const auto spec = pgv::io::lag_spec_from_json(pgv::io::load_json_file(lags_file));
    const auto groups = pgv::build_pair_groups(data.sites, spec);
    const auto tracks = pgv::empirical_indicator_variograms(data.field, groups);
    pgv::io::write_tracks_csv(out, tracks);
    return 0;
}

int run_vario_pgs(const std::string& categories_file, const std::string& coding_file,
                  const std::string& lags_file, const std::string& out, int threads) {
    const auto data = pgv::io::read_categories_csv(categories_file);
    const auto coding = pgv::io::coding_from_json(pgv::io::load_json_file(coding_file),
                                                  fs::path(coding_file).parent_path());
    const auto field = field_for_coding(data, coding);
    const auto spec = pgv::io::lag_spec_from_json(pgv::io::load_json_file(lags_file));
    const auto groups = pgv::build_pair_groups(data.sites, spec);
    if (threads <= 0) threads = pgv::default_thread_count();
    const auto results = pgv::empirical_underlying_variogram(field, coding, groups, threads);
    pgv::io::write_pl_csv(out, results);
    return 0;
}

int run_vario_model(const std::vector<std::string>& model_files,
                    const std::string& coding_file, const std::string& sites_file,
                    const std::string& lags_file, const std::string& out) {
    const auto coding = pgv::io::coding_from_json(pgv::io::load_json_file(coding_file),
                                                  fs::path(coding_file).parent_path());
    if (model_files.size() != coding.n_grfs())
        throw pgv::ConfigError("need one --model-json per GRF (" +
                               std::to_string(coding.n_grfs()) + ")");
    std::vector<pgv::CovarianceModel> models;
    for (const auto& f : model_files) {
        auto m = pgv::io::model_from_json(pgv::io::load_json_file(f));
        if (m.sill != 1.0)
            throw pgv::ConfigError("model in " + f + ": the hidden fields have unit sill");
        models.push_back(m);
    }

    const auto sites = pgv::io::read_sites_csv(sites_file);
    const auto spec = pgv::io::lag_spec_from_json(pgv::io::load_json_file(lags_file));
    const auto groups = pgv::build_pair_groups(sites, spec);

    std::vector<std::vector<double>> rho_per_lag(groups.n_lags());
    for (std::size_t a = 0; a < groups.n_lags(); ++a) {
        rho_per_lag[a].resize(models.size());
        for (std::size_t r = 0; r < models.size(); ++r)
            rho_per_lag[a][r] = pgv::covariance_eval(models[r], groups.lag_centers[a]);
    }
    const auto tracks = pgv::averaged_indicator_variogram(coding, rho_per_lag, groups);
    pgv::io::write_tracks_csv(out, tracks);
    return 0;
}

int run_fit(const std::string& pl_file, std::size_t grf, const std::string& tracks_file,
            const std::string& track_name, const std::string& kind_name,
            const std::string& out) {
    const auto kind = pgv::covariance_kind_from_string(kind_name);

    pgv::EmpiricalVariogram v;
    if (!pl_file.empty()) {
        const auto results = pgv::io::read_pl_csv(pl_file);
        if (results.empty()) throw pgv::ConfigError(pl_file + ": no estimates");
        const std::size_t q = results.front().per_grf.size();
        if (grf < 1 || grf > q)
            throw pgv::ConfigError("--grf must be in 1.." + std::to_string(q));
        v = pgv::pl_variogram_tracks(results, q)[grf - 1];
    } else {
        const auto tracks = pgv::io::read_tracks_csv(tracks_file);
        bool found = false;
        for (const auto& t : tracks)
            if (t.track == track_name) {
                v = t;
                found = true;
            }
        if (!found)
            throw pgv::ConfigError(tracks_file + ": no track named '" + track_name + "'");
    }

    const auto fit = pgv::fit_unit_sill_model(v, kind);
    pgv::io::save_json_file(out, pgv::io::fit_to_json(fit));
    return 0;
}

int run_mc_study(const std::string& kind_name, const std::string& config_file,
                 std::optional<int> sims, std::optional<std::uint64_t> seed, int threads,
                 const std::string& out_dir) {
    pgv::StudyConfig cfg;
    if (!config_file.empty()) {
        cfg = pgv::io::study_config_from_json(pgv::io::load_json_file(config_file));
        if (!kind_name.empty()) cfg.kind = pgv::study_kind_from_string(kind_name);
    } else {
        if (kind_name.empty())
            throw pgv::ConfigError("mc-study needs --kind or --config");
        cfg.kind = pgv::study_kind_from_string(kind_name);
    }
    if (sims) cfg.n_sims = *sims;
    if (seed) cfg.seed = *seed;
    if (threads > 0) cfg.n_threads = threads;
    cfg.validate();

    fs::create_directories(out_dir);
    const auto summary = pgv::run_study(cfg);
    pgv::io::write_summary_csv(fs::path(out_dir) / "summary.csv", summary);
    pgv::io::save_json_file(fs::path(out_dir) / "config.json",
                            pgv::io::study_config_to_json(cfg));
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Categorical variography driven by hidden Gaussian random fields"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* c_sim = app.add_subcommand("simulate", "Simulate standardized GRFs at sites");
    c_sim->add_option("--sites", sim.sites_file, "sites CSV (x1[,x2])");
    c_sim->add_option("--grid-nodes", sim.grid_nodes, "1-D grid node count");
    c_sim->add_option("--grid-mesh", sim.grid_mesh, "1-D grid mesh (default 1)");
    c_sim->add_option("--uniform-sites", sim.uniform_sites, "uniform site count");
    c_sim->add_option("--square-side", sim.square_side, "square side for uniform sites");
    c_sim->add_option("--model", sim.models, "KIND:RANGE[:SILL], one per GRF")
        ->required();
    c_sim->add_option("--seed", sim.seed, "master seed (default 13)");
    c_sim->add_option("--out", sim.out, "output realization CSV")->required();

    std::string realization_file, coding_file, categories_file, lags_file, sites_file;
    std::string out_file;

    auto* c_trunc = app.add_subcommand("truncate", "Apply a coding to a realization");
    c_trunc->add_option("--realization", realization_file, "realization CSV")->required();
    c_trunc->add_option("--coding", coding_file, "coding JSON")->required();
    c_trunc->add_option("--out", out_file, "output categories CSV")->required();

    auto* c_vind =
        app.add_subcommand("vario-indicator", "Empirical indicator variograms");
    c_vind->add_option("--categories", categories_file, "categories CSV")->required();
    c_vind->add_option("--lags", lags_file, "lag spec JSON")->required();
    c_vind->add_option("--out", out_file, "output tracks CSV")->required();

    int threads = 0;
    auto* c_vpgs = app.add_subcommand(
        "vario-pgs", "Pairwise-likelihood variograms of the hidden GRFs");
    c_vpgs->add_option("--categories", categories_file, "categories CSV")->required();
    c_vpgs->add_option("--coding", coding_file, "coding JSON")->required();
    c_vpgs->add_option("--lags", lags_file, "lag spec JSON")->required();
    c_vpgs->add_option("--threads", threads, "worker threads (default: auto)");
    c_vpgs->add_option("--out", out_file, "output estimates CSV")->required();

    std::vector<std::string> model_files;
    auto* c_vmod = app.add_subcommand(
        "vario-model", "Indicator variograms implied by fitted GRF models");
    c_vmod->add_option("--model-json", model_files, "model JSON, one per GRF")->required();
    c_vmod->add_option("--coding", coding_file, "coding JSON")->required();
    c_vmod->add_option("--sites", sites_file, "sites CSV")->required();
    c_vmod->add_option("--lags", lags_file, "lag spec JSON")->required();
    c_vmod->add_option("--out", out_file, "output tracks CSV")->required();

    std::string pl_file, tracks_file, track_name, kind_name;
    std::size_t fit_grf = 1;
    auto* c_fit = app.add_subcommand("fit", "Fit a unit-sill covariance model");
    c_fit->add_option("--pl", pl_file, "PL estimates CSV (from vario-pgs)");
    c_fit->add_option("--grf", fit_grf, "GRF index in the PL file (default 1)");
    c_fit->add_option("--tracks", tracks_file, "tracks CSV (alternative input)");
    c_fit->add_option("--track", track_name, "track name inside --tracks");
    c_fit->add_option("--kind", kind_name, "covariance kind")->required();
    c_fit->add_option("--out", out_file, "output model JSON")->required();

    std::string study_kind, config_file, out_dir = "study_out";
    std::optional<int> study_sims;
    std::optional<std::uint64_t> study_seed;
    auto* c_mc = app.add_subcommand("mc-study", "Monte-Carlo estimator study");
    c_mc->add_option("--kind", study_kind,
                     "mono-c1-constant|mono-c2-constant|mono-c1-varying|"
                     "mono-c2-varying|bigaussian");
    c_mc->add_option("--config", config_file, "study config JSON");
    c_mc->add_option("--sims", study_sims, "number of simulations");
    c_mc->add_option("--seed", study_seed, "master seed");
    c_mc->add_option("--threads", threads, "worker threads (default: auto)");
    c_mc->add_option("--out", out_dir, "output directory (default study_out)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (c_sim->parsed()) return run_simulate(sim);
        if (c_trunc->parsed()) return run_truncate(realization_file, coding_file, out_file);
        if (c_vind->parsed()) return run_vario_indicator(categories_file, lags_file, out_file);
        if (c_vpgs->parsed())
            return run_vario_pgs(categories_file, coding_file, lags_file, out_file, threads);
        if (c_vmod->parsed())
            return run_vario_model(model_files, coding_file, sites_file, lags_file, out_file);
        if (c_fit->parsed()) {
            if (pl_file.empty() == (tracks_file.empty() || track_name.empty()))
                throw pgv::ConfigError("fit needs either --pl/--grf or --tracks/--track");
            return run_fit(pl_file, fit_grf, tracks_file, track_name, kind_name, out_file);
        }
        if (c_mc->parsed())
            return run_mc_study(study_kind, config_file, study_sims, study_seed, threads,
                                out_dir);
    } catch (const pgv::ParseError& e) {
        std::fprintf(stderr, "parse error: %s\n", e.what());
        return 2;
    } catch (const pgv::ConfigError& e) {
        std::fprintf(stderr, "configuration error: %s\n", e.what());
        return 2;
    } catch (const pgv::NoInformationError& e) {
        std::fprintf(stderr, "no information: %s\n", e.what());
        return 3;
    } catch (const pgv::NumericalError& e) {
        std::fprintf(stderr, "numerical error: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
