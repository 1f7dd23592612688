#include "pgvario/io.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "pgvario/errors.hpp"

namespace pgv::io {

namespace {

std::string fmt(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::ofstream open_out(const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw ParseError("cannot open " + path.string() + " for writing");
    return out;
}

struct CsvReader {
    explicit CsvReader(const std::filesystem::path& p) : path(p.string()), in(p) {
        if (!in) throw ParseError("cannot open " + path);
    }

    // Returns false at EOF; skips nothing, every data line must parse.
    bool next_row(std::vector<std::string>& cells) {
        std::string line;
        if (!std::getline(in, line)) return false;
        ++row;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        cells.clear();
        std::size_t start = 0;
        for (;;) {
            const std::size_t comma = line.find(',', start);
            if (comma == std::string::npos) {
                cells.push_back(line.substr(start));
                break;
            }
            cells.push_back(line.substr(start, comma - start));
            start = comma + 1;
        }
        return true;
    }

    void expect_header(const std::vector<std::string>& names) {
        std::vector<std::string> cells;
        if (!next_row(cells)) throw ParseError(path + ": empty file");
        if (cells != names) {
            std::string want;
            for (const auto& n : names) want += (want.empty() ? "" : ",") + n;
            std::string got;
            for (const auto& c : cells) got += (got.empty() ? "" : ",") + c;
            throw ParseError(path + ":1: expected header '" + want + "', got '" + got + "'");
        }
    }

    void expect_cols(const std::vector<std::string>& cells, std::size_t n) const {
        if (cells.size() != n)
            throw ParseError(path + ":" + std::to_string(row) + ": expected " +
                             std::to_string(n) + " columns, got " +
                             std::to_string(cells.size()));
    }

    double as_double(const std::string& cell, const char* col) const {
        const char* s = cell.c_str();
        char* end = nullptr;
        const double v = std::strtod(s, &end);
        if (end == s || *end != '\0')
            throw ParseError(path + ":" + std::to_string(row) + ": column '" + col +
                             "': expected a number, got '" + cell + "'");
        return v;
    }

    long as_long(const std::string& cell, const char* col) const {
        const char* s = cell.c_str();
        char* end = nullptr;
        const long v = std::strtol(s, &end, 10);
        if (end == s || *end != '\0')
            throw ParseError(path + ":" + std::to_string(row) + ": column '" + col +
                             "': expected an integer, got '" + cell + "'");
        return v;
    }

    std::string path;
    std::ifstream in;
    std::size_t row = 0;
};

std::vector<std::string> coord_header(std::size_t dim) {
    return dim == 1 ? std::vector<std::string>{"x1"}
                    : std::vector<std::string>{"x1", "x2"};
}

// Sites files may be 1-D or 2-D; peek at the header to decide.
std::size_t sniff_dim(CsvReader& r, std::size_t extra_cols,
                      const std::vector<std::string>& extra_names) {
    std::vector<std::string> cells;
    if (!r.next_row(cells)) throw ParseError(r.path + ": empty file");
    for (std::size_t dim : {std::size_t{1}, std::size_t{2}}) {
        std::vector<std::string> want = coord_header(dim);
        want.insert(want.end(), extra_names.begin(), extra_names.end());
        if (cells == want) return dim;
    }
    (void)extra_cols;
    throw ParseError(r.path + ":1: unrecognized header");
}

} // namespace

SiteSet read_sites_csv(const std::filesystem::path& path) {
    CsvReader r(path);
    SiteSet sites;
    sites.dim = sniff_dim(r, 0, {});
    std::vector<std::string> cells;
    while (r.next_row(cells)) {
        r.expect_cols(cells, sites.dim);
        for (std::size_t d = 0; d < sites.dim; ++d)
            sites.coords.push_back(r.as_double(cells[d], d == 0 ? "x1" : "x2"));
    }
    if (sites.coords.empty()) throw ParseError(r.path + ": no sites");
    sites.validate();
    return sites;
}

void write_sites_csv(const std::filesystem::path& path, const SiteSet& sites) {
    auto out = open_out(path);
    out << (sites.dim == 1 ? "x1" : "x1,x2") << '\n';
    for (std::size_t i = 0; i < sites.size(); ++i) {
        out << fmt(sites.coord(i, 0));
        if (sites.dim == 2) out << ',' << fmt(sites.coord(i, 1));
        out << '\n';
    }
}

RealizationData read_realization_csv(const std::filesystem::path& path) {
    CsvReader r(path);
    std::vector<std::string> cells;
    if (!r.next_row(cells)) throw ParseError(r.path + ": empty file");

    std::size_t dim = 0;
    if (cells.size() >= 2 && cells[0] == "x1" && cells[1] == "x2") dim = 2;
    else if (!cells.empty() && cells[0] == "x1") dim = 1;
    if (dim == 0 || cells.size() <= dim)
        throw ParseError(r.path + ":1: expected header x1[,x2],y1,...");
    const std::size_t q = cells.size() - dim;
    for (std::size_t k = 0; k < q; ++k)
        if (cells[dim + k] != "y" + std::to_string(k + 1))
            throw ParseError(r.path + ":1: expected field column y" +
                             std::to_string(k + 1) + ", got '" + cells[dim + k] + "'");

    RealizationData data;
    data.sites.dim = dim;
    std::vector<std::vector<double>> columns(q);
    while (r.next_row(cells)) {
        r.expect_cols(cells, dim + q);
        for (std::size_t d = 0; d < dim; ++d)
            data.sites.coords.push_back(r.as_double(cells[d], d == 0 ? "x1" : "x2"));
        for (std::size_t k = 0; k < q; ++k)
            columns[k].push_back(r.as_double(cells[dim + k], "y"));
    }
    if (data.sites.coords.empty()) throw ParseError(r.path + ": no rows");
    data.sites.validate();
    data.values.n_sites = data.sites.size();
    data.values.n_grfs = q;
    for (auto& col : columns)
        data.values.values.insert(data.values.values.end(), col.begin(), col.end());
    return data;
}

void write_realization_csv(const std::filesystem::path& path, const SiteSet& sites,
                           const GRFRealization& values) {
    if (sites.size() != values.n_sites)
        throw ConfigError("site count does not match realization");
    auto out = open_out(path);
    out << (sites.dim == 1 ? "x1" : "x1,x2");
    for (std::size_t k = 0; k < values.n_grfs; ++k) out << ",y" << k + 1;
    out << '\n';
    for (std::size_t i = 0; i < sites.size(); ++i) {
        out << fmt(sites.coord(i, 0));
        if (sites.dim == 2) out << ',' << fmt(sites.coord(i, 1));
        for (std::size_t k = 0; k < values.n_grfs; ++k) out << ',' << fmt(values.at(i, k));
        out << '\n';
    }
}

CategoricalData read_categories_csv(const std::filesystem::path& path) {
    CsvReader r(path);
    CategoricalData data;
    data.sites.dim = sniff_dim(r, 1, {"category"});
    std::vector<std::string> cells;
    int max_cat = 0;
    while (r.next_row(cells)) {
        r.expect_cols(cells, data.sites.dim + 1);
        for (std::size_t d = 0; d < data.sites.dim; ++d)
            data.sites.coords.push_back(r.as_double(cells[d], d == 0 ? "x1" : "x2"));
        const long c = r.as_long(cells[data.sites.dim], "category");
        if (c < 1)
            throw ParseError(r.path + ":" + std::to_string(r.row) +
                             ": column 'category': labels start at 1, got " +
                             std::to_string(c));
        data.field.categories.push_back(static_cast<int>(c));
        max_cat = std::max(max_cat, static_cast<int>(c));
    }
    if (data.field.categories.empty()) throw ParseError(r.path + ": no rows");
    data.sites.validate();
    data.field.n_categories = static_cast<std::size_t>(max_cat);
    return data;
}

void write_categories_csv(const std::filesystem::path& path, const SiteSet& sites,
                          const CategoricalField& field) {
    if (sites.size() != field.size())
        throw ConfigError("site count does not match categorical field");
    auto out = open_out(path);
    out << (sites.dim == 1 ? "x1" : "x1,x2") << ",category\n";
    for (std::size_t i = 0; i < sites.size(); ++i) {
        out << fmt(sites.coord(i, 0));
        if (sites.dim == 2) out << ',' << fmt(sites.coord(i, 1));
        out << ',' << field.categories[i] << '\n';
    }
}

void write_tracks_csv(const std::filesystem::path& path,
                      std::span<const EmpiricalVariogram> tracks) {
    auto out = open_out(path);
    out << "track,lag,estimate,npairs\n";
    for (const auto& t : tracks)
        for (const auto& pt : t.points)
            out << t.track << ',' << fmt(pt.lag) << ','
                << (pt.estimate ? fmt(*pt.estimate) : "nan") << ',' << pt.n_pairs
                << '\n';
}

std::vector<EmpiricalVariogram> read_tracks_csv(const std::filesystem::path& path) {
    CsvReader r(path);
    r.expect_header({"track", "lag", "estimate", "npairs"});
    std::vector<EmpiricalVariogram> tracks;
    std::vector<std::string> cells;
    while (r.next_row(cells)) {
        r.expect_cols(cells, 4);
        if (tracks.empty() || tracks.back().track != cells[0]) {
            for (const auto& t : tracks)
                if (t.track == cells[0])
                    throw ParseError(r.path + ":" + std::to_string(r.row) +
                                     ": track '" + cells[0] + "' rows are not contiguous");
            tracks.push_back({cells[0], {}});
        }
        VariogramPoint pt;
        pt.lag = r.as_double(cells[1], "lag");
        const double est = r.as_double(cells[2], "estimate");
        if (!std::isnan(est)) pt.estimate = est;
        pt.n_pairs = r.as_long(cells[3], "npairs");
        tracks.back().points.push_back(pt);
    }
    return tracks;
}

void write_pl_csv(const std::filesystem::path& path,
                  std::span<const PLLagResult> results) {
    auto out = open_out(path);
    out << "lag,grf,gamma_hat,rho_hat,logpl,n_effective_pairs,converged,boundary_flag\n";
    for (const auto& res : results) {
        for (std::size_t r = 0; r < res.per_grf.size(); ++r) {
            out << fmt(res.lag) << ',' << r + 1 << ',';
            if (res.per_grf[r]) {
                const auto& e = *res.per_grf[r];
                out << fmt(e.gamma_hat) << ',' << fmt(e.rho_hat) << ',' << fmt(e.log_pl)
                    << ',' << e.n_effective_pairs << ',' << (e.converged ? 1 : 0) << ','
                    << (e.at_boundary ? 1 : 0);
            } else {
                out << "nan,nan,nan,0,0,0";
            }
            out << '\n';
        }
    }
}

std::vector<PLLagResult> read_pl_csv(const std::filesystem::path& path) {
    CsvReader r(path);
    r.expect_header({"lag", "grf", "gamma_hat", "rho_hat", "logpl", "n_effective_pairs",
                     "converged", "boundary_flag"});
    std::vector<PLLagResult> results;
    std::vector<std::string> cells;
    while (r.next_row(cells)) {
        r.expect_cols(cells, 8);
        const double lag = r.as_double(cells[0], "lag");
        const long grf = r.as_long(cells[1], "grf");
        if (grf < 1)
            throw ParseError(r.path + ":" + std::to_string(r.row) +
                             ": column 'grf': indices start at 1");
        if (results.empty() || results.back().lag != lag)
            results.push_back({lag, 0, {}});
        auto& res = results.back();
        if (static_cast<std::size_t>(grf) != res.per_grf.size() + 1)
            throw ParseError(r.path + ":" + std::to_string(r.row) +
                             ": column 'grf': expected index " +
                             std::to_string(res.per_grf.size() + 1));
        const double gamma = r.as_double(cells[2], "gamma_hat");
        if (std::isnan(gamma)) {
            res.per_grf.emplace_back(std::nullopt);
        } else {
            LagEstimate e;
            e.gamma_hat = gamma;
            e.rho_hat = r.as_double(cells[3], "rho_hat");
            e.log_pl = r.as_double(cells[4], "logpl");
            e.n_effective_pairs = r.as_long(cells[5], "n_effective_pairs");
            e.converged = r.as_long(cells[6], "converged") != 0;
            e.at_boundary = r.as_long(cells[7], "boundary_flag") != 0;
            res.per_grf.emplace_back(e);
        }
    }
    return results;
}

std::vector<std::vector<double>> read_threshold_rows_csv(const std::filesystem::path& path) {
    CsvReader r(path);
    std::vector<std::string> cells;
    if (!r.next_row(cells)) throw ParseError(r.path + ": empty file");
    const std::size_t m = cells.size();
    for (std::size_t j = 0; j < m; ++j)
        if (cells[j] != "s" + std::to_string(j + 1))
            throw ParseError(r.path + ":1: expected threshold columns s1,s2,...");
    std::vector<std::vector<double>> rows;
    while (r.next_row(cells)) {
        r.expect_cols(cells, m);
        std::vector<double> row(m);
        for (std::size_t j = 0; j < m; ++j) row[j] = r.as_double(cells[j], "s");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw ParseError(r.path + ": no rows");
    return rows;
}

void write_threshold_rows_csv(const std::filesystem::path& path,
                              const std::vector<std::vector<double>>& rows) {
    auto out = open_out(path);
    if (rows.empty()) throw ConfigError("no threshold rows to write");
    for (std::size_t j = 0; j < rows.front().size(); ++j)
        out << (j ? "," : "") << 's' << j + 1;
    out << '\n';
    for (const auto& row : rows) {
        for (std::size_t j = 0; j < row.size(); ++j) out << (j ? "," : "") << fmt(row[j]);
        out << '\n';
    }
}

void write_summary_csv(const std::filesystem::path& path, const StudySummary& summary) {
    auto out = open_out(path);
    out << "lag,grf,estimator,mean,p5,p25,p75,p95,truth,n_missing\n";
    for (const auto& row : summary.rows)
        out << fmt(row.lag) << ',' << row.grf << ',' << row.estimator << ','
            << fmt(row.mean) << ',' << fmt(row.p5) << ',' << fmt(row.p25) << ','
            << fmt(row.p75) << ',' << fmt(row.p95) << ',' << fmt(row.truth) << ','
            << row.n_missing << '\n';
}

nlohmann::json load_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open " + path.string());
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(path.string() + ": " + e.what());
    }
}

void save_json_file(const std::filesystem::path& path, const nlohmann::json& j) {
    auto out = open_out(path);
    out << j.dump(2) << '\n';
}

namespace {

double field_double(const nlohmann::json& j, const char* name, const char* ctx) {
    if (!j.contains(name) || !j[name].is_number())
        throw ConfigError(std::string(ctx) + ": field '" + name +
                          "' missing or not a number");
    return j[name].get<double>();
}

double field_double_or(const nlohmann::json& j, const char* name, const char* ctx,
                       double fallback) {
    if (!j.contains(name)) return fallback;
    if (!j[name].is_number())
        throw ConfigError(std::string(ctx) + ": field '" + name + "' must be a number");
    return j[name].get<double>();
}

std::vector<double> field_double_vec(const nlohmann::json& j, const char* name,
                                     const char* ctx) {
    if (!j.contains(name) || !j[name].is_array())
        throw ConfigError(std::string(ctx) + ": field '" + name +
                          "' missing or not an array");
    std::vector<double> out;
    for (const auto& v : j[name]) {
        if (!v.is_number())
            throw ConfigError(std::string(ctx) + ": field '" + name +
                              "' must contain numbers only");
        out.push_back(v.get<double>());
    }
    return out;
}

} // namespace

LagSpec lag_spec_from_json(const nlohmann::json& j) {
    const char* ctx = "lag spec";
    LagSpec spec;
    if (j.contains("mode")) {
        const auto mode = j["mode"].get<std::string>();
        if (mode == "omnidirectional") spec.mode = LagMode::omnidirectional;
        else if (mode == "directional") spec.mode = LagMode::directional;
        else throw ConfigError("lag spec: field 'mode' must be omnidirectional or directional");
    }
    if (j.contains("centers")) {
        spec.centers = field_double_vec(j, "centers", ctx);
    } else {
        const double n = field_double(j, "n_lags", ctx);
        const double w = field_double(j, "lag_width", ctx);
        if (!(n >= 1) || n != std::floor(n))
            throw ConfigError("lag spec: field 'n_lags' must be a positive integer");
        spec.centers = LagSpec::regular(static_cast<std::size_t>(n), w).centers;
    }
    spec.tolerance = field_double_or(j, "tolerance", ctx, 0.0);
    if (spec.mode == LagMode::directional) {
        const auto dir = field_double_vec(j, "direction", ctx);
        if (dir.size() != 2)
            throw ConfigError("lag spec: field 'direction' must have two components");
        spec.direction = {dir[0], dir[1]};
        spec.angular_tolerance = field_double(j, "angular_tolerance", ctx);
    }
    spec.validate();
    return spec;
}

nlohmann::json lag_spec_to_json(const LagSpec& spec) {
    nlohmann::json j;
    j["mode"] = spec.mode == LagMode::directional ? "directional" : "omnidirectional";
    j["centers"] = spec.centers;
    j["tolerance"] = spec.resolved_tolerance();
    if (spec.mode == LagMode::directional) {
        j["direction"] = {spec.direction[0], spec.direction[1]};
        j["angular_tolerance"] = spec.angular_tolerance;
    }
    return j;
}

CodingFunction coding_from_json(const nlohmann::json& j,
                                const std::filesystem::path& base_dir) {
    if (!j.contains("rule") || !j["rule"].is_string())
        throw ConfigError("coding: field 'rule' missing or not a string");
    const auto rule = j["rule"].get<std::string>();

    if (rule == "sequential") {
        if (j.contains("thresholds_csv")) {
            const auto rel = j["thresholds_csv"].get<std::string>();
            return CodingFunction::sequential_varying(
                read_threshold_rows_csv(base_dir / rel));
        }
        if (j.contains("thresholds"))
            return CodingFunction::sequential(field_double_vec(j, "thresholds", "coding"));
        if (j.contains("proportions"))
            return CodingFunction::sequential_from_proportions(
                {field_double_vec(j, "proportions", "coding")});
        throw ConfigError(
            "coding: sequential rule needs 'thresholds', 'proportions', or 'thresholds_csv'");
    }

    if (rule == "flag2") {
        if (j.contains("proportions")) {
            const auto p = field_double_vec(j, "proportions", "coding");
            ProportionSpec spec{p};
            spec.validate();
            if (p.size() != 3)
                throw ConfigError("coding: flag2 rule needs exactly 3 proportions");
            const double s1 = std_normal_quantile(p[0]);
            const double t1 = std_normal_quantile(p[1] / (1.0 - p[0]));
            return CodingFunction::flag2(s1, t1);
        }
        return CodingFunction::flag2(field_double(j, "s1", "coding"),
                                     field_double(j, "t1", "coding"));
    }

    if (rule == "explicit") {
        const double qd = field_double(j, "q", "coding");
        if (!(qd >= 1) || qd != std::floor(qd))
            throw ConfigError("coding: field 'q' must be a positive integer");
        const auto q = static_cast<std::size_t>(qd);
        if (!j.contains("cells") || !j["cells"].is_array())
            throw ConfigError("coding: field 'cells' missing or not an array");
        const double inf = std::numeric_limits<double>::infinity();
        std::vector<std::vector<Interval>> cells;
        for (const auto& cat : j["cells"]) {
            if (!cat.is_array() || cat.size() != q)
                throw ConfigError("coding: each cell needs one [lo, hi] per GRF");
            std::vector<Interval> row;
            for (const auto& iv : cat) {
                if (!iv.is_array() || iv.size() != 2)
                    throw ConfigError("coding: intervals are [lo, hi] pairs");
                const double lo = iv[0].is_null() ? -inf : iv[0].get<double>();
                const double hi = iv[1].is_null() ? inf : iv[1].get<double>();
                row.emplace_back(lo, hi);
            }
            cells.push_back(std::move(row));
        }
        return CodingFunction::explicit_rectangles(q, std::move(cells));
    }

    throw ConfigError("coding: field 'rule' must be sequential, flag2, or explicit");
}

CovarianceModel model_from_json(const nlohmann::json& j) {
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("model: field 'kind' missing or not a string");
    CovarianceModel m;
    m.kind = covariance_kind_from_string(j["kind"].get<std::string>());
    m.range = m.kind == CovarianceKind::nugget
                  ? field_double_or(j, "range", "model", 1.0)
                  : field_double(j, "range", "model");
    m.sill = field_double_or(j, "sill", "model", 1.0);
    if (!(m.sill > 0.0)) throw ConfigError("model: field 'sill' must be positive");
    return m;
}

nlohmann::json model_to_json(const CovarianceModel& model) {
    return {{"kind", to_string(model.kind)}, {"range", model.range}, {"sill", model.sill}};
}

nlohmann::json fit_to_json(const FitResult& fit) {
    nlohmann::json j = model_to_json(fit.model);
    j["objective"] = fit.objective;
    j["range_at_lower_bound"] = fit.range_at_lower_bound;
    return j;
}

StudyConfig study_config_from_json(const nlohmann::json& j) {
    const char* ctx = "study config";
    if (!j.contains("kind") || !j["kind"].is_string())
        throw ConfigError("study config: field 'kind' missing or not a string");
    StudyConfig cfg;
    cfg.kind = study_kind_from_string(j["kind"].get<std::string>());

    const double sims = field_double_or(j, "n_sims", ctx, cfg.n_sims);
    if (!(sims >= 1) || sims != std::floor(sims))
        throw ConfigError("study config: field 'n_sims' must be a positive integer");
    cfg.n_sims = static_cast<int>(sims);

    if (j.contains("seed")) {
        if (!j["seed"].is_number_integer() && !j["seed"].is_number_unsigned())
            throw ConfigError("study config: field 'seed' must be an integer");
        cfg.seed = j["seed"].get<std::uint64_t>();
    }

    const double nodes = field_double_or(j, "grid_nodes", ctx,
                                         static_cast<double>(cfg.grid_nodes));
    if (!(nodes >= 2) || nodes != std::floor(nodes))
        throw ConfigError("study config: field 'grid_nodes' must be an integer >= 2");
    cfg.grid_nodes = static_cast<std::size_t>(nodes);
    cfg.grid_mesh = field_double_or(j, "grid_mesh", ctx, cfg.grid_mesh);

    const double sites = field_double_or(j, "n_sites", ctx,
                                         static_cast<double>(cfg.n_sites));
    if (!(sites >= 2) || sites != std::floor(sites))
        throw ConfigError("study config: field 'n_sites' must be an integer >= 2");
    cfg.n_sites = static_cast<std::size_t>(sites);
    cfg.square_side = field_double_or(j, "square_side", ctx, cfg.square_side);

    if (j.contains("lags")) cfg.lags = lag_spec_from_json(j["lags"]);
    cfg.threshold_smoothness_range =
        field_double_or(j, "threshold_smoothness_range", ctx,
                        cfg.threshold_smoothness_range);
    const double threads = field_double_or(j, "threads", ctx, cfg.n_threads);
    if (threads < 0 || threads != std::floor(threads))
        throw ConfigError("study config: field 'threads' must be a non-negative integer");
    cfg.n_threads = static_cast<int>(threads);

    cfg.validate();
    return cfg;
}

nlohmann::json study_config_to_json(const StudyConfig& cfg) {
    nlohmann::json j;
    j["kind"] = to_string(cfg.kind);
    j["n_sims"] = cfg.n_sims;
    j["seed"] = cfg.seed;
    if (cfg.is_mono()) {
        j["grid_nodes"] = cfg.grid_nodes;
        j["grid_mesh"] = cfg.grid_mesh;
    } else {
        j["n_sites"] = cfg.n_sites;
        j["square_side"] = cfg.square_side;
        j["domain_note"] =
            "sites are drawn on a square of side " + fmt(cfg.square_side) +
            " so that lag distances up to 150 and covariance ranges 20/40 are "
            "geometrically realizable";
    }
    j["lags"] = lag_spec_to_json(cfg.resolved_lags());
    j["threshold_smoothness_range"] = cfg.threshold_smoothness_range;
    j["threads"] = cfg.n_threads;
    return j;
}

} // namespace pgv::io
