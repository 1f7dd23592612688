#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include <json.hpp>

#include "pgvario/coding.hpp"
#include "pgvario/covariance.hpp"
#include "pgvario/fitting.hpp"
#include "pgvario/lag_binning.hpp"
#include "pgvario/mc_study.hpp"
#include "pgvario/pl_estimation.hpp"
#include "pgvario/simulation.hpp"
#include "pgvario/site_set.hpp"
#include "pgvario/variogram.hpp"

// Plain-text formats. CSV files carry a header naming every column; 1- or 2-D
// coordinates are "x1" / "x1,x2", field columns "y1..yq". Missing estimates
// are written as nan. ParseError messages carry file name and row number.
namespace pgv::io {

SiteSet read_sites_csv(const std::filesystem::path& path);
void write_sites_csv(const std::filesystem::path& path, const SiteSet& sites);

struct RealizationData {
    SiteSet sites;
    GRFRealization values;
};
RealizationData read_realization_csv(const std::filesystem::path& path);
void write_realization_csv(const std::filesystem::path& path, const SiteSet& sites,
                           const GRFRealization& values);

struct CategoricalData {
    SiteSet sites;
    CategoricalField field;
};
CategoricalData read_categories_csv(const std::filesystem::path& path);
void write_categories_csv(const std::filesystem::path& path, const SiteSet& sites,
                          const CategoricalField& field);

// columns: track,lag,estimate,npairs
void write_tracks_csv(const std::filesystem::path& path,
                      std::span<const EmpiricalVariogram> tracks);
std::vector<EmpiricalVariogram> read_tracks_csv(const std::filesystem::path& path);

// columns: lag,grf,gamma_hat,rho_hat,logpl,n_effective_pairs,converged,boundary_flag
void write_pl_csv(const std::filesystem::path& path,
                  std::span<const PLLagResult> results);
std::vector<PLLagResult> read_pl_csv(const std::filesystem::path& path);

// Per-site threshold rows for site-dependent sequential codings.
std::vector<std::vector<double>> read_threshold_rows_csv(const std::filesystem::path& path);
void write_threshold_rows_csv(const std::filesystem::path& path,
                              const std::vector<std::vector<double>>& rows);

// columns: lag,grf,estimator,mean,p5,p25,p75,p95,truth,n_missing
void write_summary_csv(const std::filesystem::path& path, const StudySummary& summary);

nlohmann::json load_json_file(const std::filesystem::path& path);
void save_json_file(const std::filesystem::path& path, const nlohmann::json& j);

LagSpec lag_spec_from_json(const nlohmann::json& j);
nlohmann::json lag_spec_to_json(const LagSpec& spec);

// Coding JSON: {"rule": "sequential"|"flag2"|"explicit", ...}. Sequential
// takes "thresholds", "proportions", or "thresholds_csv" (path resolved
// against base_dir); flag2 takes {"s1","t1"} or three "proportions";
// explicit takes "q" and "cells" (per category, per GRF [lo, hi], null = open).
CodingFunction coding_from_json(const nlohmann::json& j,
                                const std::filesystem::path& base_dir);

CovarianceModel model_from_json(const nlohmann::json& j);
nlohmann::json model_to_json(const CovarianceModel& model);
nlohmann::json fit_to_json(const FitResult& fit);

StudyConfig study_config_from_json(const nlohmann::json& j);
nlohmann::json study_config_to_json(const StudyConfig& cfg);

} // namespace pgv::io
