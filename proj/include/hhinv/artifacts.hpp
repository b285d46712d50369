#pragma once

#include <filesystem>
#include <optional>
#include <string>

#include "hhinv/config.hpp"
#include "hhinv/landweber.hpp"
#include "hhinv/noise.hpp"

namespace hhinv {

/// Row of a table artifact; `status` is "ok" or the failure description when
/// a row's run aborted.
struct TableRow {
    double epsilon = 0.0;
    std::size_t k_star = 0;
    Vec3 parameters{0.0, 0.0, 0.0};
    double error_percent = 0.0;
    double residual = 0.0;
    std::string stop_reason;
    std::string status = "ok";
    std::uint64_t seed = 0;
};

/// Writes t,V,m,n,h rows at full round-trip precision.
void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& trajectory);

/// Writes the observation with a `# key=value` metadata header recording
/// epsilon, delta, seed and the generator name, then t,V,V_delta rows.
void write_observation_csv(const std::filesystem::path& path, const TimeGrid& grid,
                           const std::vector<double>& clean, const Observation& observation,
                           std::uint64_t seed);

/// Parses a file produced by write_observation_csv. The grid must match the
/// one in `expected`; delta/epsilon come from the metadata header.
Observation read_observation_csv(const std::filesystem::path& path, const TimeGrid& expected);

/// Seed recorded in an observation file header.
std::uint64_t observation_seed(const std::filesystem::path& path);

/// Writes the per-iteration trace (k,p1,p2,p3,residual,error) and the summary
/// JSON next to it. Returns the summary path.
std::filesystem::path write_run_artifact(const std::filesystem::path& dir,
                                         const std::string& stem, const ExperimentConfig& config,
                                         const RunResult& result, double epsilon,
                                         std::uint64_t seed);

void write_table_csv(const std::filesystem::path& path, const std::vector<TableRow>& rows);

/// Full round-trip formatting for doubles (17 significant digits).
std::string format_full(double x);

}  // namespace hhinv
