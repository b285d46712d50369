#include "hhinv/artifacts.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace hhinv {
namespace {

using nlohmann::json;

std::string timestamp_utc() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buf[32];
    std::tm tm{};
    gmtime_r(&t, &tm);
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

// Write-then-rename so partially written artifacts are never observed.
class AtomicFile {
public:
    explicit AtomicFile(const std::filesystem::path& path)
        : final_path_(path), tmp_path_(path.string() + ".tmp") {
        if (path.has_parent_path())
            std::filesystem::create_directories(path.parent_path());
        out_.open(tmp_path_, std::ios::trunc);
        if (!out_)
            throw std::runtime_error("cannot open for writing: " + tmp_path_.string());
    }

    std::ofstream& stream() { return out_; }

    void commit() {
        out_.flush();
        if (!out_)
            throw std::runtime_error("write failed: " + tmp_path_.string());
        out_.close();
        std::filesystem::rename(tmp_path_, final_path_);
    }

private:
    std::filesystem::path final_path_;
    std::filesystem::path tmp_path_;
    std::ofstream out_;
};

double parse_double(std::string_view sv, const std::filesystem::path& path) {
    double value = 0.0;
    const auto res = std::from_chars(sv.data(), sv.data() + sv.size(), value);
    if (res.ec != std::errc{})
        throw std::runtime_error("bad number in " + path.string());
    return value;
}

}  // namespace

std::string format_full(double x) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_trajectory_csv(const std::filesystem::path& path, const Trajectory& traj) {
    AtomicFile file(path);
    auto& out = file.stream();
    out << "t,V,m,n,h\n";
    for (std::size_t j = 0; j < traj.grid.n_nodes(); ++j)
        out << format_full(traj.grid.time_at(j)) << ',' << format_full(traj.v[j]) << ','
            << format_full(traj.m[j]) << ',' << format_full(traj.n[j]) << ','
            << format_full(traj.h[j]) << '\n';
    file.commit();
}

void write_observation_csv(const std::filesystem::path& path, const TimeGrid& grid,
                           const std::vector<double>& clean, const Observation& obs,
                           std::uint64_t seed) {
    AtomicFile file(path);
    auto& out = file.stream();
    out << "# epsilon=" << format_full(obs.epsilon) << '\n';
    out << "# delta=" << format_full(obs.delta) << '\n';
    out << "# seed=" << seed << '\n';
    out << "# generator=" << kGeneratorName << '\n';
    out << "# t_end=" << format_full(grid.t_end) << '\n';
    out << "# dt=" << format_full(grid.dt) << '\n';
    out << "t,V,V_delta\n";
    for (std::size_t j = 0; j < grid.n_nodes(); ++j)
        out << format_full(grid.time_at(j)) << ',' << format_full(clean[j]) << ','
            << format_full(obs.v_delta[j]) << '\n';
    file.commit();
}

namespace {

json read_observation_header(std::istream& in) {
    json meta;
    std::string line;
    while (in.peek() == '#') {
        std::getline(in, line);
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            continue;
        std::string key = line.substr(2, eq - 2);
        meta[key] = line.substr(eq + 1);
    }
    return meta;
}

}  // namespace

Observation read_observation_csv(const std::filesystem::path& path, const TimeGrid& expected) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open observation file: " + path.string());
    const json meta = read_observation_header(in);
    if (!meta.contains("delta") || !meta.contains("epsilon"))
        throw std::runtime_error("observation file lacks delta/epsilon metadata: " +
                                 path.string());

    Observation obs;
    obs.grid = expected;
    obs.delta = parse_double(meta["delta"].get<std::string>(), path);
    obs.epsilon = parse_double(meta["epsilon"].get<std::string>(), path);

    std::string line;
    std::getline(in, line);  // column header
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto c1 = line.find(',');
        const auto c2 = line.find(',', c1 + 1);
        if (c1 == std::string::npos || c2 == std::string::npos)
            throw std::runtime_error("malformed observation row in " + path.string());
        obs.v_delta.push_back(parse_double(std::string_view(line).substr(c2 + 1), path));
    }
    if (obs.v_delta.size() != expected.n_nodes())
        throw std::runtime_error("observation sample count does not match the config grid: " +
                                 path.string());
    return obs;
}

std::uint64_t observation_seed(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw std::runtime_error("cannot open observation file: " + path.string());
    const json meta = read_observation_header(in);
    if (!meta.contains("seed"))
        return 0;
    return std::stoull(meta["seed"].get<std::string>());
}

std::filesystem::path write_run_artifact(const std::filesystem::path& dir,
                                         const std::string& stem, const ExperimentConfig& config,
                                         const RunResult& result, double epsilon,
                                         std::uint64_t seed) {
    std::filesystem::create_directories(dir);

    {
        AtomicFile trace(dir / (stem + "_trace.csv"));
        auto& out = trace.stream();
        out << "k,p1,p2,p3,residual,error\n";
        for (const auto& rec : result.records) {
            out << rec.k << ',' << format_full(rec.iterate.values[0]) << ','
                << format_full(rec.iterate.values[1]) << ','
                << format_full(rec.iterate.values[2]) << ','
                << format_full(rec.residual_norm) << ',';
            if (rec.percent_error)
                out << format_full(*rec.percent_error);
            out << '\n';
        }
        trace.commit();
    }

    json summary;
    summary["config"] = json::parse(config_to_json(config));
    summary["epsilon"] = epsilon;
    summary["seed"] = seed;
    summary["generator"] = kGeneratorName;
    summary["timestamp"] = timestamp_utc();
    summary["k_star"] = result.k_star;
    summary["stop_reason"] = to_string(result.stop_reason);
    summary["threshold"] = result.threshold;
    summary["used_residual_floor"] = result.used_residual_floor;
    summary["final"] = result.final_iterate.values;
    summary["kind"] = to_string(result.final_iterate.kind);
    if (!result.records.empty()) {
        summary["residual"] = result.records.back().residual_norm;
        if (result.records.back().percent_error)
            summary["error_percent"] = *result.records.back().percent_error;
    }

    const auto summary_path = dir / (stem + "_summary.json");
    AtomicFile file(summary_path);
    file.stream() << summary.dump(2) << '\n';
    file.commit();
    return summary_path;
}

void write_table_csv(const std::filesystem::path& path, const std::vector<TableRow>& rows) {
    AtomicFile file(path);
    auto& out = file.stream();
    out << "epsilon,k_star,p1,p2,p3,error_percent,residual,stop_reason,status,seed\n";
    for (const auto& row : rows) {
        out << format_full(row.epsilon) << ',' << row.k_star << ','
            << format_full(row.parameters[0]) << ',' << format_full(row.parameters[1]) << ','
            << format_full(row.parameters[2]) << ',' << format_full(row.error_percent) << ','
            << format_full(row.residual) << ',' << row.stop_reason << ',' << row.status << ','
            << row.seed << '\n';
    }
    file.commit();
}

}  // namespace hhinv
