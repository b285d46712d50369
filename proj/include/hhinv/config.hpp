#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "hhinv/landweber.hpp"
#include "hhinv/types.hpp"

namespace hhinv {

/// Raised on malformed or inconsistent experiment configuration; the message
/// names the offending field.
class config_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// One experiment: model constants, the true parameter triples used to
/// synthesize data, which triple is treated as unknown, and the run knobs.
/// All quantities carry the model's units (mV, ms, mS/cm^2, uA/cm^2).
struct ExperimentConfig {
    ModelConstants model;
    Conductances true_conductances;
    Exponents true_exponents;
    ParameterKind unknown = ParameterKind::conductances;
    Vec3 initial_guess{0.0, 0.0, 0.0};
    TimeGrid grid;
    double tau = 2.01;
    std::vector<double> epsilons;
    std::uint64_t seed = 0;
    std::size_t max_iterations = 500000;
    std::string output_dir = "out";

    ParameterVector truth() const {
        ParameterVector t;
        t.kind = unknown;
        t.values = unknown == ParameterKind::conductances ? true_conductances.as_vec()
                                                          : true_exponents.as_vec();
        return t;
    }

    ParameterVector guess() const {
        ParameterVector g;
        g.kind = unknown;
        g.values = initial_guess;
        return g;
    }
};

/// Parses and validates a JSON config file. See docs/config-schema.md.
ExperimentConfig load_config(const std::filesystem::path& path);

/// Serializes a config back to JSON text (embedded in artifacts).
std::string config_to_json(const ExperimentConfig& config);

}  // namespace hhinv
