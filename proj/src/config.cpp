#include "hhinv/config.hpp"

#include <fstream>

#include <json.hpp>

namespace hhinv {
namespace {

using nlohmann::json;

double get_num(const json& obj, const std::string& key, const char* where) {
    if (!obj.contains(key) || !obj[key].is_number())
        throw config_error(std::string(where) + "." + key + ": missing or not a number");
    return obj[key].get<double>();
}

Vec3 get_vec3(const json& obj, const std::string& key) {
    if (!obj.contains(key) || !obj[key].is_array() || obj[key].size() != 3)
        throw config_error(key + ": expected an array of 3 numbers");
    Vec3 v;
    for (int i = 0; i < 3; ++i) {
        if (!obj[key][i].is_number())
            throw config_error(key + ": expected an array of 3 numbers");
        v[i] = obj[key][i].get<double>();
    }
    return v;
}

}  // namespace

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw config_error("cannot open config file: " + path.string());
    json root;
    try {
        in >> root;
    } catch (const json::exception& ex) {
        throw config_error("config is not valid JSON: " + std::string(ex.what()));
    }

    ExperimentConfig cfg;
    try {
        if (!root.contains("model") || !root["model"].is_object())
            throw config_error("model: missing object");
        const json& m = root["model"];
        cfg.model.c_m = get_num(m, "c_m", "model");
        cfg.model.e_na = get_num(m, "e_na", "model");
        cfg.model.e_k = get_num(m, "e_k", "model");
        cfg.model.e_l = get_num(m, "e_l", "model");
        cfg.model.i_ext = get_num(m, "i_ext", "model");
        cfg.model.v0 = get_num(m, "v0", "model");
        cfg.model.m0 = get_num(m, "m0", "model");
        cfg.model.n0 = get_num(m, "n0", "model");
        cfg.model.h0 = get_num(m, "h0", "model");
        cfg.model.validate();

        cfg.true_conductances = Conductances::from_vec(get_vec3(root, "true_conductances"));
        cfg.true_conductances.validate();
        cfg.true_exponents = Exponents::from_vec(get_vec3(root, "true_exponents"));
        cfg.true_exponents.validate();

        if (!root.contains("unknown") || !root["unknown"].is_string())
            throw config_error("unknown: missing string");
        const std::string kind = root["unknown"].get<std::string>();
        if (kind == "conductances")
            cfg.unknown = ParameterKind::conductances;
        else if (kind == "exponents")
            cfg.unknown = ParameterKind::exponents;
        else
            throw config_error("unknown: must be \"conductances\" or \"exponents\"");

        cfg.initial_guess = get_vec3(root, "initial_guess");
        if (!finite3(cfg.initial_guess))
            throw config_error("initial_guess: non-finite entry");

        if (!root.contains("grid") || !root["grid"].is_object())
            throw config_error("grid: missing object");
        try {
            cfg.grid = TimeGrid(get_num(root["grid"], "t_end", "grid"),
                                get_num(root["grid"], "dt", "grid"));
        } catch (const std::invalid_argument& ex) {
            throw config_error(std::string("grid: ") + ex.what());
        }

        if (root.contains("tau"))
            cfg.tau = get_num(root, "tau", "");
        if (!(cfg.tau > 2.0))
            throw config_error("tau: must exceed 2");

        if (root.contains("epsilons")) {
            if (!root["epsilons"].is_array())
                throw config_error("epsilons: expected an array of numbers");
            for (const auto& v : root["epsilons"]) {
                if (!v.is_number() || !(v.get<double>() >= 0.0))
                    throw config_error("epsilons: entries must be numbers >= 0");
                cfg.epsilons.push_back(v.get<double>());
            }
        }

        if (root.contains("seed")) {
            if (!root["seed"].is_number_unsigned() && !root["seed"].is_number_integer())
                throw config_error("seed: expected an integer");
            cfg.seed = root["seed"].get<std::uint64_t>();
        }
        if (root.contains("max_iterations")) {
            if (!root["max_iterations"].is_number_unsigned() &&
                !root["max_iterations"].is_number_integer())
                throw config_error("max_iterations: expected an integer");
            const auto mi = root["max_iterations"].get<long long>();
            if (mi < 1)
                throw config_error("max_iterations: must be >= 1");
            cfg.max_iterations = static_cast<std::size_t>(mi);
        }
        if (root.contains("output_dir")) {
            if (!root["output_dir"].is_string())
                throw config_error("output_dir: expected a string");
            cfg.output_dir = root["output_dir"].get<std::string>();
        }
    } catch (const std::invalid_argument& ex) {
        throw config_error(ex.what());
    }
    return cfg;
}

std::string config_to_json(const ExperimentConfig& cfg) {
    json root;
    root["model"] = {{"c_m", cfg.model.c_m},   {"e_na", cfg.model.e_na},
                     {"e_k", cfg.model.e_k},   {"e_l", cfg.model.e_l},
                     {"i_ext", cfg.model.i_ext}, {"v0", cfg.model.v0},
                     {"m0", cfg.model.m0},     {"n0", cfg.model.n0},
                     {"h0", cfg.model.h0}};
    root["true_conductances"] = cfg.true_conductances.as_vec();
    root["true_exponents"] = cfg.true_exponents.as_vec();
    root["unknown"] = to_string(cfg.unknown);
    root["initial_guess"] = cfg.initial_guess;
    root["grid"] = {{"t_end", cfg.grid.t_end}, {"dt", cfg.grid.dt}};
    root["tau"] = cfg.tau;
    root["epsilons"] = cfg.epsilons;
    root["seed"] = cfg.seed;
    root["max_iterations"] = cfg.max_iterations;
    root["output_dir"] = cfg.output_dir;
    return root.dump(2);
}

}  // namespace hhinv
