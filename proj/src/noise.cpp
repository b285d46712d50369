#include "hhinv/noise.hpp"

#include <cmath>
#include <random>

namespace hhinv {

double l2_norm(const std::vector<double>& signal, const TimeGrid& grid) {
    if (signal.size() != grid.n_nodes())
        throw std::invalid_argument("l2_norm: signal length does not match grid");
    const std::size_t n = grid.n_steps;
    double acc = 0.5 * (signal[0] * signal[0] + signal[n] * signal[n]);
    for (std::size_t j = 1; j < n; ++j)
        acc += signal[j] * signal[j];
    return std::sqrt(acc * grid.dt);
}

Observation add_noise(const std::vector<double>& clean, const TimeGrid& grid,
                      const NoiseSpec& spec) {
    spec.validate();
    if (clean.size() != grid.n_nodes())
        throw std::invalid_argument("add_noise: signal length does not match grid");

    Observation obs;
    obs.grid = grid;
    obs.epsilon = spec.epsilon;
    obs.delta = spec.epsilon * l2_norm(clean, grid);
    obs.v_delta.resize(clean.size());

    // Fixed 53-bit mapping keeps draws identical across standard library
    // implementations; std::uniform_real_distribution would not.
    std::mt19937_64 gen(spec.seed);
    for (std::size_t j = 0; j < clean.size(); ++j) {
        const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
        const double r = spec.epsilon * (2.0 * u - 1.0);
        obs.v_delta[j] = clean[j] + clean[j] * r;
    }
    return obs;
}

double residual_norm(const Observation& observation, const std::vector<double>& simulated) {
    if (simulated.size() != observation.v_delta.size() ||
        simulated.size() != observation.grid.n_nodes())
        throw std::invalid_argument("residual_norm: grid mismatch");
    std::vector<double> diff(simulated.size());
    for (std::size_t j = 0; j < simulated.size(); ++j)
        diff[j] = observation.v_delta[j] - simulated[j];
    return l2_norm(diff, observation.grid);
}

double percent_error(const ParameterVector& truth, const ParameterVector& iterate) {
    if (truth.kind != iterate.kind)
        throw std::invalid_argument("percent_error: parameter kinds differ");
    const double denom = norm3(truth.values);
    if (denom == 0.0)
        throw std::domain_error("percent_error: zero truth vector");
    const Vec3 d{truth.values[0] - iterate.values[0], truth.values[1] - iterate.values[1],
                 truth.values[2] - iterate.values[2]};
    return 100.0 * norm3(d) / denom;
}

std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index) {
    // splitmix64 finalizer over base + index * golden gamma
    std::uint64_t z = base + (index + 1) * 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace hhinv
