#pragma once

#include <cstdint>
#include <string_view>

#include "hhinv/types.hpp"

namespace hhinv {

/// Name of the pinned noise generator, recorded in artifacts: mt19937_64
/// outputs mapped to [0,1) by the 53-bit construction (x >> 11) * 2^-53.
inline constexpr std::string_view kGeneratorName = "mt19937_64-canonical53";

/// Relative multiplicative noise amplitude and the seed of its generator.
struct NoiseSpec {
    double epsilon = 0.0;
    std::uint64_t seed = 0;

    void validate() const {
        if (!(epsilon >= 0.0) || !std::isfinite(epsilon))
            throw std::invalid_argument("NoiseSpec: epsilon must be >= 0");
    }
};

/// Noisy voltage samples with their noise level delta (a bound on the
/// discrete L2 distance to the clean signal).
struct Observation {
    TimeGrid grid;
    std::vector<double> v_delta;
    double delta = 0.0;
    double epsilon = 0.0;
};

/// Discrete L2 norm: square root of the trapezoid-rule integral of the
/// squared samples over the grid.
double l2_norm(const std::vector<double>& signal, const TimeGrid& grid);

/// Per-sample multiplicative uniform noise v * (1 + r), r ~ U[-eps, eps],
/// sampled independently at every node. delta = epsilon * l2_norm(clean).
/// Deterministic for a fixed seed.
Observation add_noise(const std::vector<double>& clean, const TimeGrid& grid,
                      const NoiseSpec& spec);

/// L2 norm of observation minus simulated samples; grids must agree.
double residual_norm(const Observation& observation, const std::vector<double>& simulated);

/// 100 * |truth - iterate|_2 / |truth|_2. Kinds must match and the truth
/// must be nonzero.
double percent_error(const ParameterVector& truth, const ParameterVector& iterate);

/// Deterministic per-index seed stream derived from a base seed (splitmix64).
std::uint64_t derive_seed(std::uint64_t base, std::uint64_t index);

}  // namespace hhinv
