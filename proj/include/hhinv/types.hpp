#pragma once

#include <array>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace hhinv {

using Vec3 = std::array<double, 3>;

inline double norm3(const Vec3& v) {
    return std::hypot(v[0], v[1], v[2]);
}

inline bool finite3(const Vec3& v) {
    return std::isfinite(v[0]) && std::isfinite(v[1]) && std::isfinite(v[2]);
}

/// Thrown when a forward or backward sweep produces a non-finite state.
/// `step` is the first bad node index; `iteration` is filled in by the
/// inversion driver (0 when the solve was called directly).
class divergence_error : public std::runtime_error {
public:
    divergence_error(std::size_t step_, std::string what_)
        : std::runtime_error(std::move(what_)), step(step_) {}
    std::size_t step = 0;
    std::size_t iteration = 0;
};

/// Thrown by step_size when the gradient vanishes while the residual does not.
class zero_gradient_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Fixed physical data of the membrane model.
/// Units: c_m uF/cm^2, potentials mV, i_ext uA/cm^2, gates dimensionless.
struct ModelConstants {
    double c_m = 1.0;
    double e_na = 115.0;
    double e_k = -12.0;
    double e_l = 10.598;
    double i_ext = 0.0;
    double v0 = -25.0;
    double m0 = 0.5;
    double n0 = 0.4;
    double h0 = 0.4;

    void validate() const {
        if (!(c_m > 0.0) || !std::isfinite(c_m))
            throw std::invalid_argument("ModelConstants: c_m must be positive");
        for (double g : {m0, n0, h0})
            if (!(g >= 0.0 && g <= 1.0))
                throw std::invalid_argument("ModelConstants: initial gates must lie in [0,1]");
        for (double x : {e_na, e_k, e_l, i_ext, v0})
            if (!std::isfinite(x))
                throw std::invalid_argument("ModelConstants: non-finite entry");
    }
};

/// Maximal specific conductances (mS/cm^2). Iterates are unconstrained, so
/// negative values are representable; only finiteness is required.
struct Conductances {
    double g_na = 0.0;
    double g_k = 0.0;
    double g_l = 0.0;

    Vec3 as_vec() const { return {g_na, g_k, g_l}; }
    static Conductances from_vec(const Vec3& v) { return {v[0], v[1], v[2]}; }

    void validate() const {
        if (!finite3(as_vec()))
            throw std::invalid_argument("Conductances: non-finite entry");
    }
};

/// Real-valued gating exponents; unconstrained during iteration.
struct Exponents {
    double a = 3.0;
    double b = 1.0;
    double c = 4.0;

    Vec3 as_vec() const { return {a, b, c}; }
    static Exponents from_vec(const Vec3& v) { return {v[0], v[1], v[2]}; }

    void validate() const {
        if (!finite3(as_vec()))
            throw std::invalid_argument("Exponents: non-finite entry");
    }
};

/// Uniform time grid on [0, t_end] with n_steps intervals of width dt (ms).
struct TimeGrid {
    double t_end = 0.0;
    double dt = 0.0;
    std::size_t n_steps = 0;

    TimeGrid() = default;

    TimeGrid(double t_end_, double dt_) : t_end(t_end_), dt(dt_) {
        if (!(dt > 0.0) || !std::isfinite(dt) || !(t_end > 0.0) || !std::isfinite(t_end))
            throw std::invalid_argument("TimeGrid: need dt > 0 and t_end > 0");
        n_steps = static_cast<std::size_t>(std::llround(t_end / dt));
        if (n_steps < 1 || std::abs(static_cast<double>(n_steps) * dt - t_end) > 1e-12 * t_end)
            throw std::invalid_argument("TimeGrid: t_end must be an integer multiple of dt");
    }

    std::size_t n_nodes() const { return n_steps + 1; }
    double time_at(std::size_t j) const { return static_cast<double>(j) * dt; }

    bool operator==(const TimeGrid& o) const {
        return n_steps == o.n_steps && dt == o.dt;
    }
};

/// Forward solution sampled at every grid node; entry 0 holds the initial data.
struct Trajectory {
    TimeGrid grid;
    std::vector<double> v, m, n, h;
};

enum class ParameterKind { conductances, exponents };

const char* to_string(ParameterKind kind);

/// The unknown triple of one inverse problem, tagged by kind.
struct ParameterVector {
    ParameterKind kind = ParameterKind::conductances;
    Vec3 values{0.0, 0.0, 0.0};
};

}  // namespace hhinv
