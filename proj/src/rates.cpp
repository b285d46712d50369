#include "hhinv/rates.hpp"

#include <cmath>

namespace hhinv {
namespace {

// phi(x) = x / (e^x - 1), continued through x = 0 by its Taylor series.
// The x > 35 branch avoids overflow of e^x; e^x - 1 == e^x there to double
// precision anyway.
double phi(double x) {
    if (std::abs(x) < 1e-4)
        return 1.0 - x / 2.0 + x * x / 12.0;
    if (x > 35.0)
        return x * std::exp(-x);
    return x / std::expm1(x);
}

// phi'(x) with the same branch structure.
double phi_prime(double x) {
    if (std::abs(x) < 1e-4)
        return -0.5 + x / 6.0 - x * x * x / 180.0;
    if (x > 35.0)
        return (1.0 - x) * std::exp(-x);
    const double em = std::expm1(x);
    return (em - x * std::exp(x)) / (em * em);
}

void check_finite(double v) {
    if (!std::isfinite(v))
        throw std::domain_error("rate function: non-finite membrane potential");
}

}  // namespace

double rate_alpha(Gate gate, double v) {
    check_finite(v);
    switch (gate) {
        case Gate::m: return phi((25.0 - v) / 10.0);
        case Gate::n: return phi((10.0 - v) / 10.0) / 10.0;
        case Gate::h: return 0.07 * std::exp(-v / 20.0);
    }
    throw std::domain_error("rate_alpha: bad gate");
}

double rate_beta(Gate gate, double v) {
    check_finite(v);
    switch (gate) {
        case Gate::m: return 4.0 * std::exp(-v / 18.0);
        case Gate::n: return 0.125 * std::exp(-v / 80.0);
        case Gate::h: {
            const double y = (30.0 - v) / 10.0;
            if (y > 35.0)
                return std::exp(-y);
            return 1.0 / (std::exp(y) + 1.0);
        }
    }
    throw std::domain_error("rate_beta: bad gate");
}

double rate_alpha_prime(Gate gate, double v) {
    check_finite(v);
    switch (gate) {
        case Gate::m: return -phi_prime((25.0 - v) / 10.0) / 10.0;
        case Gate::n: return -phi_prime((10.0 - v) / 10.0) / 100.0;
        case Gate::h: return -0.07 / 20.0 * std::exp(-v / 20.0);
    }
    throw std::domain_error("rate_alpha_prime: bad gate");
}

double rate_beta_prime(Gate gate, double v) {
    check_finite(v);
    switch (gate) {
        case Gate::m: return -4.0 / 18.0 * std::exp(-v / 18.0);
        case Gate::n: return -0.125 / 80.0 * std::exp(-v / 80.0);
        case Gate::h: {
            const double y = (30.0 - v) / 10.0;
            if (y > 35.0)
                return 0.1 * std::exp(-y);
            if (y < -35.0)
                return 0.1 * std::exp(y);
            const double ey = std::exp(y);
            return 0.1 * ey / ((ey + 1.0) * (ey + 1.0));
        }
    }
    throw std::domain_error("rate_beta_prime: bad gate");
}

double gating_steady_state(Gate gate, double v) {
    const double a = rate_alpha(gate, v);
    const double b = rate_beta(gate, v);
    const double s = a + b;
    if (s == 0.0)
        throw std::domain_error("gating_steady_state: alpha + beta vanished");
    return a / s;
}

}  // namespace hhinv
