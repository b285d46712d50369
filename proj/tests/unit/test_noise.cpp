#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hhinv/model.hpp"
#include "hhinv/noise.hpp"

using namespace hhinv;

TEST_CASE("l2 norm of simple signals") {
    const TimeGrid g10(10.0, 0.02);
    std::vector<double> zeros(g10.n_nodes(), 0.0);
    CHECK(l2_norm(zeros, g10) == 0.0);

    std::vector<double> ones(g10.n_nodes(), 1.0);
    CHECK(l2_norm(ones, g10) == doctest::Approx(3.1622776601683795).epsilon(1e-12));

    const TimeGrid g5(5.0, 0.01);
    std::vector<double> twos(g5.n_nodes(), 2.0);
    CHECK(l2_norm(twos, g5) == doctest::Approx(4.4721359549995794).epsilon(1e-12));

    CHECK_THROWS_AS(l2_norm(zeros, TimeGrid(5.0, 0.02)), std::invalid_argument);
}

TEST_CASE("l2 norm scales homogeneously") {
    const TimeGrid grid(2.0, 0.01);
    std::vector<double> s(grid.n_nodes());
    for (std::size_t j = 0; j < s.size(); ++j)
        s[j] = std::sin(0.1 * static_cast<double>(j)) + 0.3;
    const double base = l2_norm(s, grid);
    for (double lambda : {-2.5, 0.5, 17.0}) {
        std::vector<double> scaled = s;
        for (double& v : scaled)
            v *= lambda;
        CHECK(l2_norm(scaled, grid) ==
              doctest::Approx(std::abs(lambda) * base).epsilon(1e-12));
    }
}

TEST_CASE("zero noise reproduces the clean signal") {
    const TimeGrid grid(5.0, 0.02);
    const Trajectory clean = solve_forward({}, {120.0, 36.0, 0.3}, {3.0, 1.0, 4.0}, grid);
    const Observation obs = add_noise(clean.v, grid, {0.0, 123});
    CHECK(obs.v_delta == clean.v);
    CHECK(obs.delta == 0.0);
}

TEST_CASE("noise is seed-deterministic") {
    const TimeGrid grid(5.0, 0.02);
    const Trajectory clean = solve_forward({}, {120.0, 36.0, 0.3}, {3.0, 1.0, 4.0}, grid);
    const Observation a = add_noise(clean.v, grid, {0.05, 42});
    const Observation b = add_noise(clean.v, grid, {0.05, 42});
    CHECK(a.v_delta == b.v_delta);
    const Observation c = add_noise(clean.v, grid, {0.05, 43});
    CHECK(a.v_delta != c.v_delta);
}

TEST_CASE("noise level bounds the perturbation") {
    const TimeGrid grid(10.0, 0.02);
    const Trajectory clean = solve_forward({}, {120.0, 36.0, 0.3}, {3.0, 1.0, 4.0}, grid);
    const double clean_norm = l2_norm(clean.v, grid);

    for (double eps : {0.002, 0.01, 0.05, 0.25}) {
        for (std::uint64_t seed = 0; seed < 50; ++seed) {
            const Observation obs = add_noise(clean.v, grid, {eps, seed});
            CHECK(obs.delta == eps * clean_norm);
            std::vector<double> diff(clean.v.size());
            for (std::size_t j = 0; j < diff.size(); ++j)
                diff[j] = clean.v[j] - obs.v_delta[j];
            CHECK(l2_norm(diff, grid) <= obs.delta);
        }
    }
}

TEST_CASE("residual norm") {
    const TimeGrid grid(5.0, 0.02);
    const Trajectory clean = solve_forward({}, {120.0, 36.0, 0.3}, {3.0, 1.0, 4.0}, grid);
    const Observation obs = add_noise(clean.v, grid, {0.05, 5});
    CHECK(residual_norm(obs, obs.v_delta) == 0.0);

    std::vector<double> wrong_size(grid.n_nodes() + 1, 0.0);
    CHECK_THROWS_AS(residual_norm(obs, wrong_size), std::invalid_argument);
}

TEST_CASE("percent error") {
    ParameterVector truth{ParameterKind::exponents, {3.0, 1.0, 4.0}};
    ParameterVector same = truth;
    CHECK(percent_error(truth, same) == 0.0);

    ParameterVector zero{ParameterKind::exponents, {0.0, 0.0, 0.0}};
    CHECK(percent_error(truth, zero) == doctest::Approx(100.0).epsilon(1e-12));

    ParameterVector table_row{ParameterKind::exponents, {3.008, 0.954, 3.674}};
    CHECK(percent_error(truth, table_row) ==
          doctest::Approx(6.4586257171201796).epsilon(1e-12));

    ParameterVector wrong_kind{ParameterKind::conductances, {3.0, 1.0, 4.0}};
    CHECK_THROWS_AS(percent_error(truth, wrong_kind), std::invalid_argument);
    CHECK_THROWS_AS(percent_error(zero, truth), std::domain_error);
}

TEST_CASE("derive_seed spreads indices") {
    const std::uint64_t base = 1952;
    CHECK(derive_seed(base, 0) != derive_seed(base, 1));
    CHECK(derive_seed(base, 0) != derive_seed(base + 1, 0));
    CHECK(derive_seed(base, 3) == derive_seed(base, 3));
}
