#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hhinv/landweber.hpp"
#include "hhinv/model.hpp"
#include "hhinv/noise.hpp"

using namespace hhinv;

namespace {

const Conductances kTrueG{120.0, 36.0, 0.3};
const Exponents kTrueE{3.0, 1.0, 4.0};

AdjointTrajectory zero_adjoint(const TimeGrid& grid) {
    AdjointTrajectory adj;
    adj.grid = grid;
    adj.u.assign(grid.n_nodes(), 0.0);
    adj.p.assign(grid.n_nodes(), 0.0);
    adj.q.assign(grid.n_nodes(), 0.0);
    adj.r.assign(grid.n_nodes(), 0.0);
    return adj;
}

}  // namespace

TEST_CASE("gradient of zero adjoint vanishes") {
    const ModelConstants consts;
    const TimeGrid grid(5.0, 0.02);
    const Trajectory fwd = solve_forward(consts, kTrueG, kTrueE, grid);
    const AdjointTrajectory adj = zero_adjoint(grid);
    const Vec3 gc = gradient_conductances(fwd, adj, consts, kTrueE);
    CHECK(gc == Vec3{0.0, 0.0, 0.0});
    const Vec3 ge = gradient_exponents(fwd, adj, consts, kTrueG, kTrueE);
    CHECK(ge == Vec3{0.0, 0.0, 0.0});
}

TEST_CASE("sodium gradient vanishes with zero driving force") {
    const ModelConstants consts;
    const TimeGrid grid(1.0, 0.02);
    Trajectory fwd;
    fwd.grid = grid;
    fwd.v.assign(grid.n_nodes(), consts.e_na);
    fwd.m.assign(grid.n_nodes(), 0.5);
    fwd.n.assign(grid.n_nodes(), 0.4);
    fwd.h.assign(grid.n_nodes(), 0.4);
    AdjointTrajectory adj = zero_adjoint(grid);
    adj.u.assign(grid.n_nodes(), 1.7);
    const Vec3 gc = gradient_conductances(fwd, adj, consts, kTrueE);
    CHECK(gc[0] == 0.0);
    CHECK(gc[1] != 0.0);
}

TEST_CASE("exponent gradient vanishes where the gate is one") {
    const ModelConstants consts;
    const TimeGrid grid(1.0, 0.02);
    Trajectory fwd;
    fwd.grid = grid;
    fwd.v.assign(grid.n_nodes(), 10.0);
    fwd.m.assign(grid.n_nodes(), 1.0);  // ln(1) = 0
    fwd.n.assign(grid.n_nodes(), 0.4);
    fwd.h.assign(grid.n_nodes(), 0.4);
    AdjointTrajectory adj = zero_adjoint(grid);
    adj.u.assign(grid.n_nodes(), 1.0);
    const Vec3 ge = gradient_exponents(fwd, adj, consts, kTrueG, kTrueE);
    CHECK(ge[0] == 0.0);
    CHECK(ge[1] != 0.0);
    CHECK(ge[2] != 0.0);
}

TEST_CASE("gradient rejects mismatched grids") {
    const ModelConstants consts;
    const Trajectory fwd = solve_forward(consts, kTrueG, kTrueE, TimeGrid(5.0, 0.02));
    const AdjointTrajectory adj = zero_adjoint(TimeGrid(5.0, 0.01));
    CHECK_THROWS_AS(gradient_conductances(fwd, adj, consts, kTrueE), std::invalid_argument);
}

TEST_CASE("step size") {
    CHECK(step_size(0.0, {1.0, 2.0, 3.0}) == 0.0);
    CHECK(step_size(2.0, {2.0, 0.0, 0.0}) == doctest::Approx(1.0));
    CHECK_THROWS_AS(step_size(1.0, {0.0, 0.0, 0.0}), zero_gradient_error);
    CHECK_THROWS_AS(step_size(-1.0, {1.0, 0.0, 0.0}), std::invalid_argument);
    // stays finite for extreme gradient magnitudes
    const double w = step_size(1e80, {1e170, 1e170, 0.0});
    CHECK(std::isfinite(w));
    CHECK(w > 0.0);
}

TEST_CASE("landweber step") {
    ParameterVector x;
    x.kind = ParameterKind::conductances;
    x.values = {0.0, 0.0, 0.0};

    SUBCASE("zero step leaves the iterate unchanged") {
        const ParameterVector y = landweber_step(x, 0.0, {5.0, 6.0, 7.0});
        CHECK(y.values == x.values);
        CHECK(y.kind == x.kind);
    }
    SUBCASE("unit step adds the gradient") {
        const ParameterVector y = landweber_step(x, 1.0, {1.0, 2.0, 3.0});
        CHECK(y.values == Vec3{1.0, 2.0, 3.0});
    }
    SUBCASE("non-finite results are rejected") {
        CHECK_THROWS_AS(landweber_step(x, 1e308, {1e308, 0.0, 0.0}), divergence_error);
    }
}

TEST_CASE("huge noise stops at the first iterate") {
    // tau*delta exceeds the first residual, so the loop guard fails at k=1.
    const ModelConstants consts;
    const TimeGrid grid(10.0, 0.02);
    const Trajectory clean = solve_forward(consts, kTrueG, kTrueE, grid);
    const Observation obs = add_noise(clean.v, grid, {1.25, 1952});

    ParameterVector truth;
    truth.kind = ParameterKind::conductances;
    truth.values = kTrueG.as_vec();

    const RunResult res = run_inversion(consts, {0.0, 0.0, 0.0}, kTrueE, grid, obs,
                                        {2.01, obs.delta, 1000}, ParameterKind::conductances,
                                        truth);
    CHECK(res.k_star == 1);
    CHECK(res.stop_reason == StopReason::discrepancy);
    CHECK(res.final_iterate.values == Vec3{0.0, 0.0, 0.0});
    REQUIRE(res.records.size() == 1);
    CHECK(*res.records[0].percent_error == doctest::Approx(100.0));
    // first residual sits near the norm of the observation shifted by v0
    CHECK(res.records[0].residual_norm > 100.0);
    CHECK(res.records[0].residual_norm < 220.0);
    CHECK(res.records[0].residual_norm <= res.threshold);
}

TEST_CASE("near-truth inversion stops by the discrepancy principle") {
    const ModelConstants consts;
    const TimeGrid grid(10.0, 0.02);
    const Trajectory clean = solve_forward(consts, kTrueG, kTrueE, grid);
    const Observation obs = add_noise(clean.v, grid, {0.05, 11});

    const RunResult res = run_inversion(consts, {110.0, 33.0, 0.28}, kTrueE, grid, obs,
                                        {2.01, obs.delta, 5000}, ParameterKind::conductances);
    REQUIRE(res.stop_reason == StopReason::discrepancy);

    // minimality: every earlier residual exceeds the threshold
    for (const auto& rec : res.records) {
        if (rec.k < res.k_star)
            CHECK(rec.residual_norm > res.threshold);
        else
            CHECK(rec.residual_norm <= res.threshold);
    }
    CHECK(res.records.back().k == res.k_star);
}

TEST_CASE("records carry strictly increasing k from 1") {
    const ModelConstants consts;
    const TimeGrid grid(5.0, 0.02);
    const Trajectory clean = solve_forward(consts, kTrueG, kTrueE, grid);
    const Observation obs = add_noise(clean.v, grid, {0.05, 12});
    const RunResult res = run_inversion(consts, {115.0, 34.0, 0.29}, kTrueE, grid, obs,
                                        {2.01, obs.delta, 50}, ParameterKind::conductances);
    REQUIRE(!res.records.empty());
    for (std::size_t i = 0; i < res.records.size(); ++i)
        CHECK(res.records[i].k == i + 1);
}

TEST_CASE("max-iterations cap is honored and reported") {
    const ModelConstants consts;
    const TimeGrid grid(5.0, 0.02);
    const Trajectory clean = solve_forward(consts, kTrueG, kTrueE, grid);
    // noise-free data cannot reach the floor threshold in 3 iterations
    Observation obs;
    obs.grid = grid;
    obs.v_delta = clean.v;
    obs.delta = 0.0;
    obs.epsilon = 0.0;
    const RunResult res = run_inversion(consts, {100.0, 30.0, 0.2}, kTrueE, grid, obs,
                                        {2.01, 0.0, 3}, ParameterKind::conductances);
    CHECK(res.stop_reason == StopReason::max_iterations);
    CHECK(res.k_star == 3);
    CHECK(res.records.size() == 3);
    CHECK(res.used_residual_floor);
    CHECK(res.threshold == kResidualFloor);
}

TEST_CASE("inversion is deterministic") {
    const ModelConstants consts;
    const TimeGrid grid(5.0, 0.02);
    const Trajectory clean = solve_forward(consts, kTrueG, kTrueE, grid);
    const Observation obs = add_noise(clean.v, grid, {0.05, 13});
    const StoppingRule rule{2.01, obs.delta, 40};

    const RunResult a = run_inversion(consts, {110.0, 33.0, 0.28}, kTrueE, grid, obs, rule,
                                      ParameterKind::conductances);
    const RunResult b = run_inversion(consts, {110.0, 33.0, 0.28}, kTrueE, grid, obs, rule,
                                      ParameterKind::conductances);
    CHECK(a.k_star == b.k_star);
    CHECK(a.final_iterate.values == b.final_iterate.values);
    REQUIRE(a.records.size() == b.records.size());
    for (std::size_t i = 0; i < a.records.size(); ++i) {
        CHECK(a.records[i].residual_norm == b.records[i].residual_norm);
        CHECK(a.records[i].iterate.values == b.records[i].iterate.values);
    }
}

TEST_CASE("exponent inversion near the truth recovers it") {
    const ModelConstants consts;
    const TimeGrid grid(5.0, 0.01);
    const Trajectory clean = solve_forward(consts, kTrueG, kTrueE, grid);
    const Observation obs = add_noise(clean.v, grid, {0.01, 14});

    ParameterVector truth;
    truth.kind = ParameterKind::exponents;
    truth.values = kTrueE.as_vec();

    const RunResult res = run_inversion(consts, kTrueG, {2.9, 1.05, 3.9}, grid, obs,
                                        {2.01, obs.delta, 20000}, ParameterKind::exponents,
                                        truth);
    REQUIRE(res.stop_reason == StopReason::discrepancy);
    CHECK(*res.records.back().percent_error < 5.0);
}

TEST_CASE("stopping rule invariants") {
    CHECK_THROWS_AS((StoppingRule{2.0, 1.0, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((StoppingRule{2.01, -1.0, 10}.validate()), std::invalid_argument);
    CHECK_THROWS_AS((StoppingRule{2.01, 1.0, 0}.validate()), std::invalid_argument);
    CHECK_NOTHROW((StoppingRule{2.01, 0.0, 1}.validate()));
}

TEST_CASE("truth kind must match the unknown kind") {
    const ModelConstants consts;
    const TimeGrid grid(1.0, 0.02);
    const Trajectory clean = solve_forward(consts, kTrueG, kTrueE, grid);
    Observation obs;
    obs.grid = grid;
    obs.v_delta = clean.v;
    ParameterVector truth;
    truth.kind = ParameterKind::exponents;
    truth.values = kTrueE.as_vec();
    CHECK_THROWS_AS(run_inversion(consts, kTrueG, kTrueE, grid, obs, {2.01, 0.0, 5},
                                  ParameterKind::conductances, truth),
                    std::invalid_argument);
}
