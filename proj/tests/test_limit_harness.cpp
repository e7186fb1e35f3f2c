#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "relax/init.hpp"
#include "relax/limit_harness.hpp"
#include "relax/rng.hpp"

using namespace relax;

namespace {

constexpr double kPi = 3.14159265358979323846;

LadderConfig small_config() {
    LadderConfig cfg;
    cfg.grid = Grid(2, 32, 8.0 * kPi);
    cfg.base = ModelParams{0.5, 2.0, 1.0, 0.1};
    cfg.epsilons = {0.2, 0.1, 0.05};
    cfg.t_final = 2.0;
    cfg.dt_main = 0.02;
    cfg.amp_rho = 0.005;
    cfg.amp_v = 0.01;
    cfg.band_lo = 0.25;
    cfg.band_hi = 1.0;
    cfg.seed = 7;
    cfg.tail_doublings = 0;
    return cfg;
}

} // namespace

TEST_CASE("fit_slope recovers exact power laws") {
    std::vector<std::pair<double, double>> pts;
    for (double e : {0.2, 0.1, 0.05, 0.025}) pts.emplace_back(e, 3.0 * e);
    auto fit = fit_slope(pts);
    CHECK(fit.defined);
    CHECK(fit.n_used == 4);
    CHECK(fit.slope == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK(fit.residual_max < 1e-12);

    pts.clear();
    for (double e : {0.2, 0.1, 0.05, 0.025}) pts.emplace_back(e, 2.0 * e * e);
    CHECK(fit_slope(pts).slope == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("fit_slope with multiplicative noise stays near the true slope") {
    std::vector<std::pair<double, double>> pts;
    int i = 0;
    for (double e : {0.4, 0.2, 0.1, 0.05, 0.025, 0.0125})
        pts.emplace_back(e, e * std::exp(0.05 * keyed_symmetric(11, i++)));
    auto fit = fit_slope(pts);
    CHECK(fit.defined);
    CHECK(fit.slope > 0.9);
    CHECK(fit.slope < 1.1);
    CHECK(fit.residual_max < 0.1);
}

TEST_CASE("fit_slope degenerate ladders") {
    // nonpositive values are excluded with a warning
    auto fit = fit_slope({{0.2, 0.1}, {0.1, 0.0}, {0.05, 0.02}, {0.025, 0.01}});
    CHECK(fit.defined);
    CHECK(fit.n_used == 3);
    CHECK(fit.warnings.size() == 1);

    // fewer than three usable points: undefined
    auto bad = fit_slope({{0.2, 0.1}, {0.1, -0.5}});
    CHECK(!bad.defined);
    CHECK(!bad.warnings.empty());
    CHECK(!fit_slope({}).defined);
}

TEST_CASE("diffusive_rescale interpolation and velocity scaling") {
    Grid g(2, 32, 2.0 * kPi);
    CHECK_THROWS_AS((void)diffusive_rescale({}, 0.1, 0.0), std::invalid_argument);

    FlowState a = FlowState::equilibrium(g, Frame::Original);
    a.rho_pert = make_single_mode(g, 0.1);
    a.v[0] = make_single_mode(g, 0.4);
    FlowState b = FlowState::equilibrium(g, Frame::Original);
    b.time = 2.0;
    b.rho_pert = make_single_mode(g, 0.3);
    b.v[0] = make_single_mode(g, 0.8);
    std::vector<FlowState> traj{a, b};

    // eps = 1 at a node reproduces the state
    auto at0 = diffusive_rescale(traj, 1.0, 0.0);
    SpectralField d0 = at0.rho_pert - a.rho_pert;
    CHECK(d0.l2_norm() < 1e-14);
    SpectralField dv0 = at0.v[0] - a.v[0];
    CHECK(dv0.l2_norm() < 1e-14);

    // midpoint in time: arithmetic mean of coefficients, velocity / eps
    auto mid = diffusive_rescale(traj, 0.5, 0.5); // t = 1 = midpoint
    SpectralField expect_rho = make_single_mode(g, 0.2);
    SpectralField dm = mid.rho_pert - expect_rho;
    CHECK(dm.l2_norm() < 1e-14);
    SpectralField expect_v = make_single_mode(g, 0.6 / 0.5);
    SpectralField dvm = mid.v[0] - expect_v;
    CHECK(dvm.l2_norm() < 1e-13);
    CHECK(mid.time == doctest::Approx(0.5));
    CHECK(mid.frame == Frame::Rescaled);

    CHECK_THROWS_AS((void)diffusive_rescale(traj, 0.5, 1.5), std::out_of_range);
    CHECK_THROWS_AS((void)diffusive_rescale(traj, 1.0, -0.5), std::out_of_range);
}

TEST_CASE("frame consistency at small amplitude") {
    LadderConfig cfg = small_config();
    cfg.amp_rho = 1e-6;
    cfg.amp_v = 1e-6;
    cfg.t_final = 0.2;
    cfg.dt_main = 0.01;
    const double err = frame_consistency_error(cfg, 0.2);
    CHECK(err < 1e-6);
}

TEST_CASE("damped mode study mechanics on a small ladder") {
    LadderConfig cfg = small_config();
    auto rep = damped_mode_decay_study(cfg);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) {
        CHECK(row.completed);
        CHECK(row.error.empty());
        CHECK(row.value > 0.0);
        CHECK(row.horizon >= cfg.t_final - 1e-9);
        CHECK(row.tail_fraction >= 0.0);
    }
    // integral shrinks with eps on this ladder
    CHECK(rep.rows[0].value > rep.rows[2].value);
    CHECK(rep.complete);
    CHECK(rep.fit.defined);
    CHECK(rep.summary.find("slope=") == 0);
    CHECK(rep.summary.find("pass=") != std::string::npos);
}

TEST_CASE("ep-ks study mechanics on a small ladder") {
    LadderConfig cfg = small_config();
    auto rep = ep_ks_convergence_study(cfg);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) {
        CHECK(row.completed);
        CHECK(row.value > 0.0);
        CHECK(row.l1_high >= 0.0);
        CHECK(row.l1_low > 0.0);
    }
    CHECK(rep.rows[0].value > rep.rows[2].value);
    CHECK(rep.complete);
    CHECK(rep.fit.defined);
}

TEST_CASE("invalid rung is recorded, not thrown") {
    LadderConfig cfg = small_config();
    cfg.epsilons = {0.7, 0.6, 0.55}; // all above the eps cap
    auto rep = damped_mode_decay_study(cfg);
    REQUIRE(rep.rows.size() == 3);
    for (const auto& row : rep.rows) {
        CHECK(!row.completed);
        CHECK(!row.error.empty());
    }
    CHECK(!rep.complete);
    CHECK(!rep.fit.defined);
    CHECK(!rep.pass);
    CHECK(rep.summary == "slope=undefined residual=undefined pass=false");
}

TEST_CASE("tail rule doubles the horizon when the norm has not settled") {
    LadderConfig cfg = small_config();
    cfg.epsilons = {0.2};
    cfg.t_final = 0.05; // far too short for the damped mode to settle
    cfg.tail_doublings = 2;
    auto rep = damped_mode_decay_study(cfg);
    REQUIRE(rep.rows.size() == 1);
    CHECK(rep.rows[0].completed);
    CHECK(rep.rows[0].horizon >= 0.1 - 1e-9); // at least one doubling used
}
