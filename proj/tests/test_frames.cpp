#include <doctest.h>

#include <cmath>

#include "piston/errors.hpp"
#include "piston/exact_solver.hpp"
#include "piston/frames.hpp"

using namespace piston;

TEST_CASE("galilean shift") {
    const PhysicalScenario phys{1.0, -1.0, 1.0, 1.0};
    const FramePoint p = galilean_to_piston_frame(phys, {1.0, 0.0}, 2.0, 0.0);
    CHECK(p.t == 2.0);
    CHECK(p.x == 2.0);
    CHECK(p.state.u == 1.0);

    // The piston path lands on x' = 0 with the gas moving at -v0.
    const PhysicalScenario recede{1.0, 0.7, 1.0, 1.0};
    const FramePoint q = galilean_to_piston_frame(recede, {1.0, 0.0}, 3.0, 0.7 * 3.0);
    CHECK(q.x == 0.0);
    CHECK(q.state.u == -0.7);

    const FramePoint back = piston_to_lab_frame(recede, q.state, q.t, q.x);
    CHECK(back.x == doctest::Approx(2.1).epsilon(1e-15));
    CHECK(back.state.u == 0.0);
}

TEST_CASE("normalize") {
    for (const double gamma : {0.3, 1.0}) {
        for (const double m : {0.5, 2.0}) {
            const PhysicalScenario phys{1.0, -1.0, 1.0 / (gamma * m * m), gamma};
            const PistonScenario sc = normalize(phys);
            CHECK(sc.mach == doctest::Approx(m).epsilon(1e-14));
            CHECK(sc.direction == Direction::Advance);
        }
    }
    const PistonScenario a = normalize({1.0, -1.0, 1.0, 1.0});
    CHECK(a.mach == 1.0);
    CHECK(a.direction == Direction::Advance);
    const PistonScenario b = normalize({4.0, 2.0, 1.0, 1.0});
    CHECK(b.mach == doctest::Approx(8.0).epsilon(1e-15));
    CHECK(b.direction == Direction::Recede);

    CHECK_THROWS_AS(normalize({1.0, 0.0, 1.0, 1.0}), DegenerateScenario);
    CHECK_THROWS(normalize({0.0, 1.0, 1.0, 1.0}));
    CHECK_THROWS(normalize({1.0, 1.0, -1.0, 1.0}));
}

TEST_CASE("state scaling round trip") {
    const PhysicalScenario phys{2.0, -3.0, 1.0, 0.5};
    const State s = denormalize_state(phys, {1.5, -1.0});
    CHECK(s.rho == 3.0);
    CHECK(s.u == -3.0);
    const PhysicalScenario unit{1.0, 1.0, 5.0, 0.5};
    CHECK(denormalize_state(unit, {0.3, 0.9}) == State{0.3, 0.9});

    for (const double rho0 : {0.1, 1.0, 7.0}) {
        for (const double v0 : {-5.0, 0.3}) {
            const PhysicalScenario p{rho0, v0, 2.0, 0.8};
            const State n{0.37, -0.91};
            const State r = normalize_state(p, denormalize_state(p, n));
            CHECK(std::abs(r.rho - n.rho) < 1e-14);
            CHECK(std::abs(r.u - n.u) < 1e-14);
        }
    }
}

TEST_CASE("mach number is invariant under admissible rescalings") {
    const double gamma = 0.6;
    const PhysicalScenario base{1.3, -0.8, 0.9, gamma};
    const double m = normalize(base).mach;
    for (const double k : {0.01, 0.5, 3.0, 100.0}) {
        PhysicalScenario dens = base;
        dens.rho0 *= k;
        dens.s_coeff *= std::pow(k, gamma + 1.0);
        CHECK(normalize(dens).mach == doctest::Approx(m).epsilon(1e-13));
        PhysicalScenario speed = base;
        speed.v0 *= k;
        speed.s_coeff *= k * k;
        CHECK(normalize(speed).mach == doctest::Approx(m).epsilon(1e-13));
    }
}

TEST_CASE("physical route agrees with the normalized solution") {
    // Shock: jump relations hold in physical units with sigma scaled by |v0|.
    const PhysicalScenario phys{2.5, -1.7, 30.0, 0.5};
    const PistonScenario sc = normalize(phys);
    REQUIRE(classify(sc) == SolutionKind::Shock);
    const ShockSolution sh = solve_shock(sc);
    const GasModel g = phys.gas();
    const State up = denormalize_state(phys, sh.upstream);
    const State down = denormalize_state(phys, sh.downstream);
    const double sigma = std::abs(phys.v0) * sh.sigma;
    const auto [r1, r2] = rankine_hugoniot_residual(g, up, down, sigma);
    CHECK(std::abs(r1) < 1e-12 * phys.rho0 * std::abs(phys.v0));
    CHECK(std::abs(r2) < 1e-12 * phys.v0 * phys.v0);

    // Fan: physical characteristic speed equals the physical similarity slope.
    const PhysicalScenario rec{0.6, 2.2, 3.0, 0.4};
    const PistonScenario rsc = normalize(rec);
    const RarefactionFanSolution fan = solve_rarefaction(rsc);
    for (int i = 0; i <= 20; ++i) {
        const double eta = fan.eta_head() + (fan.eta_tail() - fan.eta_head()) * i / 20.0;
        const double t = 1.7;
        const double x = eta * t * std::abs(rec.v0);
        CHECK(normalized_similarity_variable(rec, t, x) == doctest::Approx(eta).epsilon(1e-14));
        const State s = denormalize_state(rec, fan.fan(eta));
        const double lambda1 = eigenvalues(rec.gas(), s).first;
        CHECK(std::abs(lambda1 - x / t) < 1e-12 * std::abs(x / t));
    }
    CHECK_THROWS_AS(normalized_similarity_variable(rec, 0.0, -1.0), DomainError);
}

TEST_CASE("direction names") {
    CHECK(to_string(Direction::Advance) == "advance");
    CHECK(direction_from_string("recede") == Direction::Recede);
    CHECK_THROWS(direction_from_string("sideways"));
}

TEST_CASE("scenario validation") {
    CHECK_THROWS(PistonScenario(0.0, 1.0, Direction::Advance));
    CHECK_THROWS(PistonScenario(0.5, 0.0, Direction::Advance));
    CHECK_THROWS(PistonScenario(0.5, -1.0, Direction::Recede));
    const PistonScenario sc(0.5, 2.0, Direction::Recede);
    CHECK(sc.initial_state() == State{1.0, -1.0});
    CHECK(sc.initial_pressure() == doctest::Approx(pressure(sc.gas(), 1.0)).epsilon(1e-15));
}
