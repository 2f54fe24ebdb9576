#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "porheat/diagnostics.hpp"
#include "porheat/simulation.hpp"

using namespace porheat;

namespace {

MacroProblem layered(int nx = 8, int ny = 16) {
    MacroProblem p;
    p.grid = build_macro_grid(2.0, 1.0, 0.5, nx, ny);
    p.velocity = make_velocity(VelocityKind::zero, p.grid);
    return p;
}

}  // namespace

TEST_CASE("energies of constant and zero states") {
    MacroProblem p = layered();
    p.params.rho_c_f = 1.5;
    p.params.rho_c_s = 2.0;
    const MacroState s = uniform_state(p, ModelKind::connected, 1.0, 3.0);
    const EnergyParts e = energies(s, p.grid, p.params);
    const double porous = 2.0 * 0.5;
    CHECK(e.free_fluid == doctest::Approx(1.5 * 2.0 * 0.5).epsilon(1e-13));
    CHECK(e.porous_fluid == doctest::Approx(1.5 * 0.6906 * porous).epsilon(1e-13));
    CHECK(e.solid == doctest::Approx(2.0 * 0.3094 * 3.0 * porous).epsilon(1e-13));
    CHECK(e.total() == doctest::Approx(e.free_fluid + e.porous_fluid + e.solid));

    const EnergyParts z = energies(uniform_state(p, ModelKind::connected, 0.0, 0.0), p.grid, p.params);
    CHECK(z.free_fluid == 0.0);
    CHECK(z.porous_fluid == 0.0);
    CHECK(z.solid == 0.0);
}

TEST_CASE("energies are linear in the state") {
    const MacroProblem p = layered();
    std::mt19937_64 rng(5);
    MacroState a = uniform_state(p, ModelKind::connected, 0.0);
    MacroState b = a;
    a.theta = testing::random_vector(a.theta.size(), rng);
    a.solid = testing::random_vector(a.solid.size(), rng);
    b.theta = testing::random_vector(b.theta.size(), rng);
    b.solid = testing::random_vector(b.solid.size(), rng);
    MacroState mix = a;
    for (std::size_t c = 0; c < mix.theta.size(); ++c) {
        mix.theta[c] = 2.0 * a.theta[c] - 0.5 * b.theta[c];
    }
    for (std::size_t c = 0; c < mix.solid.size(); ++c) {
        mix.solid[c] = 2.0 * a.solid[c] - 0.5 * b.solid[c];
    }
    const EnergyParts ea = energies(a, p.grid, p.params);
    const EnergyParts eb = energies(b, p.grid, p.params);
    const EnergyParts em = energies(mix, p.grid, p.params);
    CHECK(em.free_fluid == doctest::Approx(2.0 * ea.free_fluid - 0.5 * eb.free_fluid).epsilon(1e-12));
    CHECK(em.porous_fluid == doctest::Approx(2.0 * ea.porous_fluid - 0.5 * eb.porous_fluid).epsilon(1e-12));
    CHECK(em.solid == doctest::Approx(2.0 * ea.solid - 0.5 * eb.solid).epsilon(1e-12));

    const std::vector<double> other(p.grid.porous_count(), 1.0);
    CHECK(energies(a, p.grid, p.params, &other).solid ==
          doctest::Approx(p.params.rho_c_s * 0.3094 * 1.0).epsilon(1e-13));
}

TEST_CASE("conservation residual") {
    CHECK(conservation_residual(5.0, 2.0, 3.0) == 0.0);
    CHECK(conservation_residual(5.5, 2.0, 3.0) == doctest::Approx(0.5 / 3.0));
    CHECK(conservation_residual(1e-14, 0.0, 0.0) == doctest::Approx(1e-2));
}

TEST_CASE("profile along a vertical line") {
    const MacroProblem p = layered(8, 16);
    const MacroState s = uniform_state(p, ModelKind::connected, 0.4, 0.9);
    const ProfileSample pr = profile(s, p.grid, 1.0);
    REQUIRE(pr.coordinate.size() == 16);
    REQUIRE(pr.theta.size() == 16);
    CHECK(pr.solid.size() == 8);
    for (std::size_t j = 0; j < pr.coordinate.size(); ++j) {
        CHECK(pr.theta[j] == 0.4);
        if (j > 0) {
            CHECK(pr.coordinate[j] > pr.coordinate[j - 1]);
        }
    }
    for (double v : pr.solid) {
        CHECK(v == 0.9);
    }
    CHECK(pr.coordinate.front() == doctest::Approx(1.0 / 32.0));
    CHECK_NOTHROW(profile(s, p.grid, 0.0));
    CHECK_NOTHROW(profile(s, p.grid, 2.0));
    CHECK_THROWS_AS(profile(s, p.grid, 2.1), std::invalid_argument);
    CHECK_THROWS_AS(profile(s, p.grid, -0.1), std::invalid_argument);
}

TEST_CASE("L2 differences") {
    const MacroProblem p = layered(4, 8);
    std::mt19937_64 rng(9);
    const std::size_t cells = p.grid.cell_count();
    const std::size_t porous = p.grid.porous_count();
    Snapshot a{0.5, testing::random_vector(cells, rng), testing::random_vector(porous, rng)};
    Snapshot b{0.5, testing::random_vector(cells, rng), testing::random_vector(porous, rng)};

    const Difference self = l2_difference(a, a, p.grid);
    CHECK(self.free_fluid == 0.0);
    CHECK(self.porous == 0.0);
    const Difference ab = l2_difference(a, b, p.grid);
    const Difference ba = l2_difference(b, a, p.grid);
    CHECK(ab.free_fluid == ba.free_fluid);
    CHECK(ab.porous == ba.porous);

    double ff = 0.0;
    double pp = 0.0;
    for (std::size_t c = 0; c < cells; ++c) {
        const double d = a.theta[c] - b.theta[c];
        (c < porous ? pp : ff) += d * d * p.grid.cell_volume();
    }
    for (std::size_t c = 0; c < porous; ++c) {
        const double d = a.solid[c] - b.solid[c];
        pp += d * d * p.grid.cell_volume();
    }
    CHECK(ab.free_fluid == doctest::Approx(std::sqrt(ff)).epsilon(1e-13));
    CHECK(ab.porous == doctest::Approx(std::sqrt(pp)).epsilon(1e-13));

    Snapshot twice = a;
    for (auto& v : twice.theta) {
        v *= 2.0;
    }
    for (auto& v : twice.solid) {
        v *= 2.0;
    }
    const auto rel = relative_difference({a}, {twice}, p.grid);
    REQUIRE(rel.size() == 1);
    CHECK(rel[0].free_fluid == doctest::Approx(1.0).epsilon(1e-13));
    CHECK(rel[0].porous == doctest::Approx(1.0).epsilon(1e-13));

    Snapshot late = b;
    late.time = 0.6;
    CHECK_THROWS_AS(l2_difference(a, late, p.grid), std::invalid_argument);
    CHECK_THROWS_AS(l2_difference(std::vector<Snapshot>{a}, std::vector<Snapshot>{a, b}, p.grid),
                    std::invalid_argument);
}

TEST_CASE("ensemble averages are interpolated to porous cells") {
    MacroProblem p = layered(4, 8);
    const CellGeometry cell = build_unit_cell({3, {CenteredCube{0.6764}}, "DC1", std::nullopt}, 8);
    const SolidCellStepper stepper(cell, micro_params(p.params), 0.1);
    const CollocationSet pts = build_collocation(p.grid, {PatternKind::lattice, 2, 2});
    MicroEnsemble e = uniform_ensemble(stepper, pts.size(), 0.25);
    for (double v : ensemble_average(e, stepper, pts)) {
        CHECK(v == doctest::Approx(0.25).epsilon(1e-13));
    }
}

TEST_CASE("recorded runs conserve energy") {
    MacroProblem p = layered(6, 12);
    p.sources.schedule = InterfaceSchedule::step;
    p.sources.solid = 0.3;
    RunSettings rs;
    rs.horizon = 2.0;
    const RunResult r = run_connected(p, rs);
    REQUIRE(r.energies.size() == 21);
    CHECK(r.energies.front().input == 0.0);
    for (const auto& e : r.energies) {
        CHECK(e.residual <= 1e-8);
    }
    CHECK(r.energies.back().input > 0.0);
}
