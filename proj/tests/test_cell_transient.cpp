#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "oracles.hpp"
#include "porheat/cell_transient.hpp"

using namespace porheat;

namespace {

CellGeometry dc1(int n = 16) {
    return build_unit_cell({3, {CenteredCube{0.6764}}, "DC1", std::nullopt}, n);
}

// Solid conductivity large enough that the inclusion stays uniform.
MicroParams lumped(double alpha = 0.1) { return {1.0, 0.4e6, alpha}; }

double relaxation_rate(const CellGeometry& g, const MicroParams& p) {
    return p.alpha * g.measures().interface_area / (p.rho_c * g.measures().solid_fraction);
}

}  // namespace

TEST_CASE("insulated cell without source stays put") {
    const CellGeometry g = dc1(12);
    const SolidCellStepper cell(g, {1.0, 0.4, 0.0}, 0.1);
    const SolidCellState flat = cell.uniform(0.3);
    CHECK(testing::max_abs_diff(cell.step(flat, 5.0, 0.0).values, flat.values) <= 1e-12);

    std::mt19937_64 rng(4);
    const SolidCellState s{testing::random_vector(cell.size(), rng), 0.0};
    const SolidCellState next = cell.step(s, 5.0, 0.0);
    CHECK(cell.average(next) == doctest::Approx(cell.average(s)).epsilon(1e-10));
    CHECK(next.time == doctest::Approx(0.1));
}

TEST_CASE("cell in equilibrium with the fluid is a fixed point") {
    const CellGeometry g = dc1(12);
    const SolidCellStepper cell(g, {1.0, 0.4, 0.1}, 0.1);
    const SolidCellState s = cell.uniform(0.7);
    const SolidCellState next = cell.step(s, 0.7, 0.0);
    CHECK(testing::max_abs_diff(next.values, s.values) <= 1e-12);
    const SolidCellState free = step_solid_cell(g, s, 0.7, 0.0, 0.1, {1.0, 0.4, 0.1});
    CHECK(testing::max_abs_diff(free.values, s.values) <= 1e-12);
}

TEST_CASE("stepper measures match the analytic cell") {
    const CellGeometry g = dc1(16);
    const SolidCellStepper cell(g, {}, 0.1);
    double area = 0.0;
    double volume = 0.0;
    for (std::size_t k = 0; k < cell.size(); ++k) {
        area += cell.boundary_area()[k];
        volume += cell.volume()[k];
    }
    CHECK(area == doctest::Approx(g.measures().interface_area).epsilon(1e-12));
    CHECK(volume == doctest::Approx(g.measures().solid_fraction).epsilon(1e-12));
}

TEST_CASE("boundary trace and volume average of simple fields") {
    const CellGeometry g = dc1(32);
    const SolidCellStepper cell(g, {}, 0.1);
    const double gamma = g.measures().interface_area;
    SolidCellState c = cell.uniform(2.5);
    CHECK(cell.trace(c) == doctest::Approx(2.5 * gamma).epsilon(1e-12));
    CHECK(boundary_trace_integral(c, g) == doctest::Approx(2.5 * gamma).epsilon(1e-12));
    CHECK(cell.average(c) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(volume_average(c, g) == doctest::Approx(2.5).epsilon(1e-12));
    CHECK(volume_average(cell.uniform(0.0), g) == 0.0);

    // y_1 is odd about the center, so its trace is gamma/2 exactly.
    SolidCellState lin{std::vector<double>(cell.size()), 0.0};
    SolidCellState quad{std::vector<double>(cell.size()), 0.0};
    for (std::size_t k = 0; k < cell.size(); ++k) {
        const double y = g.center(cell.voxels()[k])[0];
        lin.values[k] = y;
        quad.values[k] = y * y;
    }
    CHECK(cell.trace(lin) == doctest::Approx(0.5 * gamma).epsilon(1e-12));

    // Closed-form integral of y_1^2 over the faces of the centered cube.
    const double a = 0.6764;
    const double lo = 0.5 - a / 2;
    const double hi = 0.5 + a / 2;
    const double across = (hi * hi * hi - lo * lo * lo) / (3.0 * a);
    const double exact = a * a * (lo * lo + hi * hi) + 4.0 * a * a * across;
    CHECK(cell.trace(quad) == doctest::Approx(exact).epsilon(0.02));
}

TEST_CASE("lumped cell follows the exponential relaxation") {
    const CellGeometry g = dc1(8);
    const MicroParams p = lumped();
    const double dt = 0.01;
    const SolidCellStepper cell(g, p, dt, 1e-9);
    SolidCellState s = cell.uniform(0.0);
    for (int n = 0; n < 10; ++n) {
        s = cell.step(s, 1.0, 0.0);
    }
    const double exact = 1.0 - std::exp(-relaxation_rate(g, p) * 10 * dt);
    CHECK(cell.average(s) == doctest::Approx(exact).epsilon(0.01));
}

TEST_CASE("each step balances stored heat, exchange and source") {
    const CellGeometry g = dc1(16);
    const MicroParams p{1.3, 0.4, 0.1};
    const double dt = 0.1;
    const SolidCellStepper cell(g, p, dt);
    std::mt19937_64 rng(8);
    SolidCellState s{testing::random_vector(cell.size(), rng, 0.0, 1.0), 0.0};
    const double gamma = g.measures().interface_area;
    const double ys = g.measures().solid_fraction;
    for (int n = 0; n < 5; ++n) {
        const double theta = 0.3 * n;
        const double f = 0.5;
        const SolidCellState next = cell.step(s, theta, f);
        const double stored = p.rho_c * ys * (cell.average(next) - cell.average(s)) / dt;
        const double supplied = ys * f + p.alpha * (gamma * theta - cell.trace(next));
        CHECK(stored == doctest::Approx(supplied).epsilon(1e-8));
        s = next;
    }
}

TEST_CASE("insulated cell accumulates its source") {
    const CellGeometry g = dc1(16);
    const MicroParams p{2.0, 0.4, 0.1};
    const SolidCellStepper cell(g, p, 0.1);
    SolidCellState s = cell.uniform(1.0);
    for (int n = 0; n < 10; ++n) {
        const SolidCellState next = cell.step_insulated(s, 3.0);
        CHECK((cell.average(next) - cell.average(s)) / 0.1 == doctest::Approx(3.0 / p.rho_c).epsilon(1e-8));
        s = next;
    }
}

TEST_CASE("kernel vanishes without exchange") {
    const MemoryKernel k = compute_kernel(dc1(8), {1.0, 0.4, 0.0}, 1.0, 0.1);
    CHECK(k.steps() == 10);
    CHECK(testing::max_abs(k.psi) == 0.0);
    CHECK(k.final_deviation == doctest::Approx(1.0));
}

TEST_CASE("kernel integrates to the interface area") {
    const CellGeometry g = dc1(16);
    const MemoryKernel k = compute_kernel(g, {1.0, 0.4, 0.1}, 50.0, 0.1);
    REQUIRE(k.final_deviation < 0.01);
    CHECK(k.cumulative.back() == doctest::Approx(g.measures().interface_area).epsilon(0.02));
    CHECK(k.negative_samples.empty());
    for (std::size_t n = 0; n < k.steps(); ++n) {
        CHECK(k.psi[n] >= -1e-8);
    }
    CHECK(k.initial_response.back() == doctest::Approx(0.0).scale(1.0));
}

TEST_CASE("lumped kernel matches the exponential closed form") {
    const CellGeometry g = dc1(8);
    const double dt = 0.01;
    const MicroParams p = lumped();
    const MemoryKernel k = compute_kernel(g, p, 2.0, dt, 1e-9);
    const double gamma = g.measures().interface_area;
    const double rate = relaxation_rate(g, p);
    for (std::size_t n = 1; n <= k.steps(); n += 20) {
        const double t = static_cast<double>(n) * dt;
        CHECK(k.psi[n - 1] == doctest::Approx(gamma * rate * std::exp(-rate * t)).epsilon(0.02));
    }

    const MemoryKernel twice = compute_kernel(g, lumped(0.2), 2.0, dt, 1e-9);
    const double slow = std::log(k.psi[10] / k.psi[11]) / dt;
    const double fast = std::log(twice.psi[10] / twice.psi[11]) / dt;
    CHECK(fast / slow == doctest::Approx(2.0).epsilon(0.02));
}

TEST_CASE("kernel responses reproduce a driven cell") {
    const CellGeometry g = dc1(12);
    const MicroParams p{1.0, 0.4, 0.1};
    const double dt = 0.1;
    const MemoryKernel k = compute_kernel(g, p, 3.0, dt);
    const SolidCellStepper cell(g, p, dt);
    std::mt19937_64 rng(21);
    const auto u = testing::random_vector(k.steps(), rng, 0.0, 2.0);
    const double s0 = 0.4;
    const double f = 0.7;
    SolidCellState s = cell.uniform(s0);
    for (std::size_t n = 1; n <= k.steps(); ++n) {
        s = cell.step(s, u[n - 1], f);
        double predicted = s0 * k.initial_response[n - 1] + f * k.source_response[n - 1];
        for (std::size_t m = 1; m <= n; ++m) {
            predicted += k.psi[m - 1] * dt * u[n - m];
        }
        CHECK(cell.trace(s) == doctest::Approx(predicted).epsilon(1e-9));
    }
}

TEST_CASE("auxiliary source of simple data") {
    const CellGeometry g = dc1(12);
    const MicroParams p{2.0, 0.4, 0.1};
    const double gamma = g.measures().interface_area;
    const double dt = 0.1;

    const AuxiliarySource rest = compute_eta_bar(g, p, {0.0}, 0.0, 0.8, 1.0, dt);
    REQUIRE(rest.samples.size() == 10);
    for (double v : rest.samples) {
        CHECK(v == doctest::Approx(gamma * 0.8).epsilon(1e-12));
    }

    const AuxiliarySource gap = compute_eta_bar(g, p, {0.0}, 0.3, 0.8, 1.0, dt);
    for (double v : gap.samples) {
        CHECK(v == doctest::Approx(gamma * 1.1).epsilon(1e-12));
    }

    const AuxiliarySource heated = compute_eta_bar(g, p, {1.0}, 0.3, 0.8, 1.0, dt);
    for (std::size_t n = 1; n <= heated.samples.size(); ++n) {
        const double t = static_cast<double>(n) * dt;
        CHECK(heated.samples[n - 1] == doctest::Approx(gamma * (0.8 + 0.3 + t / p.rho_c)).epsilon(1e-10));
    }
}

TEST_CASE("kernel cell relaxes to the fluid value") {
    const CellGeometry g = dc1(12);
    const MicroParams p{1.0, 0.4, 0.1};
    const SolidCellStepper cell(g, p, 0.5);
    SolidCellState xi = cell.uniform(0.0);
    CHECK(cell.average(xi) == 0.0);
    for (int n = 0; n < 200; ++n) {
        xi = cell.step(xi, 1.0, 0.0);
    }
    CHECK(cell.average(xi) == doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("step count requires dt to divide the horizon") {
    CHECK(step_count(20.0, 0.1) == 200);
    CHECK(step_count(1.0, 0.25) == 4);
    CHECK_THROWS_AS(step_count(1.0, 0.3), std::invalid_argument);
    CHECK_THROWS_AS(step_count(1.0, 0.0), std::invalid_argument);
    CHECK_THROWS_AS(step_count(0.05, 0.1), std::invalid_argument);
}
