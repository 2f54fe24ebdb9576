#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "porheat/geometry.hpp"

using namespace porheat;

namespace {

CellSpec cube(double a) { return {3, {CenteredCube{a}}, "cube", std::nullopt}; }
CellSpec ball(double r, int d = 3) { return {d, {Sphere{r}}, "ball", std::nullopt}; }

double voxel_fluid_error(const CellSpec& spec, int n) {
    const CellGeometry g = build_unit_cell(spec, n);
    return std::abs(g.voxel_measures().fluid_fraction - g.measures().fluid_fraction);
}

}  // namespace

TEST_CASE("cube measures match the tabulated DC1 cell") {
    const CellGeometry g = build_unit_cell(cube(0.6764), 64);
    CHECK(g.measures().fluid_fraction == doctest::Approx(0.6906).epsilon(1e-4));
    CHECK(g.measures().interface_area == doctest::Approx(2.7451).epsilon(1e-4));
    CHECK(g.measures().exterior_trace == 0.0);
    CHECK(g.disconnected());
}

TEST_CASE("empty cell is all fluid") {
    const CellGeometry g = build_unit_cell({3, {}, "empty", std::nullopt}, 8);
    CHECK(g.measures().fluid_fraction == 1.0);
    CHECK(g.measures().interface_area == 0.0);
    CHECK(g.voxel_measures().fluid_fraction == 1.0);
    CHECK(g.interface_faces().empty());
    for (Phase p : g.phases()) {
        CHECK(p == Phase::fluid);
    }
}

TEST_CASE("sphere measures follow the closed-form area and volume") {
    const double r = 0.4196;
    const double area = 4.0 * std::numbers::pi * r * r;
    const double volume = 4.0 / 3.0 * std::numbers::pi * r * r * r;
    const CellMeasures m = analytic_measures(ball(r));
    CHECK(m.interface_area == doctest::Approx(area).epsilon(1e-12));
    CHECK(m.solid_fraction == doctest::Approx(volume).epsilon(1e-12));
    CHECK(m.interface_area == doctest::Approx(2.2125).epsilon(1e-4));
    CHECK(m.fluid_fraction == doctest::Approx(0.6906).epsilon(2e-4));

    const CellMeasures disk = analytic_measures(ball(0.3, 2));
    CHECK(disk.interface_area == doctest::Approx(2.0 * std::numbers::pi * 0.3).epsilon(1e-12));
    CHECK(disk.solid_fraction == doctest::Approx(std::numbers::pi * 0.09).epsilon(1e-12));
}

TEST_CASE("bar spanning the cell touches the bottom face") {
    CellSpec spec{3, {AxisBar{1, {0.1, 0.0, 0.15}, {0.5, 0.5, 0.5}}}, "bar", std::nullopt};
    const CellMeasures m = analytic_measures(spec);
    CHECK(m.solid_fraction == doctest::Approx(0.2 * 0.3).epsilon(1e-12));
    CHECK(m.exterior_trace == doctest::Approx(0.2 * 0.3).epsilon(1e-12));
    CHECK(m.interface_area == doctest::Approx(2.0 * (0.2 + 0.3)).epsilon(1e-12));

    const CellGeometry g = build_unit_cell(spec, 20);
    CHECK_FALSE(g.disconnected());
    CHECK(g.percolates(Phase::solid, 1));
    CHECK_FALSE(g.percolates(Phase::solid, 0));
    CHECK(g.percolates(Phase::fluid, 0));
    CHECK_FALSE(g.exterior_solid_voxels().empty());
}

TEST_CASE("measures of every primitive kind are consistent") {
    const std::vector<CellSpec> specs{
        cube(0.5), ball(0.3), ball(0.4, 2),
        {2, {AxisBar{0, {0.0, 0.2, 0.0}, {0.5, 0.5, 0.5}}}, "strip", std::nullopt},
        {3, {Sphere{0.1}, AxisBar{2, {0.05, 0.05, 0.0}, {0.1, 0.1, 0.5}}}, "pair", std::nullopt}};
    for (const auto& s : specs) {
        const CellMeasures m = analytic_measures(s);
        CHECK(m.fluid_fraction + m.solid_fraction == doctest::Approx(1.0).epsilon(1e-14));
        CHECK(m.fluid_fraction >= 0.0);
        CHECK(m.solid_fraction >= 0.0);
        CHECK(m.interface_area >= 0.0);
        CHECK(m.exterior_trace >= 0.0);
    }
}

TEST_CASE("overlapping primitives need explicit measures") {
    CellSpec spec{3, {CenteredCube{0.5}, Sphere{0.3}}, "overlap", std::nullopt};
    CHECK_THROWS_WITH_AS(build_unit_cell(spec, 16),
                         "analytic measures unavailable; supply measures explicitly", GeometryError);
    spec.measures = CellMeasures{0.8, 0.2, 1.0, 0.0};
    const CellGeometry g = build_unit_cell(spec, 16);
    CHECK(g.measures().fluid_fraction == 0.8);
}

TEST_CASE("invalid cells are rejected") {
    CHECK_THROWS_AS(build_unit_cell(cube(0.5), 4), GeometryError);
    CHECK_THROWS_AS(build_unit_cell(cube(1.5), 16), GeometryError);
    CHECK_THROWS_AS(build_unit_cell(ball(0.6), 16), GeometryError);
    CHECK_THROWS_AS(build_unit_cell({4, {}, "", std::nullopt}, 16), GeometryError);
}

TEST_CASE("neighbour lookup wraps around every axis") {
    const CellGeometry g = build_unit_cell(cube(0.5), 8);
    for (int axis = 0; axis < 3; ++axis) {
        std::array<int, 3> last{0, 0, 0};
        last[axis] = 7;
        CHECK(g.neighbor(g.index(last), axis, 1) == g.index({0, 0, 0}));
        CHECK(g.neighbor(g.index({0, 0, 0}), axis, -1) == g.index(last));
    }
    for (std::size_t v = 0; v < g.voxel_count(); v += 37) {
        CHECK(g.index(g.coords(v)) == v);
        for (int axis = 0; axis < 3; ++axis) {
            CHECK(g.neighbor(g.neighbor(v, axis, 1), axis, -1) == v);
        }
    }
}

TEST_CASE("voxel fluid fraction approaches the analytic value") {
    SUBCASE("aligned cube") {
        const CellSpec s = cube(0.5);
        double prev = voxel_fluid_error(s, 8);
        for (int n : {16, 32}) {
            const double e = voxel_fluid_error(s, n);
            CHECK(e <= prev + 1e-12);
            prev = e;
        }
    }
    SUBCASE("DC1 cube") {
        const CellSpec s = cube(0.6764);
        CHECK(voxel_fluid_error(s, 64) <= voxel_fluid_error(s, 16) + 1e-12);
    }
    SUBCASE("sphere") {
        const CellSpec s = ball(0.4196);
        // Halving per doubling, up to a factor 4 of noise.
        const double e16 = voxel_fluid_error(s, 16);
        const double e32 = voxel_fluid_error(s, 32);
        const double e64 = voxel_fluid_error(s, 64);
        CHECK(e32 <= 4.0 * e16 / 2.0);
        CHECK(e64 <= 4.0 * e32 / 2.0);
        CHECK(e64 < e16);
    }
}

TEST_CASE("complement swaps the phases") {
    const CellGeometry g = build_unit_cell(cube(0.6764), 16);
    const CellGeometry c = g.complement();
    for (std::size_t v = 0; v < g.voxel_count(); ++v) {
        CHECK(c.phase(v) != g.phase(v));
    }
    CHECK(c.measures().fluid_fraction == doctest::Approx(g.measures().solid_fraction));
    CHECK(c.interface_faces().size() == g.interface_faces().size());
}

TEST_CASE("interface weights reproduce the analytic area and volume") {
    const CellGeometry g = build_unit_cell(cube(0.6764), 32);
    const double h = g.spacing();
    const double faces = static_cast<double>(g.interface_faces().size()) * h * h;
    CHECK(faces * g.interface_weight() == doctest::Approx(g.measures().interface_area));
    CHECK(g.voxel_measures().solid_fraction * g.solid_volume_weight() ==
          doctest::Approx(g.measures().solid_fraction));
}

TEST_CASE("macro grid splits the layers on a face row") {
    const MacroGrid g = build_macro_grid(2.0, 1.0, 0.5, 80, 40);
    CHECK(g.cell_count() == 3200);
    CHECK(g.interface_row == 20);
    CHECK(g.porous_count() == 1600);
    CHECK(g.dx == doctest::Approx(0.025));
    CHECK(g.dy == doctest::Approx(0.025));
    CHECK(g.dimension() == 2);
    for (std::size_t c = 0; c < g.cell_count(); ++c) {
        CHECK(g.porous(c) == (g.y_center(g.row(c)) < 0.5));
    }
    CHECK(build_macro_grid(2.0, 1.0, 0.5, 1, 40).dimension() == 1);
}

TEST_CASE("misaligned interface is an error") {
    CHECK_THROWS_WITH_AS(build_macro_grid(2.0, 1.0, 0.333, 80, 40),
                         doctest::Contains("interface misaligned"), GeometryError);
    CHECK_THROWS_AS(build_macro_grid(2.0, 1.0, 1.0, 1, 40), GeometryError);
    CHECK_THROWS_AS(build_macro_grid(2.0, 1.0, 0.5, 0, 40), GeometryError);
}
