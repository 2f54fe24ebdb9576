#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "oracles.hpp"
#include "porheat/cell_stationary.hpp"

using namespace porheat;

namespace {

// Solid strip 0 <= y_1 <= 0.3 running along y_2.
CellSpec laminate() {
    return {2, {AxisBar{1, {0.15, 0.0, 0.0}, {0.15, 0.5, 0.5}}}, "laminate", std::nullopt};
}

CellSpec cube(double a) { return {3, {CenteredCube{a}}, "cube", std::nullopt}; }

}  // namespace

TEST_CASE("empty cell has a vanishing corrector and the pure conductivity") {
    for (int d : {2, 3}) {
        const CellGeometry g = build_unit_cell({d, {}, "empty", std::nullopt}, 8);
        for (int i = 0; i < d; ++i) {
            const CellField f = solve_corrector(g, Phase::fluid, i);
            CHECK(testing::max_abs(f.values) <= 1e-12);
        }
        const EffectiveTensor k = effective_conductivity(g, Phase::fluid, 0.1);
        for (int i = 0; i < d; ++i) {
            for (int j = 0; j < d; ++j) {
                CHECK(std::abs(k(i, j) - (i == j ? 0.1 : 0.0)) <= 1e-8 * 0.1);
            }
        }
    }
}

TEST_CASE("laminate conducts along the strip only") {
    const CellGeometry g = build_unit_cell(laminate(), 128);
    const double kappa = 0.1;
    const CellField along = solve_corrector(g, Phase::fluid, 1);
    CHECK(testing::max_abs(along.values) <= 1e-8);

    const EffectiveTensor k = effective_conductivity(g, Phase::fluid, kappa);
    CHECK(std::abs(k(0, 0)) <= 1e-3 * kappa);
    CHECK(k(1, 1) == doctest::Approx(0.7 * kappa).epsilon(0.01));
    CHECK(std::abs(k(0, 1)) <= 1e-3 * kappa);
}

TEST_CASE("cube corrector is odd about the center plane") {
    const CellGeometry g = build_unit_cell(cube(0.6764), 24);
    const int n = g.resolution();
    for (int dir = 0; dir < 3; ++dir) {
        const CellField f = solve_corrector(g, Phase::fluid, dir);
        std::vector<double> full(g.voxel_count(), 0.0);
        for (std::size_t k = 0; k < f.voxels.size(); ++k) {
            full[f.voxels[k]] = f.values[k];
        }
        double diff = 0.0;
        for (std::size_t k = 0; k < f.voxels.size(); ++k) {
            auto c = g.coords(f.voxels[k]);
            c[dir] = n - 1 - c[dir];
            const double d = f.values[k] + full[g.index(c)];
            diff += d * d;
        }
        const double h = g.spacing();
        CHECK(std::sqrt(diff * h * h * h) <= 1e-6);
    }
}

TEST_CASE("corrector fields have zero mean") {
    const CellGeometry g = build_unit_cell(cube(0.6764), 16);
    for (int dir = 0; dir < 3; ++dir) {
        const CellField f = solve_corrector(g, Phase::fluid, dir);
        CHECK(f.zero_mean);
        const double mean = std::accumulate(f.values.begin(), f.values.end(), 0.0) /
                            static_cast<double>(f.values.size());
        CHECK(std::abs(mean) <= 1e-10);
        CHECK(f.report.converged);
    }
}

TEST_CASE("tensors are symmetric and within the arithmetic bound") {
    std::mt19937_64 rng(17);
    const std::vector<CellSpec> specs{
        cube(0.6764), {3, {Sphere{0.3}}, "ball", std::nullopt},
        {2, {Sphere{0.35}}, "disk", std::nullopt}, laminate(),
        {3, {AxisBar{0, {0.0, 0.2, 0.1}, {0.5, 0.5, 0.5}}}, "bar", std::nullopt}};
    for (const auto& s : specs) {
        CAPTURE(s.label);
        const CellGeometry g = build_unit_cell(s, s.dimension == 2 ? 48 : 16);
        for (Phase p : {Phase::fluid, Phase::solid}) {
            const double kappa = p == Phase::fluid ? 0.1 : 0.4;
            // Mean open share of the faces normal to each axis; the corrector
            // minimizes the face energy, so phi = 0 gives a sharp bound.
            std::array<double, 3> open{0.0, 0.0, 0.0};
            for (std::size_t v = 0; v < g.voxel_count(); ++v) {
                for (int i = 0; i < s.dimension; ++i) {
                    open[i] += g.opening(p, v, i) / static_cast<double>(g.voxel_count());
                }
            }
            const EffectiveTensor k = effective_conductivity(g, p, kappa);
            double largest = 0.0;
            for (int i = 0; i < s.dimension; ++i) {
                for (int j = 0; j < s.dimension; ++j) {
                    largest = std::max(largest, std::abs(k(i, j)));
                }
            }
            if (largest > 1e-6 * kappa) {
                CHECK(k.asymmetry <= 1e-8);
            } else {
                CHECK(largest <= 1e-8 * kappa);
            }
            for (int i = 0; i < s.dimension; ++i) {
                for (int j = 0; j < s.dimension; ++j) {
                    CHECK(k(i, j) == k(j, i));
                }
            }
            std::normal_distribution<double> z;
            for (int trial = 0; trial < 8; ++trial) {
                std::array<double, 3> zeta{0.0, 0.0, 0.0};
                if (trial < s.dimension) {
                    zeta[trial] = 1.0;
                } else {
                    for (int i = 0; i < s.dimension; ++i) {
                        zeta[i] = z(rng);
                    }
                }
                const double q = k.quadratic(zeta);
                const double len2 = zeta[0] * zeta[0] + zeta[1] * zeta[1] + zeta[2] * zeta[2];
                double sharp = 0.0;
                for (int i = 0; i < s.dimension; ++i) {
                    sharp += kappa * open[i] * zeta[i] * zeta[i];
                }
                CHECK(q >= -1e-10 * kappa * len2);
                CHECK(q <= sharp * (1.0 + 1e-10) + 1e-14);
            }
        }
    }
}

TEST_CASE("cubes and spheres are isotropic") {
    for (const auto& s : {cube(0.6764), CellSpec{3, {Sphere{0.4196}}, "ball", std::nullopt}}) {
        const double kappa = 0.1;
        const EffectiveTensor k = effective_conductivity(build_unit_cell(s, 24), Phase::fluid, kappa);
        double lo = k(0, 0);
        double hi = k(0, 0);
        for (int i = 0; i < 3; ++i) {
            lo = std::min(lo, k(i, i));
            hi = std::max(hi, k(i, i));
            for (int j = 0; j < 3; ++j) {
                if (i != j) {
                    CHECK(std::abs(k(i, j)) <= 1e-3 * kappa);
                }
            }
        }
        CHECK((hi - lo) / hi <= 0.01);
    }
}

TEST_CASE("grid-aligned cube is stable under refinement") {
    const CellSpec s = cube(0.5);
    const EffectiveTensor coarse = effective_conductivity(build_unit_cell(s, 16), Phase::fluid, 1.0);
    const EffectiveTensor fine = effective_conductivity(build_unit_cell(s, 32), Phase::fluid, 1.0);
    for (int i = 0; i < 3; ++i) {
        CHECK(testing::rel(fine(i, i), coarse(i, i)) <= 0.005);
    }
}

TEST_CASE("percolation decides which diagonal entries survive") {
    const CellGeometry bar = build_unit_cell(
        {3, {AxisBar{2, {0.2, 0.2, 0.0}, {0.5, 0.5, 0.5}}}, "bar", std::nullopt}, 20);
    const EffectiveTensor s = effective_conductivity(bar, Phase::solid, 0.4);
    CHECK(s(2, 2) > 0.0);
    CHECK(s(2, 2) == doctest::Approx(0.4 * bar.voxel_measures().solid_fraction).epsilon(1e-6));
    CHECK(std::abs(s(0, 0)) <= 1e-8);
    CHECK(std::abs(s(1, 1)) <= 1e-8);

    const CellGeometry dc1 = build_unit_cell(cube(0.6764), 16);
    const EffectiveTensor inclusion = effective_conductivity(dc1, Phase::solid, 0.4);
    for (int i = 0; i < 3; ++i) {
        CHECK(std::abs(inclusion(i, i)) <= 1e-8);
    }
    CHECK_FALSE(inclusion.warnings.empty());
}

TEST_CASE("corrector rejects bad requests") {
    const CellGeometry empty = build_unit_cell({3, {}, "empty", std::nullopt}, 8);
    CHECK_THROWS_AS(solve_corrector(empty, Phase::solid, 0), std::invalid_argument);
    CHECK_THROWS_AS(solve_corrector(empty, Phase::fluid, 3), std::invalid_argument);
}
