#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <numeric>

#include "oracles.hpp"
#include "porheat/linalg.hpp"

using namespace porheat;

namespace {

CsrMatrix identity(std::size_t n) {
    TripletBuilder tb(n);
    for (std::size_t i = 0; i < n; ++i) {
        tb.add(i, i, 1.0);
    }
    return tb.build();
}

// Periodic 1D Laplacian, singular with constants as the kernel.
CsrMatrix periodic_laplacian(std::size_t n) {
    TripletBuilder tb(n);
    for (std::size_t i = 0; i < n; ++i) {
        tb.add(i, i, 2.0);
        tb.add(i, (i + 1) % n, -1.0);
        tb.add(i, (i + n - 1) % n, -1.0);
    }
    return tb.build();
}

// 2D Dirichlet Laplacian with a random positive diagonal shift.
CsrMatrix shifted_laplacian(int m, std::mt19937_64& rng) {
    const std::size_t n = static_cast<std::size_t>(m) * m;
    TripletBuilder tb(n);
    std::uniform_real_distribution<double> shift(0.0, 0.5);
    for (int j = 0; j < m; ++j) {
        for (int i = 0; i < m; ++i) {
            const std::size_t r = static_cast<std::size_t>(j) * m + i;
            tb.add(r, r, 4.0 + shift(rng));
            if (i > 0) tb.add(r, r - 1, -1.0);
            if (i + 1 < m) tb.add(r, r + 1, -1.0);
            if (j > 0) tb.add(r, r - m, -1.0);
            if (j + 1 < m) tb.add(r, r + m, -1.0);
        }
    }
    return tb.build();
}

// Upwind convection-diffusion; nonsymmetric.
CsrMatrix convection_diffusion(int n, double peclet) {
    TripletBuilder tb(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) {
        const auto r = static_cast<std::size_t>(i);
        tb.add(r, r, 2.0 + peclet + 0.1);
        if (i > 0) tb.add(r, r - 1, -1.0 - peclet);
        if (i + 1 < n) tb.add(r, r + 1, -1.0);
    }
    return tb.build();
}

double true_residual(const CsrMatrix& a, const std::vector<double>& x, const std::vector<double>& b) {
    const std::vector<double> ax = a.apply(x);
    double r = 0.0;
    for (std::size_t i = 0; i < b.size(); ++i) {
        r += (b[i] - ax[i]) * (b[i] - ax[i]);
    }
    return std::sqrt(r) / norm2(b);
}

}  // namespace

TEST_CASE("identity system converges in one iteration") {
    std::mt19937_64 rng(1);
    const auto b = testing::random_vector(20, rng);
    const SolveResult r = cg_solve(identity(20), b, {});
    CHECK(r.report.converged);
    CHECK(r.report.iterations == 1);
    CHECK(testing::max_abs_diff(r.x, b) < 1e-14);
}

TEST_CASE("periodic laplacian inverts sine samples by its eigenvalue") {
    const std::size_t n = 8;
    std::vector<double> b(n);
    for (std::size_t i = 0; i < n; ++i) {
        b[i] = std::sin(2.0 * std::numbers::pi * static_cast<double>(i) / n);
    }
    SolveOptions opts;
    opts.tolerance = 1e-12;
    opts.project_constants = true;
    const SolveResult r = cg_solve(periodic_laplacian(n), b, opts);
    const double lambda = 2.0 - 2.0 * std::cos(2.0 * std::numbers::pi / n);
    REQUIRE(r.report.converged);
    for (std::size_t i = 0; i < n; ++i) {
        CHECK(r.x[i] == doctest::Approx(b[i] / lambda).epsilon(1e-10));
    }
}

TEST_CASE("semidefinite system projects the right-hand side") {
    const std::size_t n = 16;
    std::vector<double> b(n, 0.0);
    b[0] = 1.0;
    b[5] = 3.0;
    SolveOptions opts;
    opts.tolerance = 1e-12;
    opts.project_constants = true;
    const CsrMatrix a = periodic_laplacian(n);
    const SolveResult r = cg_solve(a, b, opts);
    REQUIRE(r.report.converged);
    CHECK(std::accumulate(r.x.begin(), r.x.end(), 0.0) == doctest::Approx(0.0).scale(1.0));
    std::vector<double> projected = b;
    remove_mean(projected);
    CHECK(true_residual(a, r.x, projected) <= 1e-12 * 10);
}

TEST_CASE("matrix operations are symmetric and kill constants") {
    std::mt19937_64 rng(7);
    const CsrMatrix a = periodic_laplacian(50);
    for (int trial = 0; trial < 5; ++trial) {
        const auto x = testing::random_vector(50, rng);
        const auto y = testing::random_vector(50, rng);
        const double xay = dot(x, a.apply(y));
        const double yax = dot(y, a.apply(x));
        CHECK(std::abs(xay - yax) <= 1e-12 * std::max(std::abs(xay), 1.0));
    }
    const std::vector<double> ones(50, 1.0);
    CHECK(testing::max_abs(a.apply(ones)) <= 1e-12);
}

TEST_CASE("triplet duplicates are summed") {
    TripletBuilder tb(2);
    tb.add(0, 0, 1.0);
    tb.add(0, 0, 2.0);
    tb.add(1, 0, -1.0);
    tb.add(1, 1, 4.0);
    const CsrMatrix a = tb.build();
    CHECK(a.at(0, 0) == 3.0);
    CHECK(a.at(0, 1) == 0.0);
    CHECK(a.at(1, 0) == -1.0);
    CHECK(a.diagonal() == std::vector<double>{3.0, 4.0});
}

TEST_CASE("conjugate gradients agree with a dense solve") {
    std::mt19937_64 rng(11);
    for (int m : {5, 12, 31}) {
        const CsrMatrix a = shifted_laplacian(m, rng);
        const auto b = testing::random_vector(a.rows(), rng);
        SolveOptions opts;
        opts.tolerance = 1e-10;
        const SolveResult r = cg_solve(a, b, opts);
        REQUIRE(r.report.converged);
        CHECK(r.report.residual <= opts.tolerance);
        CHECK(true_residual(a, r.x, b) <= opts.tolerance * 1.01);
        const auto exact = testing::dense_solve(a, b);
        CHECK(testing::max_abs_diff(r.x, exact) <= 10.0 * opts.tolerance * testing::max_abs(exact));
    }
}

TEST_CASE("conjugate gradient residuals trend downward") {
    std::mt19937_64 rng(3);
    const CsrMatrix a = shifted_laplacian(30, rng);
    const auto b = testing::random_vector(a.rows(), rng);
    std::vector<double> history;
    SolveOptions opts;
    opts.tolerance = 1e-12;
    opts.on_iterate = [&](int, std::span<const double> x) {
        history.push_back(true_residual(a, {x.begin(), x.end()}, b));
    };
    const SolveResult r = cg_solve(a, b, opts);
    REQUIRE(r.report.converged);
    for (std::size_t k = 10; k < history.size(); k += 10) {
        CHECK(history[k] <= history[k - 10] + 1e-10);
    }
}

TEST_CASE("bicgstab solves nonsymmetric systems") {
    std::mt19937_64 rng(5);
    for (double pe : {0.0, 1.0, 20.0}) {
        const CsrMatrix a = convection_diffusion(400, pe);
        const auto b = testing::random_vector(a.rows(), rng);
        SolveOptions opts;
        opts.tolerance = 1e-12;
        const SolveResult r = bicgstab_solve(a, b, opts);
        REQUIRE(r.report.converged);
        CHECK(true_residual(a, r.x, b) <= opts.tolerance * 1.01);
        const auto exact = testing::dense_solve(a, b);
        CHECK(testing::max_abs_diff(r.x, exact) <= 1e-9 * testing::max_abs(exact));
    }
}

TEST_CASE("a good guess is accepted without iterations") {
    std::mt19937_64 rng(9);
    const CsrMatrix a = shifted_laplacian(8, rng);
    const auto b = testing::random_vector(a.rows(), rng);
    const auto exact = testing::dense_solve(a, b);
    const SolveResult r = cg_solve(a, b, {}, exact);
    CHECK(r.report.converged);
    CHECK(r.report.iterations == 0);
}

TEST_CASE("iteration limit reports non-convergence") {
    std::mt19937_64 rng(2);
    const CsrMatrix a = shifted_laplacian(20, rng);
    const auto b = testing::random_vector(a.rows(), rng);
    SolveOptions opts;
    opts.tolerance = 1e-14;
    opts.max_iterations = 3;
    const SolveResult r = cg_solve(a, b, opts);
    CHECK_FALSE(r.report.converged);
    CHECK(r.report.iterations == 3);
}
