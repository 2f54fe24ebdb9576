#pragma once

#include <array>
#include <string>
#include <vector>

#include "porheat/geometry.hpp"
#include "porheat/linalg.hpp"

namespace porheat {

/// Scalar field on the voxels of one phase, stored in phase-voxel order.
struct CellField {
    Phase phase = Phase::fluid;
    std::vector<std::size_t> voxels;
    std::vector<double> values;
    bool zero_mean = true;
    SolveReport report;
};

using Matrix3 = std::array<std::array<double, 3>, 3>;

/// Effective conductivity (absolute units) of one phase of a cell.
struct EffectiveTensor {
    int dimension = 3;
    Phase phase = Phase::fluid;
    Matrix3 entries{};
    double conductivity = 1.0;  // the microscopic kappa the tensor was scaled with
    std::string geometry;
    int resolution = 0;
    /// max |K_ij - K_ji| / max |K_ij| before symmetrization.
    double asymmetry = 0.0;
    std::vector<SolveReport> reports;
    std::vector<std::string> warnings;

    double operator()(int i, int j) const { return entries[i][j]; }
    /// Quadratic form zeta . K zeta.
    double quadratic(const std::array<double, 3>& zeta) const;
};

struct CorrectorOptions {
    double tolerance = 1e-10;
    int max_iterations = 50000;
};

/// Periodic corrector for direction `direction` on one phase. Faces between
/// voxels of the phase conduct in proportion to their open share; faces to the
/// other phase carry none, which imposes the natural flux condition on Gamma. The fluid problem
/// uses +e_i, the solid problem -e_i; both are normalized to zero mean.
CellField solve_corrector(const CellGeometry& geom, Phase phase, int direction,
                          const CorrectorOptions& opts = {});

/// (K)_ij = kappa * sum over open phase faces normal to j of (grad xi_i +/- e_i) . e_j,
/// symmetrized. Corrector solves for the d directions run in parallel.
EffectiveTensor effective_conductivity(const CellGeometry& geom, Phase phase, double kappa,
                                       const CorrectorOptions& opts = {});

}  // namespace porheat
