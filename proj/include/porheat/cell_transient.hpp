#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "porheat/geometry.hpp"
#include "porheat/linalg.hpp"

namespace porheat {

/// Material data of the solid inclusion problem.
struct MicroParams {
    double rho_c = 1.0;  // rho^s c^s
    double kappa = 0.4;  // kappa^s
    double alpha = 0.1;
};

/// Solid temperature of one cell, one value per solid voxel.
struct SolidCellState {
    std::vector<double> values;
    double time = 0.0;
};

/// Implicit-Euler stepper for the solid cell with Robin exchange on Gamma:
///   (C/dt + kappa L + alpha diag(A)) s' = C/dt s + alpha A theta_f + V f.
/// C = rho_c V, V are the (volume weighted) voxel volumes and A the (area
/// weighted) Gamma face area carried by each solid voxel. The matrix is built
/// once and shared by every collocation point.
class SolidCellStepper {
public:
    SolidCellStepper(const CellGeometry& geom, MicroParams params, double dt,
                     double tolerance = 1e-12);

    std::size_t size() const { return voxels_.size(); }
    double dt() const { return dt_; }
    const MicroParams& params() const { return params_; }
    const std::vector<std::size_t>& voxels() const { return voxels_; }
    /// Gamma area per solid voxel; sums to the analytic |Gamma|.
    const std::vector<double>& boundary_area() const { return area_; }
    /// Volume per solid voxel; sums to the analytic |Y^s|.
    const std::vector<double>& volume() const { return volume_; }
    double interface_area() const { return gamma_; }
    double solid_fraction() const { return solid_fraction_; }

    SolidCellState uniform(double value, double time = 0.0) const;
    /// One step with fluid temperature `theta_f` on Gamma and solid source `source`.
    SolidCellState step(const SolidCellState& s, double theta_f, double source) const;
    /// Same with the Robin exchange switched off (insulated Gamma).
    SolidCellState step_insulated(const SolidCellState& s, double source) const;

    /// int_Gamma s.
    double trace(const SolidCellState& s) const;
    /// (1/|Y^s|) int_{Y^s} s.
    double average(const SolidCellState& s) const;

private:
    SolidCellState solve(const CsrMatrix& m, const SolidCellState& s, double theta_f,
                         double source, bool exchange) const;

    MicroParams params_;
    double dt_;
    double tolerance_;
    std::vector<std::size_t> voxels_;
    std::vector<double> volume_;
    std::vector<double> area_;
    double gamma_ = 0.0;
    double solid_fraction_ = 0.0;
    CsrMatrix robin_;
    CsrMatrix insulated_;
};

SolidCellState step_solid_cell(const CellGeometry& geom, const SolidCellState& state,
                               double theta_f, double source, double dt,
                               const MicroParams& params);
double boundary_trace_integral(const SolidCellState& state, const CellGeometry& geom);
double volume_average(const SolidCellState& state, const CellGeometry& geom);

/// Step responses of the discrete solid cell on a fixed dt grid.
///
/// psi[n-1] = (trace xi_n - trace xi_{n-1}) / dt where xi starts at 0 and sees
/// theta_f = 1. Linearity of the stepper gives, for a point with input history
/// u_1..u_n, uniform initial value s0 and constant source f,
///   trace s_n = sum_k psi_k dt u_{n-k+1} + s0 initial_response[n-1]
///             + f source_response[n-1].
struct MemoryKernel {
    double dt = 0.0;
    std::vector<double> psi;
    /// sum_{k<=n} psi_k dt.
    std::vector<double> cumulative;
    /// trace of the cell started at 1 with theta_f = 0.
    std::vector<double> initial_response;
    /// trace of the cell started at 0 with theta_f = 0 and unit source.
    std::vector<double> source_response;
    /// max_y |xi_N - 1| at the horizon.
    double final_deviation = 0.0;
    /// Steps whose psi sample fell below -1e-8.
    std::vector<std::size_t> negative_samples;
    double interface_area = 0.0;
    MicroParams params;
    std::string geometry;

    std::size_t steps() const { return psi.size(); }
};

/// `tolerance` is the relative residual of each cell solve; very stiff cells
/// (huge kappa) floor above 1e-12 in double precision.
MemoryKernel compute_kernel(const CellGeometry& geom, const MicroParams& params, double horizon,
                            double dt, double tolerance = 1e-12);

/// Auxiliary source eta_bar_n = int_Gamma eta_n + |Gamma| theta0_f, eta solving
/// the insulated solid problem from eta_0 = theta0_s - theta0_f with source f^s.
struct AuxiliarySource {
    double dt = 0.0;
    std::vector<double> samples;
};

AuxiliarySource compute_eta_bar(const CellGeometry& geom, const MicroParams& params,
                                const std::vector<double>& source, double initial_gap,
                                double theta0_f, double horizon, double dt);

/// Number of steps of size dt in [0, horizon]; throws unless dt divides horizon.
int step_count(double horizon, double dt);

}  // namespace porheat
