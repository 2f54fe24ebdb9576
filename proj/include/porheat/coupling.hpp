#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "porheat/cell_transient.hpp"
#include "porheat/collocation.hpp"
#include "porheat/macro_solver.hpp"

namespace porheat {

/// Solid cell state at every collocation point.
struct MicroEnsemble {
    std::vector<SolidCellState> states;
};

MicroEnsemble uniform_ensemble(const SolidCellStepper& micro, std::size_t points, double value);

/// Fixed-point history of one time step. errors[k] is e_{k+1}.
struct IterationTrace {
    std::vector<double> errors;
    int iterations = 0;
    bool converged = false;
    double tolerance = 0.0;

    /// e_{k+1} / e_k for consecutive entries.
    std::vector<double> ratios() const;
};

class FixedPointError : public std::runtime_error {
public:
    FixedPointError(const std::string& what, IterationTrace trace)
        : std::runtime_error(what), trace_(std::move(trace)) {}
    const IterationTrace& trace() const { return trace_; }

private:
    IterationTrace trace_;
};

struct CoupledStep {
    MacroState state;
    MicroEnsemble micro;
    IterationTrace trace;
    double heat_input = 0.0;
};

/// L2 norm over all cells, sqrt(sum_c V_c d_c^2).
double grid_l2(const MacroGrid& grid, const std::vector<double>& a, const std::vector<double>& b);

/// One time step of the disconnected model by fixed-point iteration between
/// the macro step and the micro steps at the collocation points. The first
/// macro step uses the micro states of the previous time; every pass then
/// steps all micro cells from the previous time with the latest fluid field
/// and redoes the macro step until e_k < tau. Returns the last macro field
/// together with the micro states that produced it.
CoupledStep advance_case_a(const MacroState& state, const MicroEnsemble& micro,
                           DisconnectedStepper& macro, const SolidCellStepper& cell,
                           const CollocationSet& points, double tau, int max_iter);

struct ContractionBound {
    double rho = 0.0;
    bool valid = false;
    double alpha = 0.0;
    double interface_area = 0.0;
    double rho_c_f = 0.0;
    double fluid_fraction = 0.0;
    double dt = 0.0;
    double speed = 0.0;
    double delta = 0.0;
    double lambda = 0.0;
};

/// rho = alpha|Gamma| / (alpha|Gamma| + rho_c_f |Y^f|/dt - rho_c_f^2 |v|^2 / (2 delta)),
/// lambda the smallest diagonal entry of kappa_h^f and delta = lambda. Invalid
/// when the denominator does not exceed the numerator.
ContractionBound contraction_bound(const PhysicalParams& params, double dt,
                                   const VelocityField& velocity);

}  // namespace porheat
