#include "porheat/coupling.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "porheat/parallel.hpp"

namespace porheat {

MicroEnsemble uniform_ensemble(const SolidCellStepper& micro, std::size_t points, double value) {
    MicroEnsemble e;
    e.states.assign(points, micro.uniform(value));
    return e;
}

std::vector<double> IterationTrace::ratios() const {
    std::vector<double> r;
    for (std::size_t k = 1; k < errors.size(); ++k) {
        r.push_back(errors[k - 1] > 0.0 ? errors[k] / errors[k - 1] : 0.0);
    }
    return r;
}

double grid_l2(const MacroGrid& grid, const std::vector<double>& a, const std::vector<double>& b) {
    double s = 0.0;
    for (std::size_t c = 0; c < a.size(); ++c) {
        const double d = a[c] - b[c];
        s += d * d;
    }
    return std::sqrt(s * grid.cell_volume());
}

namespace {

std::vector<double> cell_traces(const MicroEnsemble& micro, const SolidCellStepper& cell,
                                const CollocationSet& points) {
    std::vector<double> at_points(micro.states.size());
    for (std::size_t i = 0; i < at_points.size(); ++i) {
        at_points[i] = cell.trace(micro.states[i]);
    }
    return points.interpolate(at_points);
}

}  // namespace

CoupledStep advance_case_a(const MacroState& state, const MicroEnsemble& micro,
                           DisconnectedStepper& macro, const SolidCellStepper& cell,
                           const CollocationSet& points, double tau, int max_iter) {
    if (!(tau > 0.0) || max_iter < 1) {
        throw std::invalid_argument("fixed-point tolerance and iteration limit must be positive");
    }
    if (micro.states.size() != points.size()) {
        throw std::invalid_argument("one micro state per collocation point is required");
    }
    const MacroGrid& grid = macro.system().problem().grid;
    const double source = macro.system().problem().sources.solid;
    const std::size_t porous = grid.porous_count();

    CoupledStep out;
    out.trace.tolerance = tau;
    MacroState current = macro.step(state, cell_traces(micro, cell, points));
    MicroEnsemble stepped;
    stepped.states.resize(points.size());
    for (int k = 0; k < max_iter; ++k) {
        const std::vector<double> fluid(current.theta.begin(),
                                        current.theta.begin() + static_cast<std::ptrdiff_t>(porous));
        const std::vector<double> input = points.sample(fluid);
        parallel_for(points.size(), [&](std::size_t i) {
            stepped.states[i] = cell.step(micro.states[i], input[i], source);
        });
        MacroState next = macro.step(state, cell_traces(stepped, cell, points));
        const double e = grid_l2(grid, next.theta, current.theta);
        out.trace.errors.push_back(e);
        out.trace.iterations = k + 1;
        current = std::move(next);
        if (e < tau) {
            out.trace.converged = true;
            out.state = std::move(current);
            out.micro = std::move(stepped);
            out.heat_input = macro.last_input();
            return out;
        }
    }
    std::ostringstream msg;
    msg << "fixed-point iteration did not reach tau = " << tau << " within " << max_iter
        << " iterations (last e = " << out.trace.errors.back() << ")";
    throw FixedPointError(msg.str(), out.trace);
}

ContractionBound contraction_bound(const PhysicalParams& params, double dt,
                                   const VelocityField& velocity) {
    ContractionBound b;
    b.alpha = params.alpha;
    b.interface_area = params.measures.interface_area;
    b.rho_c_f = params.rho_c_f;
    b.fluid_fraction = params.measures.fluid_fraction;
    b.dt = dt;
    b.speed = velocity.max_speed();
    b.lambda = std::min(std::abs(params.kappa_h_f[0]), std::abs(params.kappa_h_f[1]));
    b.delta = b.lambda;
    const double num = b.alpha * b.interface_area;
    double convective = 0.0;
    if (b.speed > 0.0) {
        convective = b.delta > 0.0 ? b.rho_c_f * b.rho_c_f * b.speed * b.speed / (2.0 * b.delta)
                                   : INFINITY;
    }
    const double den = num + b.rho_c_f * b.fluid_fraction / dt - convective;
    b.valid = den > num;
    b.rho = b.valid && den > 0.0 ? num / den : INFINITY;
    return b;
}

}  // namespace porheat
