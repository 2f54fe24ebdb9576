#include "porheat/simulation.hpp"

#include <stdexcept>

namespace porheat {

namespace {

class Recorder {
public:
    Recorder(const MacroProblem& problem, const RunSettings& settings, RunResult& out)
        : problem_(problem), settings_(settings), out_(out) {}

    void record(const MacroState& state, const std::vector<double>& solid, double step_input,
                const EnergyParts* parts = nullptr) {
        const EnergyParts e =
            parts != nullptr ? *parts : energies(state, problem_.grid, problem_.params, &solid);
        EnergySample s;
        s.time = state.time;
        s.parts = e;
        if (out_.energies.empty()) {
            initial_ = e.total();
        } else {
            input_ += step_input;
        }
        s.input = input_;
        s.residual = conservation_residual(e.total(), input_, initial_);
        out_.energies.push_back(s);
        const int every = settings_.snapshot_every;
        if (every > 0 && state.step % every == 0) {
            out_.snapshots.push_back({state.time, state.theta, solid});
        }
    }

private:
    const MacroProblem& problem_;
    const RunSettings& settings_;
    RunResult& out_;
    double initial_ = 0.0;
    double input_ = 0.0;
};

}  // namespace

MacroProblem with_cell_measures(MacroProblem problem, const CellGeometry& cell) {
    const CellMeasures& m = cell.measures();
    problem.params.measures.fluid_fraction = m.fluid_fraction;
    problem.params.measures.solid_fraction = m.solid_fraction;
    problem.params.measures.interface_area = m.interface_area;
    return problem;
}

MicroParams micro_params(const PhysicalParams& params) {
    return {params.rho_c_s, params.kappa_s, params.alpha};
}

RunResult run_connected(const MacroProblem& problem, const RunSettings& settings) {
    const int steps = step_count(settings.horizon, settings.dt);
    ConnectedStepper stepper(problem, settings.dt);
    RunResult out;
    Recorder rec(problem, settings, out);
    MacroState state = uniform_state(problem, ModelKind::connected, settings.theta0, settings.solid0);
    rec.record(state, state.solid, 0.0);
    for (int n = 0; n < steps; ++n) {
        state = stepper.step(state);
        rec.record(state, state.solid, stepper.last_input());
    }
    out.solid = state.solid;
    out.state = std::move(state);
    return out;
}

RunResult run_coupled(const MacroProblem& problem_in, const CellGeometry& cell,
                      const CollocationPattern& pattern, const RunSettings& settings,
                      double tau, int max_iter) {
    const MacroProblem problem = with_cell_measures(problem_in, cell);
    const int steps = step_count(settings.horizon, settings.dt);
    const CollocationSet points = build_collocation(problem.grid, pattern);
    const SolidCellStepper micro(cell, micro_params(problem.params), settings.dt);
    DisconnectedStepper macro(problem, settings.dt);
    const double bound = contraction_bound(problem.params, settings.dt, problem.velocity).rho;

    RunResult out;
    Recorder rec(problem, settings, out);
    MacroState state = uniform_state(problem, ModelKind::disconnected, settings.theta0);
    MicroEnsemble ensemble = uniform_ensemble(micro, points.size(), settings.solid0);
    rec.record(state, ensemble_average(ensemble, micro, points), 0.0);
    for (int n = 0; n < steps; ++n) {
        CoupledStep next = advance_case_a(state, ensemble, macro, micro, points, tau, max_iter);
        for (std::size_t k = 0; k < next.trace.errors.size(); ++k) {
            out.trace.push_back({n + 1, static_cast<int>(k) + 1, next.trace.errors[k], bound});
        }
        state = std::move(next.state);
        ensemble = std::move(next.micro);
        rec.record(state, ensemble_average(ensemble, micro, points), next.heat_input);
    }
    out.solid = ensemble_average(ensemble, micro, points);
    out.state = std::move(state);
    return out;
}

RunResult run_memory(const MacroProblem& problem_in, const CellGeometry& cell,
                     const CollocationPattern& pattern, const RunSettings& settings) {
    const MacroProblem problem = with_cell_measures(problem_in, cell);
    const CollocationSet points = build_collocation(problem.grid, pattern);
    const MemoryKernel kernel =
        compute_kernel(cell, micro_params(problem.params), settings.horizon, settings.dt);
    MemoryStepper stepper(problem, settings.dt, kernel, points,
                          std::vector<double>(points.size(), settings.solid0));

    RunResult out;
    Recorder rec(problem, settings, out);
    MacroState state = uniform_state(problem, ModelKind::disconnected, settings.theta0);
    const std::vector<double> initial_solid(problem.grid.porous_count(), settings.solid0);
    EnergyParts parts = energies(state, problem.grid, problem.params, &initial_solid);
    rec.record(state, {}, 0.0, &parts);
    for (std::size_t n = 0; n < kernel.steps(); ++n) {
        state = stepper.step(state);
        const double solid = parts.solid + stepper.last_solid_gain();
        parts = energies(state, problem.grid, problem.params, &initial_solid);
        parts.solid = solid;
        rec.record(state, {}, stepper.last_input(), &parts);
    }
    out.state = std::move(state);
    return out;
}

}  // namespace porheat
