#pragma once

#include <vector>

#include "porheat/collocation.hpp"
#include "porheat/coupling.hpp"
#include "porheat/diagnostics.hpp"
#include "porheat/geometry.hpp"
#include "porheat/macro_solver.hpp"

namespace porheat {

struct RunSettings {
    double dt = 0.1;
    double horizon = 20.0;
    double theta0 = 0.0;
    double solid0 = 0.0;
    /// Keep a snapshot every this many steps (and at t = 0); 0 keeps none.
    int snapshot_every = 1;
};

struct TraceRow {
    int step = 0;
    int iteration = 0;
    double error = 0.0;
    double bound = 0.0;
};

struct RunResult {
    /// One entry at t = 0 and one per step.
    std::vector<EnergySample> energies;
    std::vector<Snapshot> snapshots;
    /// Fixed-point errors of every step (coupled runs only).
    std::vector<TraceRow> trace;
    MacroState state;
    /// Final solid temperature per porous cell; empty for memory runs.
    std::vector<double> solid;
};

/// Copy of `problem` whose |Y^f|, |Y^s| and |Gamma| come from the micro cell,
/// so macro exchange and micro storage see the same measures.
MacroProblem with_cell_measures(MacroProblem problem, const CellGeometry& cell);

MicroParams micro_params(const PhysicalParams& params);

RunResult run_connected(const MacroProblem& problem, const RunSettings& settings);

/// Disconnected model advanced by fixed-point iteration with the micro cells
/// solved at the collocation points.
RunResult run_coupled(const MacroProblem& problem, const CellGeometry& cell,
                      const CollocationPattern& pattern, const RunSettings& settings,
                      double tau, int max_iter);

/// Disconnected model with the micro problems replaced by the memory kernel.
/// Solid energy is accumulated from the exchanged heat.
RunResult run_memory(const MacroProblem& problem, const CellGeometry& cell,
                     const CollocationPattern& pattern, const RunSettings& settings);

}  // namespace porheat
