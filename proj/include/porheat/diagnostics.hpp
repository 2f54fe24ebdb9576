#pragma once

#include <vector>

#include "porheat/collocation.hpp"
#include "porheat/coupling.hpp"
#include "porheat/macro_solver.hpp"

namespace porheat {

/// Enthalpies of the free fluid, the porous fluid and the solid.
struct EnergyParts {
    double free_fluid = 0.0;
    double porous_fluid = 0.0;
    double solid = 0.0;

    double total() const { return free_fluid + porous_fluid + solid; }
};

struct EnergySample {
    double time = 0.0;
    EnergyParts parts;
    /// Heat supplied since t = 0.
    double input = 0.0;
    /// |total - input - E(0)| / max(|input|, |E(0)|, 1e-12).
    double residual = 0.0;
};

/// E^ff = sum rho_c_f V theta, E^f = |Y^f| sum rho_c_f V theta over porous
/// cells, E^s = |Y^s| sum rho_c_s V solid with `solid` per porous cell
/// (state.solid when null).
EnergyParts energies(const MacroState& state, const MacroGrid& grid, const PhysicalParams& params,
                     const std::vector<double>* solid = nullptr);

double conservation_residual(double total, double input, double initial);

/// Solid volume average per collocation point, interpolated to porous cells.
std::vector<double> ensemble_average(const MicroEnsemble& micro, const SolidCellStepper& cell,
                                     const CollocationSet& points);

struct ProfileSample {
    std::vector<double> coordinate;
    std::vector<double> theta;
    /// Solid temperature on porous rows (first entries), empty when absent.
    std::vector<double> solid;
};

/// Values along the vertical line x_1 = x1 from the nearest column.
ProfileSample profile(const MacroState& state, const MacroGrid& grid, double x1,
                      const std::vector<double>* solid = nullptr);

/// Fields recorded at one output time; solid is per porous cell.
struct Snapshot {
    double time = 0.0;
    std::vector<double> theta;
    std::vector<double> solid;
};

struct Difference {
    double time = 0.0;
    double free_fluid = 0.0;
    /// Combined fluid and solid difference over the porous layer.
    double porous = 0.0;
};

Difference l2_difference(const Snapshot& a, const Snapshot& b, const MacroGrid& grid);
/// Per-step differences; throws unless both series share the same times.
std::vector<Difference> l2_difference(const std::vector<Snapshot>& a,
                                      const std::vector<Snapshot>& b, const MacroGrid& grid);
/// Differences divided by the norms of `reference` over the same subdomain.
std::vector<Difference> relative_difference(const std::vector<Snapshot>& reference,
                                            const std::vector<Snapshot>& other,
                                            const MacroGrid& grid);

}  // namespace porheat
