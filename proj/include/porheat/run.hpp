#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "porheat/config.hpp"
#include "porheat/macro_solver.hpp"

namespace porheat {

/// Macro coefficients for `kind`: overrides where given, otherwise measures
/// of the configured cell and tensors from its cell problems.
PhysicalParams physical_params(const RunConfig& config, ModelKind kind);
/// Coefficients of the connected partner used by transition and convection runs.
PhysicalParams connected_params(const RunConfig& config, const ConnectedCell& cell);
MacroProblem macro_problem(const RunConfig& config, const PhysicalParams& params);

/// Runs `mode` and writes its files plus manifest.txt into `out`. Progress
/// goes to `log`. Returns the written file names.
std::vector<std::string> execute(const RunConfig& config, Mode mode,
                                 const std::filesystem::path& out, std::ostream& log);

}  // namespace porheat
