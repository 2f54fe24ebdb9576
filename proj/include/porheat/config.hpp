#pragma once

#include <array>
#include <filesystem>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "porheat/collocation.hpp"
#include "porheat/geometry.hpp"
#include "porheat/macro_solver.hpp"

namespace porheat {

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

enum class Mode { tensors, kernel, steady, transient_a, transient_b, memory, transition, convection };

Mode parse_mode(const std::string& name);
std::string mode_name(Mode m);

/// Boundary entry; a Robin coefficient marked `automatic` is alpha |Sigma^s|.
struct BoundaryEntry {
    Condition::Kind kind = Condition::Kind::insulated;
    double value = 0.0;
    double coefficient = 0.0;
    bool automatic = false;
    bool operator==(const BoundaryEntry&) const = default;
};

/// Effective data of a connected cell. Tensors are relative to kappa_f and
/// kappa_s, (x_1, x_2) entries.
struct ConnectedCell {
    std::string label = "C1";
    std::array<double, 2> kappa_h_f{0.501, 0.624};
    std::array<double, 2> kappa_h_s{0.093, 0.256};
    double fluid_fraction = 0.6906;
    double interface_area = 2.7451;
    double exterior_trace = 0.245;
    bool operator==(const ConnectedCell&) const = default;
};

struct TransitionSweep {
    std::vector<double> c{0.2, 0.1, 0.05, 0.0};
    std::vector<double> kappa_h_f{0.564, 0.581, 0.584, 0.586};
    std::vector<double> kappa_h_s{0.078, 0.025, 0.006, 0.0};
    std::vector<double> interface_area{3.1012, 3.0232, 2.9108, 2.7451};
    std::vector<double> exterior_trace{0.04, 0.01, 0.0025, 0.0};
    double fluid_fraction = 0.6906;
    bool operator==(const TransitionSweep&) const = default;
};

/// Replace computed cell data; tensors relative to kappa_f / kappa_s.
struct Overrides {
    std::optional<std::array<double, 2>> kappa_h_f;
    std::optional<std::array<double, 2>> kappa_h_s;
    std::optional<double> fluid_fraction;
    std::optional<double> interface_area;
    std::optional<double> exterior_trace;
    bool operator==(const Overrides&) const = default;
};

struct RunConfig {
    std::optional<Mode> mode;

    // [run]
    double dt = 0.1;
    double horizon = 20.0;
    double tau = 1e-5;
    int max_iter = 50;
    double theta0 = 0.0;
    double solid0 = 0.0;
    ModelKind model = ModelKind::connected;
    std::optional<double> profile_x1;
    unsigned threads = 0;

    // [cell], [micro]
    CellSpec cell{3, {CenteredCube{0.6764}}, "DC1", std::nullopt};
    int resolution = 64;
    int micro_resolution = 16;
    bool refine = false;

    // [macro]
    double length = 2.0;
    double height = 1.0;
    double interface_height = 0.5;
    int nx = 1;
    int ny = 40;
    double tolerance = 1e-12;

    // [physical]
    double rho_c_f = 1.0;
    double rho_c_s = 1.0;
    double kappa_f = 0.1;
    double kappa_s = 0.4;
    double alpha = 0.1;
    std::optional<double> permeability;

    Overrides overrides;
    SourceSpec source;

    // [boundary]
    std::array<BoundaryEntry, 4> free_fluid{};
    std::array<BoundaryEntry, 4> porous_fluid{};
    std::array<BoundaryEntry, 4> solid{};

    // [velocity]
    VelocityKind velocity = VelocityKind::zero;
    double darcy = 0.0;

    CollocationPattern collocation;

    // [sweep]
    std::vector<double> alpha_sweep;

    ConnectedCell connected;
    TransitionSweep transition;

    bool operator==(const RunConfig&) const = default;
};

/// Parses the INI text, fills defaults and validates. Errors name the
/// offending key as section.key.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::filesystem::path& path);
/// Canonical text that parses back to the same configuration.
std::string serialize(const RunConfig& config);

MacroGrid macro_grid(const RunConfig& config);
BoundarySpec boundary_spec(const RunConfig& config, double alpha, double exterior_trace);

}  // namespace porheat
