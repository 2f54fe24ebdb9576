#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "porheat/cell_transient.hpp"
#include "porheat/collocation.hpp"
#include "porheat/geometry.hpp"
#include "porheat/linalg.hpp"

namespace porheat {

/// Macro coefficients. Tensors are diagonal and stored as (x_1, x_2) entries
/// in absolute units.
struct PhysicalParams {
    double rho_c_f = 1.0;
    double rho_c_s = 1.0;
    double kappa_f = 0.1;
    double kappa_s = 0.4;
    double alpha = 0.1;
    std::array<double, 2> kappa_h_f{0.0586, 0.0586};
    std::array<double, 2> kappa_h_s{0.0, 0.0};
    CellMeasures measures{0.6906, 0.3094, 2.7451, 0.0};
    std::optional<double> permeability;
};

enum class VelocityKind { zero, parallel_channel, custom };

/// Face-normal velocities. x_faces[j*(nx+1)+i] sits on x_1 = i dx in row j;
/// y_faces[j*nx+i] on x_2 = j dy in column i. Porous faces carry the Darcy
/// mean velocity, free-fluid faces the fluid velocity.
struct VelocityField {
    VelocityKind kind = VelocityKind::zero;
    std::vector<double> x_faces;
    std::vector<double> y_faces;
    double darcy = 0.0;

    bool moving() const;
    double max_speed() const;
};

/// Free-fluid channel profile 16 (x_2 - 0.5)(1 - x_2) used above the layer.
double channel_profile(double x2);

/// zero: all faces at rest. parallel_channel: horizontal flow, the channel
/// profile at free-fluid row centers and `darcy` in porous rows.
VelocityField make_velocity(VelocityKind kind, const MacroGrid& grid, double darcy = 0.0);
/// Validates sizes and that every cell is divergence free to 1e-12.
VelocityField custom_velocity(const MacroGrid& grid, std::vector<double> x_faces,
                              std::vector<double> y_faces);

enum class InterfaceSchedule { none, step, oscillating };

/// Volumetric sources per unit volume of each phase and the interface source
/// f_Sigma(t) = amplitude for t <= cutoff. The oscillating variant evaluates
/// the step at 2 (t mod period).
struct SourceSpec {
    double fluid = 0.0;
    double solid = 0.0;
    InterfaceSchedule schedule = InterfaceSchedule::none;
    double amplitude = 1.0;
    double cutoff = 10.0;
    double period = 10.0;

    double interface_value(double t) const;
    bool operator==(const SourceSpec&) const = default;
};

enum class Side : int { left = 0, right = 1, bottom = 2, top = 3 };

struct Condition {
    enum class Kind { insulated, dirichlet, robin };
    Kind kind = Kind::insulated;
    double value = 0.0;        // Dirichlet value or Robin ambient
    double coefficient = 0.0;  // Robin transfer coefficient per unit length

    static Condition insulated() { return {}; }
    static Condition dirichlet(double v) { return {Kind::dirichlet, v, 0.0}; }
    static Condition robin(double coefficient, double ambient) {
        return {Kind::robin, ambient, coefficient};
    }
    bool operator==(const Condition&) const = default;
};

/// External boundary data per side; left/right sides may differ between the
/// free-fluid and the porous rows.
struct BoundarySpec {
    std::array<Condition, 4> free_fluid{};
    std::array<Condition, 4> porous_fluid{};
    std::array<Condition, 4> solid{};

    const Condition& fluid(Side s, bool porous) const {
        return porous ? porous_fluid[static_cast<int>(s)] : free_fluid[static_cast<int>(s)];
    }
};

enum class ModelKind { connected, disconnected };

struct MacroProblem {
    MacroGrid grid;
    PhysicalParams params;
    VelocityField velocity;
    SourceSpec sources;
    BoundarySpec boundaries;
    double tolerance = 1e-12;
    int max_iterations = 20000;
};

/// theta covers every cell (free fluid and porous fluid); solid covers porous
/// cells in the connected model. history holds the sampled fluid input of
/// every past step for the memory formulation.
struct MacroState {
    std::vector<double> theta;
    std::vector<double> solid;
    std::vector<double> interface_nodes;
    double time = 0.0;
    int step = 0;
    std::vector<std::vector<double>> history;
};

MacroState uniform_state(const MacroProblem& problem, ModelKind kind, double theta,
                         double solid = 0.0);

/// One assembled implicit-Euler (dt > 0) or stationary (dt = 0) system.
///
/// Unknowns: theta per cell, then solid per porous cell (connected), then
/// per-column nodes on Sigma carrying the fluid face value and, where the solid
/// reaches Sigma, the solid face value. The nodes have no capacity; they
/// carry the interface source and the Sigma Robin exchange.
class MacroSystem {
public:
    /// `exchange`: disconnected model only; adds alpha |Gamma| theta to porous
    /// rows, balanced by the supplied micro traces at solve time.
    /// `coupling`: extra porous-to-porous matrix entries (memory formulation).
    MacroSystem(const MacroProblem& problem, ModelKind kind, double dt, bool exchange = true,
                const std::vector<SparseRow>* coupling = nullptr);

    const MacroProblem& problem() const { return problem_; }
    ModelKind kind() const { return kind_; }
    double dt() const { return dt_; }
    std::size_t unknowns() const { return unknowns_; }
    const CsrMatrix& matrix() const { return matrix_; }
    bool symmetric() const { return symmetric_; }

    /// Right-hand side for the step ending at t_next. `traces` (disconnected)
    /// holds int_Gamma theta^s per porous cell.
    std::vector<double> rhs(const MacroState& prev, double t_next,
                            const std::vector<double>* traces = nullptr,
                            const std::vector<double>* extra = nullptr) const;
    /// Solves and unpacks; `heat_input` receives dt times the total rate of
    /// heat entering through sources and boundaries.
    MacroState solve(const std::vector<double>& rhs, const MacroState& prev, double t_next,
                     double* heat_input = nullptr) const;
    /// Source rate (volume and interface) at time t, including solid sources.
    double source_rate(double t) const;
    /// Rate of heat entering through the external boundary for solution x.
    double boundary_rate(const std::vector<double>& x) const;

    std::vector<double> pack(const MacroState& s) const;

private:
    struct BoundaryFlow {
        std::size_t unknown;
        double a;  // inflow = b - a x[unknown]
        double b;
    };
    void link(TripletBuilder& tb, std::size_t a, std::size_t b, double g);

    MacroProblem problem_;
    ModelKind kind_;
    double dt_;
    bool exchange_;
    std::size_t cells_ = 0;
    std::size_t porous_ = 0;
    std::size_t solid_offset_ = 0;
    std::vector<std::size_t> fluid_node_;
    std::vector<std::ptrdiff_t> solid_node_;
    std::size_t unknowns_ = 0;
    CsrMatrix matrix_;
    bool symmetric_ = true;
    std::vector<double> capacity_;
    std::vector<double> constant_rhs_;
    std::vector<BoundaryFlow> flows_;
};

/// Connected two-temperature model.
class ConnectedStepper {
public:
    ConnectedStepper(const MacroProblem& problem, double dt);
    MacroState step(const MacroState& s);
    double last_input() const { return last_input_; }
    const MacroSystem& system() const { return system_; }

private:
    MacroSystem system_;
    double last_input_ = 0.0;
};

/// Macro half of the disconnected model; the micro traces come from outside.
class DisconnectedStepper {
public:
    DisconnectedStepper(const MacroProblem& problem, double dt);
    MacroState step(const MacroState& s, const std::vector<double>& traces);
    double last_input() const { return last_input_; }
    const MacroSystem& system() const { return system_; }

private:
    MacroSystem system_;
    double last_input_ = 0.0;
};

/// Disconnected model with the micro problems eliminated through the discrete
/// step responses of `kernel`. Reproduces the converged coupled step of the
/// same collocation set.
class MemoryStepper {
public:
    MemoryStepper(const MacroProblem& problem, double dt, const MemoryKernel& kernel,
                  const CollocationSet& points, std::vector<double> initial_solid);
    MacroState step(const MacroState& s);
    double last_input() const { return last_input_; }
    /// Heat taken up by the solid during the last step.
    double last_solid_gain() const { return last_gain_; }
    /// Micro traces int_Gamma theta^s per point after the last step.
    const std::vector<double>& last_traces() const { return traces_; }
    const MacroSystem& system() const { return system_; }

private:
    std::vector<double> history_traces(const MacroState& s) const;

    MemoryKernel kernel_;
    CollocationSet points_;
    std::vector<double> initial_solid_;
    MacroSystem system_;
    double last_input_ = 0.0;
    double last_gain_ = 0.0;
    std::vector<double> traces_;
};

MacroState step_case_b(const MacroState& state, const MacroProblem& problem, double dt);
MacroState step_case_a_macro(const MacroState& state, const std::vector<double>& traces,
                             const MacroProblem& problem, double dt);
MacroState step_memory(const MacroState& state, const MemoryKernel& kernel,
                       const CollocationSet& points, const std::vector<double>& initial_solid,
                       const MacroProblem& problem, double dt);

/// Stationary solution. In the disconnected model solid and fluid coincide,
/// so no exchange enters. Throws SolverError when part of the system is not
/// tied to any Dirichlet, Robin or outflow boundary.
MacroState solve_stationary(const MacroProblem& problem, ModelKind kind);

}  // namespace porheat
