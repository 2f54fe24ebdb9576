#include "porheat/macro_solver.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <map>
#include <sstream>

namespace porheat {

bool VelocityField::moving() const { return max_speed() > 0.0; }

double VelocityField::max_speed() const {
    double m = 0.0;
    for (double u : x_faces) {
        m = std::max(m, std::abs(u));
    }
    for (double v : y_faces) {
        m = std::max(m, std::abs(v));
    }
    return m;
}

double channel_profile(double x2) {
    return x2 >= 0.5 && x2 <= 1.0 ? 16.0 * (x2 - 0.5) * (1.0 - x2) : 0.0;
}

namespace {

// Channel profile rescaled to the free-fluid band [h, H]; equals
// channel_profile for h = 0.5, H = 1.
double band_profile(double x2, double h, double height) {
    if (x2 < h || x2 > height) {
        return 0.0;
    }
    const double w = height - h;
    return 4.0 * (x2 - h) * (height - x2) / (w * w);
}

}  // namespace

VelocityField make_velocity(VelocityKind kind, const MacroGrid& grid, double darcy) {
    VelocityField v;
    v.kind = kind;
    v.darcy = darcy;
    v.x_faces.assign(static_cast<std::size_t>(grid.nx + 1) * grid.ny, 0.0);
    v.y_faces.assign(static_cast<std::size_t>(grid.nx) * (grid.ny + 1), 0.0);
    if (kind == VelocityKind::custom) {
        throw std::invalid_argument("custom velocities are built with custom_velocity");
    }
    if (kind == VelocityKind::parallel_channel) {
        for (int j = 0; j < grid.ny; ++j) {
            const double u = j < grid.interface_row
                                 ? darcy
                                 : band_profile(grid.y_center(j), grid.interface_height, grid.height);
            for (int i = 0; i <= grid.nx; ++i) {
                v.x_faces[static_cast<std::size_t>(j) * (grid.nx + 1) + i] = u;
            }
        }
    }
    return v;
}

VelocityField custom_velocity(const MacroGrid& grid, std::vector<double> x_faces,
                              std::vector<double> y_faces) {
    const std::size_t nx = static_cast<std::size_t>(grid.nx);
    const std::size_t ny = static_cast<std::size_t>(grid.ny);
    if (x_faces.size() != (nx + 1) * ny || y_faces.size() != nx * (ny + 1)) {
        throw std::invalid_argument("velocity face arrays do not match the grid");
    }
    VelocityField v;
    v.kind = VelocityKind::custom;
    v.x_faces = std::move(x_faces);
    v.y_faces = std::move(y_faces);
    const double scale = std::max(1.0, v.max_speed());
    for (std::size_t j = 0; j < ny; ++j) {
        for (std::size_t i = 0; i < nx; ++i) {
            const double div = (v.x_faces[j * (nx + 1) + i + 1] - v.x_faces[j * (nx + 1) + i]) * grid.dy +
                               (v.y_faces[(j + 1) * nx + i] - v.y_faces[j * nx + i]) * grid.dx;
            if (std::abs(div) > 1e-12 * scale) {
                std::ostringstream msg;
                msg << "velocity field is not divergence free in cell (" << i << ", " << j
                    << "): " << div;
                throw std::invalid_argument(msg.str());
            }
        }
    }
    return v;
}

double SourceSpec::interface_value(double t) const {
    constexpr double slack = 1e-9;
    switch (schedule) {
        case InterfaceSchedule::none:
            return 0.0;
        case InterfaceSchedule::step:
            return t <= cutoff + slack ? amplitude : 0.0;
        case InterfaceSchedule::oscillating: {
            double local = std::fmod(t, period);
            if (period - local < slack) {
                local = 0.0;
            }
            return 2.0 * local <= cutoff + slack ? amplitude : 0.0;
        }
    }
    return 0.0;
}

MacroState uniform_state(const MacroProblem& problem, ModelKind kind, double theta,
                         double solid) {
    MacroState s;
    s.theta.assign(problem.grid.cell_count(), theta);
    if (kind == ModelKind::connected) {
        s.solid.assign(problem.grid.porous_count(), solid);
    }
    return s;
}

void MacroSystem::link(TripletBuilder& tb, std::size_t a, std::size_t b, double g) {
    if (g == 0.0) {
        return;
    }
    tb.add(a, a, g);
    tb.add(b, b, g);
    tb.add(a, b, -g);
    tb.add(b, a, -g);
}

MacroSystem::MacroSystem(const MacroProblem& problem, ModelKind kind, double dt, bool exchange,
                         const std::vector<SparseRow>* coupling)
    : problem_(problem), kind_(kind), dt_(dt), exchange_(exchange) {
    const MacroGrid& g = problem_.grid;
    const PhysicalParams& p = problem_.params;
    const VelocityField& vel = problem_.velocity;
    const BoundarySpec& bc = problem_.boundaries;
    const bool connected = kind_ == ModelKind::connected;
    if (dt_ < 0.0) {
        throw std::invalid_argument("time step must be nonnegative");
    }
    if (vel.x_faces.size() != static_cast<std::size_t>(g.nx + 1) * g.ny ||
        vel.y_faces.size() != static_cast<std::size_t>(g.nx) * (g.ny + 1)) {
        throw std::invalid_argument("velocity field does not match the grid");
    }
    cells_ = g.cell_count();
    porous_ = g.porous_count();
    solid_offset_ = cells_;
    std::size_t next = cells_ + (connected ? porous_ : 0);

    const double sigma = connected ? p.measures.exterior_trace : 0.0;
    const double half_dy = 0.5 * g.dy;
    const double g_solid_sigma = connected ? p.kappa_h_s[1] * g.dx / half_dy : 0.0;
    const double r_sigma = connected ? p.alpha * sigma * g.dx : 0.0;
    fluid_node_.resize(static_cast<std::size_t>(g.nx));
    solid_node_.assign(static_cast<std::size_t>(g.nx), -1);
    for (int i = 0; i < g.nx; ++i) {
        fluid_node_[static_cast<std::size_t>(i)] = next++;
        if (g_solid_sigma > 0.0 || r_sigma > 0.0) {
            solid_node_[static_cast<std::size_t>(i)] = static_cast<std::ptrdiff_t>(next++);
        }
    }
    unknowns_ = next;
    capacity_.assign(unknowns_, 0.0);
    constant_rhs_.assign(unknowns_, 0.0);
    TripletBuilder tb(unknowns_);

    const double vol = g.cell_volume();
    const auto kf = [&](std::size_t c, int axis) {
        return g.porous(c) ? p.kappa_h_f[static_cast<std::size_t>(axis)] : p.kappa_f;
    };
    const auto ks = [&](int axis) { return p.kappa_h_s[static_cast<std::size_t>(axis)]; };
    const auto harmonic = [](double ka, double kb, double len, double d) {
        if (ka <= 0.0 || kb <= 0.0) {
            return 0.0;
        }
        return len / (0.5 * d / ka + 0.5 * d / kb);
    };
    const auto solid_index = [&](std::size_t c) { return solid_offset_ + c; };

    // Upwind flux between lower/left cell a and upper/right cell b; u > 0 points a -> b.
    const auto convect = [&](std::size_t a, std::size_t b, double u, double len) {
        const double f = p.rho_c_f * u * len;
        if (f > 0.0) {
            tb.add(a, a, f);
            tb.add(b, a, -f);
            symmetric_ = false;
        } else if (f < 0.0) {
            tb.add(b, b, -f);
            tb.add(a, b, f);
            symmetric_ = false;
        }
    };

    // Diffusive boundary term for unknown `u` with conductivity k.
    const auto boundary = [&](std::size_t u, const Condition& cond, double k, double len, double d) {
        double gb = 0.0;
        if (cond.kind == Condition::Kind::dirichlet) {
            gb = k > 0.0 ? k * len / (0.5 * d) : 0.0;
        } else if (cond.kind == Condition::Kind::robin) {
            if (k > 0.0 && cond.coefficient > 0.0) {
                gb = 1.0 / (1.0 / (cond.coefficient * len) + 0.5 * d / (k * len));
            }
        }
        if (gb > 0.0) {
            tb.add(u, u, gb);
            constant_rhs_[u] += gb * cond.value;
            flows_.push_back({u, gb, gb * cond.value});
        }
    };

    // Convective boundary term; `outward` is the velocity along the outer normal.
    const auto boundary_flow = [&](std::size_t c, const Condition& cond, double outward, double len) {
        const double f = p.rho_c_f * outward * len;
        if (f > 0.0) {
            tb.add(c, c, f);
            flows_.push_back({c, f, 0.0});
            symmetric_ = false;
        } else if (f < 0.0) {
            if (cond.kind != Condition::Kind::dirichlet) {
                throw std::invalid_argument("inflow boundary needs a Dirichlet temperature");
            }
            constant_rhs_[c] += -f * cond.value;
            flows_.push_back({c, 0.0, -f * cond.value});
        }
    };

    const auto xface = [&](int i, int j) {
        return vel.x_faces[static_cast<std::size_t>(j) * (g.nx + 1) + i];
    };
    const auto yface = [&](int i, int j) {
        return vel.y_faces[static_cast<std::size_t>(j) * g.nx + i];
    };

    for (int j = 0; j < g.ny; ++j) {
        for (int i = 0; i < g.nx; ++i) {
            const std::size_t c = g.cell(i, j);
            const bool por = g.porous(c);

            if (i + 1 < g.nx) {
                const std::size_t e = g.cell(i + 1, j);
                link(tb, c, e, harmonic(kf(c, 0), kf(e, 0), g.dy, g.dx));
                convect(c, e, xface(i + 1, j), g.dy);
                if (connected && por) {
                    link(tb, solid_index(c), solid_index(e), harmonic(ks(0), ks(0), g.dy, g.dx));
                }
            }
            if (j + 1 < g.ny) {
                const std::size_t n = g.cell(i, j + 1);
                convect(c, n, yface(i, j + 1), g.dx);
                if (j + 1 == g.interface_row) {
                    const std::size_t t = fluid_node_[static_cast<std::size_t>(i)];
                    link(tb, c, t, kf(c, 1) * g.dx / half_dy);
                    link(tb, n, t, kf(n, 1) * g.dx / half_dy);
                    const std::ptrdiff_t s = solid_node_[static_cast<std::size_t>(i)];
                    if (s >= 0) {
                        const auto su = static_cast<std::size_t>(s);
                        link(tb, t, su, r_sigma);
                        link(tb, solid_index(c), su, g_solid_sigma);
                    }
                } else {
                    link(tb, c, n, harmonic(kf(c, 1), kf(n, 1), g.dx, g.dy));
                    if (connected && por) {
                        link(tb, solid_index(c), solid_index(n), harmonic(ks(1), ks(1), g.dx, g.dy));
                    }
                }
            }

            // External sides.
            if (i == 0) {
                const Condition& cond = bc.fluid(Side::left, por);
                boundary(c, cond, kf(c, 0), g.dy, g.dx);
                boundary_flow(c, cond, -xface(0, j), g.dy);
                if (connected && por) {
                    boundary(solid_index(c), bc.solid[static_cast<int>(Side::left)], ks(0), g.dy, g.dx);
                }
            }
            if (i == g.nx - 1) {
                const Condition& cond = bc.fluid(Side::right, por);
                boundary(c, cond, kf(c, 0), g.dy, g.dx);
                boundary_flow(c, cond, xface(g.nx, j), g.dy);
                if (connected && por) {
                    boundary(solid_index(c), bc.solid[static_cast<int>(Side::right)], ks(0), g.dy, g.dx);
                }
            }
            if (j == 0) {
                const Condition& cond = bc.fluid(Side::bottom, por);
                boundary(c, cond, kf(c, 1), g.dx, g.dy);
                boundary_flow(c, cond, -yface(i, 0), g.dx);
                if (connected && por) {
                    boundary(solid_index(c), bc.solid[static_cast<int>(Side::bottom)], ks(1), g.dx, g.dy);
                }
            }
            if (j == g.ny - 1) {
                const Condition& cond = bc.fluid(Side::top, por);
                boundary(c, cond, kf(c, 1), g.dx, g.dy);
                boundary_flow(c, cond, yface(i, g.ny), g.dx);
            }

            // Capacities, volume sources, exchange.
            const double fluid_share = por ? p.measures.fluid_fraction : 1.0;
            capacity_[c] = fluid_share * p.rho_c_f * vol;
            constant_rhs_[c] += fluid_share * problem_.sources.fluid * vol;
            if (por) {
                const double ex = p.alpha * p.measures.interface_area * vol;
                if (connected) {
                    capacity_[solid_index(c)] = p.measures.solid_fraction * p.rho_c_s * vol;
                    constant_rhs_[solid_index(c)] +=
                        p.measures.solid_fraction * problem_.sources.solid * vol;
                    link(tb, c, solid_index(c), ex);
                } else if (exchange_) {
                    tb.add(c, c, ex);
                }
            }
        }
    }
    if (coupling != nullptr) {
        if (coupling->size() != porous_) {
            throw std::invalid_argument("coupling rows do not match the porous cells");
        }
        for (std::size_t c = 0; c < porous_; ++c) {
            for (const auto& [d, w] : (*coupling)[c]) {
                tb.add(c, d, w);
            }
        }
    }
    if (dt_ > 0.0) {
        for (std::size_t u = 0; u < unknowns_; ++u) {
            if (capacity_[u] > 0.0) {
                tb.add(u, u, capacity_[u] / dt_);
            }
        }
    }
    matrix_ = tb.build();

    if (dt_ == 0.0) {
        // Every unknown must be tied to a grounded row through the conductance graph.
        const auto& rp = matrix_.row_ptr();
        const auto& cols = matrix_.cols();
        const auto& vals = matrix_.vals();
        std::vector<double> colsum(unknowns_, 0.0);
        std::vector<double> diag(unknowns_, 0.0);
        for (std::size_t r = 0; r < unknowns_; ++r) {
            for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
                colsum[cols[k]] += vals[k];
                if (cols[k] == r) {
                    diag[r] = vals[k];
                }
            }
        }
        std::vector<char> seen(unknowns_, 0);
        std::deque<std::size_t> queue;
        for (std::size_t u = 0; u < unknowns_; ++u) {
            if (colsum[u] > 1e-12 * std::max(diag[u], 1e-300)) {
                seen[u] = 1;
                queue.push_back(u);
            }
        }
        while (!queue.empty()) {
            const std::size_t r = queue.front();
            queue.pop_front();
            for (std::size_t k = rp[r]; k < rp[r + 1]; ++k) {
                if (vals[k] != 0.0 && !seen[cols[k]]) {
                    seen[cols[k]] = 1;
                    queue.push_back(cols[k]);
                }
            }
        }
        const auto loose = std::count(seen.begin(), seen.end(), 0);
        if (loose > 0) {
            std::ostringstream msg;
            msg << "stationary system is singular: " << loose
                << " unknowns are not tied to a Dirichlet, Robin or outflow boundary";
            throw SolverError(msg.str(), SolveReport{});
        }
    }
}

std::vector<double> MacroSystem::pack(const MacroState& s) const {
    std::vector<double> x(unknowns_, 0.0);
    if (s.theta.size() == cells_) {
        std::copy(s.theta.begin(), s.theta.end(), x.begin());
    }
    if (kind_ == ModelKind::connected && s.solid.size() == porous_) {
        std::copy(s.solid.begin(), s.solid.end(), x.begin() + static_cast<std::ptrdiff_t>(solid_offset_));
    }
    const std::size_t first = unknowns_ - s.interface_nodes.size();
    if (!s.interface_nodes.empty() && first == cells_ + (kind_ == ModelKind::connected ? porous_ : 0)) {
        std::copy(s.interface_nodes.begin(), s.interface_nodes.end(),
                  x.begin() + static_cast<std::ptrdiff_t>(first));
    }
    return x;
}

std::vector<double> MacroSystem::rhs(const MacroState& prev, double t_next,
                                     const std::vector<double>* traces,
                                     const std::vector<double>* extra) const {
    std::vector<double> b = constant_rhs_;
    if (dt_ > 0.0) {
        const std::vector<double> x = pack(prev);
        for (std::size_t u = 0; u < unknowns_; ++u) {
            b[u] += capacity_[u] / dt_ * x[u];
        }
    }
    const MacroGrid& g = problem_.grid;
    const double f = problem_.sources.interface_value(t_next);
    if (f != 0.0) {
        const double sigma = problem_.params.measures.exterior_trace;
        for (std::size_t i = 0; i < fluid_node_.size(); ++i) {
            const std::ptrdiff_t s = solid_node_[i];
            if (s >= 0) {
                b[fluid_node_[i]] += (1.0 - sigma) * f * g.dx;
                b[static_cast<std::size_t>(s)] += sigma * f * g.dx;
            } else {
                b[fluid_node_[i]] += f * g.dx;
            }
        }
    }
    if (traces != nullptr) {
        if (traces->size() != porous_) {
            throw std::invalid_argument("micro traces do not match the porous cells");
        }
        const double w = problem_.params.alpha * g.cell_volume();
        for (std::size_t c = 0; c < porous_; ++c) {
            b[c] += w * (*traces)[c];
        }
    }
    if (extra != nullptr) {
        for (std::size_t c = 0; c < extra->size(); ++c) {
            b[c] += (*extra)[c];
        }
    }
    return b;
}

double MacroSystem::source_rate(double t) const {
    const MacroGrid& g = problem_.grid;
    const PhysicalParams& p = problem_.params;
    const double vol = g.cell_volume();
    const double free_cells = static_cast<double>(cells_ - porous_);
    const double porous_cells = static_cast<double>(porous_);
    return problem_.sources.fluid * vol * (free_cells + p.measures.fluid_fraction * porous_cells) +
           problem_.sources.solid * vol * p.measures.solid_fraction * porous_cells +
           problem_.sources.interface_value(t) * g.length;
}

double MacroSystem::boundary_rate(const std::vector<double>& x) const {
    double r = 0.0;
    for (const auto& f : flows_) {
        r += f.b - f.a * x[f.unknown];
    }
    return r;
}

MacroState MacroSystem::solve(const std::vector<double>& b, const MacroState& prev,
                              double t_next, double* heat_input) const {
    SolveOptions opts;
    opts.tolerance = problem_.tolerance;
    opts.max_iterations = problem_.max_iterations;
    const std::vector<double> guess = pack(prev);
    SolveResult r = symmetric_ ? cg_solve(matrix_, b, opts, guess)
                               : bicgstab_solve(matrix_, b, opts, guess);
    if (!r.report.converged) {
        std::ostringstream msg;
        msg << "macro solve did not converge: residual " << r.report.residual << " after "
            << r.report.iterations << " iterations";
        throw SolverError(msg.str(), r.report);
    }
    MacroState s;
    s.theta.assign(r.x.begin(), r.x.begin() + static_cast<std::ptrdiff_t>(cells_));
    std::size_t first = cells_;
    if (kind_ == ModelKind::connected) {
        s.solid.assign(r.x.begin() + static_cast<std::ptrdiff_t>(cells_),
                       r.x.begin() + static_cast<std::ptrdiff_t>(cells_ + porous_));
        first += porous_;
    }
    s.interface_nodes.assign(r.x.begin() + static_cast<std::ptrdiff_t>(first), r.x.end());
    s.time = t_next;
    s.step = prev.step + 1;
    s.history = prev.history;
    if (heat_input != nullptr) {
        *heat_input = dt_ * (source_rate(t_next) + boundary_rate(r.x));
    }
    return s;
}

ConnectedStepper::ConnectedStepper(const MacroProblem& problem, double dt)
    : system_(problem, ModelKind::connected, dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("time step must be positive");
    }
}

MacroState ConnectedStepper::step(const MacroState& s) {
    const double t = (s.step + 1) * system_.dt();
    return system_.solve(system_.rhs(s, t), s, t, &last_input_);
}

DisconnectedStepper::DisconnectedStepper(const MacroProblem& problem, double dt)
    : system_(problem, ModelKind::disconnected, dt) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("time step must be positive");
    }
}

MacroState DisconnectedStepper::step(const MacroState& s, const std::vector<double>& traces) {
    const double t = (s.step + 1) * system_.dt();
    return system_.solve(system_.rhs(s, t, &traces), s, t, &last_input_);
}

namespace {

MacroSystem memory_system(const MacroProblem& problem, double dt, const MemoryKernel& kernel,
                          const CollocationSet& points) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("time step must be positive");
    }
    if (kernel.steps() == 0 || std::abs(kernel.dt - dt) > 1e-12 * dt) {
        std::ostringstream msg;
        msg << "kernel/dt mismatch: kernel sampled with dt = " << kernel.dt << ", run uses " << dt;
        throw std::invalid_argument(msg.str());
    }
    if (points.interpolation.size() != problem.grid.porous_count()) {
        throw std::invalid_argument("collocation set does not match the porous cells");
    }
    // Current-step tap: alpha V psi_1 dt (W P) enters the implicit matrix.
    const double w = -problem.params.alpha * problem.grid.cell_volume() * kernel.psi[0] * dt;
    std::vector<SparseRow> rows(points.interpolation.size());
    for (std::size_t c = 0; c < rows.size(); ++c) {
        std::map<std::size_t, double> acc;
        for (const auto& [i, wi] : points.interpolation[c]) {
            for (const auto& [d, pd] : points.sampling[i]) {
                acc[d] += w * wi * pd;
            }
        }
        rows[c].assign(acc.begin(), acc.end());
    }
    return MacroSystem(problem, ModelKind::disconnected, dt, true, &rows);
}

}  // namespace

MemoryStepper::MemoryStepper(const MacroProblem& problem, double dt, const MemoryKernel& kernel,
                             const CollocationSet& points, std::vector<double> initial_solid)
    : kernel_(kernel),
      points_(points),
      initial_solid_(std::move(initial_solid)),
      system_(memory_system(problem, dt, kernel, points)) {
    if (initial_solid_.size() != points_.size()) {
        throw std::invalid_argument("one initial solid value per collocation point is required");
    }
}

std::vector<double> MemoryStepper::history_traces(const MacroState& s) const {
    const std::size_t m = s.history.size() + 1;
    if (m > kernel_.steps()) {
        throw std::invalid_argument("kernel horizon is shorter than the run");
    }
    const double dt = system_.dt();
    const double f = system_.problem().sources.solid;
    std::vector<double> out(points_.size(), 0.0);
    for (std::size_t i = 0; i < points_.size(); ++i) {
        double acc = initial_solid_[i] * kernel_.initial_response[m - 1] +
                     f * kernel_.source_response[m - 1];
        for (std::size_t k = 2; k <= m; ++k) {
            acc += kernel_.psi[k - 1] * dt * s.history[m - k][i];
        }
        out[i] = acc;
    }
    return out;
}

MacroState MemoryStepper::step(const MacroState& s) {
    const MacroProblem& problem = system_.problem();
    const double dt = system_.dt();
    const double vol = problem.grid.cell_volume();
    const double alpha = problem.params.alpha;
    const std::vector<double> lagged = history_traces(s);
    const std::vector<double> lagged_cells = points_.interpolate(lagged);
    std::vector<double> extra(lagged_cells.size());
    for (std::size_t c = 0; c < extra.size(); ++c) {
        extra[c] = alpha * vol * lagged_cells[c];
    }
    const double t = (s.step + 1) * dt;
    MacroState next = system_.solve(system_.rhs(s, t, nullptr, &extra), s, t, &last_input_);

    const std::size_t porous = problem.grid.porous_count();
    const std::vector<double> fluid(next.theta.begin(),
                                    next.theta.begin() + static_cast<std::ptrdiff_t>(porous));
    std::vector<double> input = points_.sample(fluid);
    traces_.resize(points_.size());
    for (std::size_t i = 0; i < points_.size(); ++i) {
        traces_[i] = kernel_.psi[0] * dt * input[i] + lagged[i];
    }
    const std::vector<double> cell_traces = points_.interpolate(traces_);
    double exchange = 0.0;
    for (std::size_t c = 0; c < porous; ++c) {
        exchange += problem.params.measures.interface_area * fluid[c] - cell_traces[c];
    }
    last_gain_ = dt * vol *
                 (alpha * exchange + problem.params.measures.solid_fraction * problem.sources.solid *
                                         static_cast<double>(porous));
    next.history.push_back(std::move(input));
    return next;
}

MacroState step_case_b(const MacroState& state, const MacroProblem& problem, double dt) {
    ConnectedStepper stepper(problem, dt);
    return stepper.step(state);
}

MacroState step_case_a_macro(const MacroState& state, const std::vector<double>& traces,
                             const MacroProblem& problem, double dt) {
    DisconnectedStepper stepper(problem, dt);
    return stepper.step(state, traces);
}

MacroState step_memory(const MacroState& state, const MemoryKernel& kernel,
                       const CollocationSet& points, const std::vector<double>& initial_solid,
                       const MacroProblem& problem, double dt) {
    MemoryStepper stepper(problem, dt, kernel, points, initial_solid);
    return stepper.step(state);
}

MacroState solve_stationary(const MacroProblem& problem, ModelKind kind) {
    const MacroSystem system(problem, kind, 0.0, false);
    const MacroState zero = uniform_state(problem, kind, 0.0, 0.0);
    MacroState s = system.solve(system.rhs(zero, 0.0), zero, 0.0);
    s.step = 0;
    return s;
}

}  // namespace porheat
