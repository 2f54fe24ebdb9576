#include "porheat/run.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <ostream>
#include <sstream>

#include "porheat/cell_stationary.hpp"
#include "porheat/cell_transient.hpp"
#include "porheat/output.hpp"
#include "porheat/simulation.hpp"

namespace porheat {

namespace {

CellMeasures cell_measures(const RunConfig& c) {
    return c.cell.measures ? *c.cell.measures : analytic_measures(c.cell);
}

std::array<double, 2> diagonal(const EffectiveTensor& t) { return {t(0, 0), t(1, 1)}; }

std::array<double, 2> scaled(const std::array<double, 2>& ratio, double kappa) {
    return {ratio[0] * kappa, ratio[1] * kappa};
}

double profile_line(const RunConfig& c) { return c.profile_x1 ? *c.profile_x1 : 0.5 * c.length; }

std::vector<double> alphas(const RunConfig& c) {
    return c.alpha_sweep.empty() ? std::vector<double>{c.alpha} : c.alpha_sweep;
}

RunSettings settings(const RunConfig& c, int snapshot_every) {
    RunSettings s;
    s.dt = c.dt;
    s.horizon = c.horizon;
    s.theta0 = c.theta0;
    s.solid0 = c.solid0;
    s.snapshot_every = snapshot_every;
    return s;
}

std::vector<std::string> energy_cells(const EnergySample& e) {
    return {num(e.time),         num(e.parts.free_fluid), num(e.parts.porous_fluid),
            num(e.parts.solid),  num(e.input),            num(e.residual)};
}

std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

const std::vector<std::string> kEnergyHeader{"t", "E_ff", "E_f", "E_s", "input", "residual"};

void add_profile(Table& t, const std::vector<std::string>& prefix, const ProfileSample& p,
                 bool with_solid) {
    for (std::size_t j = 0; j < p.coordinate.size(); ++j) {
        std::vector<std::string> row = prefix;
        row.push_back(num(p.coordinate[j]));
        row.push_back(num(p.theta[j]));
        if (with_solid) {
            row.push_back(j < p.solid.size() ? num(p.solid[j]) : "");
        }
        t.add(row);
    }
}

double max_residual(const RunResult& r) {
    double m = 0.0;
    for (const auto& e : r.energies) {
        m = std::max(m, e.residual);
    }
    return m;
}

std::string tensor_block(const std::string& name, const EffectiveTensor& t) {
    std::ostringstream o;
    const int d = t.dimension;
    o << name << "\n";
    for (int i = 0; i < d; ++i) {
        o << " ";
        for (int j = 0; j < d; ++j) {
            o << " " << num(t(i, j));
        }
        o << "\n";
    }
    o << name << "_relative\n";
    for (int i = 0; i < d; ++i) {
        o << " ";
        for (int j = 0; j < d; ++j) {
            o << " " << num(t(i, j) / t.conductivity);
        }
        o << "\n";
    }
    o << name << "_asymmetry " << num(t.asymmetry) << "\n";
    for (std::size_t k = 0; k < t.reports.size(); ++k) {
        o << name << "_solve " << k << " iterations " << t.reports[k].iterations << " residual "
          << num(t.reports[k].residual) << " converged " << (t.reports[k].converged ? 1 : 0)
          << "\n";
    }
    for (const auto& w : t.warnings) {
        o << name << "_warning " << w << "\n";
    }
    return o.str();
}

double max_relative_change(const EffectiveTensor& a, const EffectiveTensor& b) {
    double scale = 0.0;
    double change = 0.0;
    for (int i = 0; i < a.dimension; ++i) {
        for (int j = 0; j < a.dimension; ++j) {
            scale = std::max(scale, std::abs(b(i, j)));
            change = std::max(change, std::abs(a(i, j) - b(i, j)));
        }
    }
    return scale > 0.0 ? change / scale : 0.0;
}

void run_tensors(const RunConfig& c, OutputDir& out, std::ostream& log) {
    const CellGeometry cell = build_unit_cell(c.cell, c.resolution);
    log << "cell " << cell.label() << " n=" << c.resolution << "\n";
    const EffectiveTensor kf = effective_conductivity(cell, Phase::fluid, c.kappa_f);
    const EffectiveTensor ks = effective_conductivity(cell, Phase::solid, c.kappa_s);
    const CellMeasures& a = cell.measures();
    const CellMeasures& v = cell.voxel_measures();
    std::ostringstream o;
    o << "geometry " << cell.label() << "\ndimension " << cell.dimension() << "\nresolution "
      << cell.resolution() << "\ndisconnected " << (cell.disconnected() ? "true" : "false")
      << "\nmeasures_analytic " << num(a.fluid_fraction) << " " << num(a.solid_fraction) << " "
      << num(a.interface_area) << " " << num(a.exterior_trace) << "\nmeasures_voxel "
      << num(v.fluid_fraction) << " " << num(v.solid_fraction) << " " << num(v.interface_area)
      << " " << num(v.exterior_trace) << "\nkappa_f " << num(c.kappa_f) << "\nkappa_s "
      << num(c.kappa_s) << "\n";
    o << tensor_block("kappa_h_f", kf) << tensor_block("kappa_h_s", ks);
    if (c.refine) {
        const int coarse = c.resolution / 2;
        if (coarse < 8) {
            throw ConfigError("cell.refine: resolution / 2 must be at least 8");
        }
        const CellGeometry half = build_unit_cell(c.cell, coarse);
        log << "refinement check n=" << coarse << "\n";
        const EffectiveTensor kf2 = effective_conductivity(half, Phase::fluid, c.kappa_f);
        const EffectiveTensor ks2 = effective_conductivity(half, Phase::solid, c.kappa_s);
        o << "refinement_resolution " << coarse << "\nrefinement_change_kappa_h_f "
          << num(max_relative_change(kf2, kf)) << "\nrefinement_change_kappa_h_s "
          << num(max_relative_change(ks2, ks)) << "\n";
    }
    out.write("tensors.txt", o.str());
}

void run_kernel(const RunConfig& c, OutputDir& out, std::ostream& log) {
    const CellGeometry cell = build_unit_cell(c.cell, c.micro_resolution);
    const MicroParams mp{c.rho_c_s, c.kappa_s, c.alpha};
    const MemoryKernel k = compute_kernel(cell, mp, c.horizon, c.dt);
    const AuxiliarySource eta = compute_eta_bar(cell, mp, {c.source.solid}, c.solid0 - c.theta0,
                                                c.theta0, c.horizon, c.dt);
    log << "kernel " << k.steps() << " steps, cumulative " << k.cumulative.back() << " of |Gamma| "
        << k.interface_area << ", final deviation " << k.final_deviation << "\n";
    if (!k.negative_samples.empty()) {
        log << "warning: " << k.negative_samples.size() << " kernel samples below -1e-8\n";
    }
    Table t({"n", "t", "psi", "cumulative", "initial_response", "source_response", "eta_bar"});
    for (std::size_t n = 0; n < k.steps(); ++n) {
        t.add({std::to_string(n + 1), num(static_cast<double>(n + 1) * c.dt), num(k.psi[n]),
               num(k.cumulative[n]), num(k.initial_response[n]), num(k.source_response[n]),
               num(eta.samples[n])});
    }
    out.write("kernel.csv", t.str());
}

void run_steady(const RunConfig& c, OutputDir& out, std::ostream& log) {
    const PhysicalParams p = physical_params(c, c.model);
    const MacroProblem problem = macro_problem(c, p);
    const MacroState s = solve_stationary(problem, c.model);
    ProfileSample prof = profile(s, problem.grid, profile_line(c));
    if (c.model == ModelKind::disconnected) {
        const std::size_t porous = static_cast<std::size_t>(problem.grid.interface_row);
        prof.solid.assign(prof.theta.begin(), prof.theta.begin() + static_cast<std::ptrdiff_t>(porous));
    }
    log << "steady " << (c.model == ModelKind::connected ? "connected" : "disconnected")
        << " solution, " << s.theta.size() << " cells\n";
    Table t({"x2", "theta", "solid"});
    add_profile(t, {}, prof, true);
    out.write("profile.csv", t.str());
}

void run_transient(const RunConfig& c, Mode mode, OutputDir& out, std::ostream& log) {
    const bool sweep = !c.alpha_sweep.empty();
    const std::vector<std::string> prefix_header = sweep ? std::vector<std::string>{"alpha"}
                                                         : std::vector<std::string>{};
    const bool with_solid = mode != Mode::memory;
    Table energies(concat(prefix_header, kEnergyHeader));
    Table prof(concat(prefix_header, with_solid ? std::vector<std::string>{"x2", "theta", "solid"}
                                                : std::vector<std::string>{"x2", "theta"}));
    Table trace(concat(prefix_header, {"step", "k", "e", "bound"}));
    const ModelKind kind = mode == Mode::transient_b ? ModelKind::connected : ModelKind::disconnected;
    PhysicalParams base = physical_params(c, kind);
    std::unique_ptr<CellGeometry> cell;
    if (kind == ModelKind::disconnected) {
        cell = std::make_unique<CellGeometry>(build_unit_cell(c.cell, c.micro_resolution));
    }
    for (double alpha : alphas(c)) {
        PhysicalParams p = base;
        p.alpha = alpha;
        const MacroProblem problem = macro_problem(c, p);
        RunResult r;
        if (mode == Mode::transient_b) {
            r = run_connected(problem, settings(c, 0));
        } else if (mode == Mode::transient_a) {
            r = run_coupled(problem, *cell, c.collocation, settings(c, 0), c.tau, c.max_iter);
        } else {
            r = run_memory(problem, *cell, c.collocation, settings(c, 0));
        }
        log << mode_name(mode) << " alpha=" << alpha << ": " << r.energies.size() - 1
            << " steps, max conservation residual " << max_residual(r) << "\n";
        const std::vector<std::string> prefix =
            sweep ? std::vector<std::string>{num(alpha)} : std::vector<std::string>{};
        for (const auto& e : r.energies) {
            energies.add(concat(prefix, energy_cells(e)));
        }
        add_profile(prof, prefix,
                    profile(r.state, problem.grid, profile_line(c), r.solid.empty() ? nullptr : &r.solid),
                    with_solid);
        for (const auto& row : r.trace) {
            trace.add(concat(prefix, {std::to_string(row.step), std::to_string(row.iteration),
                                      num(row.error), num(row.bound)}));
        }
    }
    out.write("energies.csv", energies.str());
    out.write("profile.csv", prof.str());
    if (mode == Mode::transient_a) {
        out.write("trace.csv", trace.str());
    }
}

void run_transition(const RunConfig& c, OutputDir& out, std::ostream& log) {
    const CellGeometry cell = build_unit_cell(c.cell, c.micro_resolution);
    const MacroProblem reference_problem = macro_problem(c, physical_params(c, ModelKind::disconnected));
    const RunResult reference =
        run_coupled(reference_problem, cell, c.collocation, settings(c, 1), c.tau, c.max_iter);
    log << "transition reference " << c.cell.label << ": max conservation residual "
        << max_residual(reference) << "\n";
    Table energies(concat({"model", "c"}, kEnergyHeader));
    for (const auto& e : reference.energies) {
        energies.add(concat({"disconnected", ""}, energy_cells(e)));
    }
    Table diff({"c", "t", "diff_ff", "diff_p", "relative_ff", "relative_p"});
    const TransitionSweep& t = c.transition;
    for (std::size_t k = 0; k < t.c.size(); ++k) {
        ConnectedCell cc;
        std::ostringstream label;
        label << "c=" << t.c[k];
        cc.label = label.str();
        cc.kappa_h_f = {t.kappa_h_f[k], t.kappa_h_f[k]};
        cc.kappa_h_s = {t.kappa_h_s[k], t.kappa_h_s[k]};
        cc.fluid_fraction = t.fluid_fraction;
        cc.interface_area = t.interface_area[k];
        cc.exterior_trace = t.exterior_trace[k];
        const MacroProblem problem = macro_problem(c, connected_params(c, cc));
        const RunResult r = run_connected(problem, settings(c, 1));
        log << "transition " << cc.label << ": max conservation residual " << max_residual(r) << "\n";
        for (const auto& e : r.energies) {
            energies.add(concat({"connected", num(t.c[k])}, energy_cells(e)));
        }
        const auto d = l2_difference(reference.snapshots, r.snapshots, problem.grid);
        const auto rel = relative_difference(reference.snapshots, r.snapshots, problem.grid);
        for (std::size_t n = 0; n < d.size(); ++n) {
            diff.add({num(t.c[k]), num(d[n].time), num(d[n].free_fluid), num(d[n].porous),
                      num(rel[n].free_fluid), num(rel[n].porous)});
        }
    }
    out.write("energies.csv", energies.str());
    out.write("diff.csv", diff.str());
}

void run_convection(const RunConfig& c, OutputDir& out, std::ostream& log) {
    const CellGeometry cell = build_unit_cell(c.cell, c.micro_resolution);
    const PhysicalParams disconnected = physical_params(c, ModelKind::disconnected);
    const PhysicalParams connected = connected_params(c, c.connected);
    Table energies(concat({"model", "alpha"}, kEnergyHeader));
    for (double alpha : alphas(c)) {
        PhysicalParams pc = connected;
        pc.alpha = alpha;
        const RunResult rc = run_connected(macro_problem(c, pc), settings(c, 0));
        PhysicalParams pd = disconnected;
        pd.alpha = alpha;
        const RunResult rd = run_memory(macro_problem(c, pd), cell, c.collocation, settings(c, 0));
        log << "convection alpha=" << alpha << ": max conservation residual connected "
            << max_residual(rc) << ", disconnected " << max_residual(rd) << "\n";
        for (const auto& e : rc.energies) {
            energies.add(concat({"connected", num(alpha)}, energy_cells(e)));
        }
        for (const auto& e : rd.energies) {
            energies.add(concat({"disconnected", num(alpha)}, energy_cells(e)));
        }
    }
    out.write("energies.csv", energies.str());
}

}  // namespace

PhysicalParams physical_params(const RunConfig& c, ModelKind kind) {
    PhysicalParams p;
    p.rho_c_f = c.rho_c_f;
    p.rho_c_s = c.rho_c_s;
    p.kappa_f = c.kappa_f;
    p.kappa_s = c.kappa_s;
    p.alpha = c.alpha;
    p.permeability = c.permeability;
    p.measures = cell_measures(c);
    const Overrides& o = c.overrides;
    if (o.fluid_fraction) {
        p.measures.fluid_fraction = *o.fluid_fraction;
        p.measures.solid_fraction = 1.0 - *o.fluid_fraction;
    }
    if (o.interface_area) {
        p.measures.interface_area = *o.interface_area;
    }
    if (o.exterior_trace) {
        p.measures.exterior_trace = *o.exterior_trace;
    }
    const bool need_solid = kind == ModelKind::connected && !o.kappa_h_s;
    std::unique_ptr<CellGeometry> cell;
    if (!o.kappa_h_f || need_solid) {
        cell = std::make_unique<CellGeometry>(build_unit_cell(c.cell, c.resolution));
    }
    p.kappa_h_f = o.kappa_h_f ? scaled(*o.kappa_h_f, c.kappa_f)
                              : diagonal(effective_conductivity(*cell, Phase::fluid, c.kappa_f));
    if (kind == ModelKind::connected) {
        p.kappa_h_s = o.kappa_h_s ? scaled(*o.kappa_h_s, c.kappa_s)
                                  : diagonal(effective_conductivity(*cell, Phase::solid, c.kappa_s));
    } else {
        p.kappa_h_s = {0.0, 0.0};
    }
    return p;
}

PhysicalParams connected_params(const RunConfig& c, const ConnectedCell& cell) {
    PhysicalParams p;
    p.rho_c_f = c.rho_c_f;
    p.rho_c_s = c.rho_c_s;
    p.kappa_f = c.kappa_f;
    p.kappa_s = c.kappa_s;
    p.alpha = c.alpha;
    p.permeability = c.permeability;
    p.kappa_h_f = scaled(cell.kappa_h_f, c.kappa_f);
    p.kappa_h_s = scaled(cell.kappa_h_s, c.kappa_s);
    p.measures = {cell.fluid_fraction, 1.0 - cell.fluid_fraction, cell.interface_area,
                  cell.exterior_trace};
    return p;
}

MacroProblem macro_problem(const RunConfig& c, const PhysicalParams& params) {
    MacroProblem m;
    m.grid = macro_grid(c);
    m.params = params;
    m.velocity = make_velocity(c.velocity, m.grid, c.darcy);
    m.sources = c.source;
    m.boundaries = boundary_spec(c, params.alpha, params.measures.exterior_trace);
    m.tolerance = c.tolerance;
    return m;
}

std::vector<std::string> execute(const RunConfig& c, Mode mode, const std::filesystem::path& dir,
                                 std::ostream& log) {
    OutputDir out(dir);
    switch (mode) {
        case Mode::tensors:
            run_tensors(c, out, log);
            break;
        case Mode::kernel:
            run_kernel(c, out, log);
            break;
        case Mode::steady:
            run_steady(c, out, log);
            break;
        case Mode::transient_a:
        case Mode::transient_b:
        case Mode::memory:
            run_transient(c, mode, out, log);
            break;
        case Mode::transition:
            run_transition(c, out, log);
            break;
        case Mode::convection:
            run_convection(c, out, log);
            break;
    }
    out.finish();
    std::vector<std::string> files = out.files();
    files.push_back("manifest.txt");
    return files;
}

}  // namespace porheat
