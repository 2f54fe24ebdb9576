#include "porheat/cell_transient.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cell_common.hpp"
#include "porheat/parallel.hpp"

namespace porheat {

int step_count(double horizon, double dt) {
    if (!(dt > 0.0) || !(horizon > 0.0)) {
        throw std::invalid_argument("time step and horizon must be positive");
    }
    const double ratio = horizon / dt;
    const double n = std::round(ratio);
    if (n < 1.0 || std::abs(horizon - n * dt) > 1e-12 * horizon) {
        std::ostringstream msg;
        msg << "dt = " << dt << " does not divide T = " << horizon;
        throw std::invalid_argument(msg.str());
    }
    return static_cast<int>(n);
}

SolidCellStepper::SolidCellStepper(const CellGeometry& geom, MicroParams params, double dt,
                                   double tolerance)
    : params_(params), dt_(dt), tolerance_(tolerance) {
    if (!(dt > 0.0)) {
        throw std::invalid_argument("micro time step must be positive");
    }
    const detail::PhaseIndex idx(geom, Phase::solid);
    if (idx.size() == 0) {
        throw std::invalid_argument("solid cell problem needs solid voxels");
    }
    voxels_ = idx.voxels;
    const int d = geom.dimension();
    const double h = geom.spacing();
    const double cell = std::pow(h, d) * geom.solid_volume_weight();
    const double face = std::pow(h, d - 1) * geom.interface_weight();
    volume_.assign(size(), cell);
    area_.assign(size(), 0.0);
    for (const auto& f : geom.interface_faces()) {
        area_[static_cast<std::size_t>(idx.local[f.solid_voxel])] += face;
    }
    for (double a : area_) {
        gamma_ += a;
    }
    for (double v : volume_) {
        solid_fraction_ += v;
    }

    TripletBuilder tb(size());
    // Faces between two solid voxels only; slivers outside the solid voxels stay out.
    const double w = params.kappa * detail::face_conductance(geom);
    for (std::size_t a = 0; a < size(); ++a) {
        const std::size_t v = voxels_[a];
        for (int k = 0; k < d; ++k) {
            const std::int64_t b = idx.local[geom.neighbor(v, k, 1)];
            const double g = w * geom.opening(Phase::solid, v, k);
            if (b < 0 || g == 0.0) {
                continue;
            }
            const auto bb = static_cast<std::size_t>(b);
            tb.add(a, a, g);
            tb.add(bb, bb, g);
            tb.add(a, bb, -g);
            tb.add(bb, a, -g);
        }
        tb.add(a, a, params.rho_c * volume_[a] / dt);
    }
    insulated_ = tb.build();
    for (std::size_t a = 0; a < size(); ++a) {
        if (area_[a] > 0.0) {
            tb.add(a, a, params.alpha * area_[a]);
        }
    }
    robin_ = tb.build();
}

SolidCellState SolidCellStepper::uniform(double value, double time) const {
    return {std::vector<double>(size(), value), time};
}

SolidCellState SolidCellStepper::solve(const CsrMatrix& m, const SolidCellState& s,
                                       double theta_f, double source, bool exchange) const {
    std::vector<double> rhs(size());
    for (std::size_t a = 0; a < size(); ++a) {
        rhs[a] = params_.rho_c * volume_[a] / dt_ * s.values[a] + volume_[a] * source;
        if (exchange) {
            rhs[a] += params_.alpha * area_[a] * theta_f;
        }
    }
    SolveOptions opts;
    opts.tolerance = tolerance_;
    opts.max_iterations = 20000;
    SolveResult r = cg_solve(m, rhs, opts, s.values);
    if (!r.report.converged) {
        std::ostringstream msg;
        msg << "solid cell step did not converge: residual " << r.report.residual;
        throw SolverError(msg.str(), r.report);
    }
    return {std::move(r.x), s.time + dt_};
}

SolidCellState SolidCellStepper::step(const SolidCellState& s, double theta_f,
                                      double source) const {
    return solve(robin_, s, theta_f, source, true);
}

SolidCellState SolidCellStepper::step_insulated(const SolidCellState& s, double source) const {
    return solve(insulated_, s, 0.0, source, false);
}

double SolidCellStepper::trace(const SolidCellState& s) const {
    return dot(area_, s.values);
}

double SolidCellStepper::average(const SolidCellState& s) const {
    return dot(volume_, s.values) / solid_fraction_;
}

SolidCellState step_solid_cell(const CellGeometry& geom, const SolidCellState& state,
                               double theta_f, double source, double dt,
                               const MicroParams& params) {
    return SolidCellStepper(geom, params, dt).step(state, theta_f, source);
}

namespace {

std::vector<double> face_areas(const CellGeometry& geom, const detail::PhaseIndex& idx) {
    const double face = std::pow(geom.spacing(), geom.dimension() - 1) * geom.interface_weight();
    std::vector<double> area(idx.size(), 0.0);
    for (const auto& f : geom.interface_faces()) {
        area[static_cast<std::size_t>(idx.local[f.solid_voxel])] += face;
    }
    return area;
}

}  // namespace

double boundary_trace_integral(const SolidCellState& state, const CellGeometry& geom) {
    const detail::PhaseIndex idx(geom, Phase::solid);
    if (state.values.size() != idx.size()) {
        throw std::invalid_argument("solid state does not match the geometry");
    }
    return dot(face_areas(geom, idx), state.values);
}

double volume_average(const SolidCellState& state, const CellGeometry& geom) {
    const detail::PhaseIndex idx(geom, Phase::solid);
    if (state.values.size() != idx.size() || idx.size() == 0) {
        throw std::invalid_argument("solid state does not match the geometry");
    }
    double s = 0.0;
    for (double v : state.values) {
        s += v;
    }
    return s / static_cast<double>(idx.size());
}

MemoryKernel compute_kernel(const CellGeometry& geom, const MicroParams& params, double horizon,
                            double dt, double tolerance) {
    const int steps = step_count(horizon, dt);
    const SolidCellStepper stepper(geom, params, dt, tolerance);
    MemoryKernel k;
    k.dt = dt;
    k.params = params;
    k.geometry = geom.label();
    k.interface_area = stepper.interface_area();

    std::vector<double> xi_trace(static_cast<std::size_t>(steps) + 1, 0.0);
    k.initial_response.resize(static_cast<std::size_t>(steps));
    k.source_response.resize(static_cast<std::size_t>(steps));
    SolidCellState last;
    parallel_for(3, [&](std::size_t which) {
        SolidCellState s = stepper.uniform(which == 1 ? 1.0 : 0.0);
        for (int n = 1; n <= steps; ++n) {
            const auto i = static_cast<std::size_t>(n);
            if (which == 0) {
                s = stepper.step(s, 1.0, 0.0);
                xi_trace[i] = stepper.trace(s);
            } else if (which == 1) {
                s = stepper.step(s, 0.0, 0.0);
                k.initial_response[i - 1] = stepper.trace(s);
            } else {
                s = stepper.step(s, 0.0, 1.0);
                k.source_response[i - 1] = stepper.trace(s);
            }
        }
        if (which == 0) {
            last = std::move(s);
        }
    });

    k.psi.resize(static_cast<std::size_t>(steps));
    k.cumulative.resize(static_cast<std::size_t>(steps));
    for (std::size_t n = 1; n <= static_cast<std::size_t>(steps); ++n) {
        k.psi[n - 1] = (xi_trace[n] - xi_trace[n - 1]) / dt;
        k.cumulative[n - 1] = xi_trace[n];
        if (k.psi[n - 1] < -1e-8) {
            k.negative_samples.push_back(n);
        }
    }
    for (double v : last.values) {
        k.final_deviation = std::max(k.final_deviation, std::abs(v - 1.0));
    }
    return k;
}

AuxiliarySource compute_eta_bar(const CellGeometry& geom, const MicroParams& params,
                                const std::vector<double>& source, double initial_gap,
                                double theta0_f, double horizon, double dt) {
    const int steps = step_count(horizon, dt);
    if (source.size() != 1 && source.size() != static_cast<std::size_t>(steps)) {
        throw std::invalid_argument("solid source needs one value or one per step");
    }
    const SolidCellStepper stepper(geom, params, dt);
    AuxiliarySource out;
    out.dt = dt;
    SolidCellState eta = stepper.uniform(initial_gap);
    for (int n = 1; n <= steps; ++n) {
        const double f = source.size() == 1 ? source[0] : source[static_cast<std::size_t>(n - 1)];
        eta = stepper.step_insulated(eta, f);
        out.samples.push_back(stepper.trace(eta) + stepper.interface_area() * theta0_f);
    }
    return out;
}

}  // namespace porheat
