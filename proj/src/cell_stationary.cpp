#include "porheat/cell_stationary.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "cell_common.hpp"
#include "porheat/parallel.hpp"

namespace porheat {

namespace {

const char* phase_name(Phase p) { return p == Phase::fluid ? "fluid" : "solid"; }

// Corrector sign: fluid problems use grad xi + e_i, solid problems grad xi - e_i.
double phase_sign(Phase p) { return p == Phase::fluid ? 1.0 : -1.0; }

}  // namespace

double EffectiveTensor::quadratic(const std::array<double, 3>& zeta) const {
    double q = 0.0;
    for (int i = 0; i < dimension; ++i) {
        for (int j = 0; j < dimension; ++j) {
            q += zeta[i] * entries[i][j] * zeta[j];
        }
    }
    return q;
}

CellField solve_corrector(const CellGeometry& geom, Phase phase, int direction,
                          const CorrectorOptions& opts) {
    if (direction < 0 || direction >= geom.dimension()) {
        throw std::invalid_argument("corrector direction out of range");
    }
    const detail::PhaseIndex idx = detail::conducting_index(geom, phase);
    if (idx.size() == 0) {
        throw std::invalid_argument(std::string("corrector requested for empty ") +
                                    phase_name(phase) + " phase");
    }
    const double w = detail::face_conductance(geom);
    TripletBuilder tb(idx.size());
    detail::add_phase_laplacian(geom, phase, idx, w, tb);
    const CsrMatrix a = tb.build();

    // Discrete divergence of the phase-restricted constant field e_i.
    const double s = phase_sign(phase) * w * geom.spacing();
    std::vector<double> rhs(idx.size(), 0.0);
    for (std::size_t loc = 0; loc < idx.size(); ++loc) {
        const std::size_t v = idx.voxels[loc];
        rhs[loc] += s * geom.opening(phase, v, direction);
        rhs[loc] -= s * geom.opening(phase, geom.neighbor(v, direction, -1), direction);
    }

    SolveOptions so;
    so.tolerance = opts.tolerance;
    so.max_iterations = opts.max_iterations;
    so.project_constants = true;
    SolveResult res = cg_solve(a, rhs, so);
    if (!res.report.converged) {
        std::ostringstream msg;
        msg << "corrector solve (" << phase_name(phase) << ", e_" << direction + 1
            << ") did not converge: residual " << res.report.residual << " after "
            << res.report.iterations << " iterations";
        throw SolverError(msg.str(), res.report);
    }
    CellField f;
    f.phase = phase;
    f.voxels = idx.voxels;
    f.values = std::move(res.x);
    f.zero_mean = true;
    f.report = res.report;
    return f;
}

EffectiveTensor effective_conductivity(const CellGeometry& geom, Phase phase, double kappa,
                                       const CorrectorOptions& opts) {
    const int d = geom.dimension();
    EffectiveTensor t;
    t.dimension = d;
    t.phase = phase;
    t.conductivity = kappa;
    t.geometry = geom.label();
    t.resolution = geom.resolution();

    if (detail::conducting_index(geom, phase).size() == 0) {
        t.warnings.push_back(std::string("no conducting ") + phase_name(phase) +
                             " faces; tensor is zero");
        return t;
    }
    std::vector<CellField> fields(static_cast<std::size_t>(d));
    parallel_for(static_cast<std::size_t>(d), [&](std::size_t i) {
        fields[i] = solve_corrector(geom, phase, static_cast<int>(i), opts);
    });

    const detail::PhaseIndex idx = detail::conducting_index(geom, phase);
    const double h = geom.spacing();
    const double cell_volume = std::pow(h, d);
    const double sign = phase_sign(phase);
    Matrix3 raw{};
    for (int i = 0; i < d; ++i) {
        const auto& xi = fields[static_cast<std::size_t>(i)].values;
        for (int j = 0; j < d; ++j) {
            double sum = 0.0;
            for (std::size_t a = 0; a < idx.size(); ++a) {
                const double open = geom.opening(phase, idx.voxels[a], j);
                if (open == 0.0) {
                    continue;
                }
                const auto b = static_cast<std::size_t>(idx.local[geom.neighbor(idx.voxels[a], j, 1)]);
                const double grad = (xi[b] - xi[a]) / h;
                sum += open * (sign * grad + (i == j ? 1.0 : 0.0));
            }
            raw[i][j] = kappa * cell_volume * sum;
        }
        t.reports.push_back(fields[static_cast<std::size_t>(i)].report);
    }

    double biggest = 0.0;
    double skew = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) {
            biggest = std::max(biggest, std::abs(raw[i][j]));
            skew = std::max(skew, std::abs(raw[i][j] - raw[j][i]));
            t.entries[i][j] = 0.5 * (raw[i][j] + raw[j][i]);
        }
    }
    t.asymmetry = biggest > 0.0 ? skew / biggest : 0.0;

    if (phase == Phase::solid) {
        for (int i = 0; i < d; ++i) {
            if (!geom.percolates(Phase::solid, i)) {
                t.warnings.push_back("solid phase does not percolate along e_" +
                                     std::to_string(i + 1) + "; corrector is not meaningful there");
            }
        }
    }
    return t;
}

}  // namespace porheat
