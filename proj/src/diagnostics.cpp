#include "porheat/diagnostics.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace porheat {

EnergyParts energies(const MacroState& state, const MacroGrid& grid, const PhysicalParams& params,
                     const std::vector<double>* solid) {
    EnergyParts e;
    const double vol = grid.cell_volume();
    const std::size_t porous = grid.porous_count();
    for (std::size_t c = 0; c < state.theta.size(); ++c) {
        if (c < porous) {
            e.porous_fluid += params.rho_c_f * vol * state.theta[c];
        } else {
            e.free_fluid += params.rho_c_f * vol * state.theta[c];
        }
    }
    e.porous_fluid *= params.measures.fluid_fraction;
    const std::vector<double>& s = solid != nullptr ? *solid : state.solid;
    for (double v : s) {
        e.solid += params.rho_c_s * vol * v;
    }
    e.solid *= params.measures.solid_fraction;
    return e;
}

double conservation_residual(double total, double input, double initial) {
    const double scale = std::max({std::abs(input), std::abs(initial), 1e-12});
    return std::abs(total - input - initial) / scale;
}

std::vector<double> ensemble_average(const MicroEnsemble& micro, const SolidCellStepper& cell,
                                     const CollocationSet& points) {
    std::vector<double> at_points(micro.states.size());
    for (std::size_t i = 0; i < at_points.size(); ++i) {
        at_points[i] = cell.average(micro.states[i]);
    }
    return points.interpolate(at_points);
}

ProfileSample profile(const MacroState& state, const MacroGrid& grid, double x1,
                      const std::vector<double>* solid) {
    if (x1 < 0.0 || x1 > grid.length) {
        throw std::invalid_argument("profile line lies outside the domain");
    }
    const int i = std::clamp(static_cast<int>(x1 / grid.dx), 0, grid.nx - 1);
    const std::vector<double>& s = solid != nullptr ? *solid : state.solid;
    ProfileSample p;
    for (int j = 0; j < grid.ny; ++j) {
        const std::size_t c = grid.cell(i, j);
        p.coordinate.push_back(grid.y_center(j));
        p.theta.push_back(state.theta[c]);
        if (!s.empty() && j < grid.interface_row) {
            p.solid.push_back(s[c]);
        }
    }
    return p;
}

Difference l2_difference(const Snapshot& a, const Snapshot& b, const MacroGrid& grid) {
    if (a.theta.size() != b.theta.size() || a.solid.size() != b.solid.size() ||
        std::abs(a.time - b.time) > 1e-9) {
        throw std::invalid_argument("snapshots do not match");
    }
    const std::size_t porous = grid.porous_count();
    double ff = 0.0;
    double p = 0.0;
    for (std::size_t c = 0; c < a.theta.size(); ++c) {
        const double d = a.theta[c] - b.theta[c];
        (c < porous ? p : ff) += d * d;
    }
    for (std::size_t c = 0; c < a.solid.size(); ++c) {
        const double d = a.solid[c] - b.solid[c];
        p += d * d;
    }
    const double vol = grid.cell_volume();
    return {a.time, std::sqrt(ff * vol), std::sqrt(p * vol)};
}

std::vector<Difference> l2_difference(const std::vector<Snapshot>& a,
                                      const std::vector<Snapshot>& b, const MacroGrid& grid) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("runs have different timelines");
    }
    std::vector<Difference> out;
    out.reserve(a.size());
    for (std::size_t n = 0; n < a.size(); ++n) {
        out.push_back(l2_difference(a[n], b[n], grid));
    }
    return out;
}

std::vector<Difference> relative_difference(const std::vector<Snapshot>& reference,
                                            const std::vector<Snapshot>& other,
                                            const MacroGrid& grid) {
    std::vector<Difference> d = l2_difference(reference, other, grid);
    for (std::size_t n = 0; n < d.size(); ++n) {
        Snapshot zero = reference[n];
        std::fill(zero.theta.begin(), zero.theta.end(), 0.0);
        std::fill(zero.solid.begin(), zero.solid.end(), 0.0);
        const Difference norm = l2_difference(reference[n], zero, grid);
        d[n].free_fluid = norm.free_fluid > 0.0 ? d[n].free_fluid / norm.free_fluid : 0.0;
        d[n].porous = norm.porous > 0.0 ? d[n].porous / norm.porous : 0.0;
    }
    return d;
}

}  // namespace porheat
