#include "porheat/collocation.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace porheat {

namespace {

// Linear weights of x over the sorted nodes, clamped at both ends.
std::vector<std::pair<std::size_t, double>> hat_weights(const std::vector<double>& nodes,
                                                        double x) {
    if (nodes.size() == 1 || x <= nodes.front()) {
        return {{0, 1.0}};
    }
    if (x >= nodes.back()) {
        return {{nodes.size() - 1, 1.0}};
    }
    const auto it = std::upper_bound(nodes.begin(), nodes.end(), x);
    const auto hi = static_cast<std::size_t>(it - nodes.begin());
    const std::size_t lo = hi - 1;
    const double t = (x - nodes[lo]) / (nodes[hi] - nodes[lo]);
    std::vector<std::pair<std::size_t, double>> w;
    if (t < 1.0) {
        w.emplace_back(lo, 1.0 - t);
    }
    if (t > 0.0) {
        w.emplace_back(hi, t);
    }
    return w;
}

std::vector<double> spaced(int count, double top) {
    std::vector<double> v(static_cast<std::size_t>(count));
    for (int i = 0; i < count; ++i) {
        v[static_cast<std::size_t>(i)] = count == 1 ? 0.0 : top * i / (count - 1);
    }
    return v;
}

}  // namespace

std::vector<double> CollocationSet::sample(const std::vector<double>& porous) const {
    std::vector<double> out(size(), 0.0);
    for (std::size_t i = 0; i < size(); ++i) {
        for (const auto& [c, w] : sampling[i]) {
            out[i] += w * porous[c];
        }
    }
    return out;
}

std::vector<double> CollocationSet::interpolate(const std::vector<double>& at_points) const {
    std::vector<double> out(interpolation.size(), 0.0);
    for (std::size_t c = 0; c < interpolation.size(); ++c) {
        for (const auto& [i, w] : interpolation[c]) {
            out[c] += w * at_points[i];
        }
    }
    return out;
}

CollocationSet build_collocation(const MacroGrid& grid, const CollocationPattern& pattern) {
    CollocationSet set;
    const std::size_t porous = grid.porous_count();
    if (porous == 0) {
        throw std::invalid_argument("collocation needs a porous layer");
    }
    set.interpolation.resize(porous);

    if (pattern.kind == PatternKind::all_cells) {
        for (std::size_t c = 0; c < porous; ++c) {
            set.points.push_back({grid.x_center(grid.column(c)), grid.y_center(grid.row(c))});
            set.interpolation[c] = {{c, 1.0}};
        }
    } else {
        const int nx = pattern.kind == PatternKind::line ? 1 : pattern.count_x;
        const int ny = pattern.count_y;
        if (nx < 1 || ny < 1) {
            throw std::invalid_argument("collocation pattern is empty");
        }
        const std::vector<double> ys = spaced(ny, grid.interface_height);
        std::vector<double> xs = spaced(nx, grid.length);
        if (pattern.kind == PatternKind::line) {
            xs = {0.5 * grid.length};
        }
        for (int j = 0; j < nx; ++j) {
            for (int i = 0; i < ny; ++i) {
                set.points.push_back({xs[static_cast<std::size_t>(j)], ys[static_cast<std::size_t>(i)]});
            }
        }
        for (std::size_t c = 0; c < porous; ++c) {
            const auto wy = hat_weights(ys, grid.y_center(grid.row(c)));
            const auto wx = pattern.kind == PatternKind::line
                                ? std::vector<std::pair<std::size_t, double>>{{0, 1.0}}
                                : hat_weights(xs, grid.x_center(grid.column(c)));
            for (const auto& [jx, ax] : wx) {
                for (const auto& [iy, ay] : wy) {
                    set.interpolation[c].emplace_back(jx * static_cast<std::size_t>(ny) + iy, ax * ay);
                }
            }
        }
    }

    const double vol = grid.cell_volume();
    std::vector<double> mass(set.size(), 0.0);
    set.sampling.resize(set.size());
    for (std::size_t c = 0; c < porous; ++c) {
        for (const auto& [i, w] : set.interpolation[c]) {
            mass[i] += w * vol;
            set.sampling[i].emplace_back(c, w * vol);
        }
    }
    for (std::size_t i = 0; i < set.size(); ++i) {
        if (mass[i] > 0.0) {
            for (auto& entry : set.sampling[i]) {
                entry.second /= mass[i];
            }
            continue;
        }
        // No cell leans on this point; read the nearest porous cell instead.
        std::size_t best = 0;
        double dist = std::numeric_limits<double>::infinity();
        for (std::size_t c = 0; c < porous; ++c) {
            const double dx = grid.x_center(grid.column(c)) - set.points[i][0];
            const double dy = grid.y_center(grid.row(c)) - set.points[i][1];
            if (dx * dx + dy * dy < dist) {
                dist = dx * dx + dy * dy;
                best = c;
            }
        }
        set.sampling[i] = {{best, 1.0}};
    }
    return set;
}

}  // namespace porheat
