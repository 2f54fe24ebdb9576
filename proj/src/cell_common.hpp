#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include "porheat/geometry.hpp"
#include "porheat/linalg.hpp"

namespace porheat::detail {

/// Voxels of one phase and the inverse map voxel -> local unknown (-1 if absent).
struct PhaseIndex {
    std::vector<std::size_t> voxels;
    std::vector<std::int64_t> local;

    PhaseIndex() = default;
    PhaseIndex(const CellGeometry& g, Phase p) : local(g.voxel_count(), -1) {
        for (std::size_t v = 0; v < g.voxel_count(); ++v) {
            if (g.phase(v) == p) {
                local[v] = static_cast<std::int64_t>(voxels.size());
                voxels.push_back(v);
            }
        }
    }
    std::size_t size() const { return voxels.size(); }
};

/// Voxels touching at least one face that is open for phase `p`.
inline PhaseIndex conducting_index(const CellGeometry& g, Phase p) {
    std::vector<char> on(g.voxel_count(), 0);
    for (std::size_t v = 0; v < g.voxel_count(); ++v) {
        for (int k = 0; k < g.dimension(); ++k) {
            if (g.opening(p, v, k) > 0.0) {
                on[v] = 1;
                on[g.neighbor(v, k, 1)] = 1;
            }
        }
    }
    PhaseIndex idx;
    idx.local.assign(g.voxel_count(), -1);
    for (std::size_t v = 0; v < g.voxel_count(); ++v) {
        if (on[v]) {
            idx.local[v] = static_cast<std::int64_t>(idx.voxels.size());
            idx.voxels.push_back(v);
        }
    }
    return idx;
}

/// Graph Laplacian over same-phase voxel faces, face weight `w` times the open share.
inline void add_phase_laplacian(const CellGeometry& g, Phase p, const PhaseIndex& idx,
                                double w0, TripletBuilder& tb) {
    for (std::size_t a = 0; a < idx.size(); ++a) {
        const std::size_t v = idx.voxels[a];
        for (int k = 0; k < g.dimension(); ++k) {
            const double w = w0 * g.opening(p, v, k);
            const std::int64_t b = idx.local[g.neighbor(v, k, 1)];
            if (b < 0 || w == 0.0) {
                continue;
            }
            const auto bb = static_cast<std::size_t>(b);
            tb.add(a, a, w);
            tb.add(bb, bb, w);
            tb.add(a, bb, -w);
            tb.add(bb, a, -w);
        }
    }
}

/// h^(d-2): conductance of one voxel face for unit conductivity.
inline double face_conductance(const CellGeometry& g) {
    return std::pow(g.spacing(), g.dimension() - 2);
}

}  // namespace porheat::detail
