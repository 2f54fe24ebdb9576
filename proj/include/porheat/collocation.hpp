#pragma once

#include <array>
#include <cstddef>
#include <utility>
#include <vector>

#include "porheat/geometry.hpp"

namespace porheat {

enum class PatternKind { line, lattice, all_cells };

/// line: `count_y` points on x_1 = L/2 from x_2 = 0 to the interface height.
/// lattice: `count_x` by `count_y` points spanning [0,L] x [0,h].
/// all_cells: one point per porous cell center.
struct CollocationPattern {
    PatternKind kind = PatternKind::line;
    int count_x = 11;
    int count_y = 11;
    bool operator==(const CollocationPattern&) const = default;
};

using SparseRow = std::vector<std::pair<std::size_t, double>>;

/// Micro problem locations in the porous layer and the maps between porous
/// cells and points.
///
/// interpolation (W): per porous cell, linear/bilinear weights over points.
/// sampling (P): per point, D_i^-1 sum_c W_ci V_c theta_c with D_i = sum_c W_ci V_c,
/// the volume-weighted adjoint of W. Energy handed to the points through P is
/// returned exactly by W.
struct CollocationSet {
    std::vector<std::array<double, 2>> points;
    std::vector<SparseRow> interpolation;
    std::vector<SparseRow> sampling;

    std::size_t size() const { return points.size(); }
    /// Point values from porous cell values.
    std::vector<double> sample(const std::vector<double>& porous) const;
    /// Porous cell values from point values.
    std::vector<double> interpolate(const std::vector<double>& at_points) const;
};

CollocationSet build_collocation(const MacroGrid& grid, const CollocationPattern& pattern);

}  // namespace porheat
