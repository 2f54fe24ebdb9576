#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>
#include <vector>

namespace porheat {

class GeometryError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Axis-aligned solid cube of side `side`, centered in the unit cell.
struct CenteredCube {
    double side = 0.0;
    bool operator==(const CenteredCube&) const = default;
};

/// Solid ball (disk in 2D) of radius `radius`, centered in the unit cell.
struct Sphere {
    double radius = 0.0;
    bool operator==(const Sphere&) const = default;
};

/// Solid bar spanning the whole cell along `axis`. The cross-section is the
/// box |y_k - center[k]| < half_width[k] for every k != axis.
struct AxisBar {
    int axis = 0;
    std::array<double, 3> half_width{0.0, 0.0, 0.0};
    std::array<double, 3> center{0.5, 0.5, 0.5};
    bool operator==(const AxisBar&) const = default;
};

using Primitive = std::variant<CenteredCube, Sphere, AxisBar>;

struct CellMeasures {
    double fluid_fraction = 1.0;  // |Y^f|
    double solid_fraction = 0.0;  // |Y^s|
    double interface_area = 0.0;  // |Gamma|
    double exterior_trace = 0.0;  // |Sigma^s|, solid share of the face y_2 = 0
    bool operator==(const CellMeasures&) const = default;
};

struct CellSpec {
    int dimension = 3;
    std::vector<Primitive> solid;
    std::string label;
    /// Replaces the closed-form measures, e.g. for overlapping primitives.
    std::optional<CellMeasures> measures;
    bool operator==(const CellSpec&) const = default;
};

enum class Phase : std::uint8_t { fluid = 0, solid = 1 };

/// A voxel face separating a solid voxel from a fluid voxel.
struct InterfaceFace {
    std::size_t solid_voxel;
    std::size_t fluid_voxel;
    int axis;
};

/// Open share of each voxel face, per phase. Entry [v][k] belongs to the face
/// between voxel v and its +e_k neighbour: the fraction of straight tubes
/// joining the two voxel centers that lie entirely inside the phase.
struct FaceOpenings {
    std::vector<std::array<double, 3>> fluid;
    std::vector<std::array<double, 3>> solid;
};

/// Voxelized periodic unit cell [0,1]^d.
class CellGeometry {
public:
    /// Without openings every face between two voxels of one phase is fully open.
    CellGeometry(int dimension, int resolution, std::vector<Phase> phase,
                 CellMeasures analytic, std::string label, FaceOpenings openings = {});

    int dimension() const { return dimension_; }
    int resolution() const { return n_; }
    double spacing() const { return 1.0 / n_; }
    std::size_t voxel_count() const { return phase_.size(); }
    const std::string& label() const { return label_; }

    Phase phase(std::size_t voxel) const { return phase_[voxel]; }
    const std::vector<Phase>& phases() const { return phase_; }

    /// Closed-form (or user supplied) measures; these enter macro coefficients.
    const CellMeasures& measures() const { return analytic_; }
    /// Measures obtained by counting voxels and voxel faces.
    const CellMeasures& voxel_measures() const { return voxel_; }

    /// Open share in [0,1] of the face between `voxel` and its +e_axis neighbour
    /// for phase `p`. Without sampled openings: 1 iff both voxels belong to `p`.
    double opening(Phase p, std::size_t voxel, int axis) const;

    const std::vector<InterfaceFace>& interface_faces() const { return interface_; }
    /// Solid voxels touching the cell face y_2 = 0.
    const std::vector<std::size_t>& exterior_solid_voxels() const { return exterior_; }

    /// Multiplier turning the voxel face count into the analytic |Gamma|.
    double interface_weight() const;
    /// Multiplier turning the voxel solid volume into the analytic |Y^s|.
    double solid_volume_weight() const;

    /// True iff no solid voxel lies on any cell face.
    bool disconnected() const { return disconnected_; }
    /// True iff the given phase has a same-phase path through the periodic boundary along `axis`.
    bool percolates(Phase p, int axis) const;

    std::array<int, 3> coords(std::size_t voxel) const;
    std::size_t index(std::array<int, 3> c) const;
    /// Periodic neighbour of `voxel` shifted by `step` along `axis`.
    std::size_t neighbor(std::size_t voxel, int axis, int step) const;
    /// Center of the voxel in cell coordinates.
    std::array<double, 3> center(std::size_t voxel) const;

    /// Same voxels with fluid and solid swapped.
    CellGeometry complement() const;

private:
    int dimension_;
    int n_;
    std::vector<Phase> phase_;
    CellMeasures analytic_;
    CellMeasures voxel_;
    std::vector<InterfaceFace> interface_;
    std::vector<std::size_t> exterior_;
    bool disconnected_ = true;
    std::string label_;
    FaceOpenings openings_;
};

/// Closed-form measures of a union of pairwise separated primitives.
/// Throws GeometryError when the primitives touch or overlap.
CellMeasures analytic_measures(const CellSpec& spec);

bool inside(const Primitive& p, const std::array<double, 3>& y, int dimension);

/// Voxelizes by voxel-center membership and resolves partially blocked faces
/// by sampling tubes between neighbouring centers.
CellGeometry build_unit_cell(const CellSpec& spec, int resolution);

enum class Subdomain : std::uint8_t { porous, free_fluid };

/// Structured macro grid on [0,L1] x [0,H]; rows below `interface_row` are porous.
struct MacroGrid {
    double length = 2.0;
    double height = 1.0;
    double interface_height = 0.5;
    int nx = 1;
    int ny = 1;
    double dx = 1.0;
    double dy = 1.0;
    int interface_row = 0;

    int dimension() const { return nx == 1 ? 1 : 2; }
    std::size_t cell_count() const { return static_cast<std::size_t>(nx) * ny; }
    std::size_t porous_count() const { return static_cast<std::size_t>(nx) * interface_row; }
    std::size_t cell(int i, int j) const { return static_cast<std::size_t>(j) * nx + i; }
    int column(std::size_t c) const { return static_cast<int>(c % nx); }
    int row(std::size_t c) const { return static_cast<int>(c / nx); }
    bool porous(std::size_t c) const { return row(c) < interface_row; }
    Subdomain subdomain(std::size_t c) const {
        return porous(c) ? Subdomain::porous : Subdomain::free_fluid;
    }
    double cell_volume() const { return dx * dy; }
    double x_center(int i) const { return (i + 0.5) * dx; }
    double y_center(int j) const { return (j + 0.5) * dy; }
    /// Length of Sigma (per unit depth).
    double interface_length() const { return length; }
};

MacroGrid build_macro_grid(double length, double height, double interface_height, int nx, int ny);

}  // namespace porheat
