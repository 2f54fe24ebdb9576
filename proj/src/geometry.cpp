#include "porheat/geometry.hpp"

#include <cmath>
#include <deque>
#include <numbers>
#include <sstream>

#include "porheat/parallel.hpp"

namespace porheat {

namespace {

constexpr double kTol = 1e-12;

struct Box {
    std::array<double, 3> lo{0, 0, 0};
    std::array<double, 3> hi{1, 1, 1};
};

Box bounding_box(const Primitive& p, int dim) {
    Box b;
    std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            for (int k = 0; k < dim; ++k) {
                if constexpr (std::is_same_v<T, CenteredCube>) {
                    b.lo[k] = 0.5 - 0.5 * q.side;
                    b.hi[k] = 0.5 + 0.5 * q.side;
                } else if constexpr (std::is_same_v<T, Sphere>) {
                    b.lo[k] = 0.5 - q.radius;
                    b.hi[k] = 0.5 + q.radius;
                } else {
                    if (k == q.axis) {
                        b.lo[k] = 0.0;
                        b.hi[k] = 1.0;
                    } else {
                        b.lo[k] = q.center[k] - q.half_width[k];
                        b.hi[k] = q.center[k] + q.half_width[k];
                    }
                }
            }
        },
        p);
    return b;
}

void validate(const Primitive& p, int dim) {
    if (const auto* bar = std::get_if<AxisBar>(&p)) {
        if (bar->axis < 0 || bar->axis >= dim) {
            throw GeometryError("bar axis out of range");
        }
        for (int k = 0; k < dim; ++k) {
            if (k != bar->axis && bar->half_width[k] <= 0.0) {
                throw GeometryError("bar half-widths must be positive");
            }
        }
    }
    if (const auto* c = std::get_if<CenteredCube>(&p); c && c->side <= 0.0) {
        throw GeometryError("cube side must be positive");
    }
    if (const auto* s = std::get_if<Sphere>(&p); s && s->radius <= 0.0) {
        throw GeometryError("sphere radius must be positive");
    }
    const Box b = bounding_box(p, dim);
    for (int k = 0; k < dim; ++k) {
        if (b.lo[k] < -kTol || b.hi[k] > 1.0 + kTol) {
            throw GeometryError("primitive leaves the unit cell");
        }
    }
}

bool boxes_meet(const Box& a, const Box& b, int dim) {
    for (int k = 0; k < dim; ++k) {
        if (a.lo[k] > b.hi[k] + kTol || b.lo[k] > a.hi[k] + kTol) {
            return false;
        }
    }
    return true;
}

// Periodic images count: a bar touching y=0 meets one touching y=1.
bool primitives_meet(const Primitive& p, const Primitive& q, int dim) {
    const Box a = bounding_box(p, dim);
    const Box b0 = bounding_box(q, dim);
    const int images = dim == 2 ? 9 : 27;
    for (int s = 0; s < images; ++s) {
        Box b = b0;
        int code = s;
        for (int k = 0; k < dim; ++k) {
            const int shift = code % 3 - 1;
            code /= 3;
            b.lo[k] += shift;
            b.hi[k] += shift;
        }
        if (boxes_meet(a, b, dim)) {
            return true;
        }
    }
    return false;
}

// Volume, surface and trace on y_2 = 0 of a periodic box. A face pair normal
// to k carries no interface when the box spans the full period along k.
CellMeasures box_measures(const Box& b, int dim) {
    CellMeasures m;
    std::array<double, 3> ext{1, 1, 1};
    for (int k = 0; k < dim; ++k) {
        ext[k] = b.hi[k] - b.lo[k];
    }
    double vol = 1.0;
    for (int k = 0; k < dim; ++k) {
        vol *= ext[k];
    }
    double area = 0.0;
    for (int k = 0; k < dim; ++k) {
        if (ext[k] >= 1.0 - kTol) {
            continue;
        }
        double face = 1.0;
        for (int j = 0; j < dim; ++j) {
            if (j != k) {
                face *= ext[j];
            }
        }
        area += 2.0 * face;
    }
    double trace = 0.0;
    if (b.lo[1] <= kTol) {
        trace = 1.0;
        for (int j = 0; j < dim; ++j) {
            if (j != 1) {
                trace *= ext[j];
            }
        }
    }
    m.solid_fraction = vol;
    m.interface_area = area;
    m.exterior_trace = trace;
    return m;
}

CellMeasures primitive_measures(const Primitive& p, int dim) {
    if (const auto* s = std::get_if<Sphere>(&p)) {
        CellMeasures m;
        const double r = s->radius;
        if (dim == 3) {
            m.solid_fraction = 4.0 / 3.0 * std::numbers::pi * r * r * r;
            m.interface_area = 4.0 * std::numbers::pi * r * r;
        } else {
            m.solid_fraction = std::numbers::pi * r * r;
            m.interface_area = 2.0 * std::numbers::pi * r;
        }
        m.exterior_trace = 0.0;
        return m;
    }
    return box_measures(bounding_box(p, dim), dim);
}

}  // namespace

bool inside(const Primitive& p, const std::array<double, 3>& y, int dim) {
    return std::visit(
        [&](const auto& q) {
            using T = std::decay_t<decltype(q)>;
            if constexpr (std::is_same_v<T, CenteredCube>) {
                for (int k = 0; k < dim; ++k) {
                    if (std::abs(y[k] - 0.5) >= 0.5 * q.side) {
                        return false;
                    }
                }
                return true;
            } else if constexpr (std::is_same_v<T, Sphere>) {
                double r2 = 0.0;
                for (int k = 0; k < dim; ++k) {
                    r2 += (y[k] - 0.5) * (y[k] - 0.5);
                }
                return r2 < q.radius * q.radius;
            } else {
                for (int k = 0; k < dim; ++k) {
                    if (k != q.axis && std::abs(y[k] - q.center[k]) >= q.half_width[k]) {
                        return false;
                    }
                }
                return true;
            }
        },
        p);
}

CellMeasures analytic_measures(const CellSpec& spec) {
    if (spec.measures) {
        return *spec.measures;
    }
    const int dim = spec.dimension;
    for (std::size_t a = 0; a < spec.solid.size(); ++a) {
        for (std::size_t b = a + 1; b < spec.solid.size(); ++b) {
            if (primitives_meet(spec.solid[a], spec.solid[b], dim)) {
                throw GeometryError("analytic measures unavailable; supply measures explicitly");
            }
        }
    }
    CellMeasures total;
    total.fluid_fraction = 1.0;
    total.solid_fraction = 0.0;
    for (const auto& p : spec.solid) {
        const CellMeasures m = primitive_measures(p, dim);
        total.solid_fraction += m.solid_fraction;
        total.interface_area += m.interface_area;
        total.exterior_trace += m.exterior_trace;
    }
    total.fluid_fraction = 1.0 - total.solid_fraction;
    return total;
}

namespace {

// Tubes per face side for partially blocked faces, and samples along a tube.
constexpr int kFine = 16;
constexpr int kCoarse = 4;
constexpr int kAlong = 4;

// Fraction of the s^(d-1) tubes from the center of voxel `c` to that of its
// +e_axis neighbour lying wholly inside (want_solid) or outside the solid.
template <class Solid>
double open_share(const Solid& solid, const std::array<int, 3>& c, int axis, int dim, int n,
                  int s, bool want_solid) {
    const double h = 1.0 / n;
    const int across = dim == 3 ? s * s : s;
    int open = 0;
    for (int t = 0; t < across; ++t) {
        const int u = t % s;
        const int w = t / s;
        bool ok = true;
        for (int m = 0; m < kAlong && ok; ++m) {
            std::array<double, 3> y{0.5, 0.5, 0.5};
            int slot = 0;
            for (int k = 0; k < dim; ++k) {
                double off;
                if (k == axis) {
                    off = 0.5 + (m + 0.5) / kAlong;
                } else {
                    off = ((slot == 0 ? u : w) + 0.5) / s;
                    ++slot;
                }
                y[k] = (c[k] + off) * h;
                if (y[k] >= 1.0) {
                    y[k] -= 1.0;
                }
            }
            ok = solid(y) == want_solid;
        }
        open += ok ? 1 : 0;
    }
    return static_cast<double>(open) / across;
}

}  // namespace

CellGeometry build_unit_cell(const CellSpec& spec, int resolution) {
    if (spec.dimension != 2 && spec.dimension != 3) {
        throw GeometryError("cell dimension must be 2 or 3");
    }
    if (resolution < 8) {
        throw GeometryError("cell resolution must be at least 8");
    }
    for (const auto& p : spec.solid) {
        validate(p, spec.dimension);
    }
    const CellMeasures analytic = analytic_measures(spec);

    const int dim = spec.dimension;
    const int n = resolution;
    const std::size_t count = dim == 3 ? static_cast<std::size_t>(n) * n * n
                                       : static_cast<std::size_t>(n) * n;
    std::vector<Phase> phase(count, Phase::fluid);
    const double h = 1.0 / n;
    for (std::size_t v = 0; v < count; ++v) {
        std::array<double, 3> y{0.5, 0.5, 0.5};
        std::size_t rest = v;
        for (int k = 0; k < dim; ++k) {
            y[k] = (static_cast<double>(rest % n) + 0.5) * h;
            rest /= n;
        }
        for (const auto& p : spec.solid) {
            if (inside(p, y, dim)) {
                phase[v] = Phase::solid;
                break;
            }
        }
    }

    const auto solid = [&](const std::array<double, 3>& y) {
        for (const auto& p : spec.solid) {
            if (inside(p, y, dim)) {
                return true;
            }
        }
        return false;
    };
    FaceOpenings open;
    open.fluid.assign(count, {0.0, 0.0, 0.0});
    open.solid.assign(count, {0.0, 0.0, 0.0});
    const auto shift = [&](std::size_t v, int axis) {
        std::size_t stride = 1;
        for (int k = 0; k < axis; ++k) {
            stride *= n;
        }
        const auto ck = static_cast<int>((v / stride) % n);
        return ck == n - 1 ? v - (n - 1) * stride : v + stride;
    };
    parallel_for(count, [&](std::size_t v) {
        std::array<int, 3> c{0, 0, 0};
        std::size_t rest = v;
        for (int k = 0; k < dim; ++k) {
            c[k] = static_cast<int>(rest % n);
            rest /= n;
        }
        for (int k = 0; k < dim; ++k) {
            const std::size_t w = shift(v, k);
            for (const Phase p : {Phase::fluid, Phase::solid}) {
                const bool want_solid = p == Phase::solid;
                const int ends = (phase[v] == p ? 1 : 0) + (phase[w] == p ? 1 : 0);
                double share = open_share(solid, c, k, dim, n, kCoarse, want_solid);
                if (!(share == 1.0 && ends == 2) && !(share == 0.0 && ends == 0)) {
                    share = open_share(solid, c, k, dim, n, kFine, want_solid);
                }
                (want_solid ? open.solid : open.fluid)[v][k] = share;
            }
        }
    });
    return CellGeometry(dim, n, std::move(phase), analytic, spec.label, std::move(open));
}

CellGeometry::CellGeometry(int dimension, int resolution, std::vector<Phase> phase,
                           CellMeasures analytic, std::string label, FaceOpenings openings)
    : dimension_(dimension),
      n_(resolution),
      phase_(std::move(phase)),
      analytic_(analytic),
      label_(std::move(label)),
      openings_(std::move(openings)) {
    if ((!openings_.fluid.empty() && openings_.fluid.size() != phase_.size()) ||
        (!openings_.solid.empty() && openings_.solid.size() != phase_.size())) {
        throw GeometryError("face openings do not match the voxel count");
    }
    const double h = spacing();
    const double face_area = dimension_ == 3 ? h * h : h;
    std::size_t solid = 0;
    for (std::size_t v = 0; v < phase_.size(); ++v) {
        if (phase_[v] != Phase::solid) {
            continue;
        }
        ++solid;
        const auto c = coords(v);
        for (int k = 0; k < dimension_; ++k) {
            if (c[k] == 0 || c[k] == n_ - 1) {
                disconnected_ = false;
            }
            for (int step : {-1, 1}) {
                const std::size_t w = neighbor(v, k, step);
                if (phase_[w] == Phase::fluid) {
                    interface_.push_back({v, w, k});
                }
            }
        }
        if (c[1] == 0) {
            exterior_.push_back(v);
        }
    }
    voxel_.solid_fraction = static_cast<double>(solid) / phase_.size();
    voxel_.fluid_fraction = 1.0 - voxel_.solid_fraction;
    voxel_.interface_area = interface_.size() * face_area;
    voxel_.exterior_trace = exterior_.size() * face_area;
}

double CellGeometry::opening(Phase p, std::size_t voxel, int axis) const {
    const auto& table = p == Phase::fluid ? openings_.fluid : openings_.solid;
    if (table.empty()) {
        return phase_[voxel] == p && phase_[neighbor(voxel, axis, 1)] == p ? 1.0 : 0.0;
    }
    return table[voxel][axis];
}

double CellGeometry::interface_weight() const {
    if (voxel_.interface_area <= 0.0) {
        return 0.0;
    }
    return analytic_.interface_area / voxel_.interface_area;
}

double CellGeometry::solid_volume_weight() const {
    if (voxel_.solid_fraction <= 0.0) {
        return 0.0;
    }
    return analytic_.solid_fraction / voxel_.solid_fraction;
}

std::array<int, 3> CellGeometry::coords(std::size_t voxel) const {
    std::array<int, 3> c{0, 0, 0};
    for (int k = 0; k < dimension_; ++k) {
        c[k] = static_cast<int>(voxel % n_);
        voxel /= n_;
    }
    return c;
}

std::size_t CellGeometry::index(std::array<int, 3> c) const {
    std::size_t v = 0;
    for (int k = dimension_ - 1; k >= 0; --k) {
        v = v * n_ + static_cast<std::size_t>(c[k]);
    }
    return v;
}

std::size_t CellGeometry::neighbor(std::size_t voxel, int axis, int step) const {
    auto c = coords(voxel);
    c[axis] = ((c[axis] + step) % n_ + n_) % n_;
    return index(c);
}

std::array<double, 3> CellGeometry::center(std::size_t voxel) const {
    const auto c = coords(voxel);
    std::array<double, 3> y{0.5, 0.5, 0.5};
    for (int k = 0; k < dimension_; ++k) {
        y[k] = (c[k] + 0.5) * spacing();
    }
    return y;
}

bool CellGeometry::percolates(Phase p, int axis) const {
    // Flood fill with unwrapped offsets along `axis`; reaching a voxel with
    // two different offsets means a closed path winds around the torus.
    std::vector<int> offset(phase_.size(), 0);
    std::vector<char> seen(phase_.size(), 0);
    for (std::size_t start = 0; start < phase_.size(); ++start) {
        if (phase_[start] != p || seen[start]) {
            continue;
        }
        std::deque<std::size_t> queue{start};
        seen[start] = 1;
        while (!queue.empty()) {
            const std::size_t v = queue.front();
            queue.pop_front();
            const auto c = coords(v);
            for (int k = 0; k < dimension_; ++k) {
                for (int step : {-1, 1}) {
                    const std::size_t w = neighbor(v, k, step);
                    if (phase_[w] != p) {
                        continue;
                    }
                    int wrap = 0;
                    if (k == axis) {
                        if (step == 1 && c[k] == n_ - 1) {
                            wrap = 1;
                        } else if (step == -1 && c[k] == 0) {
                            wrap = -1;
                        }
                    }
                    const int o = offset[v] + wrap;
                    if (!seen[w]) {
                        seen[w] = 1;
                        offset[w] = o;
                        queue.push_back(w);
                    } else if (offset[w] != o) {
                        return true;
                    }
                }
            }
        }
    }
    return false;
}

CellGeometry CellGeometry::complement() const {
    std::vector<Phase> swapped(phase_.size());
    for (std::size_t v = 0; v < phase_.size(); ++v) {
        swapped[v] = phase_[v] == Phase::fluid ? Phase::solid : Phase::fluid;
    }
    CellMeasures m = analytic_;
    std::swap(m.fluid_fraction, m.solid_fraction);
    m.exterior_trace = 1.0 - analytic_.exterior_trace;
    FaceOpenings open{openings_.solid, openings_.fluid};
    return CellGeometry(dimension_, n_, std::move(swapped), m, label_ + "^c", std::move(open));
}

MacroGrid build_macro_grid(double length, double height, double interface_height, int nx,
                           int ny) {
    if (length <= 0.0 || height <= 0.0) {
        throw GeometryError("macro extents must be positive");
    }
    if (nx < 1 || ny < 2) {
        throw GeometryError("macro grid needs nx >= 1 and ny >= 2");
    }
    if (!(interface_height > 0.0 && interface_height < height)) {
        throw GeometryError("interface height must lie strictly inside (0, H)");
    }
    const double rows = interface_height * ny / height;
    const double nearest = std::round(rows);
    if (std::abs(rows - nearest) > 1e-9 * std::max(1.0, rows)) {
        std::ostringstream msg;
        msg << "interface misaligned: h*ny/H = " << rows << " is not an integer";
        throw GeometryError(msg.str());
    }
    MacroGrid g;
    g.length = length;
    g.height = height;
    g.interface_height = interface_height;
    g.nx = nx;
    g.ny = ny;
    g.dx = length / nx;
    g.dy = height / ny;
    g.interface_row = static_cast<int>(nearest);
    return g;
}

}  // namespace porheat
