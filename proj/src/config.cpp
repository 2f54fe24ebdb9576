#include "porheat/config.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "porheat/cell_transient.hpp"
#include "porheat/output.hpp"

namespace porheat {

namespace {

struct ModeName {
    Mode mode;
    const char* name;
};

constexpr ModeName kModes[] = {
    {Mode::tensors, "tensors"},       {Mode::kernel, "kernel"},
    {Mode::steady, "steady"},         {Mode::transient_a, "transient-a"},
    {Mode::transient_b, "transient-b"}, {Mode::memory, "memory"},
    {Mode::transition, "transition"}, {Mode::convection, "convection"},
};

const std::map<std::string, std::set<std::string>>& known_keys() {
    static const std::map<std::string, std::set<std::string>> keys{
        {"run",
         {"mode", "dt", "horizon", "tau", "max_iter", "theta0", "solid0", "model", "profile_x1",
          "threads"}},
        {"cell", {"dimension", "solid", "label", "resolution", "refine", "measures"}},
        {"micro", {"resolution"}},
        {"macro", {"length", "height", "interface", "nx", "ny", "tolerance"}},
        {"physical", {"rho_c_f", "rho_c_s", "kappa_f", "kappa_s", "alpha", "permeability"}},
        {"overrides",
         {"kappa_h_f", "kappa_h_s", "fluid_fraction", "interface_area", "exterior_trace"}},
        {"source", {"fluid", "solid", "interface", "amplitude", "cutoff", "period"}},
        {"boundary",
         {"left_free", "left_porous", "right_free", "right_porous", "bottom", "top", "left_solid",
          "right_solid", "bottom_solid"}},
        {"velocity", {"kind", "darcy"}},
        {"collocation", {"pattern", "count_x", "count_y"}},
        {"sweep", {"alpha"}},
        {"connected",
         {"label", "kappa_h_f", "kappa_h_s", "fluid_fraction", "interface_area",
          "exterior_trace"}},
        {"transition",
         {"c", "kappa_h_f", "kappa_h_s", "interface_area", "exterior_trace", "fluid_fraction"}},
    };
    return keys;
}

using Values = std::vector<std::string>;

class Reader {
public:
    explicit Reader(const std::string& text) {
        std::istringstream in(text);
        std::vector<CLI::ConfigItem> items;
        try {
            items = CLI::ConfigINI().from_config(in);
        } catch (const std::exception& e) {
            throw ConfigError(std::string("malformed configuration: ") + e.what());
        }
        std::vector<std::string> unknown;
        for (const auto& it : items) {
            if (it.name == "++" || it.name == "--") {
                continue;
            }
            if (it.parents.size() != 1) {
                unknown.push_back(it.parents.empty() ? it.name : it.fullname());
                continue;
            }
            const std::string& section = it.parents.front();
            const auto sec = known_keys().find(section);
            if (sec == known_keys().end() || sec->second.count(it.name) == 0) {
                unknown.push_back(section + "." + it.name);
                continue;
            }
            Values v;
            for (const auto& s : it.inputs) {
                if (!s.empty()) {
                    v.push_back(s);
                }
            }
            entries_[section + "." + it.name] = v;
        }
        if (!unknown.empty()) {
            std::string msg = "unknown keys:";
            for (const auto& k : unknown) {
                msg += " " + k;
            }
            throw ConfigError(msg);
        }
    }

    const Values* find(const std::string& key) const {
        const auto it = entries_.find(key);
        return it == entries_.end() ? nullptr : &it->second;
    }

private:
    std::map<std::string, Values> entries_;
};

[[noreturn]] void fail(const std::string& key, const std::string& what) {
    throw ConfigError(key + ": " + what);
}

double to_double(const std::string& key, const std::string& s) {
    double v = 0.0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) {
        fail(key, "expected a number, got '" + s + "'");
    }
    return v;
}

int to_int(const std::string& key, const std::string& s) {
    int v = 0;
    const auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || end != s.data() + s.size()) {
        fail(key, "expected an integer, got '" + s + "'");
    }
    return v;
}

const Values* single(const Reader& r, const std::string& key) {
    const Values* v = r.find(key);
    if (v != nullptr && v->size() != 1) {
        fail(key, "expected one value");
    }
    return v;
}

void read(const Reader& r, const std::string& key, double& out) {
    if (const Values* v = single(r, key)) {
        out = to_double(key, v->front());
    }
}

void read(const Reader& r, const std::string& key, int& out) {
    if (const Values* v = single(r, key)) {
        out = to_int(key, v->front());
    }
}

void read(const Reader& r, const std::string& key, std::optional<double>& out) {
    if (const Values* v = single(r, key)) {
        out = to_double(key, v->front());
    }
}

void read(const Reader& r, const std::string& key, std::string& out) {
    if (const Values* v = r.find(key)) {
        std::string joined;
        for (const auto& s : *v) {
            joined += (joined.empty() ? "" : " ") + s;
        }
        out = joined;
    }
}

void read(const Reader& r, const std::string& key, std::vector<double>& out) {
    if (const Values* v = r.find(key)) {
        out.clear();
        for (const auto& s : *v) {
            out.push_back(to_double(key, s));
        }
    }
}

// One value means an isotropic tensor.
void read(const Reader& r, const std::string& key, std::array<double, 2>& out) {
    if (const Values* v = r.find(key)) {
        if (v->size() == 1) {
            out.fill(to_double(key, v->front()));
        } else if (v->size() == 2) {
            out = {to_double(key, (*v)[0]), to_double(key, (*v)[1])};
        } else {
            fail(key, "expected one or two values");
        }
    }
}

void read(const Reader& r, const std::string& key, std::optional<std::array<double, 2>>& out) {
    if (r.find(key) != nullptr) {
        std::array<double, 2> a{};
        read(r, key, a);
        out = a;
    }
}

std::vector<Primitive> parse_solid(const std::string& key, const Values& v) {
    std::vector<Primitive> out;
    std::size_t i = 0;
    const auto number = [&](const char* what) {
        if (i >= v.size()) {
            fail(key, std::string("missing ") + what);
        }
        return to_double(key, v[i++]);
    };
    if (v.size() == 1 && v.front() == "none") {
        return out;
    }
    while (i < v.size()) {
        const std::string kind = v[i++];
        if (kind == "cube") {
            out.push_back(CenteredCube{number("cube side")});
        } else if (kind == "sphere") {
            out.push_back(Sphere{number("sphere radius")});
        } else if (kind == "bar") {
            AxisBar bar;
            bar.axis = static_cast<int>(number("bar axis"));
            if (bar.axis < 0 || bar.axis > 2) {
                fail(key, "bar axis must be 0, 1 or 2");
            }
            int filled = 0;
            for (int k = 0; k < 3 && i < v.size() && v[i] != "at" && v[i] != "+"; ++k) {
                if (k == bar.axis) {
                    continue;
                }
                bar.half_width[static_cast<std::size_t>(k)] = number("bar half-width");
                ++filled;
            }
            if (filled == 0) {
                fail(key, "bar needs cross-section half-widths");
            }
            if (i < v.size() && v[i] == "at") {
                ++i;
                for (std::size_t k = 0; k < 3 && i < v.size() && v[i] != "+"; ++k) {
                    bar.center[k] = number("bar center");
                }
            }
            out.push_back(bar);
        } else {
            fail(key, "unknown primitive '" + kind + "' (cube, sphere, bar)");
        }
        if (i < v.size()) {
            if (v[i] != "+") {
                fail(key, "primitives are joined with '+'");
            }
            ++i;
        }
    }
    return out;
}

std::string solid_text(const std::vector<Primitive>& prims) {
    if (prims.empty()) {
        return "none";
    }
    std::string out;
    for (const auto& p : prims) {
        if (!out.empty()) {
            out += " + ";
        }
        if (const auto* c = std::get_if<CenteredCube>(&p)) {
            out += "cube " + num(c->side);
        } else if (const auto* s = std::get_if<Sphere>(&p)) {
            out += "sphere " + num(s->radius);
        } else {
            const auto& b = std::get<AxisBar>(p);
            out += "bar " + std::to_string(b.axis);
            for (int k = 0; k < 3; ++k) {
                if (k != b.axis) {
                    out += " " + num(b.half_width[static_cast<std::size_t>(k)]);
                }
            }
            out += " at " + num(b.center[0]) + " " + num(b.center[1]) + " " + num(b.center[2]);
        }
    }
    return out;
}

BoundaryEntry parse_boundary(const std::string& key, const Values& v) {
    BoundaryEntry b;
    if (v.empty()) {
        fail(key, "missing condition");
    }
    if (v[0] == "insulated" && v.size() == 1) {
        return b;
    }
    if (v[0] == "dirichlet" && v.size() == 2) {
        b.kind = Condition::Kind::dirichlet;
        b.value = to_double(key, v[1]);
        return b;
    }
    if (v[0] == "robin" && v.size() == 3) {
        b.kind = Condition::Kind::robin;
        if (v[1] == "auto") {
            b.automatic = true;
        } else {
            b.coefficient = to_double(key, v[1]);
            if (b.coefficient < 0.0) {
                fail(key, "Robin coefficient must be nonnegative");
            }
        }
        b.value = to_double(key, v[2]);
        return b;
    }
    fail(key, "expected 'insulated', 'dirichlet <value>' or 'robin <coefficient|auto> <ambient>'");
}

std::string boundary_text(const BoundaryEntry& b) {
    switch (b.kind) {
        case Condition::Kind::insulated:
            return "insulated";
        case Condition::Kind::dirichlet:
            return "dirichlet " + num(b.value);
        case Condition::Kind::robin:
            return "robin " + (b.automatic ? std::string("auto") : num(b.coefficient)) + " " +
                   num(b.value);
    }
    return "insulated";
}

struct BoundaryKey {
    const char* name;
    int group;  // 0 free fluid, 1 porous fluid, 2 solid
    Side side;
};

constexpr BoundaryKey kBoundaryKeys[] = {
    {"left_free", 0, Side::left},       {"left_porous", 1, Side::left},
    {"right_free", 0, Side::right},     {"right_porous", 1, Side::right},
    {"bottom", 1, Side::bottom},        {"top", 0, Side::top},
    {"left_solid", 2, Side::left},      {"right_solid", 2, Side::right},
    {"bottom_solid", 2, Side::bottom},
};

template <class Config>
auto& boundary_slot(Config& c, const BoundaryKey& k) {
    auto& group = k.group == 0 ? c.free_fluid : (k.group == 1 ? c.porous_fluid : c.solid);
    return group[static_cast<std::size_t>(k.side)];
}

template <class T>
T pick(const std::string& key, const std::string& value,
       std::initializer_list<std::pair<const char*, T>> options) {
    std::string names;
    for (const auto& [name, v] : options) {
        if (value == name) {
            return v;
        }
        names += std::string(names.empty() ? "" : ", ") + name;
    }
    fail(key, "unknown value '" + value + "' (" + names + ")");
}

template <class T>
std::string name_of(const T& value, std::initializer_list<std::pair<const char*, T>> options) {
    for (const auto& [name, v] : options) {
        if (value == v) {
            return name;
        }
    }
    return "";
}

const std::initializer_list<std::pair<const char*, InterfaceSchedule>> kSchedules{
    {"none", InterfaceSchedule::none},
    {"step", InterfaceSchedule::step},
    {"oscillating", InterfaceSchedule::oscillating}};
const std::initializer_list<std::pair<const char*, VelocityKind>> kVelocities{
    {"zero", VelocityKind::zero}, {"parallel_channel", VelocityKind::parallel_channel}};
const std::initializer_list<std::pair<const char*, PatternKind>> kPatterns{
    {"line", PatternKind::line}, {"lattice", PatternKind::lattice},
    {"all_cells", PatternKind::all_cells}};
const std::initializer_list<std::pair<const char*, ModelKind>> kModels{
    {"connected", ModelKind::connected}, {"disconnected", ModelKind::disconnected}};

void require(bool ok, const std::string& key, const std::string& what) {
    if (!ok) {
        fail(key, what);
    }
}

void validate(const RunConfig& c) {
    require(c.dt > 0.0, "run.dt", "must be positive");
    require(c.horizon > 0.0, "run.horizon", "must be positive");
    try {
        step_count(c.horizon, c.dt);
    } catch (const std::invalid_argument& e) {
        fail("run.dt", e.what());
    }
    require(c.tau > 0.0, "run.tau", "must be positive");
    require(c.max_iter >= 1, "run.max_iter", "must be at least 1");
    require(c.resolution >= 8, "cell.resolution", "must be at least 8");
    require(c.micro_resolution >= 8, "micro.resolution", "must be at least 8");
    require(c.cell.dimension == 2 || c.cell.dimension == 3, "cell.dimension", "must be 2 or 3");
    if (!c.cell.measures) {
        try {
            analytic_measures(c.cell);
        } catch (const GeometryError& e) {
            fail("cell.solid", e.what());
        }
    }
    try {
        macro_grid(c);
    } catch (const GeometryError& e) {
        fail("macro", e.what());
    }
    require(c.tolerance > 0.0 && c.tolerance < 1.0, "macro.tolerance", "must lie in (0, 1)");
    if (c.profile_x1) {
        require(*c.profile_x1 >= 0.0 && *c.profile_x1 <= c.length, "run.profile_x1",
                "must lie in [0, length]");
    }
    require(c.rho_c_f > 0.0, "physical.rho_c_f", "must be positive");
    require(c.rho_c_s > 0.0, "physical.rho_c_s", "must be positive");
    require(c.kappa_f > 0.0, "physical.kappa_f", "must be positive");
    require(c.kappa_s > 0.0, "physical.kappa_s", "must be positive");
    require(c.alpha >= 0.0, "physical.alpha", "must be nonnegative");
    if (c.permeability) {
        require(*c.permeability > 0.0, "physical.permeability", "must be positive");
    }
    const auto tensor_ok = [](const std::array<double, 2>& t) { return t[0] >= 0.0 && t[1] >= 0.0; };
    const auto fraction_ok = [](double f) { return f > 0.0 && f <= 1.0; };
    if (c.overrides.kappa_h_f) {
        require(tensor_ok(*c.overrides.kappa_h_f), "overrides.kappa_h_f", "must be nonnegative");
    }
    if (c.overrides.kappa_h_s) {
        require(tensor_ok(*c.overrides.kappa_h_s), "overrides.kappa_h_s", "must be nonnegative");
    }
    if (c.overrides.fluid_fraction) {
        require(fraction_ok(*c.overrides.fluid_fraction), "overrides.fluid_fraction",
                "must lie in (0, 1]");
    }
    if (c.overrides.interface_area) {
        require(*c.overrides.interface_area >= 0.0, "overrides.interface_area",
                "must be nonnegative");
    }
    if (c.overrides.exterior_trace) {
        require(*c.overrides.exterior_trace >= 0.0 && *c.overrides.exterior_trace <= 1.0,
                "overrides.exterior_trace", "must lie in [0, 1]");
    }
    require(c.source.cutoff >= 0.0, "source.cutoff", "must be nonnegative");
    require(c.source.period > 0.0, "source.period", "must be positive");
    require(c.collocation.count_x >= 1, "collocation.count_x", "must be at least 1");
    require(c.collocation.count_y >= 1, "collocation.count_y", "must be at least 1");
    for (double a : c.alpha_sweep) {
        require(a >= 0.0, "sweep.alpha", "must be nonnegative");
    }
    require(tensor_ok(c.connected.kappa_h_f), "connected.kappa_h_f", "must be nonnegative");
    require(tensor_ok(c.connected.kappa_h_s), "connected.kappa_h_s", "must be nonnegative");
    require(fraction_ok(c.connected.fluid_fraction), "connected.fluid_fraction",
            "must lie in (0, 1]");
    require(c.connected.interface_area >= 0.0, "connected.interface_area", "must be nonnegative");
    require(c.connected.exterior_trace >= 0.0 && c.connected.exterior_trace <= 1.0,
            "connected.exterior_trace", "must lie in [0, 1]");
    const TransitionSweep& t = c.transition;
    const std::size_t n = t.c.size();
    require(n > 0, "transition.c", "needs at least one entry");
    require(t.kappa_h_f.size() == n && t.kappa_h_s.size() == n && t.interface_area.size() == n &&
                t.exterior_trace.size() == n,
            "transition", "all lists need one entry per value of c");
    require(fraction_ok(t.fluid_fraction), "transition.fluid_fraction", "must lie in (0, 1]");
}

}  // namespace

Mode parse_mode(const std::string& name) {
    for (const auto& m : kModes) {
        if (name == m.name) {
            return m.mode;
        }
    }
    std::string names;
    for (const auto& m : kModes) {
        names += std::string(names.empty() ? "" : ", ") + m.name;
    }
    throw ConfigError("unknown mode '" + name + "' (" + names + ")");
}

std::string mode_name(Mode m) {
    for (const auto& e : kModes) {
        if (e.mode == m) {
            return e.name;
        }
    }
    return "";
}

RunConfig parse_config(const std::string& text) {
    const Reader r(text);
    RunConfig c;
    std::string s;

    if (r.find("run.mode") != nullptr) {
        read(r, "run.mode", s);
        c.mode = parse_mode(s);
    }
    read(r, "run.dt", c.dt);
    read(r, "run.horizon", c.horizon);
    read(r, "run.tau", c.tau);
    read(r, "run.max_iter", c.max_iter);
    read(r, "run.theta0", c.theta0);
    read(r, "run.solid0", c.solid0);
    if (r.find("run.model") != nullptr) {
        read(r, "run.model", s);
        c.model = pick("run.model", s, kModels);
    }
    read(r, "run.profile_x1", c.profile_x1);
    int threads = 0;
    read(r, "run.threads", threads);
    require(threads >= 0, "run.threads", "must be nonnegative");
    c.threads = static_cast<unsigned>(threads);

    read(r, "cell.dimension", c.cell.dimension);
    if (const Values* v = r.find("cell.solid")) {
        c.cell.solid = parse_solid("cell.solid", *v);
    }
    read(r, "cell.label", c.cell.label);
    read(r, "cell.resolution", c.resolution);
    if (r.find("cell.refine") != nullptr) {
        read(r, "cell.refine", s);
        c.refine = pick("cell.refine", s, {std::pair{"true", true}, std::pair{"false", false}});
    }
    if (r.find("cell.measures") != nullptr) {
        std::vector<double> m;
        read(r, "cell.measures", m);
        require(m.size() == 4, "cell.measures",
                "expected fluid_fraction solid_fraction interface_area exterior_trace");
        c.cell.measures = CellMeasures{m[0], m[1], m[2], m[3]};
    }
    read(r, "micro.resolution", c.micro_resolution);

    read(r, "macro.length", c.length);
    read(r, "macro.height", c.height);
    read(r, "macro.interface", c.interface_height);
    read(r, "macro.nx", c.nx);
    read(r, "macro.ny", c.ny);
    read(r, "macro.tolerance", c.tolerance);

    read(r, "physical.rho_c_f", c.rho_c_f);
    read(r, "physical.rho_c_s", c.rho_c_s);
    read(r, "physical.kappa_f", c.kappa_f);
    read(r, "physical.kappa_s", c.kappa_s);
    read(r, "physical.alpha", c.alpha);
    read(r, "physical.permeability", c.permeability);

    read(r, "overrides.kappa_h_f", c.overrides.kappa_h_f);
    read(r, "overrides.kappa_h_s", c.overrides.kappa_h_s);
    read(r, "overrides.fluid_fraction", c.overrides.fluid_fraction);
    read(r, "overrides.interface_area", c.overrides.interface_area);
    read(r, "overrides.exterior_trace", c.overrides.exterior_trace);

    read(r, "source.fluid", c.source.fluid);
    read(r, "source.solid", c.source.solid);
    if (r.find("source.interface") != nullptr) {
        read(r, "source.interface", s);
        c.source.schedule = pick("source.interface", s, kSchedules);
    }
    read(r, "source.amplitude", c.source.amplitude);
    read(r, "source.cutoff", c.source.cutoff);
    read(r, "source.period", c.source.period);

    for (const auto& k : kBoundaryKeys) {
        const std::string key = std::string("boundary.") + k.name;
        if (const Values* v = r.find(key)) {
            boundary_slot(c, k) = parse_boundary(key, *v);
        }
    }

    if (r.find("velocity.kind") != nullptr) {
        read(r, "velocity.kind", s);
        c.velocity = pick("velocity.kind", s, kVelocities);
    }
    read(r, "velocity.darcy", c.darcy);

    if (r.find("collocation.pattern") != nullptr) {
        read(r, "collocation.pattern", s);
        c.collocation.kind = pick("collocation.pattern", s, kPatterns);
    }
    read(r, "collocation.count_x", c.collocation.count_x);
    read(r, "collocation.count_y", c.collocation.count_y);

    read(r, "sweep.alpha", c.alpha_sweep);

    read(r, "connected.label", c.connected.label);
    read(r, "connected.kappa_h_f", c.connected.kappa_h_f);
    read(r, "connected.kappa_h_s", c.connected.kappa_h_s);
    read(r, "connected.fluid_fraction", c.connected.fluid_fraction);
    read(r, "connected.interface_area", c.connected.interface_area);
    read(r, "connected.exterior_trace", c.connected.exterior_trace);

    read(r, "transition.c", c.transition.c);
    read(r, "transition.kappa_h_f", c.transition.kappa_h_f);
    read(r, "transition.kappa_h_s", c.transition.kappa_h_s);
    read(r, "transition.interface_area", c.transition.interface_area);
    read(r, "transition.exterior_trace", c.transition.exterior_trace);
    read(r, "transition.fluid_fraction", c.transition.fluid_fraction);

    validate(c);
    return c;
}

RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) {
        throw ConfigError("cannot read configuration " + path.string());
    }
    std::ostringstream text;
    text << f.rdbuf();
    return parse_config(text.str());
}

std::string serialize(const RunConfig& c) {
    std::ostringstream o;
    const auto list = [](const std::vector<double>& v) {
        std::string s;
        for (double x : v) {
            s += (s.empty() ? "" : " ") + num(x);
        }
        return s;
    };
    const auto pair = [](const std::array<double, 2>& a) { return num(a[0]) + " " + num(a[1]); };

    o << "[run]\n";
    if (c.mode) {
        o << "mode = " << mode_name(*c.mode) << "\n";
    }
    o << "dt = " << num(c.dt) << "\nhorizon = " << num(c.horizon) << "\ntau = " << num(c.tau)
      << "\nmax_iter = " << c.max_iter << "\ntheta0 = " << num(c.theta0)
      << "\nsolid0 = " << num(c.solid0) << "\nmodel = " << name_of(c.model, kModels) << "\n";
    if (c.profile_x1) {
        o << "profile_x1 = " << num(*c.profile_x1) << "\n";
    }
    o << "threads = " << c.threads << "\n";

    o << "\n[cell]\ndimension = " << c.cell.dimension << "\nsolid = " << solid_text(c.cell.solid)
      << "\n";
    if (!c.cell.label.empty()) {
        o << "label = " << c.cell.label << "\n";
    }
    o << "resolution = " << c.resolution << "\nrefine = " << (c.refine ? "true" : "false") << "\n";
    if (c.cell.measures) {
        const CellMeasures& m = *c.cell.measures;
        o << "measures = " << num(m.fluid_fraction) << " " << num(m.solid_fraction) << " "
          << num(m.interface_area) << " " << num(m.exterior_trace) << "\n";
    }
    o << "\n[micro]\nresolution = " << c.micro_resolution << "\n";

    o << "\n[macro]\nlength = " << num(c.length) << "\nheight = " << num(c.height)
      << "\ninterface = " << num(c.interface_height) << "\nnx = " << c.nx << "\nny = " << c.ny
      << "\ntolerance = " << num(c.tolerance) << "\n";

    o << "\n[physical]\nrho_c_f = " << num(c.rho_c_f) << "\nrho_c_s = " << num(c.rho_c_s)
      << "\nkappa_f = " << num(c.kappa_f) << "\nkappa_s = " << num(c.kappa_s)
      << "\nalpha = " << num(c.alpha) << "\n";
    if (c.permeability) {
        o << "permeability = " << num(*c.permeability) << "\n";
    }

    o << "\n[overrides]\n";
    if (c.overrides.kappa_h_f) {
        o << "kappa_h_f = " << pair(*c.overrides.kappa_h_f) << "\n";
    }
    if (c.overrides.kappa_h_s) {
        o << "kappa_h_s = " << pair(*c.overrides.kappa_h_s) << "\n";
    }
    if (c.overrides.fluid_fraction) {
        o << "fluid_fraction = " << num(*c.overrides.fluid_fraction) << "\n";
    }
    if (c.overrides.interface_area) {
        o << "interface_area = " << num(*c.overrides.interface_area) << "\n";
    }
    if (c.overrides.exterior_trace) {
        o << "exterior_trace = " << num(*c.overrides.exterior_trace) << "\n";
    }

    o << "\n[source]\nfluid = " << num(c.source.fluid) << "\nsolid = " << num(c.source.solid)
      << "\ninterface = " << name_of(c.source.schedule, kSchedules)
      << "\namplitude = " << num(c.source.amplitude) << "\ncutoff = " << num(c.source.cutoff)
      << "\nperiod = " << num(c.source.period) << "\n";

    o << "\n[boundary]\n";
    for (const auto& k : kBoundaryKeys) {
        o << k.name << " = " << boundary_text(boundary_slot(c, k)) << "\n";
    }

    o << "\n[velocity]\nkind = " << name_of(c.velocity, kVelocities)
      << "\ndarcy = " << num(c.darcy) << "\n";
    o << "\n[collocation]\npattern = " << name_of(c.collocation.kind, kPatterns)
      << "\ncount_x = " << c.collocation.count_x << "\ncount_y = " << c.collocation.count_y
      << "\n";
    if (!c.alpha_sweep.empty()) {
        o << "\n[sweep]\nalpha = " << list(c.alpha_sweep) << "\n";
    }
    o << "\n[connected]\nlabel = " << c.connected.label
      << "\nkappa_h_f = " << pair(c.connected.kappa_h_f)
      << "\nkappa_h_s = " << pair(c.connected.kappa_h_s)
      << "\nfluid_fraction = " << num(c.connected.fluid_fraction)
      << "\ninterface_area = " << num(c.connected.interface_area)
      << "\nexterior_trace = " << num(c.connected.exterior_trace) << "\n";
    const TransitionSweep& t = c.transition;
    o << "\n[transition]\nc = " << list(t.c) << "\nkappa_h_f = " << list(t.kappa_h_f)
      << "\nkappa_h_s = " << list(t.kappa_h_s) << "\ninterface_area = " << list(t.interface_area)
      << "\nexterior_trace = " << list(t.exterior_trace)
      << "\nfluid_fraction = " << num(t.fluid_fraction) << "\n";
    return o.str();
}

MacroGrid macro_grid(const RunConfig& c) {
    return build_macro_grid(c.length, c.height, c.interface_height, c.nx, c.ny);
}

BoundarySpec boundary_spec(const RunConfig& c, double alpha, double exterior_trace) {
    const auto convert = [&](const BoundaryEntry& b) {
        switch (b.kind) {
            case Condition::Kind::dirichlet:
                return Condition::dirichlet(b.value);
            case Condition::Kind::robin:
                return Condition::robin(b.automatic ? alpha * exterior_trace : b.coefficient,
                                        b.value);
            case Condition::Kind::insulated:
                break;
        }
        return Condition::insulated();
    };
    BoundarySpec s;
    for (std::size_t k = 0; k < 4; ++k) {
        s.free_fluid[k] = convert(c.free_fluid[k]);
        s.porous_fluid[k] = convert(c.porous_fluid[k]);
        s.solid[k] = convert(c.solid[k]);
    }
    return s;
}

}  // namespace porheat
