#include <CLI11.hpp>

#include <iostream>

#include "porheat/config.hpp"
#include "porheat/coupling.hpp"
#include "porheat/linalg.hpp"
#include "porheat/parallel.hpp"
#include "porheat/run.hpp"

namespace {

enum Exit { ok = 0, failure = 1, config_error = 2, solver_failure = 3 };

int report(const char* kind, const std::exception& e, int code) {
    std::cerr << "error: " << kind << ": " << e.what() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Homogenized heat transfer in fluid layers over porous media"};
    std::string mode;
    std::string config_path;
    std::string out_dir = "out";
    int threads = -1;
    app.add_option("mode", mode,
                   "tensors, kernel, steady, transient-a, transient-b, memory, transition, convection")
        ->required();
    app.add_option("--config", config_path, "run configuration (INI)")->required();
    app.add_option("--out", out_dir, "output directory");
    app.add_option("--threads", threads, "worker threads, 0 for all cores")->check(CLI::NonNegativeNumber);
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? ok : config_error;
    }

    try {
        const porheat::Mode m = porheat::parse_mode(mode);
        const porheat::RunConfig config = porheat::load_config(config_path);
        if (config.mode && *config.mode != m) {
            throw porheat::ConfigError("run.mode: configuration is for '" +
                                       porheat::mode_name(*config.mode) + "', not '" + mode + "'");
        }
        porheat::set_thread_count(threads >= 0 ? static_cast<unsigned>(threads) : config.threads);
        const auto files = porheat::execute(config, m, out_dir, std::cerr);
        for (const auto& f : files) {
            std::cout << out_dir << "/" << f << "\n";
        }
        return ok;
    } catch (const porheat::ConfigError& e) {
        return report("config", e, config_error);
    } catch (const porheat::GeometryError& e) {
        return report("config", e, config_error);
    } catch (const porheat::FixedPointError& e) {
        return report("fixed point", e, solver_failure);
    } catch (const porheat::SolverError& e) {
        return report("solver", e, solver_failure);
    } catch (const std::invalid_argument& e) {
        return report("invalid input", e, config_error);
    } catch (const std::exception& e) {
        return report("run", e, failure);
    }
}
