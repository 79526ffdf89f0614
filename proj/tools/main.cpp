#include "commands.hpp"
#include "config.hpp"

#include "euler_spectra/errors.hpp"

#include <CLI11.hpp>

#include <iostream>
#include <map>
#include <string>
#include <utility>
#include <vector>

using namespace euler_spectra;

namespace {

struct Flag {
    const char* name;
    const char* key;
    const char* help;
};

// command-line spellings of the config keys
const std::vector<Flag> kFlags{
    {"--p", "p", "fixed-point wave vector p as k1,k2"},
    {"--gamma", "gamma", "fixed-point amplitude Gamma as re[,im]"},
    {"--khat", "khat", "class representative as k1,k2"},
    {"--cf-tol", "tolerances.cf_tol", "continued-fraction tolerance"},
    {"--root-tol", "tolerances.root_tol", "root residual tolerance"},
    {"--eig-residual", "tolerances.eig_residual", "eigenpair residual tolerance"},
    {"--N", "sizes.N_matrix", "finite-section size"},
    {"--window", "sizes.n_window", "subsystem window half width"},
    {"--K", "sizes.K_cutoff", "Galerkin cutoff |k| <= K"},
    {"--grid", "sizes.grid", "Newton seed grid per side"},
    {"--box", "search.box", "eigs-cf search box re_min,re_max,im_min,im_max"},
    {"--radius", "scan.radius", "classes: radius of the scanned disk"},
    {"--kind", "matrix.kind", "eigs-matrix operator: A, B or C"},
    {"--triplets", "matrix.triplets", "eigs-matrix: also write operator triplets here"},
    {"--dt", "sim.dt", "time step"},
    {"--steps", "sim.steps", "number of steps"},
    {"--sample-every", "sim.sample_every", "sampling stride"},
    {"--seed", "sim.seed", "random seed"},
    {"--epsilon", "sim.epsilon", "euler-sim: perturbation size around the fixed point"},
    {"--amplitude", "sim.amplitude", "euler-sim: random field amplitude"},
    {"--output,-o", "output.path", "output file (default stdout)"},
    {"--format", "output.format", "json or csv"},
};

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Spectra of the linearized 2D Euler equation at a single-mode fixed point"};
    app.require_subcommand(1);
    app.fallthrough();
    app.set_help_all_flag("--help-all", "Show help for all subcommands");

    std::string config_path;
    std::vector<std::string> sets;
    std::map<std::string, std::string> flag_values;

    app.add_option("--config,-c", config_path, "flat key=value config file");
    app.add_option("--set", sets, "override any config key, key=value (repeatable)");
    for (const auto& f : kFlags) {
        app.add_option(f.name, flag_values[f.key], f.help);
    }

    const std::vector<std::pair<const char*, const char*>> commands{
        {"classes", "classes meeting the disk |k| <= |p| and stability verdicts"},
        {"eigs-cf", "point spectrum by continued fractions"},
        {"eigs-matrix", "finite-section spectrum with isolated/band tags"},
        {"band", "essential band endpoints"},
        {"simulate", "integrate one subsystem with a conservation report"},
        {"euler-sim", "nonlinear Galerkin run with E/J drift report"},
        {"verify", "run the full cross-check suite"},
    };
    for (const auto& [name, help] : commands) {
        app.add_subcommand(name, help);
    }

    try {
        app.parse(argc, argv);
    }
    catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    }
    catch (const CLI::ParseError& e) {
        app.exit(e);
        return cli::kUsage;
    }

    const std::string command = app.get_subcommands().front()->get_name();
    try {
        cli::RunConfig cfg;
        if (!config_path.empty()) {
            for (const auto& [k, v] : cli::read_config_file(config_path)) {
                cli::apply_setting(cfg, k, v);
            }
        }
        for (const auto& f : kFlags) {
            const std::string& v = flag_values[f.key];
            if (!v.empty()) {
                cli::apply_setting(cfg, f.key, v);
            }
        }
        for (const auto& s : sets) {
            const auto eq = s.find('=');
            if (eq == std::string::npos) {
                throw UsageError("--set expects key=value, got '" + s + "'");
            }
            cli::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
        }
        cli::validate(cfg);
        return cli::run_command(command, cfg, std::cout);
    }
    catch (const UsageError& e) {
        std::cerr << "euler-spectra " << command << ": " << e.what() << '\n';
        return cli::kUsage;
    }
    catch (const DomainError& e) {
        std::cerr << "euler-spectra " << command << ": " << e.what() << '\n';
        return cli::kUsage;
    }
    catch (const NumericalError& e) {
        std::cerr << "euler-spectra " << command << ": numerical failure: " << e.what() << '\n';
        return cli::kNumerical;
    }
    catch (const std::exception& e) {
        std::cerr << "euler-spectra " << command << ": " << e.what() << '\n';
        return cli::kNumerical;
    }
}
