#ifndef EULER_SPECTRA_TOOLS_CONFIG_HPP
#define EULER_SPECTRA_TOOLS_CONFIG_HPP

#include "euler_spectra/lattice.hpp"
#include "euler_spectra/subsystem.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace euler_spectra::cli {

struct RunConfig {
    WaveVector p{1, 1};
    Complex gamma{1.0, 0.0};
    std::optional<WaveVector> khat;

    double cf_tol = 1e-15;
    double root_tol = 1e-12;
    double eig_residual = 1e-8;

    std::int64_t N_matrix = 400;
    std::int64_t n_window = 20;
    double K_cutoff = 5.0;
    int grid = 20;

    /// search box for eigs-cf: re_min, re_max, im_min, im_max
    std::vector<double> box{0.0, 4.0, 0.0, 4.0};
    /// classes: radius of the scanned disk (0: three times |p|)
    double scan_radius = 0.0;
    /// eigs-matrix: A, B or C
    std::string kind = "A";
    std::string triplets_path;

    double dt = 1e-3;
    std::int64_t steps = 1000;
    std::int64_t sample_every = 100;
    std::uint64_t seed = 1;
    /// euler-sim: perturbation size around the fixed point (0: random field)
    double epsilon = 0.0;
    double amplitude = 0.1;

    std::string output_path;
    std::string format = "json";
};

/// key=value lines, '#' comments, blank lines ignored. Throws UsageError with
/// the line number on malformed input.
std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path);

/// Sets one dotted key; throws UsageError for unknown keys or bad values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Tolerances positive, sizes within caps, format known.
void validate(const RunConfig& cfg);

/// Every recognized key, for --help text.
const std::vector<std::string>& known_keys();

} // namespace euler_spectra::cli

#endif
