#include "config.hpp"

#include "euler_spectra/errors.hpp"
#include "euler_spectra/matrixop.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <functional>
#include <sstream>

namespace euler_spectra::cli {

namespace {

std::string trim(const std::string& s)
{
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string::npos) {
        return {};
    }
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

std::vector<std::string> split_list(const std::string& v)
{
    std::vector<std::string> out;
    std::string item;
    std::istringstream is(v);
    while (std::getline(is, item, ',')) {
        out.push_back(trim(item));
    }
    return out;
}

double to_double(const std::string& key, const std::string& v)
{
    try {
        std::size_t used = 0;
        const double x = std::stod(v, &used);
        if (used != v.size()) {
            throw std::invalid_argument(v);
        }
        return x;
    }
    catch (const std::exception&) {
        throw UsageError("config: " + key + " expects a number, got '" + v + "'");
    }
}

std::int64_t to_int(const std::string& key, const std::string& v)
{
    try {
        std::size_t used = 0;
        const long long x = std::stoll(v, &used);
        if (used != v.size()) {
            throw std::invalid_argument(v);
        }
        return x;
    }
    catch (const std::exception&) {
        throw UsageError("config: " + key + " expects an integer, got '" + v + "'");
    }
}

WaveVector to_wave(const std::string& key, const std::string& v)
{
    const auto parts = split_list(v);
    if (parts.size() != 2) {
        throw UsageError("config: " + key + " expects 'k1,k2', got '" + v + "'");
    }
    return {to_int(key, parts[0]), to_int(key, parts[1])};
}

Complex to_complex(const std::string& key, const std::string& v)
{
    const auto parts = split_list(v);
    if (parts.size() == 1) {
        return {to_double(key, parts[0]), 0.0};
    }
    if (parts.size() == 2) {
        return {to_double(key, parts[0]), to_double(key, parts[1])};
    }
    throw UsageError("config: " + key + " expects 're' or 're,im', got '" + v + "'");
}

using Setter = std::function<void(RunConfig&, const std::string&, const std::string&)>;

const std::map<std::string, Setter>& setters()
{
    static const std::map<std::string, Setter> table{
        {"p", [](RunConfig& c, const std::string& k, const std::string& v) { c.p = to_wave(k, v); }},
        {"gamma", [](RunConfig& c, const std::string& k, const std::string& v) { c.gamma = to_complex(k, v); }},
        {"khat", [](RunConfig& c, const std::string& k, const std::string& v) { c.khat = to_wave(k, v); }},
        {"tolerances.cf_tol", [](RunConfig& c, const std::string& k, const std::string& v) { c.cf_tol = to_double(k, v); }},
        {"tolerances.root_tol",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.root_tol = to_double(k, v); }},
        {"tolerances.eig_residual",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.eig_residual = to_double(k, v); }},
        {"sizes.N_matrix", [](RunConfig& c, const std::string& k, const std::string& v) { c.N_matrix = to_int(k, v); }},
        {"sizes.n_window", [](RunConfig& c, const std::string& k, const std::string& v) { c.n_window = to_int(k, v); }},
        {"sizes.K_cutoff", [](RunConfig& c, const std::string& k, const std::string& v) { c.K_cutoff = to_double(k, v); }},
        {"sizes.grid",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.grid = static_cast<int>(to_int(k, v)); }},
        {"search.box",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             const auto parts = split_list(v);
             if (parts.size() != 4) {
                 throw UsageError("config: search.box expects 're_min,re_max,im_min,im_max'");
             }
             c.box.clear();
             for (const auto& s : parts) {
                 c.box.push_back(to_double(k, s));
             }
         }},
        {"scan.radius", [](RunConfig& c, const std::string& k, const std::string& v) { c.scan_radius = to_double(k, v); }},
        {"matrix.kind", [](RunConfig& c, const std::string&, const std::string& v) { c.kind = v; }},
        {"matrix.triplets", [](RunConfig& c, const std::string&, const std::string& v) { c.triplets_path = v; }},
        {"sim.dt", [](RunConfig& c, const std::string& k, const std::string& v) { c.dt = to_double(k, v); }},
        {"sim.steps", [](RunConfig& c, const std::string& k, const std::string& v) { c.steps = to_int(k, v); }},
        {"sim.sample_every",
         [](RunConfig& c, const std::string& k, const std::string& v) { c.sample_every = to_int(k, v); }},
        {"sim.seed",
         [](RunConfig& c, const std::string& k, const std::string& v) {
             c.seed = static_cast<std::uint64_t>(to_int(k, v));
         }},
        {"sim.epsilon", [](RunConfig& c, const std::string& k, const std::string& v) { c.epsilon = to_double(k, v); }},
        {"sim.amplitude", [](RunConfig& c, const std::string& k, const std::string& v) { c.amplitude = to_double(k, v); }},
        {"output.path", [](RunConfig& c, const std::string&, const std::string& v) { c.output_path = v; }},
        {"output.format", [](RunConfig& c, const std::string&, const std::string& v) { c.format = v; }},
    };
    return table;
}

} // namespace

std::vector<std::pair<std::string, std::string>> read_config_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw UsageError("config: cannot open '" + path + "'");
    }
    std::vector<std::pair<std::string, std::string>> out;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) {
            line.erase(hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        const auto eq = line.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw UsageError("config: " + path + ":" + std::to_string(lineno) + ": expected key=value");
        }
        out.emplace_back(trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
    }
    return out;
}

void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value)
{
    const auto& table = setters();
    const auto it = table.find(key);
    if (it == table.end()) {
        throw UsageError("config: unknown key '" + key + "'");
    }
    it->second(cfg, key, value);
}

void validate(const RunConfig& cfg)
{
    if (cfg.p.is_zero()) {
        throw UsageError("config: p must be nonzero");
    }
    if (cfg.khat && cfg.khat->is_zero()) {
        throw UsageError("config: khat must be nonzero");
    }
    if (!(cfg.cf_tol > 0.0) || !(cfg.root_tol > 0.0) || !(cfg.eig_residual > 0.0)) {
        throw UsageError("config: tolerances must be positive");
    }
    if (cfg.N_matrix < 5 || cfg.N_matrix > kDenseCap) {
        throw UsageError("config: sizes.N_matrix must lie in [5, " + std::to_string(kDenseCap) + "]");
    }
    if (cfg.n_window < 1 || cfg.n_window > 100000) {
        throw UsageError("config: sizes.n_window must lie in [1, 100000]");
    }
    if (!(cfg.K_cutoff >= 1.0) || cfg.K_cutoff > 40.0) {
        throw UsageError("config: sizes.K_cutoff must lie in [1, 40]");
    }
    if (cfg.grid < 1 || cfg.grid > 400) {
        throw UsageError("config: sizes.grid must lie in [1, 400]");
    }
    if (cfg.box.size() != 4 || !(cfg.box[0] < cfg.box[1]) || !(cfg.box[2] < cfg.box[3])) {
        throw UsageError("config: search.box must be an ordered rectangle");
    }
    if (cfg.kind != "A" && cfg.kind != "B" && cfg.kind != "C") {
        throw UsageError("config: matrix.kind must be A, B or C");
    }
    if (!(cfg.dt > 0.0) || cfg.steps < 1 || cfg.sample_every < 1) {
        throw UsageError("config: need sim.dt > 0, sim.steps >= 1, sim.sample_every >= 1");
    }
    if (cfg.epsilon < 0.0 || cfg.amplitude < 0.0 || cfg.scan_radius < 0.0) {
        throw UsageError("config: sim.epsilon, sim.amplitude and scan.radius must be non-negative");
    }
    if (cfg.format != "json" && cfg.format != "csv") {
        throw UsageError("config: output.format must be json or csv");
    }
}

const std::vector<std::string>& known_keys()
{
    static const std::vector<std::string> keys = [] {
        std::vector<std::string> k;
        for (const auto& [name, fn] : setters()) {
            k.push_back(name);
        }
        return k;
    }();
    return keys;
}

} // namespace euler_spectra::cli
