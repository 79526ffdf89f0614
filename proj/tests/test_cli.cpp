#include "commands.hpp"
#include "config.hpp"

#include "euler_spectra/errors.hpp"

#include <doctest.h>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <sstream>

using namespace euler_spectra;
using namespace euler_spectra::cli;

TEST_CASE("config file parsing")
{
    const std::string path = "test_cli_config.txt";
    {
        std::ofstream f(path);
        f << "# comment line\n"
          << "p = 2,1\n"
          << "gamma=0.5, -1   # trailing comment\n"
          << "\n"
          << "sizes.N_matrix = 120\n"
          << "search.box = 0,2,0,3\n";
    }
    RunConfig cfg;
    for (const auto& [k, v] : read_config_file(path)) {
        apply_setting(cfg, k, v);
    }
    std::remove(path.c_str());
    CHECK(cfg.p == WaveVector{2, 1});
    CHECK(cfg.gamma == Complex(0.5, -1.0));
    CHECK(cfg.N_matrix == 120);
    CHECK(cfg.box == std::vector<double>{0, 2, 0, 3});
    CHECK_NOTHROW(validate(cfg));

    // later settings win, as flags applied after the file do
    apply_setting(cfg, "sizes.N_matrix", "80");
    CHECK(cfg.N_matrix == 80);
}

TEST_CASE("config errors are usage errors")
{
    RunConfig cfg;
    CHECK_THROWS_AS(apply_setting(cfg, "no.such.key", "1"), UsageError);
    CHECK_THROWS_AS(apply_setting(cfg, "sizes.N_matrix", "12x"), UsageError);
    CHECK_THROWS_AS(apply_setting(cfg, "p", "1"), UsageError);
    CHECK_THROWS_AS(read_config_file("definitely/not/here.cfg"), UsageError);

    RunConfig bad;
    bad.N_matrix = 3;
    CHECK_THROWS_AS(validate(bad), UsageError);
    bad = RunConfig{};
    bad.kind = "D";
    CHECK_THROWS_AS(validate(bad), UsageError);
    bad = RunConfig{};
    bad.p = {0, 0};
    CHECK_THROWS_AS(validate(bad), UsageError);
    CHECK(known_keys().size() >= 20);
}

TEST_CASE("commands produce parseable artifacts")
{
    RunConfig cfg;
    cfg.p = {1, 1};
    cfg.khat = WaveVector{1, 0};

    std::ostringstream band;
    CHECK(run_command("band", cfg, band) == kSuccess);
    const auto jb = nlohmann::json::parse(band.str());
    CHECK(jb["width"] == 1.0);

    std::ostringstream cf;
    CHECK(run_command("eigs-cf", cfg, cf) == kSuccess);
    CHECK(nlohmann::json::parse(cf.str())["quadruples"].size() == 1);

    std::ostringstream cls;
    CHECK(run_command("classes", cfg, cls) == kSuccess);
    CHECK(nlohmann::json::parse(cls.str())["meeting_disk"].size() == 4);

    cfg.N_matrix = 100;
    std::ostringstream mat;
    CHECK(run_command("eigs-matrix", cfg, mat) == kSuccess);
    CHECK(nlohmann::json::parse(mat.str())["eigenvalues"].size() == 100);

    cfg.steps = 50;
    cfg.n_window = 5;
    std::ostringstream sim;
    CHECK(run_command("simulate", cfg, sim) == kSuccess);
    CHECK(nlohmann::json::parse(sim.str()).contains("H_drift"));

    cfg.K_cutoff = 3;
    cfg.epsilon = 1e-4;
    std::ostringstream eu;
    CHECK(run_command("euler-sim", cfg, eu) == kSuccess);
    CHECK(nlohmann::json::parse(eu.str()).contains("J"));

    cfg.format = "csv";
    std::ostringstream csv;
    CHECK(run_command("band", cfg, csv) == kSuccess);
    CHECK(csv.str().rfind("re,im\n", 0) == 0);

    CHECK_THROWS_AS(run_command("nope", cfg, csv), UsageError);
    RunConfig no_khat;
    CHECK_THROWS_AS(run_command("band", no_khat, csv), UsageError);
}
