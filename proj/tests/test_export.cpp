#include "euler_spectra/export.hpp"
#include "euler_spectra/parallel.hpp"

#include <doctest.h>

#include <atomic>
#include <cstdlib>
#include <sstream>
#include <stdexcept>

using namespace euler_spectra;

namespace {

std::string first_line(const std::string& s) { return s.substr(0, s.find('\n')); }

} // namespace

TEST_CASE("fifteen significant digits")
{
    CHECK(round15(0.1) == 0.1);
    CHECK(round15(1.0 / 3.0) == 0.333333333333333);
    CHECK(format15(1.0 / 3.0) == "0.333333333333333");
    CHECK(format15(2.0) == "2");
    CHECK(format15(-0.0) == "0");
    CHECK(std::signbit(round15(-1e-300)) == true);
    CHECK(round15(123456789.123456789) == 123456789.123457);
}

TEST_CASE("JSON output is deterministic")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    const auto quads = find_eigenvalues(params);
    const std::string a = dump_json(quadruples_json(params, quads));
    const std::string b = dump_json(quadruples_json(params, find_eigenvalues(params)));
    CHECK(a == b);
    CHECK(a.back() == '\n');
    const auto j = nlohmann::json::parse(a);
    CHECK(j["method"] == "continued-fraction");
    REQUIRE(j["quadruples"].size() == 1);
    CHECK(j["quadruples"][0]["members"].size() == 4);
    CHECK(j["quadruples"][0]["re"].get<double>() == doctest::Approx(0.2482230180411067).epsilon(1e-12));

    const auto band = nlohmann::json::parse(dump_json(band_json(params, essential_band(params))));
    CHECK(band["endpoints"][1]["im"] == 0.5);
    CHECK(band["b"] == 0.25);
}

TEST_CASE("CSV headers and rows")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    const TruncatedOperator op = build(OperatorKind::A, params, 6);

    std::ostringstream trip;
    write_operator_triplets(trip, op);
    CHECK(first_line(trip.str()) == "row,col,re,im");
    // every row of the section couples to two neighbours except where truncated
    std::size_t lines = 0;
    for (const char c : trip.str()) {
        lines += c == '\n' ? 1 : 0;
    }
    CHECK(lines == 1 + static_cast<std::size_t>((op.entries.array() != Complex{}).count()));

    std::ostringstream spec;
    write_spectrum_csv(spec, tag_spectrum(truncated_spectrum(op), 0.25));
    CHECK(first_line(spec.str()) == "re,im,kind");

    const SubsystemSpec sub{{1, 0}, {1, 1}, {1.0, 0.0}, -2, 2};
    ComplexSeq s = ComplexSeq::zeros(sub);
    s[0] = {1.0, 0.0};
    std::ostringstream traj;
    write_trajectory_csv(traj, integrate(sub, s, 0.1, 2));
    CHECK(first_line(traj.str()) == "t,n,re,im");

    const auto modes = std::make_shared<const ModeSet>(2.0);
    std::ostringstream field;
    write_field_csv(field, fixed_point({1, 1}, {1.0, 0.0}, modes));
    CHECK(first_line(field.str()) == "k1,k2,re,im");
    CHECK(field.str().find("1,1,1,0\n") != std::string::npos);
    CHECK(field.str().find("-1,-1,1,0\n") != std::string::npos);

    std::ostringstream q;
    write_quadruples_csv(q, find_eigenvalues(params));
    CHECK(first_line(q.str()) == "re,im,residual,chain");
}

TEST_CASE("thread count honours the environment cap")
{
    ::setenv("EULER_SPECTRA_THREADS", "1", 1);
    CHECK(thread_count() == 1);
    ::setenv("EULER_SPECTRA_THREADS", "3", 1);
    CHECK(thread_count() >= 1);
    CHECK(thread_count() <= 3);
    ::unsetenv("EULER_SPECTRA_THREADS");
    CHECK(thread_count() >= 1);
}

TEST_CASE("parallel_for visits each index once and rethrows")
{
    std::vector<std::atomic<int>> hits(257);
    parallel_for(hits.size(), [&](std::size_t i) { hits[i]++; });
    for (const auto& h : hits) {
        CHECK(h.load() == 1);
    }
    CHECK_THROWS_AS(parallel_for(50,
                                 [](std::size_t i) {
                                     if (i == 17) {
                                         throw std::runtime_error("boom");
                                     }
                                 }),
                    std::runtime_error);
}
