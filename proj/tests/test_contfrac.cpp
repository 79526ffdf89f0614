#include "euler_spectra/contfrac.hpp"
#include "euler_spectra/errors.hpp"
#include "euler_spectra/matrixop.hpp"

#include <doctest.h>

#include <cmath>
#include <random>

using namespace euler_spectra;

namespace {

const Complex kGolden{0.2482230180411067, 0.3517207645854475};

double nearest(const std::vector<Complex>& set, Complex z)
{
    double best = INFINITY;
    for (const Complex s : set) {
        best = std::min(best, std::abs(s - z));
    }
    return best;
}

} // namespace

TEST_CASE("asymptotic roots")
{
    const AsymRoots r = asym_roots({1.0, 0.0});
    CHECK(r.w_plus.real() == doctest::Approx((1.0 + std::sqrt(5.0)) / 2.0));
    CHECK(r.w_minus.real() == doctest::Approx((1.0 - std::sqrt(5.0)) / 2.0));

    const AsymRoots im = asym_roots({0.0, 3.0});
    CHECK(std::abs(im.w_plus * im.w_minus + 1.0) < 1e-15);
    CHECK(std::abs(im.w_plus) > 1.0);
    CHECK_THROWS_AS(asym_roots({0.0, 2.0}), EssentialBandError);
    CHECK_THROWS_AS(asym_roots({0.0, -0.5}), EssentialBandError);

    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(-5.0, 5.0);
    int checked = 0;
    while (checked < 1000) {
        const Complex at(u(rng), u(rng));
        if (at.real() == 0.0) {
            continue;
        }
        const AsymRoots s = asym_roots(at);
        CHECK(std::abs(s.w_plus * s.w_minus + 1.0) < 1e-13);
        CHECK(std::abs(s.w_plus) > 1.0);
        CHECK(std::abs(s.w_minus) < 1.0);
        CHECK(std::abs(s.w_plus * s.w_plus - at * s.w_plus - 1.0) < 1e-12 * (1.0 + std::norm(s.w_plus)));
        ++checked;
    }
}

TEST_CASE("parameters of the reference class")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    CHECK(params.a == doctest::Approx(-0.5));
    CHECK_FALSE(params.circle_index());
    CHECK(a_n(params, {1.0, 0.0}, 0) == Complex(-4.0, 0.0));
    CHECK(a_tilde_of(params, {1.0, 0.0}) == Complex(-2.0, 0.0));

    const CFParams circle = make_cf_params({-1, 1}, {1, 1});
    REQUIRE(circle.circle_index());
    CHECK(*circle.circle_index() == 0);
    CHECK_THROWS_AS(a_n(circle, {1.0, 0.0}, 0), DomainError);
    CHECK_THROWS_AS(a_n(make_cf_params({2, 2}, {1, 1}), {1.0, 0.0}, 1), DomainError);
}

TEST_CASE("tails approach the constant-coefficient ratios far from the origin")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    const Complex lt{0.7, 0.4};
    const AsymRoots roots = asym_roots(a_tilde_of(params, lt));
    const Complex lambda = params.a * lt;
    CHECK(std::abs(cf_tail(params, lambda, TailDirection::Down, {}, 100000) - roots.w_plus) < 1e-4);
    CHECK(std::abs(cf_tail(params, lambda, TailDirection::Up, {}, 100000) - roots.w_minus) < 1e-4);
    CHECK(std::abs(cf_tail(params, lambda, TailDirection::Up, {}, -100000) - roots.w_minus) < 1e-4);
}

TEST_CASE("down tail is the ratio of a recurrence solution")
{
    // z_{n+1} = a_n z_n + z_{n-1}; the solution decaying as n -> -infinity has
    // z_n / z_{n-1} equal to the down tail at every n
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    const Complex lt{0.9, -0.3};
    const Complex lambda = params.a * lt;
    const Complex t0 = cf_tail(params, lambda, TailDirection::Down, {}, 0);
    const Complex t1 = cf_tail(params, lambda, TailDirection::Down, {}, 1);
    const Complex z_m1 = 1.0;
    const Complex z0 = t0 * z_m1;
    const Complex z1 = (lt / params.rho_seq(0)) * z0 + z_m1;
    CHECK(std::abs(z1 / z0 - t1) < 1e-13);

    const Complex u2 = cf_tail(params, lambda, TailDirection::Up, {}, 2);
    const Complex u1 = cf_tail(params, lambda, TailDirection::Up, {}, 1);
    // u_m = z_m / z_{m-1} with z_{m+1} = a_m z_m + z_{m-1}  =>  u_m = 1 / (u_{m+1} - a_m)
    CHECK(std::abs(u1 - 1.0 / (u2 - lt / params.rho_seq(1))) < 1e-13);
}

TEST_CASE("matching function symmetries")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    for (const Complex z : {Complex(0.3, 0.2), Complex(1.5, -0.7), Complex(0.05, 2.0)}) {
        const Complex f = f_eigen(params, z);
        CHECK(std::abs(f_eigen(params, std::conj(z)) - std::conj(f)) < 1e-12 * (1.0 + std::abs(f)));
        CHECK(std::abs(f_eigen(params, -z) + f) < 1e-12 * (1.0 + std::abs(f)));
    }
    CHECK_THROWS_AS(f_eigen(make_cf_params({-1, 1}, {1, 1}), {0.3, 0.3}), DomainError);
    CHECK_THROWS_AS(f_eigen(params, {0.3, 0.3}, {}, ChainPart::Upper), DomainError);
}

TEST_CASE("reference class has a single quadruple")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    const auto quads = find_eigenvalues(params);
    REQUIRE(quads.size() == 1);
    const EigenQuadruple& q = quads.front();
    CHECK(std::abs(q.lambda_tilde - kGolden) < 1e-9);
    CHECK(q.residual < 1e-12);
    CHECK(q.members.size() == 4);
    CHECK(q.part == ChainPart::Full);
    for (const Complex m : q.members) {
        CHECK(std::abs(f_eigen(params, m)) < 1e-10);
    }
}

TEST_CASE("roots agree with the isolated eigenvalues of a finite section")
{
    for (const auto& [khat, p] : {std::pair{WaveVector{1, 0}, WaveVector{1, 1}},
                                  std::pair{WaveVector{0, 1}, WaveVector{1, 1}},
                                  std::pair{WaveVector{1, 0}, WaveVector{2, 1}},
                                  std::pair{WaveVector{0, 1}, WaveVector{2, 1}}}) {
        const CFParams params = make_cf_params(khat, p);
        FindOptions opt;
        const auto quads = find_eigenvalues(params, opt);
        const auto tagged = tag_spectrum(truncated_spectrum(build(OperatorKind::A, params, 400)), -params.a / p.norm2());
        std::vector<Complex> isolated;
        for (const auto& t : tagged) {
            if (t.isolated) {
                isolated.push_back(t.value / params.a);
            }
        }
        std::size_t in_box = 0;
        for (const Complex z : isolated) {
            if (std::abs(z.real()) <= opt.box.re_max && std::abs(z.imag()) <= opt.box.im_max) {
                ++in_box;
            }
        }
        std::size_t members = 0;
        for (const auto& q : quads) {
            for (const Complex m : q.members) {
                CHECK(nearest(isolated, m) < 1e-8);
                ++members;
            }
        }
        CHECK(members == in_box);
    }
}

TEST_CASE("eigenvalues scale with |Gamma| and ignore its phase")
{
    const auto base = find_eigenvalues(make_cf_params({1, 0}, {1, 1}));
    const CFParams two = make_cf_params({1, 0}, {1, 1}, {2.0, 0.0});
    const CFParams rot = make_cf_params({1, 0}, {1, 1}, std::polar(1.0, 0.9));
    CHECK(two.a == doctest::Approx(-1.0));
    CHECK(rot.a == doctest::Approx(-0.5));
    const auto q2 = find_eigenvalues(two);
    const auto qr = find_eigenvalues(rot);
    REQUIRE(q2.size() == base.size());
    REQUIRE(qr.size() == base.size());
    CHECK(std::abs(q2.front().lambda_tilde - base.front().lambda_tilde) < 1e-10);
    CHECK(std::abs(qr.front().lambda_tilde - base.front().lambda_tilde) < 1e-10);
}

TEST_CASE("decaying chain solution and eigenvector")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1}, std::polar(1.0, 0.4));
    const auto quads = find_eigenvalues(params);
    REQUIRE_FALSE(quads.empty());
    const Complex lt = quads.front().lambda_tilde;

    const ChainSolution sol = reconstruct_solution(params, lt, -30, 30);
    CHECK(sol.recurrence_residual < 1e-12);
    CHECK(std::abs(sol.z[30] - 1.0) < 1e-15);
    CHECK(std::abs(sol.z[0]) < 1e-3);
    CHECK(std::abs(sol.z[60]) < 1e-3);

    const std::int64_t n_lo = -40;
    const std::int64_t n_hi = 40;
    const ComplexSeq v = chain_eigenvector(params, lt, n_lo, n_hi);
    const SubsystemSpec spec{params.khat, params.p, params.gamma, n_lo, n_hi};
    const ComplexSeq r = cle_rhs(spec, v);
    const Complex lambda = params.a * lt;
    double worst = 0.0;
    for (std::int64_t n = n_lo + 1; n < n_hi; ++n) {
        worst = std::max(worst, std::abs(r[n] - lambda * v[n]));
    }
    CHECK(worst < 1e-12 * v.values().cwiseAbs().maxCoeff());
}

TEST_CASE("circle-member class has no eigenvalues in either half chain")
{
    const CFParams params = make_cf_params({-1, 1}, {1, 1});
    CHECK(find_eigenvalues(params).empty());
    const auto tagged =
        tag_spectrum(truncated_spectrum(build(OperatorKind::A, params, 400)), -params.a / params.p.norm2());
    for (const auto& t : tagged) {
        CHECK_FALSE(t.isolated);
    }
}

TEST_CASE("classes avoiding the disk have no eigenvalues")
{
    CHECK(find_eigenvalues(make_cf_params({3, 0}, {1, 1})).empty());
    CHECK(find_eigenvalues(make_cf_params({2, -1}, {1, 1})).empty());
}

TEST_CASE("band tube and quadruple helpers")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    CHECK(in_band_tube(params, {0.0, 0.9}, 1e-3));
    CHECK_FALSE(in_band_tube(params, {0.0, 1.2}, 1e-3));
    CHECK_FALSE(in_band_tube(params, {0.1, 0.2}, 1e-3));
    CHECK(quadruple_members({0.5, 0.0}).size() == 2);
    CHECK(quadruple_members({0.0, 0.0}).size() == 1);
    CHECK(quadruple_members({-0.5, 0.3}).front() == Complex(0.5, 0.3));
    CHECK(to_string(ChainPart::Upper) == "upper");
}
