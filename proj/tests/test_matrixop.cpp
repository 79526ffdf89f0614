#include "euler_spectra/contfrac.hpp"
#include "euler_spectra/errors.hpp"
#include "euler_spectra/matrixop.hpp"

#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
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

// the operator written directly in chain indices, then permuted
Eigen::MatrixXcd direct_matrix(OperatorKind kind, const CFParams& params, Eigen::Index N)
{
    const double rho_inf = params.rho_seq.limit();
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(N, N);
    for (Eigen::Index r = 0; r < N; ++r) {
        for (Eigen::Index c = 0; c < N; ++c) {
            const std::int64_t n = unrelabel(r + 1);
            const std::int64_t j = unrelabel(c + 1);
            if (std::abs(n - j) != 1) {
                continue;
            }
            const double w = kind == OperatorKind::A   ? params.rho_seq(j)
                             : kind == OperatorKind::B ? rho_inf
                                                       : params.rho_seq(j) - rho_inf;
            m(r, c) = Complex(0.0, params.a * w);
        }
    }
    return m;
}

Eigen::VectorXcd random_vector(Eigen::Index n, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> nd;
    Eigen::VectorXcd v(n);
    for (Eigen::Index i = 0; i < n; ++i) {
        v[i] = Complex(nd(rng), nd(rng));
    }
    return v;
}

} // namespace

TEST_CASE("relabeling is a bijection between Z and the positive integers")
{
    CHECK(relabel(1) == 2);
    CHECK(relabel(0) == 1);
    CHECK(relabel(-1) == 3);
    CHECK(relabel(2) == 4);
    for (std::int64_t n = -500; n <= 500; ++n) {
        CHECK(unrelabel(relabel(n)) == n);
    }
    for (std::int64_t r = 1; r <= 1000; ++r) {
        CHECK(relabel(unrelabel(r)) == r);
    }
}

TEST_CASE("coupling pattern is symmetric with the chain neighbours")
{
    const Eigen::MatrixXd S = coupling_pattern<double>(40);
    CHECK((S - S.transpose()).norm() == 0.0);
    CHECK(S(0, 1) == 1.0); // n = 0 couples to n = 1
    CHECK(S(0, 2) == 1.0); // and to n = -1
    CHECK(S(1, 3) == 1.0); // n = 1 couples to n = 2
    CHECK(S.diagonal().norm() == 0.0);
    for (Eigen::Index r = 0; r < 36; ++r) {
        CHECK(S.row(r).sum() == 2.0);
    }
}

TEST_CASE("truncated operators match their chain-index definitions")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    for (const OperatorKind kind : {OperatorKind::A, OperatorKind::B, OperatorKind::C}) {
        const TruncatedOperator op = build(kind, params, 30);
        CHECK(op.size == 30);
        CHECK((op.entries - direct_matrix(kind, params, 30)).norm() < 1e-15);
    }
    const TruncatedOperator a = build(OperatorKind::A, params, 50);
    const TruncatedOperator b = build(OperatorKind::B, params, 50);
    const TruncatedOperator c = build(OperatorKind::C, params, 50);
    CHECK((a.entries - b.entries - c.entries).norm() < 1e-15);
    CHECK(b.b == doctest::Approx(0.25));
    // B is i times a real symmetric matrix: skew-Hermitian
    CHECK((b.entries + b.entries.adjoint()).norm() < 1e-15);
    CHECK_THROWS_AS(build(OperatorKind::A, params, 4), UsageError);
}

TEST_CASE("C entries decay along the chain")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    const Eigen::VectorXd w = column_weights(OperatorKind::C, params, 400);
    CHECK(std::abs(w[399]) < 1e-4);
    CHECK(std::abs(w[0]) > 0.5);
}

TEST_CASE("finite-section spectra match a general complex solver")
{
    for (const auto& [khat, p] : {std::pair{WaveVector{1, 0}, WaveVector{1, 1}},
                                  std::pair{WaveVector{1, 2}, WaveVector{2, 1}},
                                  std::pair{WaveVector{3, 0}, WaveVector{1, 1}}}) {
        const CFParams params = make_cf_params(khat, p, {0.6, 0.8});
        for (const OperatorKind kind : {OperatorKind::A, OperatorKind::B, OperatorKind::C}) {
            const TruncatedOperator op = build(kind, params, 60);
            const auto mine = truncated_spectrum(op);
            REQUIRE(mine.size() == 60);
            Eigen::ComplexEigenSolver<Eigen::MatrixXcd> ces(op.entries, false);
            for (Eigen::Index i = 0; i < ces.eigenvalues().size(); ++i) {
                CHECK(nearest(mine, ces.eigenvalues()[i]) < 1e-8);
            }
            if (kind == OperatorKind::B) {
                for (const Complex z : mine) {
                    CHECK(std::abs(z.real()) < 1e-12);
                }
            }
        }
    }
    CHECK_THROWS_AS(truncated_spectrum(TruncatedOperator{OperatorKind::A, kDenseCap + 1, {}, {}, 0.0}), UsageError);
}

TEST_CASE("spectra sorted and eigenpairs accurate")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    const TruncatedOperator op = build(OperatorKind::A, params, 200);
    const auto eig = truncated_spectrum(op);
    for (std::size_t i = 1; i < eig.size(); ++i) {
        CHECK(eig[i - 1].imag() <= eig[i].imag() + 1e-300);
    }
    CHECK(eigen_residual(op, params.a * kGolden) < 1e-10);
    CHECK(eigen_residual(op, eig.back()) < 1e-8);
}

TEST_CASE("isolated eigenvalues converge with the section size")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    double prev = INFINITY;
    for (const Eigen::Index N : {25, 50, 100, 200}) {
        const double d = nearest(truncated_spectrum(build(OperatorKind::A, params, N)), params.a * kGolden);
        CHECK(d <= prev + 1e-15);
        prev = d;
    }
    CHECK(prev < 1e-12);
}

TEST_CASE("characteristic roots")
{
    for (const Complex lt : {Complex(3.0, 0.0), Complex(0.5, 1.0), Complex(-1.0, -2.0), Complex(0.0, 0.5)}) {
        const auto roots = char_roots(lt);
        for (const Complex w : roots) {
            // w^2 + w^-2 = lambda_tilde
            CHECK(std::abs(w * w + 1.0 / (w * w) - lt) < 1e-12 * (1.0 + std::abs(lt)));
        }
        CHECK(root_count_S(lt) == 2);
    }
    CHECK(root_count_S({1.0, 0.0}) == 0);
    CHECK(root_count_S({-2.0, 0.0}) == 0);
}

TEST_CASE("essential band")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    const BandSpec band = essential_band(params);
    CHECK(std::abs(band.lower - Complex(0.0, -0.5)) < 1e-15);
    CHECK(std::abs(band.upper - Complex(0.0, 0.5)) < 1e-15);
    CHECK(band.width == doctest::Approx(1.0));
    CHECK(band_distance(0.25, {0.0, 0.3}) == 0.0);
    CHECK(band_distance(0.25, {0.0, 0.7}) == doctest::Approx(0.2));
    CHECK(band_distance(0.25, {0.3, 0.4}) == doctest::Approx(0.3));

    const auto spec = truncated_spectrum(build(OperatorKind::B, params, 400));
    double top = 0.0;
    for (const Complex z : spec) {
        top = std::max(top, std::abs(z.imag()));
    }
    CHECK(top < 0.5);
    CHECK(top > 0.4999);
}

TEST_CASE("eigenvalue tagging")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    const auto tagged = tag_spectrum(truncated_spectrum(build(OperatorKind::A, params, 400)), 0.25);
    int isolated = 0;
    for (const auto& t : tagged) {
        if (t.isolated) {
            ++isolated;
            CHECK(std::abs(std::abs(t.value / params.a) - std::abs(kGolden)) < 1e-9);
        }
    }
    CHECK(isolated == 4);
}

TEST_CASE("spectrum is symmetric under negation and conjugation")
{
    const CFParams params = make_cf_params({1, 2}, {2, 1});
    const auto eig = truncated_spectrum(build(OperatorKind::A, params, 300));
    for (const Complex z : eig) {
        CHECK(nearest(eig, -z) < 1e-8);
        CHECK(nearest(eig, std::conj(z)) < 1e-8);
    }
}

TEST_CASE("resolvent matches a dense solve of a long section")
{
    const Eigen::Index N = 600;
    const Eigen::MatrixXcd S = coupling_pattern<Complex>(N);
    for (const Complex lt : {Complex(3.0, 0.0), Complex(1.0, 0.5), Complex(0.5, -4.0), Complex(-2.5, 0.1)}) {
        const Resolvent res(lt);
        CHECK(std::abs(res.w()) < 1.0);
        Eigen::VectorXcd y = Eigen::VectorXcd::Zero(N);
        y.head(12) = random_vector(12, 3);
        const Eigen::VectorXcd dense = (S - lt * Eigen::MatrixXcd::Identity(N, N)).partialPivLu().solve(y);
        const Eigen::VectorXcd z = res.apply(y.head(12));
        REQUIRE(z.size() >= 12);
        for (Eigen::Index i = 0; i < 12; ++i) {
            CHECK(std::abs(z[i] - dense[i]) < 1e-10);
        }
        CHECK(resolvent_residual(lt, y.head(12), z) < 1e-12);

        const Eigen::MatrixXcd inv = (S - lt * Eigen::MatrixXcd::Identity(N, N)).inverse();
        for (Eigen::Index n = 1; n <= 10; ++n) {
            for (Eigen::Index j = 1; j <= 10; ++j) {
                CHECK(std::abs(res.green(n, j) - inv(n - 1, j - 1)) < 1e-10);
            }
        }
        double bound = 0.0;
        for (Eigen::Index n = 0; n < 40; ++n) {
            bound = std::max(bound, inv.row(n).cwiseAbs().sum());
        }
        CHECK(res.row_sum_bound() == doctest::Approx(bound).epsilon(1e-6));
    }
}

TEST_CASE("resolvent is linear and rejects the spectral curve")
{
    const Complex lt{0.3, 1.1};
    const Eigen::VectorXcd y1 = random_vector(20, 1);
    const Eigen::VectorXcd y2 = random_vector(20, 2);
    const Complex c{0.7, -1.3};
    const Eigen::VectorXcd lhs = resolvent_apply(lt, y1 + c * y2);
    const Eigen::VectorXcd rhs = resolvent_apply(lt, y1) + c * resolvent_apply(lt, y2);
    CHECK((lhs - rhs).norm() < 1e-12 * lhs.norm());

    CHECK_THROWS_AS(Resolvent({2.0, 0.0}), SpectralPointSetError);
    CHECK_THROWS_AS(Resolvent({-2.0, 0.0}), SpectralPointSetError);
    CHECK_THROWS_AS(Resolvent({0.4, 0.0}), OnSpectralCurveError);
    CHECK_NOTHROW(Resolvent({0.4, 1e-3}));
}

TEST_CASE("determinant test vanishes exactly at the eigenvalues")
{
    const CFParams params = make_cf_params({1, 0}, {1, 1});
    const Complex lh = lambda_hat_of(kGolden);
    const std::int64_t tail = detM_default_tail(params, lh);
    CHECK(std::abs(detM_eigentest(params, lh, tail)) < 1e-12);
    for (const Complex m : quadruple_members(kGolden)) {
        CHECK(std::abs(detM_eigentest(params, lambda_hat_of(m), tail)) < 1e-12);
    }
    CHECK(std::abs(detM_eigentest(params, lambda_hat_of({0.9, 0.9}), tail)) > 1e-3);
    CHECK(std::abs(detM_eigentest(params, lh, 2 * tail) - detM_eigentest(params, lh, tail)) < 1e-14);
    CHECK_THROWS_AS(detM_eigentest(params, {0.1, 0.0}, tail), DomainError);
    CHECK_THROWS_AS(detM_eigentest(params, lh, 2), UsageError);
    CHECK_THROWS_AS(detM_eigentest(make_cf_params({2, 2}, {1, 1}), lh, tail), DomainError);
}
