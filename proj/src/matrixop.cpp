#include "euler_spectra/matrixop.hpp"

#include "euler_spectra/errors.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/LU>

#include <algorithm>
#include <cmath>

namespace euler_spectra {

namespace {

constexpr Complex I{0.0, 1.0};

double weight_rho(const CFParams& params, std::int64_t n)
{
    // only parallel classes have a hole, and there a = 0 anyway
    if ((params.khat + n * params.p).is_zero()) {
        return 0.0;
    }
    return params.rho_seq(n);
}

// ratio r of the decaying constant-coefficient solution: r + 1/r = x, |r| < 1
Complex decay_ratio(Complex x)
{
    const Complex s = std::sqrt(x * x - 4.0);
    const Complex r1 = 0.5 * (x + s);
    const Complex r2 = 0.5 * (x - s);
    return std::abs(r1) < std::abs(r2) ? r1 : r2;
}

// decaying solution of rho(m-1) u_{m-1} - lh u_m + rho(m+1) u_{m+1} = 0 for
// m >= 1 + first, returned as (u_first, u_first+1) after unit l2 normalization
template <typename RhoAt>
std::pair<Complex, Complex> miller(RhoAt rho_at, Complex lh, Complex r, std::int64_t first, std::int64_t tail)
{
    const auto len = static_cast<std::size_t>(tail - first + 2);
    std::vector<Complex> u(len);
    u[len - 1] = r;
    u[len - 2] = 1.0;
    for (std::int64_t m = tail; m >= first + 1; --m) {
        const auto k = static_cast<std::size_t>(m - first);
        const double lower = rho_at(m - 1);
        if (lower == 0.0) {
            throw DomainError("detM_eigentest: rho vanishes on the chain");
        }
        u[k - 1] = (lh * u[k] - rho_at(m + 1) * u[k + 1]) / lower;
        if (std::abs(u[k - 1]) > 1e150) {
            for (std::size_t i = k - 1; i < len; ++i) {
                u[i] *= 1e-150;
            }
        }
    }
    double norm2 = 0.0;
    for (const Complex& v : u) {
        norm2 += std::norm(v);
    }
    if (!std::isfinite(norm2) || norm2 == 0.0) {
        throw NumericalError("detM_eigentest: backward recurrence over/underflowed");
    }
    const double s = 1.0 / std::sqrt(norm2);
    return {u[0] * s, u[1] * s};
}

} // namespace

std::string to_string(OperatorKind kind)
{
    switch (kind) {
    case OperatorKind::A:
        return "A";
    case OperatorKind::B:
        return "B";
    case OperatorKind::C:
        return "C";
    }
    return "A";
}

Eigen::VectorXd column_weights(OperatorKind kind, const CFParams& params, Eigen::Index N)
{
    const double limit = params.rho_seq.limit();
    Eigen::VectorXd w(N);
    for (Eigen::Index c = 0; c < N; ++c) {
        const std::int64_t n = unrelabel(c + 1);
        switch (kind) {
        case OperatorKind::A:
            w[c] = weight_rho(params, n);
            break;
        case OperatorKind::B:
            w[c] = limit;
            break;
        case OperatorKind::C:
            w[c] = weight_rho(params, n) - limit;
            break;
        }
    }
    return w;
}

TruncatedOperator build(OperatorKind kind, const CFParams& params, Eigen::Index N)
{
    if (N < 5) {
        throw UsageError("build: N must be at least 5");
    }
    TruncatedOperator op;
    op.kind = kind;
    op.size = N;
    op.params = params;
    op.b = params.a * params.rho_seq.limit();
    const Eigen::MatrixXd S = coupling_pattern<double>(N);
    const Eigen::VectorXd w = column_weights(kind, params, N);
    op.entries = (I * params.a) * (S * w.asDiagonal()).cast<Complex>();
    return op;
}

std::vector<Complex> truncated_spectrum(const TruncatedOperator& op)
{
    const Eigen::Index N = op.size;
    if (N > kDenseCap) {
        throw UsageError("truncated_spectrum: N = " + std::to_string(N) + " exceeds the dense cap " +
                         std::to_string(kDenseCap));
    }
    const Eigen::MatrixXd S = coupling_pattern<double>(N);
    std::vector<Complex> out;
    out.reserve(static_cast<std::size_t>(N));
    if (op.kind == OperatorKind::B) {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S, Eigen::EigenvaluesOnly);
        if (es.info() != Eigen::Success) {
            throw NumericalError("truncated_spectrum: symmetric eigensolver failed for B");
        }
        for (Eigen::Index k = 0; k < N; ++k) {
            out.push_back(I * op.b * es.eigenvalues()[k]);
        }
    }
    else {
        const Eigen::VectorXd w = column_weights(op.kind, op.params, N);
        const Eigen::MatrixXd R = S * w.asDiagonal();
        Eigen::EigenSolver<Eigen::MatrixXd> es(R, false);
        if (es.info() != Eigen::Success) {
            throw NumericalError("truncated_spectrum: QR iteration failed for " + to_string(op.kind));
        }
        for (Eigen::Index k = 0; k < N; ++k) {
            out.push_back(I * op.params.a * es.eigenvalues()[k]);
        }
    }
    std::sort(out.begin(), out.end(), [](Complex x, Complex y) {
        return x.imag() != y.imag() ? x.imag() < y.imag() : x.real() < y.real();
    });
    return out;
}

double eigen_residual(const TruncatedOperator& op, Complex lambda)
{
    const Eigen::Index N = op.size;
    const double mnorm = op.entries.cwiseAbs().rowwise().sum().maxCoeff();
    if (mnorm == 0.0) {
        return 0.0;
    }
    const Complex shift = lambda + Complex(1e-10, 1e-10) * mnorm;
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu(op.entries - shift * Eigen::MatrixXcd::Identity(N, N));
    Eigen::VectorXcd v = Eigen::VectorXcd::Ones(N).normalized();
    for (int it = 0; it < 3; ++it) {
        v = lu.solve(v);
        v.normalize();
    }
    const Eigen::VectorXcd r = op.entries * v - lambda * v;
    return r.norm() / mnorm;
}

std::array<Complex, 4> char_roots(Complex lt)
{
    const Complex ws = std::sqrt(0.5 * (lt + std::sqrt(lt * lt - 4.0)));
    return {ws, -ws, 1.0 / ws, -1.0 / ws};
}

int root_count_S(Complex lt)
{
    int count = 0;
    for (const Complex w : char_roots(lt)) {
        if (std::abs(w) < 1.0 - 1e-12) {
            ++count;
        }
    }
    return count;
}

BandSpec essential_band(const CFParams& params)
{
    const double b = std::abs(params.a * params.rho_seq.limit());
    return {Complex(0.0, -2.0 * b), Complex(0.0, 2.0 * b), 4.0 * b};
}

double band_distance(double b, Complex lambda)
{
    const double half = 2.0 * std::abs(b);
    const double over = std::max(0.0, std::abs(lambda.imag()) - half);
    return std::hypot(lambda.real(), over);
}

std::vector<TaggedEigenvalue> tag_spectrum(const std::vector<Complex>& eigenvalues, double b)
{
    std::vector<TaggedEigenvalue> out;
    out.reserve(eigenvalues.size());
    std::vector<double> d;
    for (const Complex l : eigenvalues) {
        d.push_back(band_distance(b, l));
        out.push_back({l, false, d.back()});
    }
    if (d.empty()) {
        return out;
    }
    std::vector<double> sorted = d;
    std::nth_element(sorted.begin(), sorted.begin() + static_cast<std::ptrdiff_t>(sorted.size() / 2), sorted.end());
    const double median = sorted[sorted.size() / 2];
    const double threshold = std::max(10.0 * median, 1e-8 * 2.0 * std::abs(b));
    for (auto& t : out) {
        t.isolated = t.band_distance > threshold;
    }
    return out;
}

Resolvent::Resolvent(Complex lt) : lt_(lt)
{
    if (std::abs(lt.imag()) <= 1e-12 && std::abs(lt.real()) <= 2.0 + 1e-12) {
        if (std::abs(std::abs(lt.real()) - 2.0) <= 1e-12) {
            throw SpectralPointSetError("resolvent: lambda_tilde = +-2 is a spectral point (M singular)");
        }
        throw OnSpectralCurveError("resolvent: lambda_tilde lies on the spectral curve [-2, 2]");
    }
    const auto roots = char_roots(lt);
    w_ = std::abs(roots[0]) < 1.0 ? roots[0] : roots[2];
    const double aw = std::abs(w_);
    if (!(aw < 1.0)) {
        throw OnSpectralCurveError("resolvent: no characteristic root inside the unit circle");
    }
    const double len = std::ceil(std::log(1e-18) / std::log(aw));
    if (!(len < 1e6)) {
        throw NumericalError("resolvent: decay length too large (lambda_tilde too close to the curve)");
    }
    decay_ = static_cast<Eigen::Index>(len) + 2;

    Eigen::Matrix4cd wr;
    for (int k = 1; k <= 4; ++k) {
        wr(k - 1, 0) = std::pow(w_, k);
        wr(k - 1, 1) = std::pow(-w_, k);
        wr(k - 1, 2) = std::pow(w_, -k);
        wr(k - 1, 3) = std::pow(-w_, -k);
    }
    w0_ = wr.determinant();

    const Complex w = w_;
    const Complex w2 = w * w;
    const Complex w3 = w2 * w;
    const Complex w4 = w2 * w2;
    Eigen::Matrix2cd m;
    m << -lt * w + w2 + w3, lt * w + w2 - w3, w - lt * w2 + w4, -w - lt * w2 + w4;
    minv_ = m.inverse();
}

Complex Resolvent::g(Eigen::Index n, Eigen::Index j) const
{
    if (j == 1) {
        return {};
    }
    if (j <= n + 1) {
        const int e = static_cast<int>(n - j + 2);
        return 2.0 * (1.0 - std::pow(w_, -4)) / w0_ * (std::pow(w_, e) + std::pow(-w_, e));
    }
    const int e = static_cast<int>(j - n - 2);
    return -2.0 * (1.0 - std::pow(w_, 4)) / w0_ * (std::pow(w_, e) + std::pow(-w_, e));
}

Complex Resolvent::green(Eigen::Index n, Eigen::Index j) const
{
    const Complex d1 = (j == 1 ? 1.0 : 0.0);
    const Complex d2 = (j == 2 ? 1.0 : 0.0);
    Eigen::Vector2cd rhs;
    rhs << d1 + lt_ * g(1, j) - g(2, j) - g(3, j), d2 - g(1, j) + lt_ * g(2, j) - g(4, j);
    const Eigen::Vector2cd coef = minv_ * rhs;
    const int e = static_cast<int>(n);
    return std::pow(w_, e) * coef[0] + std::pow(-w_, e) * coef[1] + g(n, j);
}

double Resolvent::row_sum_bound(Eigen::Index n_max) const
{
    if (n_max <= 0) {
        n_max = 4 * decay_ + 8;
    }
    double best = 0.0;
    for (Eigen::Index n = 1; n <= n_max; ++n) {
        double s = 0.0;
        for (Eigen::Index j = 1; j <= n + decay_ + 2; ++j) {
            s += std::abs(green(n, j));
        }
        best = std::max(best, s);
    }
    return best;
}

Eigen::VectorXcd Resolvent::apply(const Eigen::VectorXcd& y) const
{
    Eigen::Index support = 0;
    for (Eigen::Index j = 0; j < y.size(); ++j) {
        if (y[j] != 0.0) {
            support = j + 1;
        }
    }
    const Eigen::Index N = std::max<Eigen::Index>(support, 4) + decay_;
    Eigen::VectorXcd z = Eigen::VectorXcd::Zero(N);
    for (Eigen::Index n = 1; n <= N; ++n) {
        Complex acc{};
        for (Eigen::Index j = 1; j <= support; ++j) {
            if (y[j - 1] != 0.0) {
                acc += green(n, j) * y[j - 1];
            }
        }
        z[n - 1] = acc;
    }
    return z;
}

Eigen::VectorXcd resolvent_apply(Complex lambda_tilde, const Eigen::VectorXcd& y)
{
    return Resolvent(lambda_tilde).apply(y);
}

double resolvent_residual(Complex lt, const Eigen::VectorXcd& y, const Eigen::VectorXcd& z)
{
    const Eigen::Index N = z.size();
    double worst = 0.0;
    for (Eigen::Index r = 0; r < N; ++r) {
        const std::int64_t n = unrelabel(r + 1);
        Complex acc = -lt * z[r];
        for (const std::int64_t m : {n - 1, n + 1}) {
            const std::int64_t c = relabel(m) - 1;
            if (c < N) {
                acc += z[static_cast<Eigen::Index>(c)];
            }
        }
        const Complex yr = r < y.size() ? y[r] : Complex{};
        worst = std::max(worst, std::abs(acc - yr));
    }
    return worst;
}

std::int64_t detM_default_tail(const CFParams& params, Complex lh)
{
    const Complex r = decay_ratio(lh / params.rho_seq.limit());
    const double ar = std::abs(r);
    if (!(ar < 1.0)) {
        throw DomainError("detM_eigentest: lambda_hat lies on the essential band");
    }
    const double n = std::ceil(std::log(1e-16) / std::log(ar)) + 64.0;
    return static_cast<std::int64_t>(std::min(n, 1e7));
}

Complex detM_eigentest(const CFParams& params, Complex lh, std::int64_t N_tail)
{
    if (params.a == 0.0) {
        throw DomainError("detM_eigentest: parallel class (a = 0)");
    }
    const double rho = params.rho_seq.limit();
    if (std::abs(lh.imag()) <= 1e-14 * (1.0 + std::abs(lh)) && std::abs(lh.real()) <= 2.0 * std::abs(rho)) {
        throw DomainError("detM_eigentest: lambda_hat lies on the essential band");
    }
    if (N_tail < 4) {
        throw UsageError("detM_eigentest: N_tail must be at least 4");
    }
    const Complex r = decay_ratio(lh / rho);
    auto rho_at = [&](std::int64_t n) {
        if ((params.khat + n * params.p).is_zero()) {
            throw DomainError("detM_eigentest: chain passes through the origin");
        }
        return params.rho_seq(n);
    };
    // even chain z_n, n >= 1; odd chain u_m = z_{-m}, m >= 0
    const auto [z1, z2] = miller(rho_at, lh, r, 1, N_tail);
    const auto [u0, u1] = miller([&](std::int64_t m) { return rho_at(-m); }, lh, r, 0, N_tail);
    const Complex m11 = rho_at(1) * z1;
    const Complex m21 = -lh * z1 + rho_at(2) * z2;
    const Complex m12 = -lh * u0 + rho_at(-1) * u1;
    const Complex m22 = rho_at(0) * u0;
    return m11 * m22 - m12 * m21;
}

} // namespace euler_spectra
