#ifndef EULER_SPECTRA_MATRIXOP_HPP
#define EULER_SPECTRA_MATRIXOP_HPP

#include "euler_spectra/contfrac.hpp"

#include <Eigen/Dense>

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace euler_spectra {

/// n >= 1 -> 2n, n <= 0 -> 2(-n)+1 (1-based positions).
constexpr std::int64_t relabel(std::int64_t n) { return n >= 1 ? 2 * n : -2 * n + 1; }
constexpr std::int64_t unrelabel(std::int64_t r) { return r % 2 == 0 ? r / 2 : -(r - 1) / 2; }

enum class OperatorKind { A, B, C };

std::string to_string(OperatorKind kind);

inline constexpr Eigen::Index kDenseCap = 2048;

/// 0/1 coupling pattern of the relabeled chain: S(r, c) = 1 iff the chain
/// indices of r and c are neighbours.
template <typename Scalar>
Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> coupling_pattern(Eigen::Index N)
{
    Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic> S =
        Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>::Zero(N, N);
    for (Eigen::Index r = 0; r < N; ++r) {
        const std::int64_t n = unrelabel(r + 1);
        for (const std::int64_t m : {n - 1, n + 1}) {
            const std::int64_t c = relabel(m) - 1;
            if (c < N) {
                S(r, static_cast<Eigen::Index>(c)) = Scalar(1);
            }
        }
    }
    return S;
}

/// Column weights of each kind: rho_n (A), rho (B), rho_n - rho (C), in relabeled order.
Eigen::VectorXd column_weights(OperatorKind kind, const CFParams& params, Eigen::Index N);

struct TruncatedOperator {
    OperatorKind kind = OperatorKind::A;
    Eigen::Index size = 0;
    Eigen::MatrixXcd entries;
    CFParams params;
    /// b = a rho = -a |p|^-2
    double b = 0.0;
};

/// Top-left N x N block: entries = i a S diag(weights).
TruncatedOperator build(OperatorKind kind, const CFParams& params, Eigen::Index N);

/// All N eigenvalues. The matrix is i a times the real matrix S diag(w), so the
/// real factor is diagonalized (Hessenberg reduction + shifted QR) and scaled;
/// B uses the symmetric solver on S. Throws UsageError above kDenseCap.
std::vector<Complex> truncated_spectrum(const TruncatedOperator& op);

/// ||(M - lambda) v|| / ||M|| for v from two steps of inverse iteration.
double eigen_residual(const TruncatedOperator& op, Complex lambda);

/// {w*, -w*, 1/w*, -1/w*}, w* = sqrt((l + sqrt(l^2 - 4)) / 2) on principal branches.
std::array<Complex, 4> char_roots(Complex lambda_tilde);

/// Number of characteristic roots with modulus < 1: 0 on [-2, 2], 2 elsewhere.
int root_count_S(Complex lambda_tilde);

struct BandSpec {
    Complex lower;
    Complex upper;
    double width = 0.0;
};

/// Endpoints +-2 i b, width 4|b|.
BandSpec essential_band(const CFParams& params);

/// Distance from lambda to the segment i [-2|b|, 2|b|].
double band_distance(double b, Complex lambda);

struct TaggedEigenvalue {
    Complex value;
    bool isolated = false;
    double band_distance = 0.0;
};

/// An eigenvalue is isolated when its distance to the band exceeds ten times
/// the median distance, with an absolute floor of 1e-8 * 2|b| (the median is
/// usually exactly zero for finite sections).
std::vector<TaggedEigenvalue> tag_spectrum(const std::vector<Complex>& eigenvalues, double b);

/// Solution of (S - lambda_tilde I) z = y, S the relabeled pattern, through
/// the explicit Green's function.
class Resolvent {
public:
    /// Throws SpectralPointSetError at +-2 and OnSpectralCurveError on (-2, 2).
    explicit Resolvent(Complex lambda_tilde);

    Complex lambda_tilde() const { return lt_; }
    /// characteristic root used, |w| < 1
    Complex w() const { return w_; }
    /// entries needed past the support for |w|^L < 1e-18
    Eigen::Index decay_length() const { return decay_; }

    /// G(n, j), 1-based relabeled indices.
    Complex green(Eigen::Index n, Eigen::Index j) const;
    /// sup over n <= n_max of sum_j |G(n, j)|
    double row_sum_bound(Eigen::Index n_max = 0) const;

    /// z = sum_j G(n, j) y_j; y is indexed from 1 (y[0] is position 1).
    Eigen::VectorXcd apply(const Eigen::VectorXcd& y) const;

private:
    Complex g(Eigen::Index n, Eigen::Index j) const;

    Complex lt_;
    Complex w_;
    Complex w0_;
    Eigen::Matrix2cd minv_;
    Eigen::Index decay_ = 0;
};

/// Convenience wrapper of Resolvent(lambda_tilde).apply(y).
Eigen::VectorXcd resolvent_apply(Complex lambda_tilde, const Eigen::VectorXcd& y);

/// ||(S_N - lambda_tilde I) z - y||_inf with N = z.size().
double resolvent_residual(Complex lambda_tilde, const Eigen::VectorXcd& y, const Eigen::VectorXcd& z);

/// det M for lambda_hat = lambda / (i a): the two decaying solutions of the
/// even (n >= 1) and odd (n <= 0) chains by backward recurrence from N_tail,
/// each normalized to unit l2 norm. Throws DomainError on the band or when a
/// rho on the chain vanishes.
Complex detM_eigentest(const CFParams& params, Complex lambda_hat, std::int64_t N_tail);

/// Tail length for detM_eigentest with |r|^N below 1e-16, r the decay ratio.
std::int64_t detM_default_tail(const CFParams& params, Complex lambda_hat);

/// lambda_hat = lambda / (i a) = -i lambda_tilde
inline Complex lambda_hat_of(Complex lambda_tilde) { return Complex(0.0, -1.0) * lambda_tilde; }

} // namespace euler_spectra

#endif
