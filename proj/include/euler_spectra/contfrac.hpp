#ifndef EULER_SPECTRA_CONTFRAC_HPP
#define EULER_SPECTRA_CONTFRAC_HPP

#include "euler_spectra/lattice.hpp"
#include "euler_spectra/subsystem.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

namespace euler_spectra {

/// Scalars of the eigenvalue recurrence a_n z_n + z_{n-1} - z_{n+1} = 0,
/// a_n = lambda / (a rho_n), for one class.
struct CFParams {
    WaveVector khat;
    WaveVector p;
    Complex gamma{1.0, 0.0};
    /// a = |Gamma| (p1 khat2 - p2 khat1) / 2
    double a = 0.0;
    RhoSequence rho_seq;

    /// Index n with rho_n = 0 (khat + n p on the circle |k| = |p|).
    std::optional<std::int64_t> circle_index() const;
};

CFParams make_cf_params(WaveVector khat, WaveVector p, Complex gamma = {1.0, 0.0});

/// lambda / (a rho_n). Throws DomainError for a = 0 or rho_n = 0.
Complex a_n(const CFParams& params, Complex lambda, std::int64_t n);

/// Limit of a_n: -lambda |p|^2 / a, written in terms of lambda_tilde = lambda / a.
inline Complex a_tilde_of(const CFParams& params, Complex lambda_tilde)
{
    return -lambda_tilde * static_cast<double>(params.p.norm2());
}

struct AsymRoots {
    Complex a_tilde;
    Complex w_plus;
    Complex w_minus;
};

/// Roots of w^2 - a_tilde w - 1 = 0 labelled so that |w_plus| > 1 > |w_minus|.
/// Throws EssentialBandError when Re a_tilde = 0 and |a_tilde| <= 2.
AsymRoots asym_roots(Complex a_tilde);

enum class TailDirection { Down, Up };

struct TailOptions {
    double tol = 1e-15;
    std::int64_t start_depth = 16;
    std::int64_t max_depth = std::int64_t{1} << 22;
};

/// Down: w_1 = a_0 + 1/(a_{-1} + 1/(a_{-2} + ...)).
/// Up:   w_1 = -1/(a_1 + 1/(a_2 + ...)).
/// Generalized to start at an arbitrary index: Down gives the ratio z_{m}/z_{m-1}
/// built from a_{m-1}, a_{m-2}, ...; Up gives z_m/z_{m-1} built from a_m, a_{m+1}, ...
/// The far end is seeded with the constant-coefficient fixed point and the
/// depth doubles until two successive values agree to tol.
Complex cf_tail(const CFParams& params, Complex lambda, TailDirection direction, const TailOptions& opt = {},
                std::int64_t m = 1);

/// Which part of the chain an eigenvalue condition refers to. Classes with
/// a member on the circle |k| = |p| split into two half chains.
enum class ChainPart { Full, Upper, Lower };

/// Matching function whose zeros in lambda_tilde are eigenvalues lambda = a lambda_tilde.
/// Full: a_0 + down tail + up tail. Upper: a_{c+1} + 1/(a_{c+2} + ...).
/// Lower: a_{c-1} + 1/(a_{c-2} + ...), c the circle index.
Complex f_eigen(const CFParams& params, Complex lambda_tilde, const TailOptions& opt = {},
                ChainPart part = ChainPart::Full);

struct SearchBox {
    double re_min = 0.0;
    double re_max = 4.0;
    double im_min = 0.0;
    double im_max = 4.0;
};

struct EigenQuadruple {
    /// representative with Re >= 0, Im >= 0
    Complex lambda_tilde;
    std::vector<Complex> members;
    double residual = 0.0;
    ChainPart part = ChainPart::Full;
};

struct FindOptions {
    SearchBox box;
    int grid = 20;
    double tol = 1e-12;
    /// half width of the excluded tube around the essential segment
    double band_eps = 1e-3;
    int max_newton = 60;
};

/// Grid-seeded Newton search on f_eigen, deduplicated and expanded into
/// quadruples {+-lambda, +-conj(lambda)}, sorted by |lambda_tilde|.
std::vector<EigenQuadruple> find_eigenvalues(const CFParams& params, const FindOptions& opt = {});

/// Single Newton run from a seed. Returns the root when |f| < tol.
std::optional<Complex> newton_root(const CFParams& params, Complex seed, const FindOptions& opt,
                                   ChainPart part = ChainPart::Full);

/// True when lambda_tilde lies in the closed eps-tube around the essential segment.
bool in_band_tube(const CFParams& params, Complex lambda_tilde, double eps);

/// Quadruple members {+-l, +-conj l} without duplicates.
std::vector<Complex> quadruple_members(Complex lambda_tilde);

struct ChainSolution {
    std::int64_t n_min = 0;
    /// z_n for n = n_min .. n_min + size - 1, normalized to z_0 = 1 (Full chains)
    Eigen::VectorXcd z;
    /// max |a_n z_n + z_{n-1} - z_{n+1}| / max |z| over interior n
    double recurrence_residual = 0.0;
};

/// Decaying solution of the recurrence at a root, built from the tail ratios.
ChainSolution reconstruct_solution(const CFParams& params, Complex lambda_tilde, std::int64_t n_min,
                                   std::int64_t n_max, const TailOptions& opt = {});

/// Eigenvector of cle_rhs on the window for eigenvalue a lambda_tilde:
/// omega_n = z_n (-e^{i gamma})^n / rho_n.
ComplexSeq chain_eigenvector(const CFParams& params, Complex lambda_tilde, std::int64_t n_min, std::int64_t n_max,
                             const TailOptions& opt = {});

std::string to_string(ChainPart part);

} // namespace euler_spectra

#endif
