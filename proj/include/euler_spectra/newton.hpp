#ifndef EULER_SPECTRA_NEWTON_HPP
#define EULER_SPECTRA_NEWTON_HPP

#include <cmath>
#include <complex>
#include <optional>

namespace euler_spectra {

/// Newton iteration on a complex-analytic f with a central-difference
/// derivative, step h = 1e-7 (1 + |z|). Returns the last iterate once the
/// step falls below step_tol (1 + |z|), or nothing after max_iter.
template <typename F>
std::optional<std::complex<double>> newton_fd(F&& f, std::complex<double> z, double step_tol = 1e-14,
                                              int max_iter = 60)
{
    for (int it = 0; it < max_iter; ++it) {
        const std::complex<double> fz = f(z);
        const double h = 1e-7 * (1.0 + std::abs(z));
        const std::complex<double> df = (f(z + h) - f(z - h)) / (2.0 * h);
        if (df == 0.0) {
            return std::nullopt;
        }
        const std::complex<double> step = fz / df;
        z -= step;
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
            return std::nullopt;
        }
        if (std::abs(step) < step_tol * (1.0 + std::abs(z))) {
            return z;
        }
    }
    return std::nullopt;
}

} // namespace euler_spectra

#endif
