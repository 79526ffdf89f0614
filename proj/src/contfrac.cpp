#include "euler_spectra/contfrac.hpp"

#include "euler_spectra/errors.hpp"
#include "euler_spectra/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace euler_spectra {

namespace {

constexpr Complex I{0.0, 1.0};

double sign(double x) { return x < 0.0 ? -1.0 : 1.0; }

// a_j written through lambda_tilde: a_j = lambda_tilde / rho_j
Complex coeff(const CFParams& params, Complex lt, std::int64_t j)
{
    const double r = params.rho_seq(j);
    if (r == 0.0) {
        throw DomainError("a_n: rho vanishes at n = " + std::to_string(j) + " (circle member); use the half chains");
    }
    return lt / r;
}

Complex tail_once(const CFParams& params, Complex lt, const AsymRoots& roots, TailDirection dir, std::int64_t m,
                  std::int64_t depth)
{
    if (dir == TailDirection::Down) {
        Complex x = roots.w_plus;
        for (std::int64_t j = m - depth; j <= m - 1; ++j) {
            x = coeff(params, lt, j) + 1.0 / x;
        }
        return x;
    }
    Complex x = roots.w_minus;
    for (std::int64_t j = m + depth - 1; j >= m; --j) {
        x = 1.0 / (-coeff(params, lt, j) + x);
    }
    return x;
}

Complex tail_tilde(const CFParams& params, Complex lt, TailDirection dir, const TailOptions& opt, std::int64_t m)
{
    if (params.a == 0.0) {
        throw DomainError("continued fraction: parallel class (a = 0)");
    }
    if (!(opt.tol > 0.0)) {
        throw UsageError("continued fraction: tol must be positive");
    }
    const AsymRoots roots = asym_roots(a_tilde_of(params, lt));
    std::int64_t depth = std::max<std::int64_t>(opt.start_depth, 1);
    Complex prev = tail_once(params, lt, roots, dir, m, depth);
    while (depth < opt.max_depth) {
        depth *= 2;
        const Complex cur = tail_once(params, lt, roots, dir, m, depth);
        if (!std::isfinite(cur.real()) || !std::isfinite(cur.imag())) {
            break;
        }
        if (std::abs(cur - prev) < opt.tol * std::max(1.0, std::abs(cur))) {
            return cur;
        }
        prev = cur;
    }
    std::ostringstream msg;
    msg.precision(17);
    msg << "continued fraction did not converge at depth " << depth << " (last value " << prev << ")";
    throw NumericalError(msg.str());
}

Complex f_tilde(const CFParams& params, Complex lt, const TailOptions& opt, ChainPart part)
{
    const auto c = params.circle_index();
    switch (part) {
    case ChainPart::Full:
        if (c) {
            throw DomainError("f_eigen: class has a member on the circle |k| = |p|; use the half chains");
        }
        return tail_tilde(params, lt, TailDirection::Down, opt, 1) - tail_tilde(params, lt, TailDirection::Up, opt, 1);
    case ChainPart::Upper:
        if (!c) {
            throw DomainError("f_eigen: half chains need a circle member");
        }
        return coeff(params, lt, *c + 1) - tail_tilde(params, lt, TailDirection::Up, opt, *c + 2);
    case ChainPart::Lower:
        if (!c) {
            throw DomainError("f_eigen: half chains need a circle member");
        }
        return coeff(params, lt, *c - 1) + 1.0 / tail_tilde(params, lt, TailDirection::Down, opt, *c - 1);
    }
    return {};
}

Complex fold(Complex z) { return {std::abs(z.real()), std::abs(z.imag())}; }

} // namespace

std::optional<std::int64_t> CFParams::circle_index() const
{
    if (parallel(khat, p)) {
        return std::nullopt;
    }
    const auto [n, norm2] = min_norm2_member(khat, p);
    // a line meets the circle in at most two lattice points; for a
    // non-parallel class only one of them can be a lattice point
    for (std::int64_t m = n - 2; m <= n + 2; ++m) {
        if ((khat + m * p).norm2() == p.norm2()) {
            return m;
        }
    }
    (void)norm2;
    return std::nullopt;
}

CFParams make_cf_params(WaveVector khat, WaveVector p, Complex gamma)
{
    if (khat.is_zero() || p.is_zero()) {
        throw DomainError("make_cf_params: zero wave vector");
    }
    CFParams params;
    params.khat = khat;
    params.p = p;
    params.gamma = gamma;
    params.a = 0.5 * std::abs(gamma) * static_cast<double>(cross(p, khat));
    params.rho_seq = RhoSequence(khat, p);
    return params;
}

Complex a_n(const CFParams& params, Complex lambda, std::int64_t n)
{
    if (params.a == 0.0) {
        throw DomainError("a_n: parallel class (a = 0)");
    }
    const double r = params.rho_seq(n);
    if (r == 0.0) {
        throw DomainError("a_n: rho vanishes at n = " + std::to_string(n) + " (circle member); use the half chains");
    }
    return lambda / (params.a * r);
}

AsymRoots asym_roots(Complex at)
{
    AsymRoots out;
    out.a_tilde = at;
    if (at.real() == 0.0) {
        const double xi = at.imag();
        if (std::abs(xi) <= 2.0) {
            throw EssentialBandError("asym_roots: a_tilde = " + std::to_string(xi) + "i lies in the essential band");
        }
        const double s = sign(xi) * std::sqrt(xi * xi - 4.0);
        out.w_plus = 0.5 * I * (xi + s);
        out.w_minus = 0.5 * I * (xi - s);
        return out;
    }
    const Complex root = std::sqrt(at * at + 4.0);
    const double delta = sign(at.real()) * sign(root.real());
    out.w_plus = 0.5 * (at + delta * root);
    out.w_minus = 0.5 * (at - delta * root);
    return out;
}

Complex cf_tail(const CFParams& params, Complex lambda, TailDirection direction, const TailOptions& opt,
                std::int64_t m)
{
    if (params.a == 0.0) {
        throw DomainError("cf_tail: parallel class (a = 0)");
    }
    return tail_tilde(params, lambda / params.a, direction, opt, m);
}

Complex f_eigen(const CFParams& params, Complex lambda_tilde, const TailOptions& opt, ChainPart part)
{
    return f_tilde(params, lambda_tilde, opt, part);
}

bool in_band_tube(const CFParams& params, Complex lt, double eps)
{
    const double half = 2.0 / static_cast<double>(params.p.norm2());
    return std::abs(lt.real()) <= eps && std::abs(lt.imag()) <= half + eps;
}

std::vector<Complex> quadruple_members(Complex lt)
{
    const Complex rep = fold(lt);
    std::vector<Complex> out;
    for (const Complex c : {rep, Complex(-rep.real(), rep.imag()), Complex(rep.real(), -rep.imag()), -rep}) {
        if (std::find(out.begin(), out.end(), c) == out.end()) {
            out.push_back(c);
        }
    }
    return out;
}

std::optional<Complex> newton_root(const CFParams& params, Complex seed, const FindOptions& opt, ChainPart part)
{
    TailOptions topt;
    topt.tol = std::clamp(opt.tol * 1e-3, 1e-15, 1e-6);
    auto f = [&](Complex z) { return f_tilde(params, z, topt, part); };

    const double re_lim = 2.0 * std::max({std::abs(opt.box.re_min), std::abs(opt.box.re_max), 1e-3});
    const double im_lim = 2.0 * std::max({std::abs(opt.box.im_min), std::abs(opt.box.im_max), 1e-3});
    Complex z = fold(seed);
    try {
        Complex fz = f(z);
        for (int it = 0; it < opt.max_newton; ++it) {
            if (std::abs(fz) < opt.tol * 1e-3) {
                break;
            }
            const double h = 1e-7 * (1.0 + std::abs(z));
            const Complex df = (f(z + h) - f(z - h)) / (2.0 * h);
            if (df == 0.0) {
                return std::nullopt;
            }
            const Complex step = fz / df;
            z = fold(z - step);
            if (in_band_tube(params, z, opt.band_eps) || z.real() > re_lim || z.imag() > im_lim) {
                return std::nullopt;
            }
            fz = f(z);
            if (std::abs(step) < 1e-15 * (1.0 + std::abs(z))) {
                break;
            }
        }
        if (std::abs(fz) < opt.tol) {
            return z;
        }
    }
    catch (const DomainError&) {
    }
    catch (const NumericalError&) {
    }
    return std::nullopt;
}

std::vector<EigenQuadruple> find_eigenvalues(const CFParams& params, const FindOptions& opt)
{
    if (opt.grid < 1 || !(opt.tol > 0.0)) {
        throw UsageError("find_eigenvalues: grid >= 1 and tol > 0 required");
    }
    if (params.a == 0.0) {
        return {};
    }
    std::vector<ChainPart> parts;
    if (params.circle_index()) {
        parts = {ChainPart::Upper, ChainPart::Lower};
    }
    else {
        parts = {ChainPart::Full};
    }

    const auto g = static_cast<std::size_t>(opt.grid);
    const std::size_t per_part = g * g;
    std::vector<std::optional<Complex>> roots(parts.size() * per_part);
    const double dre = (opt.box.re_max - opt.box.re_min) / static_cast<double>(g);
    const double dim = (opt.box.im_max - opt.box.im_min) / static_cast<double>(g);
    parallel_for(roots.size(), [&](std::size_t idx) {
        const ChainPart part = parts[idx / per_part];
        const std::size_t cell = idx % per_part;
        const Complex seed(opt.box.re_min + (static_cast<double>(cell / g) + 0.5) * dre,
                           opt.box.im_min + (static_cast<double>(cell % g) + 0.5) * dim);
        if (in_band_tube(params, seed, opt.band_eps)) {
            return;
        }
        roots[idx] = newton_root(params, seed, opt, part);
    });

    TailOptions topt;
    topt.tol = std::clamp(opt.tol * 1e-3, 1e-15, 1e-6);
    std::vector<EigenQuadruple> out;
    for (std::size_t pi = 0; pi < parts.size(); ++pi) {
        std::vector<Complex> found;
        for (std::size_t c = 0; c < per_part; ++c) {
            if (roots[pi * per_part + c]) {
                found.push_back(*roots[pi * per_part + c]);
            }
        }
        std::sort(found.begin(), found.end(), [](Complex x, Complex y) {
            return x.real() != y.real() ? x.real() < y.real() : x.imag() < y.imag();
        });
        std::vector<EigenQuadruple> kept;
        for (const Complex z : found) {
            const double thr = std::max(10.0 * opt.tol, 1e-9 * (1.0 + std::abs(z)));
            const double res = std::abs(f_tilde(params, z, topt, parts[pi]));
            auto same = std::find_if(kept.begin(), kept.end(),
                                     [&](const EigenQuadruple& q) { return std::abs(q.lambda_tilde - z) < thr; });
            if (same != kept.end()) {
                if (res < same->residual) {
                    same->lambda_tilde = z;
                    same->residual = res;
                }
                continue;
            }
            EigenQuadruple q;
            q.lambda_tilde = z;
            q.residual = res;
            q.part = parts[pi];
            kept.push_back(q);
        }
        for (auto& q : kept) {
            q.members = quadruple_members(q.lambda_tilde);
            out.push_back(std::move(q));
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const EigenQuadruple& x, const EigenQuadruple& y) {
        return std::abs(x.lambda_tilde) < std::abs(y.lambda_tilde);
    });
    return out;
}

ChainSolution reconstruct_solution(const CFParams& params, Complex lt, std::int64_t n_min, std::int64_t n_max,
                                   const TailOptions& opt)
{
    if (!(n_min <= 0 && 0 < n_max)) {
        throw UsageError("reconstruct_solution: window must satisfy n_min <= 0 < n_max");
    }
    if (params.circle_index()) {
        throw DomainError("reconstruct_solution: full chains only");
    }
    const auto size = static_cast<Eigen::Index>(n_max - n_min + 1);
    ChainSolution sol;
    sol.n_min = n_min;
    sol.z = Eigen::VectorXcd::Zero(size);
    auto at = [&](std::int64_t n) -> Complex& { return sol.z[static_cast<Eigen::Index>(n - n_min)]; };

    at(0) = 1.0;
    // downward ratios z_m / z_{m-1}, iterated in their stable (increasing m) direction
    if (n_min < 0) {
        std::vector<Complex> down(static_cast<std::size_t>(-n_min));
        down[0] = tail_tilde(params, lt, TailDirection::Down, opt, n_min + 1);
        for (std::int64_t m = n_min + 2; m <= 0; ++m) {
            const auto k = static_cast<std::size_t>(m - n_min - 1);
            down[k] = coeff(params, lt, m - 1) + 1.0 / down[k - 1];
        }
        for (std::int64_t m = 0; m > n_min; --m) {
            at(m - 1) = at(m) / down[static_cast<std::size_t>(m - n_min - 1)];
        }
    }
    // upward ratios, iterated in decreasing m
    std::vector<Complex> up(static_cast<std::size_t>(n_max + 1));
    up[static_cast<std::size_t>(n_max)] = tail_tilde(params, lt, TailDirection::Up, opt, n_max);
    for (std::int64_t m = n_max - 1; m >= 1; --m) {
        up[static_cast<std::size_t>(m)] = 1.0 / (-coeff(params, lt, m) + up[static_cast<std::size_t>(m + 1)]);
    }
    for (std::int64_t m = 1; m <= n_max; ++m) {
        at(m) = at(m - 1) * up[static_cast<std::size_t>(m)];
    }

    const double scale = sol.z.cwiseAbs().maxCoeff();
    double worst = 0.0;
    for (std::int64_t n = n_min + 1; n < n_max; ++n) {
        worst = std::max(worst, std::abs(coeff(params, lt, n) * at(n) + at(n - 1) - at(n + 1)));
    }
    sol.recurrence_residual = worst / scale;
    return sol;
}

ComplexSeq chain_eigenvector(const CFParams& params, Complex lt, std::int64_t n_min, std::int64_t n_max,
                             const TailOptions& opt)
{
    const ChainSolution sol = reconstruct_solution(params, lt, n_min, n_max, opt);
    ComplexSeq out(n_min, n_max, std::nullopt);
    const Complex phase = -std::polar(1.0, std::arg(params.gamma));
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        out[n] = sol.z[static_cast<Eigen::Index>(n - n_min)] * std::pow(phase, static_cast<int>(n)) /
                 params.rho_seq(n);
    }
    return out;
}

std::string to_string(ChainPart part)
{
    switch (part) {
    case ChainPart::Full:
        return "full";
    case ChainPart::Upper:
        return "upper";
    case ChainPart::Lower:
        return "lower";
    }
    return "full";
}

} // namespace euler_spectra
