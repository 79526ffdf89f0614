#include "euler_spectra/subsystem.hpp"

#include "euler_spectra/errors.hpp"

#include <cmath>
#include <numeric>

namespace euler_spectra {

void SubsystemSpec::validate() const
{
    if (p.is_zero()) {
        throw UsageError("SubsystemSpec: p must be nonzero");
    }
    if (!(n_min <= 0 && 0 <= n_max)) {
        throw UsageError("SubsystemSpec: window must satisfy n_min <= 0 <= n_max");
    }
}

std::optional<std::int64_t> SubsystemSpec::hole() const
{
    const auto h = hole_index(khat, p);
    if (h && *h >= n_min && *h <= n_max) {
        return h;
    }
    return std::nullopt;
}

ComplexSeq::ComplexSeq(std::int64_t offset, std::int64_t last, std::optional<std::int64_t> hole)
    : offset_(offset), last_(last), hole_(hole)
{
    if (last < offset) {
        throw UsageError("ComplexSeq: empty window");
    }
    if (hole_ && (*hole_ < offset || *hole_ > last)) {
        hole_.reset();
    }
    values_ = Eigen::VectorXcd::Zero(last - offset + 1 - (hole_ ? 1 : 0));
}

ComplexSeq ComplexSeq::zeros(const SubsystemSpec& spec)
{
    spec.validate();
    return ComplexSeq(spec.n_min, spec.n_max, spec.hole());
}

Eigen::Index ComplexSeq::position(std::int64_t n) const
{
    if (!contains(n)) {
        throw UsageError("ComplexSeq: index " + std::to_string(n) + " not stored");
    }
    return static_cast<Eigen::Index>(n - offset_ - (hole_ && n > *hole_ ? 1 : 0));
}

std::int64_t ComplexSeq::index_at(Eigen::Index pos) const
{
    std::int64_t n = offset_ + static_cast<std::int64_t>(pos);
    if (hole_ && n >= *hole_) {
        ++n;
    }
    return n;
}

namespace {

/// Tridiagonal realization of the chain: (d omega/dt)_n = lower_n omega_{n-1} + upper_n omega_{n+1}.
struct ChainOperator {
    Eigen::VectorXcd lower; // coefficient of omega_{n-1}
    Eigen::VectorXcd upper; // coefficient of omega_{n+1}

    ChainOperator(const SubsystemSpec& spec, const ComplexSeq& layout)
    {
        const Eigen::Index m = layout.size();
        lower = Eigen::VectorXcd::Zero(m);
        upper = Eigen::VectorXcd::Zero(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            const std::int64_t n = layout.index_at(i);
            if (layout.contains(n - 1)) {
                lower[i] = triad_coeff(spec.p, spec.khat + (n - 1) * spec.p) * spec.gamma;
            }
            if (layout.contains(n + 1)) {
                upper[i] = triad_coeff(-spec.p, spec.khat + (n + 1) * spec.p) * std::conj(spec.gamma);
            }
        }
    }

    // Storage positions of n-1 and n+1 are pos-1 and pos+1 except across the
    // hole, where the neighbour is absent and its coefficient is zero.
    void apply(const Eigen::VectorXcd& x, Eigen::VectorXcd& out) const
    {
        const Eigen::Index m = x.size();
        out.resize(m);
        for (Eigen::Index i = 0; i < m; ++i) {
            Complex v{};
            if (i > 0) {
                v += lower[i] * x[i - 1];
            }
            if (i + 1 < m) {
                v += upper[i] * x[i + 1];
            }
            out[i] = v;
        }
    }
};

void check_layout(const SubsystemSpec& spec, const ComplexSeq& state)
{
    spec.validate();
    if (state.offset() != spec.n_min || state.last() != spec.n_max || state.hole() != spec.hole()) {
        throw UsageError("state window does not match the subsystem window");
    }
}

double relative_drift(double value, double reference)
{
    const double diff = std::abs(value - reference);
    return reference != 0.0 ? diff / std::abs(reference) : diff;
}

} // namespace

ComplexSeq cle_rhs(const SubsystemSpec& spec, const ComplexSeq& state)
{
    check_layout(spec, state);
    ComplexSeq out = state;
    ChainOperator(spec, state).apply(state.values(), out.values());
    return out;
}

double hamiltonian(const SubsystemSpec& spec, const ComplexSeq& state)
{
    check_layout(spec, state);
    if (parallel(spec.khat, spec.p)) {
        return 0.0;
    }
    const RhoSequence rho_seq(spec.khat, spec.p);
    Complex sum{};
    for (std::int64_t n = spec.n_min + 1; n <= spec.n_max; ++n) {
        if (!state.contains(n) || !state.contains(n - 1)) {
            continue;
        }
        sum += spec.gamma * rho_seq(n) * rho_seq(n - 1) * state[n - 1] * std::conj(state[n]);
    }
    const double det = static_cast<double>(cross(spec.p, spec.khat));
    return -det * sum.imag();
}

InvariantI invariant_I(const SubsystemSpec& spec, const ComplexSeq& state)
{
    check_layout(spec, state);
    const RhoSequence rho_seq(spec.khat, spec.p);
    InvariantI out;
    const bool split = spec.khat.norm2() == spec.p.norm2();
    double plus = 0.0;
    double minus = 0.0;
    for (Eigen::Index i = 0; i < state.size(); ++i) {
        const std::int64_t n = state.index_at(i);
        const double term = rho_seq(n) * std::norm(state.values()[i]);
        out.total += term;
        if (n >= 1) {
            plus += term;
        }
        else if (n <= -1) {
            minus += term;
        }
    }
    if (split) {
        out.plus = plus;
        out.minus = minus;
    }
    return out;
}

Trajectory integrate(const SubsystemSpec& spec, const ComplexSeq& state0, double dt, std::int64_t steps,
                     std::int64_t sample_every)
{
    check_layout(spec, state0);
    if (!(dt > 0.0) || steps < 1 || sample_every < 1) {
        throw UsageError("integrate: need dt > 0, steps >= 1, sample_every >= 1");
    }
    const ChainOperator op(spec, state0);
    const double h0 = hamiltonian(spec, state0);
    const double i0 = invariant_I(spec, state0).total;
    const double e0 = state0.enstrophy();

    Trajectory traj;
    auto record = [&](double t, const ComplexSeq& s) {
        traj.times.push_back(t);
        traj.states.push_back(s);
        traj.hamiltonian_drift = std::max(traj.hamiltonian_drift, relative_drift(hamiltonian(spec, s), h0));
        traj.invariant_drift = std::max(traj.invariant_drift, relative_drift(invariant_I(spec, s).total, i0));
        if (e0 > 0.0) {
            traj.enstrophy_ratio = std::max(traj.enstrophy_ratio, s.enstrophy() / e0);
        }
    };

    ComplexSeq state = state0;
    record(0.0, state);
    Eigen::VectorXcd k1, k2, k3, k4, tmp;
    Eigen::VectorXcd& x = state.values();
    for (std::int64_t step = 1; step <= steps; ++step) {
        op.apply(x, k1);
        tmp = x + 0.5 * dt * k1;
        op.apply(tmp, k2);
        tmp = x + 0.5 * dt * k2;
        op.apply(tmp, k3);
        tmp = x + dt * k3;
        op.apply(tmp, k4);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!x.allFinite()) {
            throw NumericalError("integrate: non-finite state at step " + std::to_string(step));
        }
        if (step % sample_every == 0 || step == steps) {
            record(static_cast<double>(step) * dt, state);
        }
    }
    return traj;
}

double fit_growth_rate(const std::vector<double>& times, const std::vector<double>& enstrophy)
{
    if (times.size() != enstrophy.size() || times.size() < 3) {
        throw UsageError("fit_growth_rate: need at least three matching samples");
    }
    const std::size_t first = times.size() - times.size() / 3;
    const auto count = static_cast<double>(times.size() - first);
    double st = 0.0, sy = 0.0, stt = 0.0, sty = 0.0;
    for (std::size_t i = first; i < times.size(); ++i) {
        if (!(enstrophy[i] > 0.0)) {
            throw NumericalError("fit_growth_rate: non-positive enstrophy sample");
        }
        const double y = std::log(enstrophy[i]);
        st += times[i];
        sy += y;
        stt += times[i] * times[i];
        sty += times[i] * y;
    }
    const double denom = count * stt - st * st;
    if (denom == 0.0) {
        throw NumericalError("fit_growth_rate: degenerate time samples");
    }
    return (count * sty - st * sy) / denom;
}

double fit_growth_rate(const Trajectory& traj)
{
    std::vector<double> ens;
    ens.reserve(traj.states.size());
    for (const auto& s : traj.states) {
        ens.push_back(s.enstrophy());
    }
    return fit_growth_rate(traj.times, ens);
}

std::string to_string(StabilityKind kind)
{
    switch (kind) {
    case StabilityKind::ParallelTrivial:
        return "ParallelTrivial";
    case StabilityKind::StableUDT:
        return "StableUDT";
    case StabilityKind::StableHalfClassBoth:
        return "StableHalfClassBoth";
    case StabilityKind::StableHalfClassOne:
        return "StableHalfClassOne";
    case StabilityKind::Undetermined:
        return "Undetermined";
    }
    return "Undetermined";
}

double half_class_sigma(WaveVector k0, WaveVector p, bool upper)
{
    const double inv_p2 = 1.0 / static_cast<double>(p.norm2());
    const auto [n, norm2] = upper ? min_norm2_member(k0, p, 1, std::nullopt)
                                  : min_norm2_member(k0, p, std::nullopt, -1);
    (void)n;
    const double inf_neg_rho = inv_p2 - 1.0 / static_cast<double>(norm2);
    return inv_p2 / inf_neg_rho;
}

StabilityVerdict classify_stability(const ClassLabel& label)
{
    const WaveVector p = label.p;
    if (p.is_zero() || label.khat.is_zero()) {
        throw DomainError("classify_stability: zero wave vector");
    }
    StabilityVerdict v;
    if (parallel(label.khat, p)) {
        v.kind = StabilityKind::ParallelTrivial;
        v.detail = "khat parallel to p: every coupling coefficient vanishes";
        return v;
    }

    const double inv_p2 = 1.0 / static_cast<double>(p.norm2());
    const auto [n_min, min_norm2] = min_norm2_member(label.khat, p);
    if (min_norm2 > p.norm2()) {
        // sup(-rho_n) is the limit |p|^-2; inf is attained at the member closest to the origin
        const double inf_neg_rho = inv_p2 - 1.0 / static_cast<double>(min_norm2);
        v.kind = StabilityKind::StableUDT;
        v.sigma = inv_p2 / inf_neg_rho;
        v.detail = "class avoids the closed disk; closest member " + to_string(label.khat + n_min * p);
        return v;
    }

    // members inside the disk sit within two steps of the minimizer
    for (std::int64_t n = n_min - 3; n <= n_min + 3; ++n) {
        const WaveVector k0 = label.khat + n * p;
        if (k0.norm2() != p.norm2()) {
            continue;
        }
        const bool upper_ok = !in_closed_disk(k0 + p, p);
        const bool lower_ok = !in_closed_disk(k0 - p, p);
        if (upper_ok && lower_ok) {
            const double s_up = half_class_sigma(k0, p, true);
            const double s_lo = half_class_sigma(k0, p, false);
            v.kind = StabilityKind::StableHalfClassBoth;
            v.sigma = std::max(s_up, s_lo);
            v.detail = "circle member " + to_string(k0) + "; both half chains stable (sigma+ = " +
                       std::to_string(s_up) + ", sigma- = " + std::to_string(s_lo) + ")";
            return v;
        }
        if (upper_ok || lower_ok) {
            v.kind = StabilityKind::StableHalfClassOne;
            v.sigma = half_class_sigma(k0, p, upper_ok);
            v.detail = "circle member " + to_string(k0) + "; " + (upper_ok ? "upper" : "lower") +
                       " half chain stable";
            return v;
        }
    }
    v.kind = StabilityKind::Undetermined;
    v.detail = "class meets the open disk; point spectrum may be nonempty";
    return v;
}

UdtReport udt_bound_check(const SubsystemSpec& spec, const Trajectory& trajectory, double slack)
{
    const StabilityVerdict verdict = classify_stability(spec.label());
    if (verdict.kind != StabilityKind::StableUDT) {
        throw UsageError("udt_bound_check: class does not avoid the closed disk, no enstrophy bound applies");
    }
    UdtReport report;
    report.sigma = *verdict.sigma;
    if (trajectory.states.empty()) {
        return report;
    }
    const double e0 = trajectory.states.front().enstrophy();
    for (std::size_t i = 0; i < trajectory.states.size(); ++i) {
        const double ratio = e0 > 0.0 ? trajectory.states[i].enstrophy() / e0 : 1.0;
        report.max_ratio = std::max(report.max_ratio, ratio);
        if (ratio > report.sigma * (1.0 + slack) && !report.violation_sample) {
            report.violation_sample = i;
            report.satisfied = false;
        }
    }
    return report;
}

} // namespace euler_spectra
