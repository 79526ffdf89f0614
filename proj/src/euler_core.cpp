#include "euler_spectra/euler_core.hpp"

#include "euler_spectra/errors.hpp"

#include <algorithm>
#include <cmath>

namespace euler_spectra {

ModeSet::ModeSet(double cutoff) : cutoff_(cutoff)
{
    if (!(cutoff >= 1.0)) {
        throw UsageError("ModeSet: cutoff must be at least 1");
    }
    radius_ = static_cast<std::int64_t>(std::floor(cutoff));
    const std::int64_t side = 2 * radius_ + 1;
    lookup_.assign(static_cast<std::size_t>(side * side), -1);
    const double c2 = cutoff * cutoff;
    for (std::int64_t a = 0; a <= radius_; ++a) {
        for (std::int64_t b = -radius_; b <= radius_; ++b) {
            const WaveVector k{a, b};
            if (!is_representative(k) || static_cast<double>(k.norm2()) > c2) {
                continue;
            }
            const auto idx = static_cast<Eigen::Index>(reps_.size());
            reps_.push_back(k);
            lookup_[static_cast<std::size_t>((a + radius_) * side + (b + radius_))] = idx;
            lookup_[static_cast<std::size_t>((-a + radius_) * side + (-b + radius_))] = idx;
        }
    }

    const std::vector<WaveVector> all = modes();
    for (Eigen::Index out = 0; out < size(); ++out) {
        const WaveVector k = reps_[static_cast<std::size_t>(out)];
        for (const WaveVector p : all) {
            const WaveVector q = k - p;
            const auto lq = locate(q);
            if (!lq) {
                continue;
            }
            const double coeff = 0.5 * triad_coeff(p, q);
            if (coeff == 0.0) {
                continue;
            }
            const auto lp = locate(p);
            triads_.push_back({out, lp->first, lp->second, lq->first, lq->second, coeff});
        }
    }
}

std::vector<WaveVector> ModeSet::modes() const
{
    std::vector<WaveVector> out;
    out.reserve(reps_.size() * 2);
    for (const WaveVector k : reps_) {
        out.push_back(k);
        out.push_back(-k);
    }
    return out;
}

std::optional<std::pair<Eigen::Index, bool>> ModeSet::locate(WaveVector k) const
{
    if (k.is_zero() || std::abs(k.k1) > radius_ || std::abs(k.k2) > radius_) {
        return std::nullopt;
    }
    const std::int64_t side = 2 * radius_ + 1;
    const Eigen::Index idx = lookup_[static_cast<std::size_t>((k.k1 + radius_) * side + (k.k2 + radius_))];
    if (idx < 0) {
        return std::nullopt;
    }
    return std::make_pair(idx, !is_representative(k));
}

VorticityField::VorticityField(std::shared_ptr<const ModeSet> modes)
    : modes_(std::move(modes)), values_(Eigen::VectorXcd::Zero(modes_->size()))
{
}

VorticityField::VorticityField(std::shared_ptr<const ModeSet> modes, Eigen::VectorXcd values)
    : modes_(std::move(modes)), values_(std::move(values))
{
    if (values_.size() != modes_->size()) {
        throw UsageError("VorticityField: value count does not match the mode set");
    }
}

Complex VorticityField::at(WaveVector k) const
{
    const auto loc = modes_->locate(k);
    if (!loc) {
        return {};
    }
    const Complex v = values_[loc->first];
    return loc->second ? std::conj(v) : v;
}

void VorticityField::set(WaveVector k, Complex value)
{
    const auto loc = modes_->locate(k);
    if (!loc) {
        throw UsageError("VorticityField: mode " + to_string(k) + " outside the mode set");
    }
    values_[loc->first] = loc->second ? std::conj(value) : value;
}

Eigen::VectorXcd euler_rhs_values(const ModeSet& modes, const Eigen::VectorXcd& values)
{
    Eigen::VectorXcd out = Eigen::VectorXcd::Zero(modes.size());
    for (const auto& t : modes.triads()) {
        const Complex wp = t.p_conj ? std::conj(values[t.p]) : values[t.p];
        const Complex wq = t.q_conj ? std::conj(values[t.q]) : values[t.q];
        out[t.out] += t.coeff * wp * wq;
    }
    return out;
}

VorticityField euler_rhs(const VorticityField& field)
{
    return VorticityField(field.mode_set(), euler_rhs_values(field.modes(), field.values()));
}

VorticityField fixed_point(WaveVector p, Complex gamma, std::shared_ptr<const ModeSet> modes)
{
    if (!modes->contains(p)) {
        throw UsageError("fixed_point: p = " + to_string(p) + " is not in the mode set");
    }
    VorticityField f(std::move(modes));
    f.set(p, gamma);
    return f;
}

Conserved conserved(const VorticityField& field, WaveVector p)
{
    Conserved c;
    const auto& reps = field.modes().representatives();
    for (std::size_t i = 0; i < reps.size(); ++i) {
        const double m2 = std::norm(field.values()[static_cast<Eigen::Index>(i)]);
        // each representative stands for itself and its conjugate partner
        c.E += m2 / static_cast<double>(reps[i].norm2());
        c.J += 2.0 * m2;
    }
    c.I = 2.0 * c.E - c.J / static_cast<double>(p.norm2());
    return c;
}

Eigen::MatrixXcd finite_difference_jacobian(const VorticityField& field, double h)
{
    if (!(h > 0.0)) {
        throw UsageError("finite_difference_jacobian: h must be positive");
    }
    const ModeSet& ms = field.modes();
    const Eigen::Index n = ms.size();
    Eigen::MatrixXcd jac(n, 2 * n);
    Eigen::VectorXcd x = field.values();
    const Complex I{0.0, 1.0};
    for (Eigen::Index j = 0; j < n; ++j) {
        const Complex x0 = x[j];
        x[j] = x0 + h;
        const Eigen::VectorXcd fp = euler_rhs_values(ms, x);
        x[j] = x0 - h;
        const Eigen::VectorXcd fm = euler_rhs_values(ms, x);
        x[j] = x0 + I * h;
        const Eigen::VectorXcd gp = euler_rhs_values(ms, x);
        x[j] = x0 - I * h;
        const Eigen::VectorXcd gm = euler_rhs_values(ms, x);
        x[j] = x0;
        const Eigen::VectorXcd r1 = (fp - fm) / (2.0 * h);
        const Eigen::VectorXcd ri = (gp - gm) / (2.0 * h);
        // perturbing omega_k by d also moves omega_{-k} by conj(d)
        jac.col(2 * j) = 0.5 * (r1 - I * ri);
        jac.col(2 * j + 1) = 0.5 * (r1 + I * ri);
    }
    return jac;
}

JacobianReport jacobian_check(WaveVector p, Complex gamma, std::shared_ptr<const ModeSet> modes, double h)
{
    const VorticityField star = fixed_point(p, gamma, modes);
    const Eigen::MatrixXcd jac = finite_difference_jacobian(star, h);
    const ModeSet& ms = *modes;
    JacobianReport rep;
    for (Eigen::Index i = 0; i < ms.size(); ++i) {
        const WaveVector k = ms.representatives()[static_cast<std::size_t>(i)];
        for (Eigen::Index j = 0; j < ms.size(); ++j) {
            const WaveVector kj = ms.representatives()[static_cast<std::size_t>(j)];
            for (const bool neg : {false, true}) {
                const WaveVector kp = neg ? -kj : kj;
                Complex expect{};
                if (kp == k - p) {
                    expect += triad_coeff(p, k - p) * gamma;
                }
                if (kp == k + p) {
                    expect += triad_coeff(-p, k + p) * std::conj(gamma);
                }
                const Complex got = jac(i, 2 * j + (neg ? 1 : 0));
                rep.max_deviation = std::max(rep.max_deviation, std::abs(got - expect));
                rep.max_coefficient = std::max(rep.max_coefficient, std::abs(expect));
                if (expect != 0.0) {
                    ++rep.nonzero_entries;
                }
            }
        }
    }
    return rep;
}

EulerTrajectory integrate_euler(const VorticityField& field0, double dt, std::int64_t steps,
                                std::int64_t sample_every)
{
    if (!(dt > 0.0) || steps < 1 || sample_every < 1) {
        throw UsageError("integrate_euler: need dt > 0, steps >= 1, sample_every >= 1");
    }
    const ModeSet& ms = field0.modes();
    // E and J do not depend on p; any nonzero p serves
    const WaveVector unit{1, 0};
    const Conserved c0 = conserved(field0, unit);
    auto rel = [](double v, double ref) { return ref != 0.0 ? std::abs(v - ref) / std::abs(ref) : std::abs(v - ref); };

    EulerTrajectory traj;
    auto record = [&](double t, const Eigen::VectorXcd& x) {
        VorticityField f(field0.mode_set(), x);
        const Conserved c = conserved(f, unit);
        traj.energy_drift = std::max(traj.energy_drift, rel(c.E, c0.E));
        traj.enstrophy_drift = std::max(traj.enstrophy_drift, rel(c.J, c0.J));
        traj.times.push_back(t);
        traj.states.push_back(std::move(f));
    };

    Eigen::VectorXcd x = field0.values();
    record(0.0, x);
    for (std::int64_t step = 1; step <= steps; ++step) {
        const Eigen::VectorXcd k1 = euler_rhs_values(ms, x);
        const Eigen::VectorXcd k2 = euler_rhs_values(ms, x + 0.5 * dt * k1);
        const Eigen::VectorXcd k3 = euler_rhs_values(ms, x + 0.5 * dt * k2);
        const Eigen::VectorXcd k4 = euler_rhs_values(ms, x + dt * k3);
        x += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
        if (!x.allFinite()) {
            throw NumericalError("integrate_euler: non-finite value at step " + std::to_string(step));
        }
        if (step % sample_every == 0 || step == steps) {
            record(static_cast<double>(step) * dt, x);
        }
    }
    return traj;
}

} // namespace euler_spectra
