#ifndef EULER_SPECTRA_EULER_CORE_HPP
#define EULER_SPECTRA_EULER_CORE_HPP

#include "euler_spectra/lattice.hpp"
#include "euler_spectra/subsystem.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <utility>
#include <vector>

namespace euler_spectra {

/// Modes 0 < |k| <= K. Only one representative per +-k pair is stored
/// (k1 > 0, or k1 = 0 and k2 > 0); the partner is the complex conjugate.
class ModeSet {
public:
    struct Triad {
        Eigen::Index out;
        Eigen::Index p;
        bool p_conj;
        Eigen::Index q;
        bool q_conj;
        double coeff;
    };

    explicit ModeSet(double cutoff);

    double cutoff() const { return cutoff_; }
    Eigen::Index size() const { return static_cast<Eigen::Index>(reps_.size()); }
    const std::vector<WaveVector>& representatives() const { return reps_; }
    /// all modes, each representative followed by its negative
    std::vector<WaveVector> modes() const;

    static bool is_representative(WaveVector k) { return k.k1 > 0 || (k.k1 == 0 && k.k2 > 0); }
    /// storage index of k and whether k is the conjugate partner
    std::optional<std::pair<Eigen::Index, bool>> locate(WaveVector k) const;
    bool contains(WaveVector k) const { return locate(k).has_value(); }

    /// Every (k, p, q) with k = p + q inside the set and nonzero coefficient;
    /// k runs over representatives, (p, q) over ordered pairs.
    const std::vector<Triad>& triads() const { return triads_; }

private:
    double cutoff_;
    std::int64_t radius_;
    std::vector<WaveVector> reps_;
    std::vector<Eigen::Index> lookup_;
    std::vector<Triad> triads_;
};

/// Vorticity coefficients on a ModeSet with omega_{-k} = conj(omega_k) built in.
class VorticityField {
public:
    explicit VorticityField(std::shared_ptr<const ModeSet> modes);
    VorticityField(std::shared_ptr<const ModeSet> modes, Eigen::VectorXcd values);

    const ModeSet& modes() const { return *modes_; }
    const std::shared_ptr<const ModeSet>& mode_set() const { return modes_; }

    /// omega_k, zero outside the set
    Complex at(WaveVector k) const;
    /// sets omega_k and omega_{-k} = conj(omega_k); throws UsageError outside the set
    void set(WaveVector k, Complex value);

    Eigen::VectorXcd& values() { return values_; }
    const Eigen::VectorXcd& values() const { return values_; }

private:
    std::shared_ptr<const ModeSet> modes_;
    Eigen::VectorXcd values_;
};

/// d omega_k / dt = sum of A(p,q) omega_p omega_q over unordered pairs {p, q}
/// with p + q = k (half the ordered-pair sum). With this count the
/// linearization at omega_p = Gamma is exactly
/// A(p,k-p) Gamma omega_{k-p} + A(-p,k+p) conj(Gamma) omega_{k+p}.
VorticityField euler_rhs(const VorticityField& field);
Eigen::VectorXcd euler_rhs_values(const ModeSet& modes, const Eigen::VectorXcd& values);

/// omega_p = Gamma, omega_{-p} = conj(Gamma), zero elsewhere.
VorticityField fixed_point(WaveVector p, Complex gamma, std::shared_ptr<const ModeSet> modes);

struct Conserved {
    /// 1/2 sum_k |k|^-2 |omega_k|^2 over all modes
    double E = 0.0;
    /// sum_k |omega_k|^2 over all modes
    double J = 0.0;
    /// 2E - |p|^-2 J
    double I = 0.0;
};

Conserved conserved(const VorticityField& field, WaveVector p);

/// Central-difference Jacobian of euler_rhs. Row i is representative i; column
/// 2j holds d rhs_i / d omega_{k_j}, column 2j+1 holds d rhs_i / d omega_{-k_j}.
Eigen::MatrixXcd finite_difference_jacobian(const VorticityField& field, double h);

struct JacobianReport {
    double max_deviation = 0.0;
    /// largest analytic coefficient, for scale
    double max_coefficient = 0.0;
    std::size_t nonzero_entries = 0;
};

JacobianReport jacobian_check(WaveVector p, Complex gamma, std::shared_ptr<const ModeSet> modes, double h = 1e-6);

struct EulerTrajectory {
    std::vector<double> times;
    std::vector<VorticityField> states;
    double energy_drift = 0.0;
    double enstrophy_drift = 0.0;
};

/// Classical RK4; samples every `sample_every` steps plus the final state.
/// Throws NumericalError naming the step when a value stops being finite.
EulerTrajectory integrate_euler(const VorticityField& field0, double dt, std::int64_t steps,
                                std::int64_t sample_every = 1);

} // namespace euler_spectra

#endif
