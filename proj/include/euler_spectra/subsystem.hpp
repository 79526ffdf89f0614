#ifndef EULER_SPECTRA_SUBSYSTEM_HPP
#define EULER_SPECTRA_SUBSYSTEM_HPP

#include "euler_spectra/lattice.hpp"

#include <Eigen/Dense>

#include <complex>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace euler_spectra {

using Complex = std::complex<double>;

/// One invariant subsystem of the linearized equation at the fixed point
/// omega_p = Gamma, truncated to the index window [n_min, n_max].
struct SubsystemSpec {
    WaveVector khat;
    WaveVector p;
    Complex gamma{1.0, 0.0};
    std::int64_t n_min = 0;
    std::int64_t n_max = 0;

    /// Throws UsageError unless n_min <= 0 <= n_max and p != 0.
    void validate() const;
    ClassLabel label() const { return ClassLabel(khat, p); }
    /// n with khat + n p = 0 inside the window, if any.
    std::optional<std::int64_t> hole() const;
};

/// Amplitudes omega_{khat + n p} for n in a window, the hole (if any) omitted.
class ComplexSeq {
public:
    ComplexSeq() = default;
    ComplexSeq(std::int64_t offset, std::int64_t last, std::optional<std::int64_t> hole);

    /// Zero state laid out for `spec`'s window.
    static ComplexSeq zeros(const SubsystemSpec& spec);

    std::int64_t offset() const { return offset_; }
    std::int64_t last() const { return last_; }
    std::optional<std::int64_t> hole() const { return hole_; }
    Eigen::Index size() const { return values_.size(); }

    bool contains(std::int64_t n) const { return n >= offset_ && n <= last_ && !(hole_ && *hole_ == n); }
    /// Storage position of index n (n must be contained).
    Eigen::Index position(std::int64_t n) const;
    /// Inverse of position().
    std::int64_t index_at(Eigen::Index pos) const;

    Complex& operator[](std::int64_t n) { return values_[position(n)]; }
    const Complex& operator[](std::int64_t n) const { return values_[position(n)]; }
    Complex at_or_zero(std::int64_t n) const { return contains(n) ? values_[position(n)] : Complex{}; }

    Eigen::VectorXcd& values() { return values_; }
    const Eigen::VectorXcd& values() const { return values_; }

    bool same_layout(const ComplexSeq& other) const
    {
        return offset_ == other.offset_ && last_ == other.last_ && hole_ == other.hole_;
    }

    double enstrophy() const { return values_.squaredNorm(); }

private:
    std::int64_t offset_ = 0;
    std::int64_t last_ = -1;
    std::optional<std::int64_t> hole_;
    Eigen::VectorXcd values_;
};

/// d omega / dt of the truncated chain; neighbours outside the window or at
/// the hole contribute nothing.
ComplexSeq cle_rhs(const SubsystemSpec& spec, const ComplexSeq& state);

/// Quadratic Hamiltonian in determinant form.
double hamiltonian(const SubsystemSpec& spec, const ComplexSeq& state);

struct InvariantI {
    double total = 0.0;
    /// Half sums over n >= 1 and n <= -1, reported when |khat| = |p|.
    std::optional<double> plus;
    std::optional<double> minus;
};

InvariantI invariant_I(const SubsystemSpec& spec, const ComplexSeq& state);

struct Trajectory {
    std::vector<double> times;
    std::vector<ComplexSeq> states;
    /// max |X(t) - X(0)| / |X(0)| over samples (absolute when X(0) = 0)
    double hamiltonian_drift = 0.0;
    double invariant_drift = 0.0;
    /// max enstrophy(t) / enstrophy(0) over samples
    double enstrophy_ratio = 1.0;
};

/// Classical RK4 with fixed step. Samples every `sample_every` steps and the
/// final state. Throws NumericalError naming the step when the state stops
/// being finite.
Trajectory integrate(const SubsystemSpec& spec, const ComplexSeq& state0, double dt, std::int64_t steps,
                     std::int64_t sample_every = 1);

/// Least-squares slope of log(enstrophy) over the last third of the samples.
double fit_growth_rate(const std::vector<double>& times, const std::vector<double>& enstrophy);
double fit_growth_rate(const Trajectory& traj);

enum class StabilityKind {
    ParallelTrivial,
    StableUDT,
    StableHalfClassBoth,
    StableHalfClassOne,
    Undetermined,
};

std::string to_string(StabilityKind kind);

struct StabilityVerdict {
    StabilityKind kind = StabilityKind::Undetermined;
    std::optional<double> sigma;
    std::string detail;
};

/// Bound sigma = sup(-rho_n) / inf(-rho_n) over n >= 1 (upper) or n <= -1
/// (lower) counted from a member of the class.
double half_class_sigma(WaveVector k0, WaveVector p, bool upper);

StabilityVerdict classify_stability(const ClassLabel& label);

struct UdtReport {
    double sigma = 0.0;
    double max_ratio = 1.0;
    bool satisfied = true;
    /// first sample index violating the bound
    std::optional<std::size_t> violation_sample;
};

/// Checks enstrophy(t) <= sigma * enstrophy(0) * (1 + slack) along a trajectory
/// of a class classified StableUDT; throws UsageError otherwise.
UdtReport udt_bound_check(const SubsystemSpec& spec, const Trajectory& trajectory, double slack = 1e-6);

} // namespace euler_spectra

#endif
