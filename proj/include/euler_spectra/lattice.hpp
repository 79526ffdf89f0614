#ifndef EULER_SPECTRA_LATTICE_HPP
#define EULER_SPECTRA_LATTICE_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace euler_spectra {

/// Integer lattice point k = (k1, k2). Mode indices are never zero.
struct WaveVector {
    std::int64_t k1 = 0;
    std::int64_t k2 = 0;

    constexpr bool is_zero() const { return k1 == 0 && k2 == 0; }
    constexpr std::int64_t norm2() const { return k1 * k1 + k2 * k2; }

    friend constexpr WaveVector operator+(WaveVector a, WaveVector b) { return {a.k1 + b.k1, a.k2 + b.k2}; }
    friend constexpr WaveVector operator-(WaveVector a, WaveVector b) { return {a.k1 - b.k1, a.k2 - b.k2}; }
    friend constexpr WaveVector operator-(WaveVector a) { return {-a.k1, -a.k2}; }
    friend constexpr WaveVector operator*(std::int64_t n, WaveVector a) { return {n * a.k1, n * a.k2}; }
    friend constexpr bool operator==(WaveVector, WaveVector) = default;
    friend constexpr auto operator<=>(WaveVector, WaveVector) = default;
};

/// p1*q2 - p2*q1
constexpr std::int64_t cross(WaveVector p, WaveVector q) { return p.k1 * q.k2 - p.k2 * q.k1; }
constexpr std::int64_t dot(WaveVector p, WaveVector q) { return p.k1 * q.k1 + p.k2 * q.k2; }
constexpr bool parallel(WaveVector p, WaveVector q) { return cross(p, q) == 0; }

std::string to_string(WaveVector k);

/// Triad interaction coefficient A(p,q) = 1/2 (|q|^-2 - |p|^-2)(p1 q2 - p2 q1).
/// Symmetric in its arguments. Throws DomainError for a zero argument.
double triad_coeff(WaveVector p, WaveVector q);

/// rho_n = |khat + n p|^-2 - |p|^-2. Throws DomainError when khat + n p = 0.
double rho(WaveVector khat, WaveVector p, std::int64_t n);

/// Label of the class {khat + n p}. `parallel` marks khat || p, where the
/// linearized dynamics vanishes identically.
struct ClassLabel {
    WaveVector khat;
    WaveVector p;
    bool parallel = false;

    ClassLabel() = default;
    ClassLabel(WaveVector khat_, WaveVector p_);

    friend bool operator==(const ClassLabel&, const ClassLabel&) = default;
};

/// Index shift n at which khat + n p hits the origin, if any.
std::optional<std::int64_t> hole_index(WaveVector khat, WaveVector p);

/// The coefficients rho_n of one class together with their limit -|p|^-2.
class RhoSequence {
public:
    RhoSequence() = default;
    RhoSequence(WaveVector khat, WaveVector p);

    WaveVector khat() const { return khat_; }
    WaveVector p() const { return p_; }
    double limit() const { return limit_; }
    std::optional<std::int64_t> hole() const { return hole_; }

    double operator()(std::int64_t n) const { return rho(khat_, p_, n); }

    /// rho_n for every n in [n_min, n_max] except the hole.
    std::map<std::int64_t, double> tabulate(std::int64_t n_min, std::int64_t n_max) const;

private:
    WaveVector khat_{};
    WaveVector p_{1, 0};
    double limit_ = -1.0;
    std::optional<std::int64_t> hole_;
};

struct ClassWindow {
    std::vector<std::pair<std::int64_t, WaveVector>> members;
    /// n with khat + n p = 0 that fell inside the requested window.
    std::optional<std::int64_t> excluded;
};

ClassWindow class_members(const ClassLabel& label, std::int64_t n_min, std::int64_t n_max);

/// Representative of the class of k: the member of minimal |k|^2, ties
/// going to the lexicographically largest (k1, k2).
ClassLabel canonical_label(WaveVector k, WaveVector p);

/// Closed lattice disk |k| <= |p|.
constexpr bool in_closed_disk(WaveVector k, WaveVector p) { return !k.is_zero() && k.norm2() <= p.norm2(); }

/// Smallest |khat + n p|^2 over n in [n_lo, n_hi] (either bound may be open),
/// skipping the origin. Returns the minimizing n and the squared norm.
std::pair<std::int64_t, std::int64_t> min_norm2_member(WaveVector khat, WaveVector p,
                                                       std::optional<std::int64_t> n_lo = std::nullopt,
                                                       std::optional<std::int64_t> n_hi = std::nullopt);

bool class_meets_disk(const ClassLabel& label);

/// Every non-parallel class meeting the closed disk of radius |p|, sorted by khat.
std::vector<ClassLabel> classes_meeting_disk(WaveVector p);

/// Canonical labels of all classes with a member of |k| <= radius, sorted.
std::vector<ClassLabel> classes_within(WaveVector p, double radius);

} // namespace euler_spectra

#endif
