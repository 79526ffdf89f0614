#include "euler_spectra/lattice.hpp"

#include "euler_spectra/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>

namespace euler_spectra {

std::string to_string(WaveVector k)
{
    return "(" + std::to_string(k.k1) + "," + std::to_string(k.k2) + ")";
}

double triad_coeff(WaveVector p, WaveVector q)
{
    if (p.is_zero() || q.is_zero()) {
        throw DomainError("triad_coeff: zero wave vector");
    }
    const double bracket = 1.0 / static_cast<double>(q.norm2()) - 1.0 / static_cast<double>(p.norm2());
    return 0.5 * bracket * static_cast<double>(cross(p, q));
}

double rho(WaveVector khat, WaveVector p, std::int64_t n)
{
    const WaveVector k = khat + n * p;
    if (k.is_zero()) {
        throw DomainError("rho: khat + n p is the origin for n = " + std::to_string(n));
    }
    if (p.is_zero()) {
        throw DomainError("rho: zero p");
    }
    return 1.0 / static_cast<double>(k.norm2()) - 1.0 / static_cast<double>(p.norm2());
}

ClassLabel::ClassLabel(WaveVector khat_, WaveVector p_)
    : khat(khat_), p(p_), parallel(euler_spectra::parallel(khat_, p_))
{
}

std::optional<std::int64_t> hole_index(WaveVector khat, WaveVector p)
{
    if (!parallel(khat, p) || p.is_zero()) {
        return std::nullopt;
    }
    // khat = -n p  <=>  n = -khat.p / |p|^2 when it is an integer
    const std::int64_t num = -dot(khat, p);
    const std::int64_t den = p.norm2();
    if (num % den != 0) {
        return std::nullopt;
    }
    return num / den;
}

RhoSequence::RhoSequence(WaveVector khat, WaveVector p)
    : khat_(khat), p_(p), hole_(hole_index(khat, p))
{
    if (p.is_zero()) {
        throw DomainError("RhoSequence: zero p");
    }
    limit_ = -1.0 / static_cast<double>(p.norm2());
}

std::map<std::int64_t, double> RhoSequence::tabulate(std::int64_t n_min, std::int64_t n_max) const
{
    std::map<std::int64_t, double> out;
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        if (hole_ && *hole_ == n) {
            continue;
        }
        out.emplace(n, (*this)(n));
    }
    return out;
}

ClassWindow class_members(const ClassLabel& label, std::int64_t n_min, std::int64_t n_max)
{
    if (n_min > n_max) {
        throw UsageError("class_members: n_min > n_max");
    }
    ClassWindow w;
    for (std::int64_t n = n_min; n <= n_max; ++n) {
        const WaveVector k = label.khat + n * label.p;
        if (k.is_zero()) {
            w.excluded = n;
            continue;
        }
        w.members.emplace_back(n, k);
    }
    return w;
}

std::pair<std::int64_t, std::int64_t> min_norm2_member(WaveVector khat, WaveVector p,
                                                       std::optional<std::int64_t> n_lo,
                                                       std::optional<std::int64_t> n_hi)
{
    const double center = -static_cast<double>(dot(khat, p)) / static_cast<double>(p.norm2());
    const double lo = n_lo ? static_cast<double>(*n_lo) : -std::numeric_limits<double>::infinity();
    const double hi = n_hi ? static_cast<double>(*n_hi) : std::numeric_limits<double>::infinity();
    const auto c = static_cast<std::int64_t>(std::llround(std::clamp(center, lo, hi)));

    std::int64_t best_n = 0;
    std::int64_t best = std::numeric_limits<std::int64_t>::max();
    for (std::int64_t n = c - 2; n <= c + 2; ++n) {
        if ((n_lo && n < *n_lo) || (n_hi && n > *n_hi)) {
            continue;
        }
        const WaveVector k = khat + n * p;
        if (k.is_zero()) {
            continue;
        }
        if (k.norm2() < best) {
            best = k.norm2();
            best_n = n;
        }
    }
    return {best_n, best};
}

ClassLabel canonical_label(WaveVector k, WaveVector p)
{
    if (k.is_zero() || p.is_zero()) {
        throw DomainError("canonical_label: zero wave vector");
    }
    const auto [n0, best] = min_norm2_member(k, p);
    WaveVector rep = k + n0 * p;
    // the quadratic |k + n p|^2 has at most two integer minimizers
    for (std::int64_t n = n0 - 2; n <= n0 + 2; ++n) {
        const WaveVector cand = k + n * p;
        if (!cand.is_zero() && cand.norm2() == best && rep < cand) {
            rep = cand;
        }
    }
    return ClassLabel(rep, p);
}

bool class_meets_disk(const ClassLabel& label)
{
    return min_norm2_member(label.khat, label.p).second <= label.p.norm2();
}

std::vector<ClassLabel> classes_meeting_disk(WaveVector p)
{
    if (p.is_zero()) {
        throw DomainError("classes_meeting_disk: zero p");
    }
    const auto r = static_cast<std::int64_t>(std::ceil(std::sqrt(static_cast<double>(p.norm2()))));
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    std::vector<ClassLabel> out;
    for (std::int64_t a = -r; a <= r; ++a) {
        for (std::int64_t b = -r; b <= r; ++b) {
            const WaveVector k{a, b};
            if (!in_closed_disk(k, p) || parallel(k, p)) {
                continue;
            }
            const ClassLabel lab = canonical_label(k, p);
            if (seen.emplace(lab.khat.k1, lab.khat.k2).second) {
                out.push_back(lab);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const ClassLabel& x, const ClassLabel& y) { return x.khat < y.khat; });
    return out;
}

std::vector<ClassLabel> classes_within(WaveVector p, double radius)
{
    if (p.is_zero()) {
        throw DomainError("classes_within: zero p");
    }
    const auto r = static_cast<std::int64_t>(std::floor(radius));
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    std::vector<ClassLabel> out;
    for (std::int64_t a = -r; a <= r; ++a) {
        for (std::int64_t b = -r; b <= r; ++b) {
            const WaveVector k{a, b};
            if (k.is_zero() || static_cast<double>(k.norm2()) > radius * radius) {
                continue;
            }
            const ClassLabel lab = canonical_label(k, p);
            if (seen.emplace(lab.khat.k1, lab.khat.k2).second) {
                out.push_back(lab);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const ClassLabel& x, const ClassLabel& y) { return x.khat < y.khat; });
    return out;
}

} // namespace euler_spectra
