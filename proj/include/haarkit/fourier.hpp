#pragma once

#include <cmath>
#include <limits>
#include <numbers>
#include <vector>

#include "haarkit/measure.hpp"

namespace haarkit {

inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/// A density on the circle group given by a truncated cosine series
///   f(x) = 1 + sum_k a_k cos(k (x + phi_k)),   k = 1..K,
/// relative to the uniform measure dx/2pi. The constant term is pinned at 1,
/// so normalization is automatic; validity means f >= 0.
///
/// Phases are stored as raw radians and only reduced mod 2pi at evaluation,
/// which keeps the n-fold phase n*phi_k exact.
class FourierDensity {
public:
    FourierDensity() = default;  // uniform density, f == 1

    int truncation() const { return static_cast<int>(amps_.size()); }
    const std::vector<double>& amps() const { return amps_; }
    const std::vector<double>& phases() const { return phases_; }
    double amp(int k) const { return k >= 1 && k <= truncation() ? amps_[k - 1] : 0.0; }
    double phase(int k) const { return k >= 1 && k <= truncation() ? phases_[k - 1] : 0.0; }

    double evaluate(double x) const {
        double f = 1.0;
        for (int k = 1; k <= truncation(); ++k)
            f += amps_[k - 1] * std::cos(k * (x + phases_[k - 1]));
        return f;
    }

    double sum_abs_amps() const {
        double s = 0.0;
        for (double a : amps_) s += std::abs(a);
        return s;
    }

    friend FourierDensity make_density(std::vector<double> amps, std::vector<double> phases);

private:
    std::vector<double> amps_;
    std::vector<double> phases_;
};

/// Validates and builds a Fourier density. Sum |a_k| <= 1 is accepted
/// immediately (it guarantees f >= 0); otherwise the minimum of f is scanned
/// on a dense grid and anything below -1e-9 is rejected.
inline FourierDensity make_density(std::vector<double> amps, std::vector<double> phases) {
    if (amps.size() != phases.size())
        throw Error("make_density: amps and phases must have equal length");
    FourierDensity d;
    d.amps_ = std::move(amps);
    d.phases_ = std::move(phases);
    if (d.sum_abs_amps() <= 1.0 + 1e-15) return d;
    const int k = d.truncation();
    const int grid = std::max(4096, 8 * k * 1024);
    double min_val = std::numeric_limits<double>::infinity();
    double argmin = 0.0;
    for (int j = 0; j < grid; ++j) {
        const double x = kTwoPi * j / grid;
        const double f = d.evaluate(x);
        if (f < min_val) {
            min_val = f;
            argmin = x;
        }
    }
    if (min_val < -1e-9) throw NotADensity(min_val, argmin);
    return d;
}

inline FourierDensity uniform_density() { return FourierDensity{}; }

/// Convolution on the circle multiplies coefficients:
/// c_k = a_k b_k / 2 and the phases add. Harmonics missing from either
/// factor count as zero, so the output truncation is the larger of the two.
inline FourierDensity fourier_convolve(const FourierDensity& a, const FourierDensity& b) {
    const int k = std::max(a.truncation(), b.truncation());
    std::vector<double> amps(k), phases(k);
    for (int i = 1; i <= k; ++i) {
        amps[i - 1] = a.amp(i) * b.amp(i) / 2.0;
        phases[i - 1] = a.phase(i) + b.phase(i);
    }
    return make_density(std::move(amps), std::move(phases));
}

/// n-fold self-convolution in closed form: amplitudes a_k^n / 2^(n-1),
/// phases n*phi_k. Matches repeated fourier_convolve.
inline FourierDensity n_fold_fourier(const FourierDensity& a, int n) {
    if (n < 1) throw Error("n_fold_fourier: n must be >= 1");
    const int k = a.truncation();
    std::vector<double> amps(k), phases(k);
    for (int i = 1; i <= k; ++i) {
        amps[i - 1] = std::pow(a.amp(i), n) / std::pow(2.0, n - 1);
        phases[i - 1] = n * a.phase(i);
    }
    return make_density(std::move(amps), std::move(phases));
}

namespace detail {

/// Composite Simpson over one period with n intervals (n even).
template <typename F>
double simpson_period(const F& fn, int n) {
    const double h = kTwoPi / n;
    double acc = fn(0.0) + fn(kTwoPi);
    for (int j = 1; j < n; ++j) acc += fn(j * h) * (j % 2 == 1 ? 4.0 : 2.0);
    return acc * h / 3.0;
}

}  // namespace detail

/// D(P || U) = (1/2pi) integral f log f dx by composite Simpson, doubling the
/// grid until successive estimates differ by less than 1e-10 (cap 2^20
/// points). f log f is extended by continuity with value 0 where f = 0.
inline double divergence_exact(const FourierDensity& d) {
    auto integrand = [&d](double x) {
        const double f = d.evaluate(x);
        return f > 0.0 ? f * std::log(f) : 0.0;
    };
    int n = 64;
    double prev = detail::simpson_period(integrand, n) / kTwoPi;
    while (n < (1 << 20)) {
        n *= 2;
        const double cur = detail::simpson_period(integrand, n) / kTwoPi;
        if (std::abs(cur - prev) < 1e-10) return std::max(cur, 0.0);
        prev = cur;
    }
    throw QuadratureFailure("divergence_exact: refinement stalled");
}

/// Small-amplitude approximation (1/2) sum a_k^2.
inline double divergence_quadratic(const FourierDensity& d) {
    double acc = 0.0;
    for (double a : d.amps()) acc += a * a;
    return acc / 2.0;
}

/// Samples the density at M equispaced angles and renormalizes, producing a
/// distribution on cyclic(M). Requires M >= 4K so the harmonics stay resolved.
inline GroupDistribution discretize(const FourierDensity& d, int m) {
    if (m < std::max(2, 4 * d.truncation()))
        throw GridTooCoarse("discretize: need M >= 4K grid points");
    std::vector<double> mass(m);
    for (int j = 0; j < m; ++j) mass[j] = std::max(d.evaluate(kTwoPi * j / m), 0.0);
    return GroupDistribution(cyclic(m), std::move(mass));
}

}  // namespace haarkit
