#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "haarkit/bessel.hpp"
#include "haarkit/distortion.hpp"
#include "haarkit/measure.hpp"

namespace haarkit {

/// One point of a rate-distortion curve at slope parameter beta <= 0.
struct RDPoint {
    double beta = 0.0;
    double delta = 0.0;  // distortion
    double rate = 0.0;   // nats
};

struct RDCurve {
    std::vector<RDPoint> points;
    std::string source;
};

/// Partition function Z(beta) = integral of exp(beta d(g,e)) dU(g).
/// Finite case: mean of exp(beta d0) over the group. Circle case:
/// exp(2 beta) I0(2 beta), using that I0 is even.
inline double partition_function(const DistortionSpec& spec, double beta) {
    if (spec.is_circle()) return std::exp(2.0 * beta) * bessel_i(0, 2.0 * beta);
    double acc = 0.0;
    for (double d : spec.profile()) acc += std::exp(beta * d);
    return acc / spec.profile().size();
}

inline double log_partition(const DistortionSpec& spec, double beta) {
    if (spec.is_circle()) return 2.0 * beta + std::log(bessel_i(0, -2.0 * beta));
    return std::log(partition_function(spec, beta));
}

/// Mean distortion of the Gibbs tilt, delta(beta) = Z'(beta)/Z(beta).
/// Circle case in Bessel form: 2 - 2 I1(-2 beta)/I0(-2 beta).
inline double tilted_mean_distortion(const DistortionSpec& spec, double beta) {
    if (spec.is_circle())
        return 2.0 - 2.0 * bessel_i(1, -2.0 * beta) / bessel_i(0, -2.0 * beta);
    double z = 0.0, zp = 0.0;
    for (double d : spec.profile()) {
        const double e = std::exp(beta * d);
        z += e;
        zp += d * e;
    }
    return zp / z;
}

/// Closed-form point of the uniform distribution's rate-distortion curve:
/// delta = Z'(beta)/Z(beta) and R = beta*delta - log Z(beta), for beta <= 0.
/// At beta = 0 this is (d_crit, 0).
inline RDPoint uniform_rd_point(const DistortionSpec& spec, double beta) {
    if (beta > 0.0) throw Error("uniform_rd_point: beta must be <= 0");
    RDPoint p;
    p.beta = beta;
    p.delta = tilted_mean_distortion(spec, beta);
    p.rate = beta * p.delta - log_partition(spec, beta);
    return p;
}

/// Rate of the uniform curve at a prescribed distortion, obtained by solving
/// delta(beta) = target on the monotone branch beta <= 0 by bisection.
inline double uniform_rate_at_delta(const DistortionSpec& spec, double target_delta) {
    const double dcrit = spec.d_crit();
    if (target_delta >= dcrit) return 0.0;
    if (!(target_delta > 0.0)) throw Error("uniform_rate_at_delta: delta must be > 0");
    double hi = 0.0;           // delta(hi) = d_crit >= target
    double lo = -1.0;
    const double lo_cap = spec.is_circle() ? -345.0 : -690.0 / std::max(spec.d_max(), 1e-12);
    while (tilted_mean_distortion(spec, lo) > target_delta) {
        lo *= 2.0;
        if (lo < lo_cap) {
            lo = lo_cap;
            break;
        }
    }
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        if (tilted_mean_distortion(spec, mid) > target_delta)
            hi = mid;
        else
            lo = mid;
    }
    return uniform_rd_point(spec, 0.5 * (lo + hi)).rate;
}

/// Result of one Blahut-Arimoto solve: the achieved (beta, delta, rate), the
/// conditional reproduction kernel q(j|i) row-major, and iteration metadata.
struct BAResult {
    RDPoint point;
    std::vector<double> kernel;
    int iterations = 0;
    double objective_max_increase = 0.0;  // 0 means the tilted objective never rose
    double certified_gap = 0.0;           // upper bound on the objective suboptimality
};

/// Blahut-Arimoto at fixed slope beta <= 0 over the full group as
/// reproduction alphabet. Alternates
///   q(j|i) proportional to r_j exp(beta d(i,j)),   r_j <- sum_i P_i q(j|i)
/// from the uniform reproduction marginal. The tilted objective
///   F(r) = -sum_i P_i log sum_j r_j exp(beta d(i,j))
/// is nonincreasing along the iteration; stops when the rate changes by less
/// than tol. Zero-mass reproduction symbols are kept throughout.
///
/// The update ratios certify optimality: by convexity of F,
///   F(r) - F* <= max_j (r'_j / r_j) - 1,
/// and the achieved rate exceeds the true curve at its own delta by at most
/// that gap. When gap_tol > 0 the iteration also stops once the certificate
/// drops below it, which cuts off the slow O(1/t) tail of instances whose
/// optimal reproduction marginal sits on the boundary.
inline BAResult blahut_arimoto(const GroupDistribution& p, const DistortionSpec& spec,
                               double beta, double tol = 1e-10, int max_iter = 100000,
                               double gap_tol = 0.0) {
    if (spec.is_circle()) throw ProfileInvalid("blahut_arimoto needs a finite spec");
    if (!same_group(p.group(), spec.group()))
        throw GroupMismatch("distortion spec uses a different group");
    if (beta > 0.0) throw Error("blahut_arimoto: beta must be <= 0");
    if (!(tol > 0.0)) throw Error("blahut_arimoto: tol must be positive");

    const int n = p.order();
    std::vector<double> expd(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            expd[static_cast<size_t>(i) * n + j] = std::exp(beta * spec.distortion(i, j));

    std::vector<double> r(n, 1.0 / n), rnext(n), q(static_cast<size_t>(n) * n);
    double prev_rate = std::numeric_limits<double>::infinity();
    double prev_obj = std::numeric_limits<double>::infinity();
    BAResult out;

    for (int iter = 1; iter <= max_iter; ++iter) {
        double objective = 0.0;
        std::fill(rnext.begin(), rnext.end(), 0.0);
        for (int i = 0; i < n; ++i) {
            const double pi = p.mass(i);
            double s = 0.0;
            const double* row = &expd[static_cast<size_t>(i) * n];
            for (int j = 0; j < n; ++j) s += r[j] * row[j];
            if (pi > 0.0) objective -= pi * std::log(s);
            double* qrow = &q[static_cast<size_t>(i) * n];
            for (int j = 0; j < n; ++j) {
                qrow[j] = r[j] * row[j] / s;
                rnext[j] += pi * qrow[j];
            }
        }
        if (objective > prev_obj)
            out.objective_max_increase =
                std::max(out.objective_max_increase, objective - prev_obj);
        prev_obj = objective;

        double gap = 0.0;
        for (int j = 0; j < n; ++j)
            if (r[j] > 0.0) gap = std::max(gap, rnext[j] / r[j] - 1.0);

        double rate = 0.0, delta = 0.0;
        for (int i = 0; i < n; ++i) {
            const double pi = p.mass(i);
            if (pi == 0.0) continue;
            const double* qrow = &q[static_cast<size_t>(i) * n];
            for (int j = 0; j < n; ++j) {
                if (qrow[j] > 0.0 && rnext[j] > 0.0)
                    rate += pi * qrow[j] * std::log(qrow[j] / rnext[j]);
                delta += pi * qrow[j] * spec.distortion(i, j);
            }
        }
        r = rnext;
        out.iterations = iter;
        out.point = RDPoint{beta, delta, std::max(rate, 0.0)};
        out.certified_gap = gap;
        if (std::abs(rate - prev_rate) < tol || (gap_tol > 0.0 && gap < gap_tol)) {
            out.kernel = q;
            return out;
        }
        prev_rate = rate;
    }
    throw NoConvergence(beta, out.point.delta);
}

inline bool is_uniform_distribution(const GroupDistribution& p, double tol = 1e-14) {
    const double u = 1.0 / p.order();
    for (int g = 0; g < p.order(); ++g)
        if (std::abs(p.mass(g) - u) > tol) return false;
    return true;
}

/// Rate-distortion curve over a sorted grid of slopes beta <= 0. Exactly
/// uniform sources take the closed form; everything else runs one
/// Blahut-Arimoto solve per grid point.
inline RDCurve rd_curve(const GroupDistribution& p, const DistortionSpec& spec,
                        const std::vector<double>& beta_grid, double tol = 1e-10,
                        int max_iter = 100000) {
    RDCurve curve;
    const bool closed_form = is_uniform_distribution(p);
    for (double beta : beta_grid) {
        if (beta > 0.0) throw Error("rd_curve: beta grid must be <= 0");
        curve.points.push_back(closed_form ? uniform_rd_point(spec, beta)
                                           : blahut_arimoto(p, spec, beta, tol, max_iter).point);
    }
    return curve;
}

/// One row of the sandwich report: the bound
///   R_U(delta) - D(P||U) <= R_P(delta) <= R_U(delta)
/// evaluated at the distortion the solver reached for this beta. R_U is
/// evaluated exactly at the same delta via uniform_rate_at_delta.
struct SandwichRow {
    double beta = 0.0;
    double delta = 0.0;
    double rate_p = 0.0;
    double rate_u = 0.0;
    double lower = 0.0;  // max(0, rate_u - divergence)
    bool violated = false;
};

struct SandwichReport {
    std::vector<SandwichRow> rows;
    double divergence = 0.0;
    int violations = 0;
    double eps = 1e-6;
};

inline SandwichReport sandwich_check(const GroupDistribution& p, const DistortionSpec& spec,
                                     const std::vector<double>& beta_grid, double eps = 1e-6) {
    SandwichReport report;
    report.eps = eps;
    GroupDistribution u = GroupDistribution::uniform(p.group());
    report.divergence = divergence(p, u);
    if (std::isinf(report.divergence))
        throw PreconditionFailed("sandwich_check: divergence(P,U) must be finite");
    for (double beta : beta_grid) {
        const BAResult ba = blahut_arimoto(p, spec, beta, 1e-10, 400000, eps / 10.0);
        SandwichRow row;
        row.beta = beta;
        row.delta = ba.point.delta;
        row.rate_p = ba.point.rate;
        row.rate_u = row.delta > 0.0 ? uniform_rate_at_delta(spec, row.delta)
                                     : std::log(static_cast<double>(p.order()));
        row.lower = std::max(0.0, row.rate_u - report.divergence);
        row.violated = row.rate_p > row.rate_u + eps || row.rate_p < row.lower - eps;
        if (row.violated) ++report.violations;
        report.rows.push_back(row);
    }
    return report;
}

}  // namespace haarkit
