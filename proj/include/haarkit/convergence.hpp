#pragma once

#include <cmath>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "haarkit/fourier.hpp"
#include "haarkit/measure.hpp"
#include "haarkit/rate_distortion.hpp"

namespace haarkit {

/// Per-n record of a convolution-power experiment: divergence and total
/// variation to the uniform distribution, the minimum of the density
/// dP^(*n)/dU, and optionally the transport distance to uniform.
struct ConvergenceSeries {
    std::vector<int> n_values;
    std::vector<double> divergence;
    std::vector<double> tv;
    std::vector<double> min_density;
    std::vector<double> transport;  // empty when no distortion spec was given
    bool has_transport = false;
};

enum class Obstruction { converges, subgroup_supported, coset_supported };

/// Where the support of P sits: the full group (convolutions converge to
/// uniform), a proper subgroup, or a coset of one (periodic behavior).
struct ObstructionReport {
    Obstruction verdict = Obstruction::converges;
    std::optional<Subgroup> subgroup;
    std::optional<int> coset_rep;
    std::optional<int> period;
};

namespace detail {

inline bool is_normal_subgroup(const GroupPtr& g, const Subgroup& f) {
    for (int x = 0; x < g->order(); ++x) {
        const int xinv = g->inverse(x);
        for (int m : f.members)
            if (!f.contains(g->compose(g->compose(x, m), xinv))) return false;
    }
    return true;
}

/// Product set A*B inside the group.
inline std::set<int> product_set(const GroupPtr& g, const std::set<int>& a,
                                 const std::set<int>& b) {
    std::set<int> out;
    for (int x : a)
        for (int y : b) out.insert(g->compose(x, y));
    return out;
}

}  // namespace detail

/// Identifies the minimal coset x0*F containing the support of P, where F is
/// the closure of x0^-1 * support. F = G means convolutions can converge to
/// uniform; x0 in F means P lives on the proper subgroup F; otherwise P is
/// coset-supported and the support sets of P^(*n) cycle with the reported
/// period.
inline ObstructionReport detect_obstruction(const GroupDistribution& p) {
    const GroupPtr& g = p.group();
    const std::vector<int> sup = p.support();
    if (sup.empty()) throw Error("detect_obstruction: empty support");
    const int x0 = sup.front();
    const int x0inv = g->inverse(x0);
    std::vector<int> shifted;
    shifted.reserve(sup.size());
    for (int s : sup) shifted.push_back(g->compose(x0inv, s));
    Subgroup f = subgroup_closure(g, shifted);

    ObstructionReport report;
    if (f.size() == g->order()) {
        report.verdict = Obstruction::converges;
        return report;
    }
    report.subgroup = f;
    if (f.contains(x0)) {
        report.verdict = Obstruction::subgroup_supported;
        return report;
    }
    report.verdict = Obstruction::coset_supported;
    report.coset_rep = x0;

    if (detail::is_normal_subgroup(g, f)) {
        // order of the coset x0*F in G/F
        int t = 1, acc = x0;
        while (!f.contains(acc)) {
            acc = g->compose(acc, x0);
            ++t;
        }
        report.period = t;
    } else {
        // iterate support sets S_{k+1} = S_k * S until a repeat
        std::set<int> s1(sup.begin(), sup.end());
        std::set<int> cur = s1;
        std::map<std::set<int>, int> seen{{cur, 1}};
        for (int k = 2; k <= 2 * g->order() + 2; ++k) {
            cur = detail::product_set(g, cur, s1);
            auto [it, fresh] = seen.emplace(cur, k);
            if (!fresh) {
                report.period = k - it->second;
                break;
            }
        }
    }
    return report;
}

/// Convolves step by step (not by squaring) so every intermediate power is
/// recorded: divergence, total variation, minimum density, and the transport
/// distance to uniform when a distortion spec is supplied.
inline ConvergenceSeries run_series(const GroupDistribution& p, int n_max,
                                    const std::optional<DistortionSpec>& spec = std::nullopt) {
    if (n_max < 1) throw Error("run_series: N must be >= 1");
    ConvergenceSeries out;
    out.has_transport = spec.has_value();
    GroupDistribution u = GroupDistribution::uniform(p.group());
    GroupDistribution cur = p;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) cur = convolve(cur, p);
        out.n_values.push_back(n);
        out.divergence.push_back(divergence(cur, u));
        out.tv.push_back(total_variation(cur, u));
        out.min_density.push_back(cur.min_density());
        if (spec) out.transport.push_back(transport_distance(cur, u, *spec).value);
    }
    return out;
}

/// Divergence of the n-fold convolution of a Fourier density, both by exact
/// quadrature and by the printed quadratic formula (1/2) sum a_k^2.
struct FourierSeries {
    std::vector<int> n_values;
    std::vector<double> exact;
    std::vector<double> quadratic;
};

inline FourierSeries run_series_fourier(const FourierDensity& a, int n_max) {
    if (n_max < 1) throw Error("run_series_fourier: N must be >= 1");
    FourierSeries out;
    for (int n = 1; n <= n_max; ++n) {
        FourierDensity an = n_fold_fourier(a, n);
        out.n_values.push_back(n);
        out.exact.push_back(divergence_exact(an));
        out.quadratic.push_back(divergence_quadratic(an));
    }
    return out;
}

/// Least-squares fit of log divergence against n over the window
/// [burn_in, last entry above the floor]. rho = exp(slope) is the per-step
/// decay factor; flat is set when the series does not decay.
struct RateFit {
    double rho = 1.0;
    double r2 = 1.0;
    bool flat = false;
    int points_used = 0;
};

inline RateFit fit_rate(const std::vector<int>& n_values,
                        const std::vector<double>& divergence_series, int burn_in,
                        double floor = 1e-300) {
    std::vector<double> xs, ys;
    for (size_t i = 0; i < n_values.size(); ++i) {
        if (n_values[i] < burn_in) continue;
        if (!(divergence_series[i] > floor)) break;
        xs.push_back(n_values[i]);
        ys.push_back(std::log(divergence_series[i]));
    }
    if (xs.size() < 5) throw InsufficientData("fit_rate: need >= 5 usable entries");
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    const double slope = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    const double intercept = (sy - slope * sx) / n;
    double ss_res = 0, ss_tot = 0;
    const double ymean = sy / n;
    for (size_t i = 0; i < xs.size(); ++i) {
        const double fit = intercept + slope * xs[i];
        ss_res += (ys[i] - fit) * (ys[i] - fit);
        ss_tot += (ys[i] - ymean) * (ys[i] - ymean);
    }
    RateFit out;
    out.rho = std::exp(slope);
    out.r2 = ss_tot > 1e-30 ? 1.0 - ss_res / ss_tot : 1.0;
    out.flat = std::abs(slope) < 1e-9;
    out.points_used = static_cast<int>(xs.size());
    return out;
}

inline RateFit fit_rate(const ConvergenceSeries& s, int burn_in, double floor = 1e-300) {
    return fit_rate(s.n_values, s.divergence, burn_in, floor);
}

inline RateFit fit_rate(const FourierSeries& s, int burn_in, double floor = 1e-300) {
    return fit_rate(s.n_values, s.exact, burn_in, floor);
}

/// Checks D(P^(*n)||U) <= (1-c)^(n-1) D(P||U) with c = min dP/dU, for
/// n = 1..N. Requires c > 0 (the bound is vacuous otherwise).
struct DecayBoundReport {
    double c = 0.0;
    std::vector<int> n_values;
    std::vector<double> divergence;
    std::vector<double> bound;
    std::vector<double> margin;  // bound - divergence
    bool holds = true;
};

inline DecayBoundReport decay_bound_check(const GroupDistribution& p, int n_max,
                                          double slack = 1e-12) {
    DecayBoundReport report;
    report.c = p.min_density();
    if (!(report.c > 0.0))
        throw PreconditionFailed("decay_bound_check: min density must be positive");
    GroupDistribution u = GroupDistribution::uniform(p.group());
    const double d1 = divergence(p, u);
    GroupDistribution cur = p;
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) cur = convolve(cur, p);
        const double d = divergence(cur, u);
        const double bound = std::pow(1.0 - report.c, n - 1) * d1;
        report.n_values.push_back(n);
        report.divergence.push_back(d);
        report.bound.push_back(bound);
        report.margin.push_back(bound - d);
        if (d > bound + slack) report.holds = false;
    }
    return report;
}

/// The 1-bit floor: when D(P||U) < log 2, the density of P*P is bounded
/// below by max over attained density levels eps of 2 eps^2 (U{dP/dU >= eps} - 1/2).
/// The boundary case D = log 2 is reported with applicable = false rather
/// than thrown, since its values (zero floor, zero min density) are the
/// sharpness witness.
struct OneBitReport {
    double divergence_nats = 0.0;
    double epsilon = 0.0;
    double floor = 0.0;
    double min_density_pp = 0.0;
    bool applicable = false;
    bool holds = false;
};

inline OneBitReport one_bit_floor_check(const GroupDistribution& p) {
    OneBitReport report;
    GroupDistribution u = GroupDistribution::uniform(p.group());
    report.divergence_nats = divergence(p, u);
    report.applicable = report.divergence_nats < std::log(2.0);

    const int n = p.order();
    std::vector<double> density(n);
    for (int g = 0; g < n; ++g) density[g] = p.mass(g) * n;
    std::set<double> levels(density.begin(), density.end());
    for (double eps : levels) {
        if (eps <= 0.0) continue;
        int count = 0;
        for (double v : density)
            if (v >= eps) ++count;
        const double floor = 2.0 * eps * eps * (static_cast<double>(count) / n - 0.5);
        if (floor > report.floor) {
            report.floor = floor;
            report.epsilon = eps;
        }
    }
    report.min_density_pp = convolve(p, p).min_density();
    report.holds =
        report.applicable && report.floor > 0.0 && report.min_density_pp >= report.floor - 1e-12;
    return report;
}

/// Fraction of the group where |dP^(*n)/dU - 1| >= eps, together with the
/// Markov bound tv/eps it must respect.
struct PointwiseRow {
    int n = 0;
    double fraction = 0.0;
    double bound = 0.0;  // tv / eps
};

inline std::vector<PointwiseRow> pointwise_density_check(const GroupDistribution& p, int n_max,
                                                         double eps) {
    if (!(eps > 0.0)) throw Error("pointwise_density_check: eps must be positive");
    std::vector<PointwiseRow> rows;
    GroupDistribution u = GroupDistribution::uniform(p.group());
    GroupDistribution cur = p;
    const int order = p.order();
    for (int n = 1; n <= n_max; ++n) {
        if (n > 1) cur = convolve(cur, p);
        int violating = 0;
        for (int g = 0; g < order; ++g)
            if (std::abs(cur.mass(g) * order - 1.0) >= eps) ++violating;
        rows.push_back(PointwiseRow{n, static_cast<double>(violating) / order,
                                    total_variation(cur, u) / eps});
    }
    return rows;
}

/// Sup over the beta grid of |R_{P^(*n)} - R_U| at matched distortion, per n.
/// By the sandwich bound this gap is at most D(P^(*n)||U) up to solver
/// tolerance, so it squeezes to zero exactly when the divergence does.
struct RdGapRow {
    int n = 0;
    double sup_gap = 0.0;
    double divergence = 0.0;
};

inline std::vector<RdGapRow> rd_convergence_check(const GroupDistribution& p,
                                                  const DistortionSpec& spec,
                                                  const std::vector<double>& beta_grid,
                                                  const std::vector<int>& n_list) {
    std::vector<RdGapRow> rows;
    GroupDistribution u = GroupDistribution::uniform(p.group());
    for (int n : n_list) {
        GroupDistribution pn = n_fold(p, n);
        RdGapRow row;
        row.n = n;
        row.divergence = divergence(pn, u);
        for (double beta : beta_grid) {
            const BAResult ba = blahut_arimoto(pn, spec, beta, 1e-10, 400000, 1e-7);
            const double ru = ba.point.delta > 0.0
                                  ? uniform_rate_at_delta(spec, ba.point.delta)
                                  : std::log(static_cast<double>(p.order()));
            row.sup_gap = std::max(row.sup_gap, std::abs(ba.point.rate - ru));
        }
        rows.push_back(row);
    }
    return rows;
}

}  // namespace haarkit
