#pragma once

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "haarkit/group.hpp"

namespace haarkit {

inline constexpr double kDistEqTolerance = 1e-10;  // equality-of-distributions checks

/// A probability distribution on a finite group. Mass is renormalized at
/// construction (so the total is 1 up to rounding, well inside 1e-12);
/// entries must be non-negative. Immutable value type.
class GroupDistribution {
public:
    GroupDistribution(GroupPtr group, std::vector<double> mass)
        : group_(std::move(group)), mass_(std::move(mass)) {
        if (!group_) throw InvalidDistribution("null group");
        if (static_cast<int>(mass_.size()) != group_->order())
            throw InvalidDistribution("mass length must equal group order");
        double sum = 0.0;
        for (double m : mass_) {
            if (!(m >= 0.0)) throw InvalidDistribution("negative or NaN mass entry");
            sum += m;
        }
        if (sum <= 0.0) throw InvalidDistribution("total mass must be positive");
        if (sum != 1.0)
            for (double& m : mass_) m /= sum;
    }

    static GroupDistribution uniform(const GroupPtr& g) {
        return GroupDistribution(g, std::vector<double>(g->order(), 1.0));
    }

    static GroupDistribution point_mass(const GroupPtr& g, int at) {
        std::vector<double> m(g->order(), 0.0);
        m.at(at) = 1.0;
        return GroupDistribution(g, std::move(m));
    }

    static GroupDistribution uniform_on(const GroupPtr& g, const std::vector<int>& support) {
        std::vector<double> m(g->order(), 0.0);
        for (int s : support) m.at(s) = 1.0;
        return GroupDistribution(g, std::move(m));
    }

    const GroupPtr& group() const { return group_; }
    int order() const { return group_->order(); }
    double mass(int g) const { return mass_[g]; }
    const std::vector<double>& masses() const { return mass_; }

    std::vector<int> support() const {
        std::vector<int> s;
        for (int g = 0; g < order(); ++g)
            if (mass_[g] > 0.0) s.push_back(g);
        return s;
    }

    /// min over g of dP/dU(g) = order * P(g).
    double min_density() const {
        double m = std::numeric_limits<double>::infinity();
        for (double v : mass_) m = std::min(m, v);
        return m * order();
    }

private:
    GroupPtr group_;
    std::vector<double> mass_;
};

inline void require_same_group(const GroupDistribution& p, const GroupDistribution& q) {
    if (!same_group(p.group(), q.group()))
        throw GroupMismatch("distributions live on different groups");
}

/// Kullback-Leibler divergence in nats, with 0 log 0 = 0 and +inf when P is
/// not absolutely continuous w.r.t. Q.
inline double divergence(const GroupDistribution& p, const GroupDistribution& q) {
    require_same_group(p, q);
    double acc = 0.0;
    for (int g = 0; g < p.order(); ++g) {
        const double pi = p.mass(g);
        if (pi <= 0.0) continue;
        const double qi = q.mass(g);
        if (qi <= 0.0) return std::numeric_limits<double>::infinity();
        acc += pi * std::log(pi / qi);
    }
    return acc;
}

/// Divergence to the uniform distribution, the paper's D(P).
inline double divergence_to_uniform(const GroupDistribution& p) {
    double acc = 0.0;
    const double n = static_cast<double>(p.order());
    for (int g = 0; g < p.order(); ++g) {
        const double pi = p.mass(g);
        if (pi > 0.0) acc += pi * std::log(pi * n);
    }
    return acc;
}

/// L1 distance sum |P - Q|, in [0, 2].
inline double total_variation(const GroupDistribution& p, const GroupDistribution& q) {
    require_same_group(p, q);
    double acc = 0.0;
    for (int g = 0; g < p.order(); ++g) acc += std::abs(p.mass(g) - q.mass(g));
    return acc;
}

/// (P*Q)(g) = sum_h P(g*h^-1) Q(h), so that point masses compose as the group
/// does and translate(g, P) = convolve(point_mass(g), P).
inline GroupDistribution convolve(const GroupDistribution& p, const GroupDistribution& q) {
    require_same_group(p, q);
    const auto& grp = *p.group();
    const int n = grp.order();
    std::vector<double> out(n, 0.0);
    for (int h = 0; h < n; ++h) {
        const double qh = q.mass(h);
        if (qh == 0.0) continue;
        const int hinv = grp.inverse(h);
        for (int g = 0; g < n; ++g) out[g] += p.mass(grp.compose(g, hinv)) * qh;
    }
    return GroupDistribution(p.group(), std::move(out));
}

/// Left translation: (g*P)(x) = P(g^-1 * x).
inline GroupDistribution translate(int g, const GroupDistribution& p) {
    const auto& grp = *p.group();
    const int ginv = grp.inverse(g);
    std::vector<double> out(grp.order());
    for (int x = 0; x < grp.order(); ++x) out[x] = p.mass(grp.compose(ginv, x));
    return GroupDistribution(p.group(), std::move(out));
}

/// n-fold convolution power by repeated squaring.
inline GroupDistribution n_fold(const GroupDistribution& p, int n) {
    if (n < 1) throw Error("n_fold: n must be >= 1");
    if (n == 1) return p;
    GroupDistribution half = n_fold(p, n / 2);
    GroupDistribution sq = convolve(half, half);
    return (n % 2 == 0) ? sq : convolve(sq, p);
}

struct HaarReport {
    bool is_haar = false;
    bool translation_invariant = false;
    bool idempotent = false;
    bool full_support = false;
    std::string evidence;  // first violated condition, empty when Haar
};

/// Tests whether P is the Haar (uniform) measure, within 1e-10: checks
/// translation invariance for every g and reports the equivalent
/// idempotency-plus-full-support route alongside.
inline HaarReport haar_check(const GroupDistribution& p) {
    HaarReport r;
    const auto& grp = *p.group();
    const int n = grp.order();

    r.translation_invariant = true;
    for (int g = 0; g < n && r.translation_invariant; ++g) {
        const int ginv = grp.inverse(g);
        for (int x = 0; x < n; ++x) {
            if (std::abs(p.mass(grp.compose(ginv, x)) - p.mass(x)) > kDistEqTolerance) {
                r.translation_invariant = false;
                r.evidence = "not invariant under translation by " + grp.label(g);
                break;
            }
        }
    }

    r.full_support = true;
    for (int g = 0; g < n; ++g)
        if (p.mass(g) <= 0.0) {
            r.full_support = false;
            break;
        }
    GroupDistribution pp = convolve(p, p);
    r.idempotent = true;
    for (int g = 0; g < n; ++g)
        if (std::abs(pp.mass(g) - p.mass(g)) > kDistEqTolerance) {
            r.idempotent = false;
            break;
        }

    r.is_haar = r.translation_invariant;
    if (!r.is_haar && r.evidence.empty()) {
        if (r.idempotent && !r.full_support)
            r.evidence = "idempotent but lacks full support";
        else
            r.evidence = "not idempotent";
    }
    return r;
}

/// Uniform mass 1/|F| on the left coset rep*F. Its divergence to uniform is
/// log of the index of F.
inline GroupDistribution uniform_on_coset(const GroupPtr& g, const Subgroup& f, int rep) {
    if (!same_group(g, f.parent)) throw GroupMismatch("subgroup belongs to another group");
    std::vector<int> coset;
    coset.reserve(f.members.size());
    for (int m : f.members) coset.push_back(g->compose(rep, m));
    return GroupDistribution::uniform_on(g, coset);
}

/// Residual |LHS - RHS| of the compensation identity
///   sum_x w(x) D(P_x || R) = D(Pbar || R) + sum_x w(x) D(P_x || Pbar)
/// with Pbar the w-mixture of the family. Throws InfiniteTerm when the left
/// side is infinite.
inline double compensation_identity_residual(const std::vector<GroupDistribution>& family,
                                             const std::vector<double>& weights,
                                             const GroupDistribution& reference) {
    if (family.empty() || family.size() != weights.size())
        throw Error("compensation: family and weights must match and be nonempty");
    double wsum = 0.0;
    for (double w : weights) {
        if (!(w >= 0.0)) throw Error("compensation: negative weight");
        wsum += w;
    }
    if (wsum <= 0.0) throw Error("compensation: zero total weight");

    const int n = reference.order();
    std::vector<double> mix(n, 0.0);
    double lhs = 0.0;
    for (size_t x = 0; x < family.size(); ++x) {
        require_same_group(family[x], reference);
        const double w = weights[x] / wsum;
        if (w == 0.0) continue;
        const double d = divergence(family[x], reference);
        if (std::isinf(d)) throw InfiniteTerm("D(P_x||reference) is infinite");
        lhs += w * d;
        for (int g = 0; g < n; ++g) mix[g] += w * family[x].mass(g);
    }
    GroupDistribution mixture(reference.group(), std::move(mix));
    double rhs = divergence(mixture, reference);
    for (size_t x = 0; x < family.size(); ++x) {
        const double w = weights[x] / wsum;
        if (w > 0.0) rhs += w * divergence(family[x], mixture);
    }
    return std::abs(lhs - rhs);
}

/// The paper's self-indexed form: the family is indexed by the group
/// elements and Q provides both the mixing weights and the reference.
inline double compensation_identity_residual(const std::vector<GroupDistribution>& family,
                                             const GroupDistribution& q) {
    if (static_cast<int>(family.size()) != q.order())
        throw Error("compensation: family must be indexed by the group elements");
    return compensation_identity_residual(family, q.masses(), q);
}

}  // namespace haarkit
