#pragma once

#include <cmath>
#include <numbers>
#include <vector>

#include "haarkit/measure.hpp"

namespace haarkit {

/// Squared Euclidean distance between points on the unit circle at angles
/// x and y: 4 sin^2((x-y)/2) = 2 - 2 cos(x-y). Range [0, 4].
inline double so2_distortion(double x, double y) { return 2.0 - 2.0 * std::cos(x - y); }

inline constexpr double kSo2DMax = 4.0;
inline constexpr double kSo2DCrit = 2.0;

/// A right-invariant distortion d(x,y) = d0(x*y^-1), determined by the
/// one-argument profile d0(g) = d(g,e) with d0(e) = 0 and d0(g) > 0 off the
/// identity. Either a finite-group profile or the SO(2) squared-Euclidean
/// distortion (the circle case carries no table; partition functions use the
/// Bessel closed form and transport goes through discretization).
class DistortionSpec {
public:
    static DistortionSpec so2() {
        DistortionSpec s;
        s.circle_ = true;
        return s;
    }

    static DistortionSpec from_profile(GroupPtr g, std::vector<double> d0) {
        if (!g) throw ProfileInvalid("null group");
        if (static_cast<int>(d0.size()) != g->order())
            throw ProfileInvalid("profile length must equal group order");
        for (int i = 0; i < g->order(); ++i) {
            if (i == g->identity()) {
                if (d0[i] != 0.0) throw ProfileInvalid("d0(e) must be 0");
            } else if (!(d0[i] > 0.0)) {
                throw ProfileInvalid("d0(g) must be positive for g != e");
            }
        }
        DistortionSpec s;
        s.group_ = std::move(g);
        s.profile_ = std::move(d0);
        return s;
    }

    /// The sampled circle distortion 2 - 2 cos(2 pi k / n) on cyclic(n).
    static DistortionSpec cosine_cyclic(int n) {
        GroupPtr g = cyclic(n);
        std::vector<double> d0(n);
        for (int k = 0; k < n; ++k) d0[k] = 2.0 - 2.0 * std::cos(kTwoPiLocal * k / n);
        d0[0] = 0.0;
        return from_profile(std::move(g), std::move(d0));
    }

    /// 0 at the identity and 1 everywhere else.
    static DistortionSpec hamming(GroupPtr g) {
        std::vector<double> d0(g->order(), 1.0);
        d0[g->identity()] = 0.0;
        return from_profile(std::move(g), std::move(d0));
    }

    bool is_circle() const { return circle_; }
    const GroupPtr& group() const { return group_; }
    const std::vector<double>& profile() const { return profile_; }

    double d0(int g) const { return profile_[g]; }

    /// d(i,j) = d0(g_i * g_j^-1).
    double distortion(int i, int j) const {
        return profile_[group_->compose(i, group_->inverse(j))];
    }

    double d_max() const {
        if (circle_) return kSo2DMax;
        double m = 0.0;
        for (double v : profile_) m = std::max(m, v);
        return m;
    }

    /// Mean distortion to the identity under the uniform distribution; the
    /// distortion reached at zero rate.
    double d_crit() const {
        if (circle_) return kSo2DCrit;
        double s = 0.0;
        for (double v : profile_) s += v;
        return s / profile_.size();
    }

private:
    static constexpr double kTwoPiLocal = 2.0 * std::numbers::pi;
    bool circle_ = false;
    GroupPtr group_;
    std::vector<double> profile_;
};

/// Full cost matrix, row-major: matrix[i][j] = d0(g_i * g_j^-1). Every row
/// and column is a permutation of the profile values.
inline std::vector<double> distortion_matrix(const DistortionSpec& spec) {
    if (spec.is_circle()) throw ProfileInvalid("distortion_matrix needs a finite spec");
    const int n = spec.group()->order();
    std::vector<double> m(static_cast<size_t>(n) * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[static_cast<size_t>(i) * n + j] = spec.distortion(i, j);
    return m;
}

/// A joint distribution with marginals P (rows) and Q (columns) and its
/// expected distortion.
struct Coupling {
    int rows = 0, cols = 0;
    std::vector<double> joint;  // row-major
    double cost = 0.0;

    double at(int i, int j) const { return joint[static_cast<size_t>(i) * cols + j]; }
};

struct TransportResult {
    double value = 0.0;
    Coupling coupling;
};

namespace detail {

/// Exact transportation simplex (u-v method) on the dense bipartite instance.
/// Basis kept as a spanning tree over row and column nodes; Bland's rule on
/// entering and leaving cells prevents cycling on degenerate instances.
class TransportSimplex {
public:
    TransportSimplex(const std::vector<double>& supply, const std::vector<double>& demand,
                     const std::vector<double>& cost)
        : m_(static_cast<int>(supply.size())), n_(static_cast<int>(demand.size())),
          cost_(cost), flow_(static_cast<size_t>(m_) * n_, 0.0),
          basic_(static_cast<size_t>(m_) * n_, false) {
        northwest_corner(supply, demand);
    }

    void solve() {
        const double tol = 1e-11;
        const int cap = 2000000;
        for (int iter = 0; iter < cap; ++iter) {
            compute_duals();
            int ei = -1, ej = -1;
            for (int i = 0; i < m_ && ei < 0; ++i)
                for (int j = 0; j < n_; ++j)
                    if (!basic_[idx(i, j)] && cost_[idx(i, j)] - u_[i] - v_[j] < -tol) {
                        ei = i;
                        ej = j;
                        break;
                    }
            if (ei < 0) return;  // optimal
            pivot(ei, ej);
        }
        throw Error("transport solver stalled");
    }

    double objective() const {
        double acc = 0.0;
        for (size_t k = 0; k < flow_.size(); ++k) acc += flow_[k] * cost_[k];
        return acc;
    }
    const std::vector<double>& flow() const { return flow_; }

private:
    size_t idx(int i, int j) const { return static_cast<size_t>(i) * n_ + j; }

    void northwest_corner(std::vector<double> a, std::vector<double> b) {
        int i = 0, j = 0;
        while (true) {
            const double theta = std::min(a[i], b[j]);
            flow_[idx(i, j)] = theta;
            basic_[idx(i, j)] = true;
            a[i] -= theta;
            b[j] -= theta;
            if (i == m_ - 1 && j == n_ - 1) break;
            if (i < m_ - 1 && (a[i] <= b[j] || j == n_ - 1))
                ++i;
            else
                ++j;
        }
    }

    // Duals from u_0 = 0 across the basis tree.
    void compute_duals() {
        u_.assign(m_, 0.0);
        v_.assign(n_, 0.0);
        std::vector<char> udone(m_, 0), vdone(n_, 0);
        udone[0] = 1;
        std::vector<int> stack{0};  // rows as 0..m-1, cols as m..m+n-1
        while (!stack.empty()) {
            const int node = stack.back();
            stack.pop_back();
            if (node < m_) {
                const int i = node;
                for (int j = 0; j < n_; ++j)
                    if (basic_[idx(i, j)] && !vdone[j]) {
                        v_[j] = cost_[idx(i, j)] - u_[i];
                        vdone[j] = 1;
                        stack.push_back(m_ + j);
                    }
            } else {
                const int j = node - m_;
                for (int i = 0; i < m_; ++i)
                    if (basic_[idx(i, j)] && !udone[i]) {
                        u_[i] = cost_[idx(i, j)] - v_[j];
                        udone[i] = 1;
                        stack.push_back(i);
                    }
            }
        }
    }

    /// Unique cycle created by the entering cell: walk the basis tree from
    /// column ej back to row ei, alternate signs, shift by the smallest
    /// minus-flow and swap the entering and leaving cells.
    void pivot(int ei, int ej) {
        const int nodes = m_ + n_;
        std::vector<int> parent(nodes, -2);
        parent[ei] = -1;
        std::vector<int> queue{ei};
        for (size_t head = 0; head < queue.size() && parent[m_ + ej] == -2; ++head) {
            const int node = queue[head];
            if (node < m_) {
                for (int j = 0; j < n_; ++j)
                    if (basic_[idx(node, j)] && parent[m_ + j] == -2 &&
                        !(node == ei && j == ej)) {
                        parent[m_ + j] = node;
                        queue.push_back(m_ + j);
                    }
            } else {
                const int j = node - m_;
                for (int i = 0; i < m_; ++i)
                    if (basic_[idx(i, j)] && parent[i] == -2) {
                        parent[i] = node;
                        queue.push_back(i);
                    }
            }
        }
        // Path cells from (ei,ej)'s column end back to its row end.
        std::vector<std::pair<int, int>> cycle{{ei, ej}};  // sign alternates from +
        int node = m_ + ej;
        while (parent[node] != -1) {
            const int par = parent[node];
            if (node >= m_)
                cycle.emplace_back(par, node - m_);
            else
                cycle.emplace_back(node, par - m_);
            node = par;
        }
        double theta = std::numeric_limits<double>::infinity();
        int leave = -1;
        for (size_t k = 1; k < cycle.size(); k += 2) {
            const double f = flow_[idx(cycle[k].first, cycle[k].second)];
            if (f < theta - 1e-15 ||
                (std::abs(f - theta) <= 1e-15 &&
                 (leave < 0 || cycle[k] < cycle[leave]))) {
                if (f < theta) theta = f;
                leave = static_cast<int>(k);
            }
        }
        for (size_t k = 0; k < cycle.size(); ++k) {
            double& f = flow_[idx(cycle[k].first, cycle[k].second)];
            f += (k % 2 == 0) ? theta : -theta;
            if (f < 0.0) f = 0.0;
        }
        basic_[idx(ei, ej)] = true;
        basic_[idx(cycle[leave].first, cycle[leave].second)] = false;
        flow_[idx(cycle[leave].first, cycle[leave].second)] = 0.0;
    }

    int m_, n_;
    std::vector<double> cost_;
    std::vector<double> flow_;
    std::vector<char> basic_;
    std::vector<double> u_, v_;
};

}  // namespace detail

/// Minimum expected distortion over couplings of P and Q (the transport
/// distance d(P,Q) for the given right-invariant cost), solved exactly.
/// Instances above order 256 are refused.
inline TransportResult transport_distance(const GroupDistribution& p,
                                          const GroupDistribution& q,
                                          const DistortionSpec& spec) {
    if (spec.is_circle())
        throw ProfileInvalid("transport on the circle goes through discretize()");
    require_same_group(p, q);
    if (!same_group(p.group(), spec.group()))
        throw GroupMismatch("distortion spec uses a different group");
    const int n = p.order();
    if (n > 256) throw SizeLimit("exact transport limited to order 256");

    const std::vector<double> cost = distortion_matrix(spec);
    detail::TransportSimplex simplex(p.masses(), q.masses(), cost);
    simplex.solve();

    TransportResult out;
    out.coupling.rows = out.coupling.cols = n;
    out.coupling.joint = simplex.flow();
    out.coupling.cost = simplex.objective();
    out.value = out.coupling.cost;
    return out;
}

}  // namespace haarkit
