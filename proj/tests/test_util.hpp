#pragma once

// Shared test-side oracles. Everything here recomputes expected values by an
// independent route (direct scans, brute-force enumeration, long-double
// series, trapezoid quadrature) so the library is checked against something
// it does not itself use.

#include <algorithm>
#include <array>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <set>
#include <vector>

#include "haarkit/group.hpp"
#include "haarkit/measure.hpp"

namespace oracle {

/// Full group-axiom scan straight off the table: closure, associativity,
/// identity, inverses. Returns true iff everything holds.
inline bool axiom_scan(const haarkit::GroupPtr& g) {
    const int n = g->order();
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            const int c = g->compose(i, j);
            if (c < 0 || c >= n) return false;
        }
    const int e = g->identity();
    for (int i = 0; i < n; ++i)
        if (g->compose(e, i) != i || g->compose(i, e) != i) return false;
    for (int i = 0; i < n; ++i)
        if (g->compose(i, g->inverse(i)) != e || g->compose(g->inverse(i), i) != e) return false;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (g->compose(g->compose(i, j), k) != g->compose(i, g->compose(j, k)))
                    return false;
    return true;
}

/// First associativity violation in lexicographic (i,j,k) order, or (-1,-1,-1).
inline std::array<int, 3> first_bad_triple(const std::vector<std::vector<int>>& t) {
    const int n = static_cast<int>(t.size());
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                if (t[t[i][j]][k] != t[i][t[j][k]]) return {i, j, k};
    return {-1, -1, -1};
}

/// Multiset of element orders, sorted.
inline std::vector<int> order_census(const haarkit::GroupPtr& g) {
    std::vector<int> out;
    for (int i = 0; i < g->order(); ++i) out.push_back(g->element_order(i));
    std::sort(out.begin(), out.end());
    return out;
}

/// Breadth-first closure of a seed set under products, as a plain set walk
/// (independent of subgroup_closure's worklist).
inline std::set<int> bfs_closure(const haarkit::GroupPtr& g, const std::vector<int>& seed) {
    std::set<int> s(seed.begin(), seed.end());
    s.insert(g->identity());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> snap(s.begin(), s.end());
        for (int a : snap)
            for (int b : snap)
                if (s.insert(g->compose(a, b)).second) grew = true;
        for (int a : std::vector<int>(s.begin(), s.end()))
            if (s.insert(g->inverse(a)).second) grew = true;
    }
    return s;
}

/// Direct double-loop convolution sum, the definitional formula.
inline std::vector<double> direct_convolve(const haarkit::GroupPtr& g,
                                           const std::vector<double>& p,
                                           const std::vector<double>& q) {
    const int n = g->order();
    std::vector<double> out(n, 0.0);
    for (int x = 0; x < n; ++x)
        for (int h = 0; h < n; ++h)
            out[x] += p[g->compose(x, g->inverse(h))] * q[h];
    return out;
}

/// Modified Bessel I_j by long-double power series, >= 30 terms.
inline double bessel_series(int order, double x) {
    const long double q = static_cast<long double>(x) * x / 4.0L;
    long double term = order == 0 ? 1.0L : std::abs(static_cast<long double>(x)) / 2.0L;
    long double sum = term;
    for (int m = 1; m < 400; ++m) {
        term *= q / (static_cast<long double>(m) * (m + order));
        sum += term;
        if (m >= 30 && term < 1e-25L * sum) break;
    }
    double v = static_cast<double>(sum);
    if (order == 1 && x < 0.0) v = -v;
    return v;
}

/// Periodic trapezoid rule over [0, 2pi) with n points, normalized by 1/2pi.
template <typename F>
double circle_mean(const F& fn, int n = 8192) {
    const double two_pi = 2.0 * std::numbers::pi;
    double acc = 0.0;
    for (int j = 0; j < n; ++j) acc += fn(two_pi * j / n);
    return acc / n;
}

/// Exact optimum of a small transportation instance by enumerating all
/// spanning-tree bases (basic feasible solutions) and taking the cheapest
/// feasible one. Practical up to about 4x4.
inline double transport_bruteforce(const std::vector<double>& supply,
                                   const std::vector<double>& demand,
                                   const std::vector<std::vector<double>>& cost) {
    const int m = static_cast<int>(supply.size());
    const int n = static_cast<int>(demand.size());
    const int cells = m * n;
    const int basis_size = m + n - 1;
    double best = std::numeric_limits<double>::infinity();

    std::vector<int> pick(basis_size);
    // enumerate all basis_size-subsets of the cells
    std::function<void(int, int)> rec = [&](int start, int depth) {
        if (depth == basis_size) {
            // leaf-peel the bipartite graph; a unique solution exists iff tree
            std::vector<double> rs = supply, cs = demand;
            std::vector<std::vector<int>> cell_of(m + n);
            for (int c : pick) {
                cell_of[c / n].push_back(c);
                cell_of[m + c % n].push_back(c);
            }
            std::vector<double> flow(basis_size, 0.0);
            std::vector<char> used(basis_size, 0);
            std::vector<int> where(cells, -1);
            for (int k = 0; k < basis_size; ++k) where[pick[k]] = k;

            int resolved = 0;
            bool progress = true;
            while (progress) {
                progress = false;
                for (int node = 0; node < m + n; ++node) {
                    int live = -1, live_count = 0;
                    for (int c : cell_of[node])
                        if (!used[where[c]]) {
                            live = c;
                            ++live_count;
                        }
                    if (live_count == 1) {
                        const int k = where[live];
                        const int i = live / n, j = live % n;
                        flow[k] = (node < m) ? rs[i] : cs[j];
                        rs[i] -= flow[k];
                        cs[j] -= flow[k];
                        used[k] = 1;
                        ++resolved;
                        progress = true;
                    }
                }
            }
            if (resolved != basis_size) return;  // contains a cycle, not a basis
            double total = 0.0;
            for (int k = 0; k < basis_size; ++k) {
                if (flow[k] < -1e-12) return;  // infeasible vertex
                total += flow[k] * cost[pick[k] / n][pick[k] % n];
            }
            best = std::min(best, total);
            return;
        }
        for (int c = start; c <= cells - (basis_size - depth); ++c) {
            pick[depth] = c;
            rec(c + 1, depth + 1);
        }
    };
    rec(0, 0);
    return best;
}

/// Binary entropy in nats.
inline double binary_entropy(double p) {
    double h = 0.0;
    if (p > 0.0) h -= p * std::log(p);
    if (p < 1.0) h -= (1.0 - p) * std::log(1.0 - p);
    return h;
}

}  // namespace oracle
