#pragma once

#include <algorithm>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include "haarkit/errors.hpp"

namespace haarkit {

class FiniteGroup;
using GroupPtr = std::shared_ptr<const FiniteGroup>;

/// A finite group given by its Cayley table. Elements are dense indices
/// 0..order-1; the identity is discovered from the table, never assumed
/// to be index 0. Instances are immutable and shared via GroupPtr.
class FiniteGroup {
public:
    /// Validates a square composition table against all group axioms and
    /// returns the group. Throws NotAGroup with the first failing triple.
    /// Tables above order 512 are rejected (the associativity scan is cubic).
    static GroupPtr from_table(const std::vector<std::vector<int>>& table,
                               std::vector<std::string> labels = {}) {
        const int n = static_cast<int>(table.size());
        if (n == 0) throw NotAGroup("empty table");
        if (n > 512) throw UnsupportedSize("validated tables limited to order 512");
        std::vector<int> flat;
        flat.reserve(static_cast<size_t>(n) * n);
        for (const auto& row : table) {
            if (static_cast<int>(row.size()) != n) throw NotAGroup("table is not square");
            for (int v : row) {
                if (v < 0 || v >= n) throw NotAGroup("entry out of range (closure)");
                flat.push_back(v);
            }
        }
        return finish_build(n, std::move(flat), std::move(labels), /*validate=*/true);
    }

    int order() const { return order_; }
    int identity() const { return identity_; }
    int compose(int a, int b) const { return table_[static_cast<size_t>(a) * order_ + b]; }
    int inverse(int a) const { return inverse_[a]; }
    const std::vector<int>& table() const { return table_; }  // row-major
    const std::vector<std::string>& labels() const { return labels_; }

    std::string label(int g) const {
        if (g >= 0 && g < static_cast<int>(labels_.size()) && !labels_[g].empty())
            return labels_[g];
        return std::to_string(g);
    }

    /// Smallest k >= 1 with g^k = e.
    int element_order(int g) const {
        int k = 1, acc = g;
        while (acc != identity_) {
            acc = compose(acc, g);
            ++k;
        }
        return k;
    }

    bool is_abelian() const {
        for (int a = 0; a < order_; ++a)
            for (int b = a + 1; b < order_; ++b)
                if (compose(a, b) != compose(b, a)) return false;
        return true;
    }

    // Builders for the builtin families live below as free functions; they
    // construct tables that are groups by construction and skip the cubic scan.
    struct Trusted {};
    FiniteGroup(Trusted, int order, std::vector<int> table, int identity,
                std::vector<int> inverse, std::vector<std::string> labels)
        : order_(order), identity_(identity), table_(std::move(table)),
          inverse_(std::move(inverse)), labels_(std::move(labels)) {}

private:
    static GroupPtr finish_build(int n, std::vector<int> flat,
                                 std::vector<std::string> labels, bool validate) {
        auto at = [&](int i, int j) { return flat[static_cast<size_t>(i) * n + j]; };
        // identity
        int e = -1;
        for (int c = 0; c < n && e < 0; ++c) {
            bool ok = true;
            for (int i = 0; i < n && ok; ++i)
                ok = at(c, i) == i && at(i, c) == i;
            if (ok) e = c;
        }
        if (e < 0) throw NotAGroup("no identity element");
        // inverses
        std::vector<int> inv(n, -1);
        for (int i = 0; i < n; ++i) {
            for (int j = 0; j < n; ++j) {
                if (at(i, j) == e && at(j, i) == e) {
                    inv[i] = j;
                    break;
                }
            }
            if (inv[i] < 0) throw NotAGroup("element " + std::to_string(i) + " has no inverse", i);
        }
        if (validate) {
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    for (int k = 0; k < n; ++k)
                        if (at(at(i, j), k) != at(i, at(j, k)))
                            throw NotAGroup("associativity fails", i, j, k);
        }
        return std::make_shared<FiniteGroup>(Trusted{}, n, std::move(flat), e,
                                             std::move(inv), std::move(labels));
    }

    int order_;
    int identity_;
    std::vector<int> table_;
    std::vector<int> inverse_;
    std::vector<std::string> labels_;
};

/// Two handles refer to the same group if they share the object or have
/// identical tables. The factories below cache, so the pointer test is the
/// common path.
inline bool same_group(const GroupPtr& a, const GroupPtr& b) {
    if (a.get() == b.get()) return true;
    if (!a || !b) return false;
    return a->order() == b->order() && a->table() == b->table();
}

namespace detail {
inline GroupPtr cache_lookup(const std::string& key,
                             const std::function<GroupPtr()>& make) {
    static std::mutex mu;
    static std::map<std::string, std::weak_ptr<const FiniteGroup>> cache;
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = cache[key];
    if (auto g = slot.lock()) return g;
    GroupPtr g = make();
    slot = g;
    return g;
}
}  // namespace detail

/// Z_n with table[i][j] = (i+j) mod n. Cached, so repeated calls share one table.
inline GroupPtr cyclic(int n) {
    if (n < 1 || n > 4096) throw UnsupportedSize("cyclic(n) supports 1 <= n <= 4096");
    return detail::cache_lookup("c" + std::to_string(n), [n] {
        std::vector<int> t(static_cast<size_t>(n) * n);
        std::vector<int> inv(n);
        for (int i = 0; i < n; ++i) {
            inv[i] = (n - i) % n;
            for (int j = 0; j < n; ++j) t[static_cast<size_t>(i) * n + j] = (i + j) % n;
        }
        return std::make_shared<FiniteGroup>(FiniteGroup::Trusted{}, n, std::move(t), 0,
                                             std::move(inv), std::vector<std::string>{});
    });
}

/// Dihedral group of order 2n. Element k<n is the rotation x -> x+k,
/// element n+k the reflection x -> k-x on the vertices of the n-gon.
inline GroupPtr dihedral(int n) {
    if (n < 1 || n > 2048) throw UnsupportedSize("dihedral(n) supports 1 <= n <= 2048");
    const int m = 2 * n;
    return detail::cache_lookup("d" + std::to_string(n), [n, m] {
        auto enc = [n](int sign, int k) { return sign > 0 ? k : n + k; };
        std::vector<int> t(static_cast<size_t>(m) * m);
        std::vector<int> inv(m);
        for (int a = 0; a < m; ++a) {
            const int sa = a < n ? 1 : -1;
            const int ka = a < n ? a : a - n;
            inv[a] = sa > 0 ? enc(1, (n - ka) % n) : a;
            for (int b = 0; b < m; ++b) {
                const int sb = b < n ? 1 : -1;
                const int kb = b < n ? b : b - n;
                // (sa,ka)*(sb,kb): x -> ka + sa*(kb + sb*x)
                const int k = ((ka + sa * kb) % n + n) % n;
                t[static_cast<size_t>(a) * m + b] = enc(sa * sb, k);
            }
        }
        return std::make_shared<FiniteGroup>(FiniteGroup::Trusted{}, m, std::move(t), 0,
                                             std::move(inv), std::vector<std::string>{});
    });
}

namespace detail {

inline std::vector<int> compose_perm(const std::vector<int>& f, const std::vector<int>& g) {
    // (f o g)(x) = f(g(x))
    std::vector<int> h(g.size());
    for (size_t x = 0; x < g.size(); ++x) h[x] = f[g[x]];
    return h;
}

/// Closes a set of generator permutations under composition and builds the
/// resulting permutation group (breadth-first).
inline GroupPtr permutation_closure(const std::vector<std::vector<int>>& generators,
                                    std::vector<std::vector<int>>* elements_out,
                                    int max_order) {
    const size_t pts = generators.at(0).size();
    std::vector<int> id(pts);
    std::iota(id.begin(), id.end(), 0);
    std::vector<std::vector<int>> elems{id};
    std::map<std::vector<int>, int> index{{id, 0}};
    for (size_t head = 0; head < elems.size(); ++head) {
        for (const auto& g : generators) {
            auto next = compose_perm(g, elems[head]);
            if (index.emplace(next, static_cast<int>(elems.size())).second) {
                elems.push_back(std::move(next));
                if (static_cast<int>(elems.size()) > max_order)
                    throw UnsupportedSize("permutation closure exceeded bound");
            }
        }
    }
    const int n = static_cast<int>(elems.size());
    std::vector<int> t(static_cast<size_t>(n) * n);
    std::vector<int> inv(n, -1);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            const int c = index.at(compose_perm(elems[a], elems[b]));
            t[static_cast<size_t>(a) * n + b] = c;
            if (c == 0) inv[a] = b;
        }
    if (elements_out) *elements_out = elems;
    return std::make_shared<FiniteGroup>(FiniteGroup::Trusted{}, n, std::move(t), 0,
                                         std::move(inv), std::vector<std::string>{});
}

}  // namespace detail

/// Symmetric group on n symbols (n <= 5, order <= 120), elements in
/// lexicographic order of the permutation words, composition (s*t)(x) = s(t(x)).
inline GroupPtr symmetric(int n) {
    if (n < 1 || n > 5) throw UnsupportedSize("symmetric(n) capped at n=5 (order 120)");
    return detail::cache_lookup("s" + std::to_string(n), [n] {
        std::vector<std::vector<int>> perms;
        std::vector<int> p(n);
        std::iota(p.begin(), p.end(), 0);
        do {
            perms.push_back(p);
        } while (std::next_permutation(p.begin(), p.end()));
        std::map<std::vector<int>, int> index;
        for (size_t i = 0; i < perms.size(); ++i) index[perms[i]] = static_cast<int>(i);
        const int m = static_cast<int>(perms.size());
        std::vector<int> t(static_cast<size_t>(m) * m);
        std::vector<int> inv(m, -1);
        for (int a = 0; a < m; ++a)
            for (int b = 0; b < m; ++b) {
                const int c = index.at(detail::compose_perm(perms[a], perms[b]));
                t[static_cast<size_t>(a) * m + b] = c;
                if (c == 0) inv[a] = b;
            }
        return std::make_shared<FiniteGroup>(FiniteGroup::Trusted{}, m, std::move(t), 0,
                                             std::move(inv), std::vector<std::string>{});
    });
}

/// How a group permutes a finite point set. perm[g] is the permutation
/// applied by element g; perm[g*h] = perm[g] o perm[h].
struct GroupAction {
    GroupPtr group;
    int points = 0;
    std::vector<std::vector<int>> perm;  // perm[g][p]

    void validate() const {
        if (!group || static_cast<int>(perm.size()) != group->order())
            throw Error("action: one permutation per group element required");
        for (const auto& pi : perm) {
            if (static_cast<int>(pi.size()) != points) throw Error("action: bad permutation size");
            std::vector<char> seen(points, 0);
            for (int v : pi) {
                if (v < 0 || v >= points || seen[v]) throw Error("action: not a permutation");
                seen[v] = 1;
            }
        }
        const int e = group->identity();
        for (int p = 0; p < points; ++p)
            if (perm[e][p] != p) throw Error("action: identity must act trivially");
        for (int g = 0; g < group->order(); ++g)
            for (int h = 0; h < group->order(); ++h) {
                const auto gh = detail::compose_perm(perm[g], perm[h]);
                if (gh != perm[group->compose(g, h)])
                    throw Error("action: not a homomorphism");
            }
    }

    std::vector<std::vector<int>> orbits() const {
        std::vector<int> owner(points, -1);
        std::vector<std::vector<int>> out;
        for (int p = 0; p < points; ++p) {
            if (owner[p] >= 0) continue;
            std::vector<int> orbit{p};
            owner[p] = static_cast<int>(out.size());
            for (size_t head = 0; head < orbit.size(); ++head)
                for (int g = 0; g < group->order(); ++g) {
                    const int q = perm[g][orbit[head]];
                    if (owner[q] < 0) {
                        owner[q] = owner[p];
                        orbit.push_back(q);
                    }
                }
            std::sort(orbit.begin(), orbit.end());
            out.push_back(std::move(orbit));
        }
        return out;
    }
};

/// The rotation group of the cube together with its action on the 6 faces.
/// Faces are indexed +x,-x,+y,-y,+z,-z; the generators are the quarter turns
/// about the +z and +x axes. The closure must come out at order 24.
struct CubeRotations {
    GroupPtr group;
    GroupAction faces;
};

inline CubeRotations cube_rotations() {
    // quarter turn about +z: +x->+y->-x->-y->+x ; quarter turn about +x: +y->+z->-y->-z->+y
    const std::vector<int> rot_z{2, 3, 1, 0, 4, 5};
    const std::vector<int> rot_x{0, 1, 4, 5, 3, 2};
    std::vector<std::vector<int>> elems;
    GroupPtr g = detail::cache_lookup("cube", [&] {
        return detail::permutation_closure({rot_z, rot_x}, &elems, 48);
    });
    if (elems.empty())  // cache hit: regenerate the element list (same BFS order)
        detail::permutation_closure({rot_z, rot_x}, &elems, 48);
    if (g->order() != 24) throw Error("cube rotation closure produced wrong order");
    GroupAction act{g, 6, elems};
    return CubeRotations{g, std::move(act)};
}

/// A subgroup given by its sorted member indices.
struct Subgroup {
    GroupPtr parent;
    std::vector<int> members;

    bool contains(int g) const {
        return std::binary_search(members.begin(), members.end(), g);
    }
    int size() const { return static_cast<int>(members.size()); }
};

/// Checks closure under composition and inverse plus the identity; throws on failure.
inline Subgroup make_subgroup(const GroupPtr& g, std::vector<int> members) {
    std::sort(members.begin(), members.end());
    members.erase(std::unique(members.begin(), members.end()), members.end());
    Subgroup s{g, std::move(members)};
    for (int a : s.members) {
        if (a < 0 || a >= g->order()) throw Error("subgroup member out of range");
        if (!s.contains(g->inverse(a))) throw Error("subgroup not closed under inverse");
        for (int b : s.members)
            if (!s.contains(g->compose(a, b))) throw Error("subgroup not closed under product");
    }
    if (!s.contains(g->identity())) throw Error("subgroup misses identity");
    return s;
}

/// Smallest subgroup containing the seed set; a fixed point of one
/// product-and-inverse round.
inline Subgroup subgroup_closure(const GroupPtr& g, const std::vector<int>& seed) {
    if (seed.empty()) throw Error("subgroup_closure: empty seed");
    for (int s : seed)
        if (s < 0 || s >= g->order()) throw Error("subgroup_closure: seed index out of range");
    std::set<int> members(seed.begin(), seed.end());
    members.insert(g->identity());
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> snapshot(members.begin(), members.end());
        for (int a : snapshot) {
            if (members.insert(g->inverse(a)).second) grew = true;
            for (int b : snapshot)
                if (members.insert(g->compose(a, b)).second) grew = true;
        }
    }
    return Subgroup{g, std::vector<int>(members.begin(), members.end())};
}

struct CosetDecomposition {
    int index = 0;
    std::vector<std::vector<int>> left_cosets;  // each sorted; first contains the identity's coset
};

/// Left cosets g*F listed in order of their smallest representative.
inline CosetDecomposition coset_analysis(const GroupPtr& g, const Subgroup& f) {
    if (!same_group(g, f.parent)) throw GroupMismatch("subgroup belongs to another group");
    make_subgroup(g, f.members);  // revalidate
    const int n = g->order();
    if (n % f.size() != 0) throw Error("subgroup size does not divide group order");
    std::vector<int> assigned(n, 0);
    CosetDecomposition out;
    out.index = n / f.size();
    for (int rep = 0; rep < n; ++rep) {
        if (assigned[rep]) continue;
        std::vector<int> coset;
        coset.reserve(f.members.size());
        for (int m : f.members) {
            const int x = g->compose(rep, m);
            assigned[x] = 1;
            coset.push_back(x);
        }
        std::sort(coset.begin(), coset.end());
        out.left_cosets.push_back(std::move(coset));
    }
    return out;
}

/// Extreme points of the invariant distributions of an action: one uniform
/// distribution per orbit. For a transitive action this is the single
/// uniform distribution on all points.
inline std::vector<std::vector<double>> invariant_distributions(const GroupAction& action) {
    action.validate();
    std::vector<std::vector<double>> out;
    for (const auto& orbit : action.orbits()) {
        std::vector<double> mass(action.points, 0.0);
        for (int p : orbit) mass[p] = 1.0 / static_cast<double>(orbit.size());
        out.push_back(std::move(mass));
    }
    return out;
}

}  // namespace haarkit
