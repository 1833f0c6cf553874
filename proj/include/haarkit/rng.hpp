#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "haarkit/measure.hpp"

namespace haarkit {

/// Deterministic random source. The mapping from engine output to doubles is
/// spelled out here instead of using std::uniform_real_distribution so that
/// seeded runs produce identical streams on every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : eng_(seed) {}

    double uniform() {  // in [0, 1)
        return static_cast<double>(eng_() >> 11) * 0x1.0p-53;
    }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    int uniform_int(int n) {  // in [0, n)
        return static_cast<int>(eng_() % static_cast<std::uint64_t>(n));
    }
    std::uint64_t raw() { return eng_(); }

    /// Random distribution with all entries at least `floor` before
    /// normalization (floor > 0 gives full support).
    GroupDistribution distribution(const GroupPtr& g, double floor = 0.0) {
        std::vector<double> m(g->order());
        for (double& v : m) v = floor + uniform();
        return GroupDistribution(g, std::move(m));
    }

    /// Random distribution where each entry is zeroed with probability p_zero.
    /// Falls back to a point mass if everything was zeroed.
    GroupDistribution sparse_distribution(const GroupPtr& g, double p_zero) {
        std::vector<double> m(g->order(), 0.0);
        bool any = false;
        for (double& v : m)
            if (uniform() >= p_zero) {
                v = 0.05 + uniform();
                any = true;
            }
        if (!any) m[uniform_int(g->order())] = 1.0;
        return GroupDistribution(g, std::move(m));
    }

private:
    std::mt19937_64 eng_;
};

}  // namespace haarkit
