#include <doctest.h>

#include <cmath>

#include "haarkit/convergence.hpp"
#include "haarkit/rng.hpp"
#include "test_util.hpp"

using namespace haarkit;

namespace {
const double kLog2 = std::log(2.0);

std::vector<double> betas(double hi, double lo, int count) {
    std::vector<double> out;
    const double ratio = std::pow(lo / hi, 1.0 / (count - 1));
    double mag = hi;
    for (int i = 0; i < count; ++i, mag *= ratio) out.push_back(-mag);
    return out;
}
}  // namespace

TEST_SUITE("convergence_lab") {

TEST_CASE("detect_obstruction") {
    auto z6 = cyclic(6);
    SUBCASE("full support converges") {
        Rng rng(101);
        auto r = detect_obstruction(rng.distribution(z6, 0.05));
        CHECK(r.verdict == Obstruction::converges);
    }
    SUBCASE("support {0,1} also converges: its closure is everything") {
        auto r = detect_obstruction(GroupDistribution(z6, {0.5, 0.5, 0, 0, 0, 0}));
        CHECK(r.verdict == Obstruction::converges);
    }
    SUBCASE("even residues are subgroup-supported") {
        auto r = detect_obstruction(GroupDistribution::uniform_on(z6, {0, 2, 4}));
        CHECK(r.verdict == Obstruction::subgroup_supported);
        REQUIRE(r.subgroup);
        CHECK(r.subgroup->members == std::vector<int>{0, 2, 4});
    }
    SUBCASE("odd residues are coset-supported with period 2") {
        auto r = detect_obstruction(GroupDistribution::uniform_on(z6, {1, 3, 5}));
        CHECK(r.verdict == Obstruction::coset_supported);
        REQUIRE(r.subgroup);
        CHECK(r.subgroup->members == std::vector<int>{0, 2, 4});
        CHECK(r.coset_rep == 1);
        CHECK(r.period == 2);
    }
    SUBCASE("point mass periods are element orders") {
        for (int g = 1; g < 6; ++g) {
            auto r = detect_obstruction(GroupDistribution::point_mass(z6, g));
            CHECK(r.verdict == Obstruction::coset_supported);
            CHECK(r.period == z6->element_order(g));
        }
        auto e = detect_obstruction(GroupDistribution::point_mass(z6, 0));
        CHECK(e.verdict == Obstruction::subgroup_supported);
        CHECK(e.subgroup->size() == 1);
    }
    SUBCASE("trivial group is its own closure") {
        auto r = detect_obstruction(GroupDistribution::point_mass(cyclic(1), 0));
        CHECK(r.verdict == Obstruction::converges);
    }
    SUBCASE("non-normal subgroup coset on the cube group") {
        auto cube = cube_rotations();
        // stabilizer of the +z face: the four z-axis rotations
        std::vector<int> stab;
        for (int g = 0; g < 24; ++g)
            if (cube.faces.perm[g][4] == 4) stab.push_back(g);
        Subgroup f = make_subgroup(cube.group, stab);
        int rep = -1;
        for (int g = 0; g < 24 && rep < 0; ++g)
            if (!f.contains(g)) rep = g;
        std::vector<int> coset;
        for (int m : f.members) coset.push_back(cube.group->compose(rep, m));
        auto r = detect_obstruction(GroupDistribution::uniform_on(cube.group, coset));
        CHECK(r.verdict == Obstruction::coset_supported);
        REQUIRE(r.period);
        CHECK(*r.period >= 1);
        // the reported subgroup really contains rep^-1 * support
        REQUIRE(r.subgroup);
        for (int c : coset)
            CHECK(r.subgroup->contains(
                cube.group->compose(cube.group->inverse(*r.coset_rep), c)));
        CHECK(r.subgroup->size() < 24);
    }
}

TEST_CASE("run_series on converging, subgroup, and coset inputs") {
    auto z6 = cyclic(6);
    SUBCASE("full-support random P: strictly decreasing divergence to < 1e-12") {
        Rng rng(103);
        auto p = rng.distribution(z6, 0.1);
        auto s = run_series(p, 30);
        REQUIRE(s.n_values.size() == 30);
        for (size_t i = 1; i < s.divergence.size(); ++i) {
            CHECK(s.divergence[i] <= s.divergence[i - 1] + 1e-12);
            if (s.divergence[i - 1] > 1e-10)
                CHECK(s.divergence[i] < s.divergence[i - 1]);
        }
        CHECK(s.divergence.back() < 1e-12);
        // Pinsker holds rowwise
        for (size_t i = 0; i < s.divergence.size(); ++i)
            CHECK(0.5 * s.tv[i] * s.tv[i] <= s.divergence[i] + 1e-12);
    }
    SUBCASE("subgroup uniform: divergence constant at log 2") {
        auto uf = GroupDistribution::uniform_on(z6, {0, 2, 4});
        auto s = run_series(uf, 40);
        for (double d : s.divergence) CHECK(d == doctest::Approx(kLog2).epsilon(1e-12));
        for (double m : s.min_density) CHECK(m == 0.0);
    }
    SUBCASE("coset uniform: constant divergence, alternating supports") {
        auto p = GroupDistribution::uniform_on(z6, {1, 3, 5});
        auto s = run_series(p, 20);
        for (double d : s.divergence) CHECK(d == doctest::Approx(kLog2).epsilon(1e-12));
        GroupDistribution cur = p;
        for (int n = 2; n <= 6; ++n) {
            cur = convolve(cur, p);
            const std::vector<int> expect =
                n % 2 == 0 ? std::vector<int>{0, 2, 4} : std::vector<int>{1, 3, 5};
            CHECK(cur.support() == expect);
        }
    }
    SUBCASE("transport column appears when a spec is given and shrinks") {
        Rng rng(107);
        auto p = rng.distribution(z6, 0.1);
        auto s = run_series(p, 16, DistortionSpec::cosine_cyclic(6));
        REQUIRE(s.has_transport);
        REQUIRE(s.transport.size() == 16);
        CHECK(s.transport.back() <= s.transport.front() + 1e-12);
        CHECK(s.transport.back() < 1e-5);
        // weak-convergence chain: transport <= d_max * tv / 2
        for (size_t i = 0; i < s.transport.size(); ++i)
            CHECK(s.transport[i] <= 4.0 * 0.5 * s.tv[i] + 1e-12);
    }
}

TEST_CASE("run_series_fourier") {
    SUBCASE("uniform density: all zeros") {
        auto s = run_series_fourier(uniform_density(), 5);
        for (double v : s.exact) CHECK(v == 0.0);
        for (double v : s.quadratic) CHECK(v == 0.0);
    }
    SUBCASE("a1 = 0.8: quadratic column is exactly 2 * 0.16^n") {
        auto d = make_density({0.8}, {0.0});
        auto s = run_series_fourier(d, 12);
        for (int i = 0; i < 12; ++i)
            CHECK(s.quadratic[i] ==
                  doctest::Approx(2.0 * std::pow(0.16, i + 1)).epsilon(1e-12));
        // exact/quadratic settles at one half
        for (int i = 4; i < 12; ++i)
            CHECK(s.exact[i] / s.quadratic[i] == doctest::Approx(0.5).epsilon(0.01));
        for (double v : s.exact) CHECK(v >= 0.0);
    }
    SUBCASE("fourier series matches the discretized run to 1e-5") {
        auto d = make_density({0.6, 0.2}, {0.4, 1.2});
        auto fs = run_series_fourier(d, 10);
        auto gs = run_series(discretize(d, 4096), 10);
        for (int i = 0; i < 10; ++i)
            CHECK(gs.divergence[i] == doctest::Approx(fs.exact[i]).epsilon(1e-5));
    }
}

TEST_CASE("fit_rate") {
    SUBCASE("single harmonic a=0.8 fits rho = 0.16 within 2 percent") {
        auto s = run_series_fourier(make_density({0.8}, {0.0}), 20);
        auto fit = fit_rate(s, 5);
        CHECK(std::abs(fit.rho / 0.16 - 1.0) <= 0.02);
        CHECK(fit.r2 > 0.999);
        CHECK_FALSE(fit.flat);
    }
    SUBCASE("constant series reports rho ~ 1 with the flat flag") {
        auto z6 = cyclic(6);
        auto s = run_series(GroupDistribution::uniform_on(z6, {0, 2, 4}), 12);
        auto fit = fit_rate(s, 1);
        CHECK(fit.rho == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fit.flat);
    }
    SUBCASE("random full-support on Z6: rho < 1 with good fit") {
        Rng rng(109);
        auto s = run_series(rng.distribution(cyclic(6), 0.05), 24);
        auto fit = fit_rate(s, 5, 1e-13);
        CHECK(fit.rho < 1.0);
        CHECK(fit.rho > 0.0);
        CHECK(fit.r2 > 0.99);
    }
    SUBCASE("too little data") {
        auto z4 = cyclic(4);
        Rng rng(113);
        auto s = run_series(rng.distribution(z4, 0.1), 4);
        CHECK_THROWS_AS(fit_rate(s, 1), InsufficientData);
    }
}

TEST_CASE("decay_bound_check: D(P^n) <= (1-c)^(n-1) D(P)") {
    SUBCASE("P = U has c = 1 and a vacuously tight bound") {
        auto u = GroupDistribution::uniform(cyclic(5));
        auto rep = decay_bound_check(u, 10);
        CHECK(rep.c == doctest::Approx(1.0));
        CHECK(rep.holds);
        for (double d : rep.divergence) CHECK(d <= 1e-13);
    }
    SUBCASE("Z4 staircase example") {
        auto rep = decay_bound_check(GroupDistribution(cyclic(4), {0.4, 0.3, 0.2, 0.1}), 20);
        CHECK(rep.c == doctest::Approx(0.4).epsilon(1e-12));
        CHECK(rep.holds);
        for (size_t i = 1; i < rep.margin.size(); ++i) CHECK(rep.margin[i] > 0.0);
    }
    SUBCASE("near point mass with a tiny floor") {
        const double eps = 1e-3;
        std::vector<double> m(4, eps);
        m[1] = 1.0 - 3.0 * eps;
        auto rep = decay_bound_check(GroupDistribution(cyclic(4), std::move(m)), 20);
        CHECK(rep.c == doctest::Approx(4.0 * eps).epsilon(1e-10));
        CHECK(rep.holds);
    }
    SUBCASE("zero minimum density is rejected") {
        CHECK_THROWS_AS(decay_bound_check(GroupDistribution::uniform_on(cyclic(4), {0, 1}), 5),
                        PreconditionFailed);
    }
}

TEST_CASE("one_bit_floor_check") {
    SUBCASE("P = U: floor 1 at eps 1, U*U has density 1") {
        auto rep = one_bit_floor_check(GroupDistribution::uniform(cyclic(6)));
        CHECK(rep.applicable);
        CHECK(rep.floor == doctest::Approx(1.0));
        CHECK(rep.min_density_pp == doctest::Approx(1.0));
        CHECK(rep.holds);
    }
    SUBCASE("Z6 example with D about 0.53 nats") {
        std::vector<double> m(6, 0.075);
        m[0] = 0.625;
        auto p = GroupDistribution(cyclic(6), std::move(m));
        auto rep = one_bit_floor_check(p);
        CHECK(rep.divergence_nats == doctest::Approx(0.5267).epsilon(1e-3));
        CHECK(rep.applicable);
        CHECK(rep.floor == doctest::Approx(2.0 * 0.45 * 0.45 * 0.5).epsilon(1e-12));
        CHECK(rep.min_density_pp >= rep.floor);
        CHECK(rep.holds);
    }
    SUBCASE("boundary case U_F at exactly log 2: floor collapses, min density 0") {
        auto z6 = cyclic(6);
        auto uf = GroupDistribution::uniform_on(z6, {0, 2, 4});
        auto rep = one_bit_floor_check(uf);
        CHECK_FALSE(rep.applicable);
        CHECK(rep.divergence_nats == doctest::Approx(kLog2).epsilon(1e-12));
        CHECK(rep.floor == 0.0);
        CHECK(rep.min_density_pp == 0.0);
        CHECK_FALSE(rep.holds);
    }
}

TEST_CASE("pointwise_density_check") {
    SUBCASE("P = U: zero fractions") {
        auto rows = pointwise_density_check(GroupDistribution::uniform(cyclic(8)), 6, 0.1);
        for (const auto& r : rows) CHECK(r.fraction == 0.0);
    }
    SUBCASE("full-support Z8: fraction hits zero eventually, Markov bound holds always") {
        Rng rng(127);
        auto rows = pointwise_density_check(rng.distribution(cyclic(8), 0.05), 25, 0.1);
        for (const auto& r : rows) CHECK(r.fraction <= r.bound + 1e-12);
        CHECK(rows.back().fraction == 0.0);
        bool reached_zero = false;
        for (const auto& r : rows) {
            if (r.fraction == 0.0) reached_zero = true;
        }
        CHECK(reached_zero);
    }
}

TEST_CASE("rd_convergence_check: the sandwich squeezes the curves together") {
    auto grid = betas(8.0, 0.1, 10);
    auto z6 = cyclic(6);
    auto spec = DistortionSpec::cosine_cyclic(6);
    SUBCASE("P = U: gap at solver tolerance already at n = 1") {
        auto rows = rd_convergence_check(GroupDistribution::uniform(z6), spec, grid, {1});
        CHECK(rows[0].sup_gap <= 1e-8);
    }
    SUBCASE("random full-support P: gap bounded by divergence and nonincreasing") {
        Rng rng(131);
        auto p = rng.distribution(z6, 0.05);
        auto rows = rd_convergence_check(p, spec, grid, {1, 2, 4, 8});
        double prev = std::numeric_limits<double>::infinity();
        for (const auto& r : rows) {
            CHECK(r.sup_gap <= r.divergence + 1e-6);
            CHECK(r.sup_gap <= prev + 1e-6);
            prev = r.sup_gap;
        }
        CHECK(rows.back().sup_gap < rows.front().sup_gap);
    }
    SUBCASE("subgroup-supported P: gap stays above a positive constant") {
        auto uf = GroupDistribution::uniform_on(z6, {0, 2, 4});
        auto rows = rd_convergence_check(uf, spec, grid, {1, 2, 4});
        for (const auto& r : rows) {
            CHECK(r.sup_gap >= 0.5);  // the small-delta region keeps a log-2-ish gap
            CHECK(r.divergence == doctest::Approx(kLog2).epsilon(1e-12));
        }
    }
}

}  // TEST_SUITE
