// haarkit command line: builds groups and distributions from inline specs or
// JSON files, runs rate-distortion and convolution-convergence experiments,
// and emits figure-ready CSV/JSON.
//
// Exit codes: 0 success, 1 check failure, 2 config error, 3 numerical failure.

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "haarkit/convergence.hpp"
#include "haarkit/csv.hpp"
#include "haarkit/json_io.hpp"
#include "haarkit/rng.hpp"

using nlohmann::json;
using namespace haarkit;

namespace {

struct ConfigError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

json load_json_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open " + path);
    json j;
    try {
        in >> j;
    } catch (const std::exception& e) {
        throw ConfigError("bad json in " + path + ": " + e.what());
    }
    return j;
}

bool looks_like_file(const std::string& spec) {
    return spec.size() > 5 && spec.substr(spec.size() - 5) == ".json";
}

// ---- spec parsers ----------------------------------------------------------

// "so2" | "cyclic:N" | "dihedral:N" | "symmetric:N" | "cube" | file.json
GroupPtr parse_group(const std::string& spec) {
    if (looks_like_file(spec)) return group_from_json(load_json_file(spec));
    const auto parts = split(spec, ':');
    try {
        if (parts[0] == "cyclic" && parts.size() == 2) return cyclic(std::stoi(parts[1]));
        if (parts[0] == "dihedral" && parts.size() == 2) return dihedral(std::stoi(parts[1]));
        if (parts[0] == "symmetric" && parts.size() == 2) return symmetric(std::stoi(parts[1]));
        if (parts[0] == "cube") return cube_rotations().group;
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad group size in '" + spec + "'");
    }
    throw ConfigError("unknown group spec '" + spec + "'");
}

// "uniform" | "uniform-on:1,3,5" | "point:k" | "random" | "0.5,0.5,..." | file.json
GroupDistribution parse_distribution(const std::string& spec, const GroupPtr& g, Rng& rng) {
    if (looks_like_file(spec)) {
        const json j = load_json_file(spec);
        return GroupDistribution(g, j.at("mass").get<std::vector<double>>());
    }
    if (spec == "uniform") return GroupDistribution::uniform(g);
    if (spec == "random") return rng.distribution(g);
    if (spec.rfind("uniform-on:", 0) == 0) {
        std::vector<int> idx;
        for (const auto& tok : split(spec.substr(11), ',')) idx.push_back(std::stoi(tok));
        return GroupDistribution::uniform_on(g, idx);
    }
    if (spec.rfind("point:", 0) == 0)
        return GroupDistribution::point_mass(g, std::stoi(spec.substr(6)));
    std::vector<double> mass;
    for (const auto& tok : split(spec, ',')) mass.push_back(std::stod(tok));
    return GroupDistribution(g, std::move(mass));
}

// "cosine" | "table:v0,v1,..." | file.json with {type: "cosine"|"table", values: [...]}
DistortionSpec parse_profile(const std::string& spec, const GroupPtr& g) {
    auto cosine_for = [&]() {
        // cosine is the sampled circle profile; it is tied to cyclic groups
        if (!same_group(g, cyclic(g->order())))
            throw ConfigError("cosine profile requires a cyclic group");
        return DistortionSpec::cosine_cyclic(g->order());
    };
    if (looks_like_file(spec)) {
        const json j = load_json_file(spec);
        const std::string type = j.at("type").get<std::string>();
        if (type == "cosine") return cosine_for();
        if (type == "table")
            return DistortionSpec::from_profile(g, j.at("values").get<std::vector<double>>());
        throw ConfigError("unknown profile type '" + type + "'");
    }
    if (spec == "cosine") return cosine_for();
    if (spec.rfind("table:", 0) == 0) {
        std::vector<double> values;
        for (const auto& tok : split(spec.substr(6), ',')) values.push_back(std::stod(tok));
        return DistortionSpec::from_profile(g, std::move(values));
    }
    throw ConfigError("unknown profile spec '" + spec + "'");
}

// "a1=0.5@0.3,a2=0.1@0" (phase optional) | "uniform" | file.json
FourierDensity parse_fourier(const std::string& spec) {
    if (looks_like_file(spec)) return fourier_from_json(load_json_file(spec));
    if (spec == "uniform") return uniform_density();
    std::vector<double> amps, phases;
    for (const auto& tok : split(spec, ',')) {
        const auto eq = tok.find('=');
        if (tok.size() < 4 || tok[0] != 'a' || eq == std::string::npos)
            throw ConfigError("bad fourier term '" + tok + "' (want aK=AMP[@PHASE])");
        const int k = std::stoi(tok.substr(1, eq - 1));
        if (k < 1) throw ConfigError("harmonic index must be >= 1");
        std::string rest = tok.substr(eq + 1);
        double amp, phase = 0.0;
        const auto at = rest.find('@');
        if (at == std::string::npos) {
            amp = std::stod(rest);
        } else {
            amp = std::stod(rest.substr(0, at));
            phase = std::stod(rest.substr(at + 1));
        }
        if (static_cast<int>(amps.size()) < k) {
            amps.resize(k, 0.0);
            phases.resize(k, 0.0);
        }
        amps[k - 1] = amp;
        phases[k - 1] = phase;
    }
    return make_density(std::move(amps), std::move(phases));
}

// "log:-20..0:40" | "lin:-5..0:21". Log grids with endpoint 0 run the
// magnitudes down six decades and finish with an exact 0.
std::vector<double> parse_betas(const std::string& spec) {
    const auto head = split(spec, ':');
    if (head.size() != 3) throw ConfigError("bad beta grid '" + spec + "'");
    const auto dd = head[1].find("..");
    if (dd == std::string::npos) throw ConfigError("bad beta range in '" + spec + "'");
    double lo, hi;
    int count;
    try {
        lo = std::stod(head[1].substr(0, dd));
        hi = std::stod(head[1].substr(dd + 2));
        count = std::stoi(head[2]);
    } catch (const std::invalid_argument&) {
        throw ConfigError("bad beta grid '" + spec + "'");
    }
    if (count < 2 || lo >= hi || hi > 0.0) throw ConfigError("beta grid needs lo < hi <= 0");
    std::vector<double> out;
    if (head[0] == "lin") {
        for (int i = 0; i < count; ++i) out.push_back(lo + (hi - lo) * i / (count - 1));
        if (hi == 0.0) out.back() = 0.0;
        return out;
    }
    if (head[0] != "log") throw ConfigError("beta spacing must be log or lin");
    if (hi == 0.0) {
        const int steps = count - 1;
        const double ratio = std::pow(1e-6, 1.0 / (steps - 1));
        double mag = -lo;
        for (int i = 0; i < steps; ++i, mag *= ratio) out.push_back(-mag);
        out.push_back(0.0);
    } else {
        const double ratio = std::pow(hi / lo, 1.0 / (count - 1));
        double mag = -lo;
        for (int i = 0; i < count; ++i, mag *= ratio) out.push_back(-mag);
    }
    return out;
}

void write_output(const std::string& text, const std::string& out_path) {
    if (out_path.empty()) {
        std::fputs(text.c_str(), stdout);
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw ConfigError("cannot write " + out_path);
    f << text;
}

// ---- config file mirroring ---------------------------------------------------

/// Ties CLI options to config-file keys: any option the user did not pass on
/// the command line is filled from the --config JSON document.
class FlagMirror {
public:
    template <typename T>
    void bind(CLI::Option* opt, const std::string& key, T& target) {
        fills_.emplace_back(opt, [key, &target](const json& cfg) {
            if (cfg.contains(key)) target = cfg.at(key).get<T>();
        });
    }
    void apply(const json& cfg) const {
        for (const auto& [opt, fill] : fills_)
            if (opt->count() == 0) fill(cfg);
    }

private:
    std::vector<std::pair<CLI::Option*, std::function<void(const json&)>>> fills_;
};

struct CommonOpts {
    std::string out;
    std::string config;
    std::uint64_t seed = 12345;
    bool bits = false;
    bool as_json = false;

    FlagMirror mirror;

    void attach(CLI::App& app) {
        mirror.bind(app.add_option("--out", out, "output file (default stdout)"), "out", out);
        app.add_option("--config", config, "JSON config file mirroring the flags");
        mirror.bind(app.add_option("--seed", seed, "seed for randomized runs"), "seed", seed);
        mirror.bind(app.add_flag("--bits", bits, "emit rates in bits instead of nats"), "bits",
                    bits);
        mirror.bind(app.add_flag("--json", as_json, "prefer JSON on stdout"), "json", as_json);
    }
    void finish() {
        if (!config.empty()) mirror.apply(load_json_file(config));
    }
};

// ---- subcommands -------------------------------------------------------------

int cmd_rd_curve(const std::string& group_spec, const std::string& profile_spec,
                 const std::string& source_spec, const std::string& betas_spec, double tol,
                 int max_iter, const CommonOpts& common) {
    const std::vector<double> betas = parse_betas(betas_spec);
    Rng rng(common.seed);
    RDCurve curve;
    if (group_spec == "so2") {
        if (source_spec != "uniform")
            throw ConfigError("so2 curves are available for the uniform source only");
        auto spec = DistortionSpec::so2();
        for (double b : betas) curve.points.push_back(uniform_rd_point(spec, b));
        curve.source = "so2/uniform";
    } else {
        GroupPtr g = parse_group(group_spec);
        auto spec = parse_profile(profile_spec, g);
        auto p = parse_distribution(source_spec, g, rng);
        curve = rd_curve(p, spec, betas, tol, max_iter);
        curve.source = group_spec + "/" + source_spec;
    }
    write_output(rd_curve_csv(curve, common.bits), common.out);
    return 0;
}

int cmd_converge(const std::string& group_spec, const std::string& dist_spec,
                 const std::string& fourier_spec, const std::string& profile_spec, int n,
                 int burn_in, const CommonOpts& common) {
    json report;
    report["config"] = {{"n", n}, {"burn_in", burn_in}, {"seed", common.seed}};
    std::string csv;

    if (!fourier_spec.empty()) {
        FourierDensity d = parse_fourier(fourier_spec);
        FourierSeries s = run_series_fourier(d, n);
        csv = fourier_series_csv(s);
        report["mode"] = "fourier";
        report["config"]["fourier"] = fourier_spec;
        try {
            auto fit = fit_rate(s, burn_in, 1e-13);
            report["rho"] = fit.rho;
            report["r2"] = fit.r2;
            report["flat"] = fit.flat;
        } catch (const InsufficientData&) {
            report["rho"] = nullptr;
        }
    } else {
        if (group_spec.empty() || dist_spec.empty())
            throw ConfigError("converge needs --group and --dist (or --fourier)");
        GroupPtr g = parse_group(group_spec);
        Rng rng(common.seed);
        GroupDistribution p = parse_distribution(dist_spec, g, rng);
        std::optional<DistortionSpec> spec;
        if (!profile_spec.empty()) spec = parse_profile(profile_spec, g);
        ConvergenceSeries s = run_series(p, n, spec);
        csv = series_csv(s);
        report["mode"] = "finite";
        report["config"]["group"] = group_spec;
        report["config"]["dist"] = dist_spec;
        report["obstruction"] = obstruction_to_json(detect_obstruction(p));
        report["divergence_final"] = s.divergence.back();
        try {
            auto fit = fit_rate(s, burn_in, 1e-13);
            report["rho"] = fit.rho;
            report["r2"] = fit.r2;
            report["flat"] = fit.flat;
        } catch (const InsufficientData&) {
            report["rho"] = nullptr;
        }
    }

    if (common.as_json && common.out.empty()) {
        std::fputs((report.dump(2) + "\n").c_str(), stdout);
        return 0;
    }
    write_output(csv, common.out);
    if (!common.out.empty()) std::fputs((report.dump(2) + "\n").c_str(), stdout);
    return 0;
}

int cmd_transport(const std::string& group_spec, const std::string& profile_spec,
                  const std::string& dist_spec, const std::string& dist2_spec,
                  const CommonOpts& common) {
    GroupPtr g = parse_group(group_spec);
    auto spec = parse_profile(profile_spec, g);
    Rng rng(common.seed);
    auto p = parse_distribution(dist_spec, g, rng);
    auto q = parse_distribution(dist2_spec, g, rng);
    auto res = transport_distance(p, q, spec);
    if (!common.out.empty()) write_output(coupling_csv(res.coupling), common.out);
    if (common.as_json) {
        json j{{"value", res.value}, {"group", group_spec}};
        std::fputs((j.dump(2) + "\n").c_str(), stdout);
    } else {
        std::fputs((format_sci(res.value) + "\n").c_str(), stdout);
    }
    return 0;
}

int cmd_group_info(const std::string& group_spec, const CommonOpts& common) {
    GroupPtr g = parse_group(group_spec);
    json j = group_to_json(g);
    j["info"] = {{"identity", g->identity()}, {"abelian", g->is_abelian()}};
    write_output(j.dump(2) + "\n", common.out);
    return 0;
}

// ---- the check command --------------------------------------------------------

struct SuiteResult {
    int trials = 0;
    int failures = 0;
};

std::vector<GroupPtr> check_battery(int max_order) {
    std::vector<GroupPtr> out;
    for (int n : {2, 3, 4, 6, 8, 12}) out.push_back(cyclic(n));
    for (int n : {3, 4}) out.push_back(dihedral(n));
    out.push_back(symmetric(3));
    if (max_order >= 24) {
        out.push_back(symmetric(4));
        out.push_back(cube_rotations().group);
    }
    std::erase_if(out, [max_order](const GroupPtr& g) { return g->order() > max_order; });
    return out;
}

SuiteResult suite_haar(Rng& rng, int trials) {
    SuiteResult r;
    auto battery = check_battery(24);
    for (int t = 0; t < trials; ++t) {
        const auto& g = battery[rng.uniform_int(static_cast<int>(battery.size()))];
        ++r.trials;
        switch (t % 3) {
            case 0: {
                if (!haar_check(GroupDistribution::uniform(g)).is_haar) ++r.failures;
                break;
            }
            case 1: {
                auto f = subgroup_closure(g, {rng.uniform_int(g->order())});
                auto rep = haar_check(uniform_on_coset(g, f, 0));
                const bool expect = f.size() == g->order();
                if (rep.is_haar != expect) ++r.failures;
                break;
            }
            default: {
                std::vector<double> m(g->order(), 1.0);
                m[rng.uniform_int(g->order())] += 1e-3;
                if (haar_check(GroupDistribution(g, std::move(m))).is_haar) ++r.failures;
            }
        }
    }
    return r;
}

SuiteResult suite_pinsker(Rng& rng, int trials) {
    SuiteResult r;
    auto battery = check_battery(24);
    for (int t = 0; t < trials; ++t) {
        const auto& g = battery[rng.uniform_int(static_cast<int>(battery.size()))];
        auto p = t % 4 == 0 ? rng.sparse_distribution(g, 0.5) : rng.distribution(g);
        auto q = t % 5 == 0 ? rng.sparse_distribution(g, 0.3) : rng.distribution(g);
        const double tv = total_variation(p, q);
        ++r.trials;
        if (0.5 * tv * tv > divergence(p, q) + 1e-12) ++r.failures;
    }
    return r;
}

SuiteResult suite_compensation(Rng& rng, int trials) {
    SuiteResult r;
    auto battery = check_battery(12);
    for (int t = 0; t < trials; ++t) {
        const auto& g = battery[rng.uniform_int(static_cast<int>(battery.size()))];
        const int k = 2 + rng.uniform_int(5);
        std::vector<GroupDistribution> family;
        std::vector<double> w;
        for (int i = 0; i < k; ++i) {
            family.push_back(rng.distribution(g));
            w.push_back(0.05 + rng.uniform());
        }
        ++r.trials;
        if (compensation_identity_residual(family, w, rng.distribution(g, 0.05)) > 1e-10)
            ++r.failures;
    }
    return r;
}

SuiteResult suite_sandwich(Rng& rng, int trials, const GroupPtr& g, const DistortionSpec& spec) {
    SuiteResult r;
    const int points = 12;
    const int sources = std::max(1, trials / points);
    const auto grid = parse_betas("log:-10..-0.05:" + std::to_string(points));
    for (int s = 0; s < sources; ++s) {
        std::vector<double> m(g->order());
        for (double& v : m) v = 0.2 + rng.uniform();
        auto rep = sandwich_check(GroupDistribution(g, std::move(m)), spec, grid);
        r.trials += static_cast<int>(rep.rows.size());
        r.failures += rep.violations;
    }
    return r;
}

SuiteResult suite_decay_bound(Rng& rng, int trials) {
    SuiteResult r;
    auto battery = check_battery(24);
    for (int t = 0; t < trials; ++t) {
        const auto& g = battery[rng.uniform_int(static_cast<int>(battery.size()))];
        ++r.trials;
        if (!decay_bound_check(rng.distribution(g, 0.05), 15).holds) ++r.failures;
    }
    return r;
}

SuiteResult suite_one_bit(Rng& rng, int trials) {
    SuiteResult r;
    auto battery = check_battery(12);
    const double limit = std::log(2.0);
    for (int t = 0; t < trials; ++t) {
        const auto& g = battery[rng.uniform_int(static_cast<int>(battery.size()))];
        auto u = GroupDistribution::uniform(g);
        GroupDistribution p = t % 3 == 0 ? rng.sparse_distribution(g, 0.3) : rng.distribution(g);
        // shrink toward uniform until safely under one bit
        for (int rounds = 0; divergence(p, u) >= 0.95 * limit && rounds < 60; ++rounds) {
            std::vector<double> m(g->order());
            for (int i = 0; i < g->order(); ++i) m[i] = 0.7 * p.mass(i) + 0.3 * u.mass(i);
            p = GroupDistribution(g, std::move(m));
        }
        ++r.trials;
        if (!one_bit_floor_check(p).holds) ++r.failures;
    }
    return r;
}

int cmd_check(const std::string& which, const std::string& group_spec, int trials,
              const CommonOpts& common) {
    Rng rng(common.seed);
    GroupPtr g = parse_group(group_spec);
    DistortionSpec spec = parse_profile("cosine", g);

    json suites;
    auto want = [&which](const char* name) { return which == "all" || which == name; };
    auto put = [&suites](const char* name, const SuiteResult& r) {
        suites[name] = {{"trials", r.trials}, {"failures", r.failures}};
    };
    if (want("haar")) put("haar", suite_haar(rng, trials));
    if (want("pinsker")) put("pinsker", suite_pinsker(rng, trials));
    if (want("compensation")) put("compensation", suite_compensation(rng, trials));
    if (want("sandwich")) put("sandwich", suite_sandwich(rng, trials, g, spec));
    if (want("decay_bound")) put("decay_bound", suite_decay_bound(rng, trials));
    if (want("one_bit")) put("one_bit", suite_one_bit(rng, trials));
    if (suites.empty()) throw ConfigError("unknown check suite '" + which + "'");

    int failures = 0;
    for (const auto& [name, r] : suites.items()) failures += r.at("failures").get<int>();
    json out{{"seed", common.seed},
             {"trials", trials},
             {"group", group_spec},
             {"suites", suites},
             {"ok", failures == 0}};
    const std::string text = out.dump(2) + "\n";
    std::fputs(text.c_str(), stdout);
    if (!common.out.empty()) write_output(text, common.out);
    return failures == 0 ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerics for probability measures on compact groups"};
    app.require_subcommand(1);

    // rd-curve
    auto* rd = app.add_subcommand("rd-curve", "rate-distortion curve as CSV");
    std::string rd_group = "so2", rd_profile = "cosine", rd_source = "uniform";
    std::string rd_betas = "log:-20..0:40";
    double rd_tol = 1e-10;
    int rd_maxit = 100000;
    CommonOpts rd_common;
    rd_common.attach(*rd);
    rd_common.mirror.bind(
        rd->add_option("--group", rd_group,
                       "so2 | cyclic:N | dihedral:N | symmetric:N | cube | file.json"),
        "group", rd_group);
    rd_common.mirror.bind(
        rd->add_option("--profile", rd_profile, "cosine | table:v0,v1,... | file.json"), "profile",
        rd_profile);
    rd_common.mirror.bind(
        rd->add_option("--source", rd_source,
                       "uniform | mass list | uniform-on:... | point:k | random | file.json"),
        "source", rd_source);
    rd_common.mirror.bind(
        rd->add_option("--betas", rd_betas, "log:LO..HI:N or lin:LO..HI:N, HI <= 0"), "betas",
        rd_betas);
    rd_common.mirror.bind(rd->add_option("--tol", rd_tol, "solver tolerance"), "tol", rd_tol);
    rd_common.mirror.bind(rd->add_option("--max-iter", rd_maxit, "solver iteration cap"),
                          "max_iter", rd_maxit);

    // converge
    auto* cv = app.add_subcommand("converge", "convolution power experiment");
    std::string cv_group, cv_dist, cv_fourier, cv_profile;
    int cv_n = 40, cv_burn = 5;
    CommonOpts cv_common;
    cv_common.attach(*cv);
    cv_common.mirror.bind(cv->add_option("--group", cv_group, "finite group spec"), "group",
                          cv_group);
    cv_common.mirror.bind(cv->add_option("--dist", cv_dist, "distribution spec"), "dist", cv_dist);
    cv_common.mirror.bind(cv->add_option("--fourier", cv_fourier, "circle density, e.g. a1=0.8@0"),
                          "fourier", cv_fourier);
    cv_common.mirror.bind(cv->add_option("--profile", cv_profile, "adds a transport column"),
                          "profile", cv_profile);
    cv_common.mirror.bind(cv->add_option("--n", cv_n, "number of convolution powers"), "n", cv_n);
    cv_common.mirror.bind(cv->add_option("--burn-in", cv_burn, "first n used by the rate fit"),
                          "burn_in", cv_burn);

    // check
    auto* ck = app.add_subcommand("check", "randomized identity/inequality suites");
    std::string ck_which = "all", ck_group = "cyclic:8";
    int ck_trials = 1000;
    CommonOpts ck_common;
    ck_common.attach(*ck);
    ck_common.mirror.bind(
        ck->add_option("--check", ck_which,
                       "all | haar | pinsker | compensation | sandwich | decay_bound | one_bit"),
        "check", ck_which);
    ck_common.mirror.bind(ck->add_option("--group", ck_group, "group for the sandwich suite"),
                          "group", ck_group);
    ck_common.mirror.bind(ck->add_option("--trials", ck_trials, "trials per suite"), "trials",
                          ck_trials);

    // transport
    auto* tr = app.add_subcommand("transport", "exact transport distance");
    std::string tr_group = "cyclic:6", tr_profile = "cosine", tr_dist = "uniform",
                tr_dist2 = "uniform";
    CommonOpts tr_common;
    tr_common.attach(*tr);
    tr_common.mirror.bind(tr->add_option("--group", tr_group, "finite group spec"), "group",
                          tr_group);
    tr_common.mirror.bind(tr->add_option("--profile", tr_profile, "distortion profile"), "profile",
                          tr_profile);
    tr_common.mirror.bind(tr->add_option("--dist", tr_dist, "first marginal"), "dist", tr_dist);
    tr_common.mirror.bind(tr->add_option("--dist2", tr_dist2, "second marginal"), "dist2",
                          tr_dist2);

    // group-info
    auto* gi = app.add_subcommand("group-info", "validate and export a group as JSON");
    std::string gi_group = "cyclic:6";
    CommonOpts gi_common;
    gi_common.attach(*gi);
    gi_common.mirror.bind(gi->add_option("--group", gi_group, "group spec"), "group", gi_group);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0) return app.exit(e);  // --help
        app.exit(e);
        return 2;
    }

    try {
        if (rd->parsed()) {
            rd_common.finish();
            return cmd_rd_curve(rd_group, rd_profile, rd_source, rd_betas, rd_tol, rd_maxit,
                                rd_common);
        }
        if (cv->parsed()) {
            cv_common.finish();
            return cmd_converge(cv_group, cv_dist, cv_fourier, cv_profile, cv_n, cv_burn,
                                cv_common);
        }
        if (ck->parsed()) {
            ck_common.finish();
            return cmd_check(ck_which, ck_group, ck_trials, ck_common);
        }
        if (tr->parsed()) {
            tr_common.finish();
            return cmd_transport(tr_group, tr_profile, tr_dist, tr_dist2, tr_common);
        }
        if (gi->parsed()) {
            gi_common.finish();
            return cmd_group_info(gi_group, gi_common);
        }
    } catch (const NoConvergence& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const QuadratureFailure& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const RangeError& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 3;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
