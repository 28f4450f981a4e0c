// Acceptance suite: one PASS/FAIL line per criterion.
// Default (desk) mode keeps the run within minutes on one core; --long uses
// the full run counts.

#include "cli.hpp"
#include "idp/dirichlet.hpp"
#include "idp/idp.hpp"
#include "idp/kernels.hpp"
#include "idp/simulation.hpp"
#include "oracles.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <unistd.h>

using namespace idp;

namespace {

const double kS = std::sqrt(2.0) - 1.0;

struct Mode {
    bool long_mode = false;
};

struct Check {
    bool ok = true;
    std::ostringstream detail;

    void require(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            detail << " [failed: " << what << "]";
        }
    }
};

bool within(double value, double target, double tol) { return std::abs(value - target) <= tol; }

std::vector<double> normal_values(std::mt19937_64& rng, std::size_t n, double shift = 0.0) {
    std::normal_distribution<double> d(shift, 1.0);
    std::vector<double> v(n);
    for (double& e : v) e = d(rng);
    return v;
}

// 1 --------------------------------------------------------------------------
Check exactness() {
    Check c;
    const double s = choose_s(0.5);
    c.require(std::abs(s - (std::sqrt(2.0) - 1.0)) < 1e-12, "choose_s(0.5)");

    std::mt19937_64 rng(1);
    std::uniform_int_distribution<std::size_t> size(1, 40);
    std::uniform_real_distribution<double> strength(0.0, 5.0);
    double worst = 0.0;
    for (int i = 0; i < 100; ++i) {
        const std::size_t n1 = size(rng);
        const std::size_t n2 = size(rng);
        const Sample x(normal_values(rng, n1));
        const Sample y(normal_values(rng, n2, 0.3));
        const double sv = strength(rng);
        const Interval m = posterior_mean_bounds(x, y, sv);
        const double expected = sv * (sv + n1 + n2) / ((sv + n1) * (sv + n2));
        worst = std::max(worst, std::abs((m.upper - m.lower) - expected));
    }
    c.require(worst < 1e-12, "width identity");

    const Interval one = posterior_mean_bounds({1}, {2}, kS);
    c.require(std::abs(one.lower - 0.5) < 1e-12 && std::abs(one.upper - 1.0) < 1e-12, "single pair bounds");
    c.detail << "choose_s(0.5)=" << s << " max width error=" << worst << " bounds=(" << one.lower << ", "
             << one.upper << ")";
    return c;
}

// 2 --------------------------------------------------------------------------
Check oracle_suite() {
    Check c;
    std::mt19937_64 rng(2);
    std::uniform_int_distribution<std::size_t> size(1, 5);
    const double strengths[] = {0.0, kS, 1.0};
    const std::size_t oracle_draws = 1000000;
    const std::size_t mc_draws = 200000;
    double worst_z = 0.0;

    auto compare = [&](double value, double ref, double se, const std::string& what) {
        // Degenerate posteriors: only rounding noise is left to compare.
        if (std::abs(value - ref) < 1e-12) return;
        const double z = std::abs(value - ref) / se;
        worst_z = std::max(worst_z, z);
        std::ostringstream msg;
        msg << what << ": " << value << " vs " << ref << " +- " << se;
        c.require(z <= 4.0, msg.str());
    };

    for (int i = 0; i < 20; ++i) {
        const auto xv = normal_values(rng, size(rng));
        const auto yv = normal_values(rng, size(rng), 0.4);
        const double s = strengths[i % 3];
        const Sample x(xv);
        const Sample y(yv);

        const auto a = oracle::wins(xv, yv, true);
        oracle::DirichletOracle dir(1000 + i);
        std::vector<double> lo(oracle_draws), up(oracle_draws);
        for (std::size_t d = 0; d < oracle_draws; ++d) {
            const auto w1 = dir.draw(s, xv.size());
            const auto w2 = dir.draw(s, yv.size());
            lo[d] = oracle::g_lower(a, w1, w2);
            up[d] = oracle::g_upper(a, w1, w2);
        }
        const auto ol = oracle::summarize(lo);
        const auto ou = oracle::summarize(up);
        const Moments ml = moments_lower(x, y, s);
        const Moments mu = moments_upper(x, y, s);
        const std::string tag = "dataset " + std::to_string(i);
        compare(ml.mean, ol.mean, ol.mean_se, tag + " lower mean");
        compare(ml.variance, ol.variance, ol.variance_se, tag + " lower variance");
        compare(mu.mean, ou.mean, ou.mean_se, tag + " upper mean");
        compare(mu.variance, ou.variance, ou.variance_se, tag + " upper variance");

        TestConfig cfg;
        cfg.s = s;
        cfg.c = 0.5;
        cfg.mc_samples = mc_draws;
        cfg.seed = 5000 + i;
        const auto [pl, pu] = posterior_probs(x, y, cfg);
        const auto frac = [&](const std::vector<double>& v) {
            return static_cast<double>(std::count_if(v.begin(), v.end(), [](double g) { return g > 0.5; })) /
                   static_cast<double>(v.size());
        };
        const double ql = frac(lo);
        const double qu = frac(up);
        const double sel = std::sqrt(ql * (1 - ql) / oracle_draws);
        const double seu = std::sqrt(qu * (1 - qu) / oracle_draws);
        compare(pl.estimate, ql, pl.se + sel, tag + " lower prob");
        compare(pu.estimate, qu, pu.se + seu, tag + " upper prob");
    }
    c.detail << "20 datasets, largest deviation " << worst_z << " SE";
    return c;
}

// 3 --------------------------------------------------------------------------
Check duality() {
    Check c;
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<std::size_t> size(1, 12);
    double worst = 0.0;
    for (int i = 0; i < 50; ++i) {
        const Sample x(normal_values(rng, size(rng)));
        const Sample y(normal_values(rng, size(rng), 0.2));
        const kernels::PairLayout forward(x, y, TieMode::Strict);
        const kernels::PairLayout backward(y, x, TieMode::Strict);
        DirichletSampler sx(kS, x.size());
        DirichletSampler sy(kS, y.size());
        // One engine drives both evaluations, so the weights are shared.
        Engine coupled = RngStream(77).split(i).engine();
        std::vector<double> wx(x.size() + 1), wy(y.size() + 1);
        std::vector<double> scratch(std::max(x.size(), y.size()) + 1);
        for (int d = 0; d < 2000; ++d) {
            sx.draw(coupled, wx);
            sy.draw(coupled, wy);
            const double up = kernels::evaluate_g(forward, wx, wy, scratch).upper;
            const double low = kernels::evaluate_g(backward, wy, wx, scratch).lower;
            worst = std::max(worst, std::abs(up - (1.0 - low)));
        }
    }
    c.require(worst <= 1e-12, "pathwise duality");
    c.detail << "50 datasets x 2000 draws, max |g_up - (1 - g_low')| = " << worst;
    return c;
}

ExperimentSpec null_spec(std::size_t n, std::size_t runs, double gamma, std::uint64_t seed) {
    ExperimentSpec spec;
    spec.delta_grid = {0.0};
    spec.n1 = spec.n2 = n;
    spec.runs = runs;
    spec.gamma = gamma;
    spec.k0 = gamma;
    spec.k1 = 1.0 - gamma;
    spec.seed = seed;
    spec.tests = {TestKind::IDP, TestKind::MWW, TestKind::FiftyFifty};
    return spec;
}

// 4 --------------------------------------------------------------------------
Check table_one(const Mode& mode) {
    Check c;
    const std::size_t runs = mode.long_mode ? 20000 : 2000;
    const double scale = mode.long_mode ? 1.0 : 2.0;
    struct Row {
        std::size_t n;
        double mww, ff, idp, ind;
    };
    const Row rows[] = {{10, 0.955, 0.945, 0.911, 0.068}, {20, 0.952, 0.947, 0.924, 0.045}};
    for (const Row& row : rows) {
        const ExperimentResult r = run_experiment(null_spec(row.n, runs, 0.05, 400 + row.n));
        const double mww = r.cell(0, TestKind::MWW).accuracy();
        const double ff = r.cell(0, TestKind::FiftyFifty).accuracy();
        const double idp = r.cell(0, TestKind::IDP).accuracy();
        const double ind = r.cell(0, TestKind::IDP).indeterminacy();
        const std::string tag = "n=" + std::to_string(row.n);
        c.require(within(mww, row.mww, 0.01 * scale), tag + " MWW");
        c.require(within(ff, row.ff, 0.01 * scale), tag + " 50/50");
        c.require(within(idp, row.idp, 0.015 * scale), tag + " IDP");
        c.require(within(ind, row.ind, 0.01 * scale), tag + " indeterminacy");
        c.detail << tag << ": MWW " << mww << " 50/50 " << ff << " IDP " << idp << " indet " << ind << "; ";
    }
    c.detail << runs << " runs";
    return c;
}

// 5 --------------------------------------------------------------------------
Check table_two(const Mode& mode) {
    Check c;
    const std::size_t runs = mode.long_mode ? 20000 : 4000;
    struct Row {
        double gamma, mww, ff, ind;
    };
    const Row rows[] = {{0.1, 0.8995, 0.8993, 0.081}, {0.25, 0.7552, 0.7482, 0.142}};
    for (const Row& row : rows) {
        const ExperimentResult r = run_experiment(null_spec(20, runs, row.gamma, 500));
        const double mww = r.cell(0, TestKind::MWW).accuracy();
        const double ff = r.cell(0, TestKind::FiftyFifty).accuracy();
        const double ind = r.cell(0, TestKind::IDP).indeterminacy();
        std::ostringstream tag;
        tag << "gamma=" << row.gamma;
        c.require(within(mww, row.mww, 0.015), tag.str() + " MWW");
        c.require(within(ff, row.ff, 0.015), tag.str() + " 50/50");
        c.require(within(ind, row.ind, 0.015), tag.str() + " indeterminacy");
        c.detail << tag.str() << ": MWW " << mww << " 50/50 " << ff << " indet " << ind << "; ";
    }
    c.detail << runs << " runs";
    return c;
}

// 6 --------------------------------------------------------------------------
Check indeterminacy_peak(const Mode& mode) {
    Check c;
    struct Row {
        std::size_t n;
        double lo, hi;
    };
    const Row rows[] = {{20, 0.13, 0.23}, {10, 0.24, 0.36}};
    for (const Row& row : rows) {
        ExperimentSpec spec;
        spec.delta_grid = delta_range(0.0, 1.0, 11);
        spec.n1 = spec.n2 = row.n;
        spec.runs = mode.long_mode ? 5000 : 1000;
        spec.mc_samples = mode.long_mode ? 20000 : 4000;
        spec.seed = 600 + row.n;
        spec.tests = {TestKind::IDP};
        const ExperimentResult r = run_experiment(spec);
        double peak = 0.0;
        double at = 0.0;
        for (std::size_t d = 0; d < spec.delta_grid.size(); ++d) {
            const double ind = r.cell(d, TestKind::IDP).indeterminacy();
            if (ind > peak) {
                peak = ind;
                at = spec.delta_grid[d];
            }
        }
        c.require(peak >= row.lo && peak <= row.hi, "n=" + std::to_string(row.n) + " peak");
        c.detail << "n=" << row.n << ": peak " << peak << " at delta " << at << " (" << spec.runs << " runs, "
                 << spec.mc_samples << " draws); ";
    }
    return c;
}

// 7 --------------------------------------------------------------------------
Check consistency_contrast(const Mode& mode) {
    Check c;
    ExperimentSpec spec;
    spec.delta_grid = {0.0};
    spec.n1 = spec.n2 = 1000;
    spec.runs = mode.long_mode ? 10000 : 2000;
    spec.generator.kind = Generator::Kind::GaussianScale;
    spec.generator.sigma = 10.0;
    spec.approx = Approximation::Normal;
    spec.seed = 700;
    spec.tests = {TestKind::IDP, TestKind::MWW};
    const ExperimentResult r = run_experiment(spec);
    const double mww = r.cell(0, TestKind::MWW).power();
    const double idp = r.cell(0, TestKind::IDP).power();
    c.require(mww >= 0.065 && mww <= 0.11, "MWW rejection rate");
    c.require(idp >= 0.03 && idp <= 0.07, "IDP greater rate");
    c.detail << "MWW rejects " << mww << ", IDP greater " << idp << " (" << spec.runs
             << " runs, normal approximation)";
    return c;
}

// 8 --------------------------------------------------------------------------
Check asymptotic_normality() {
    Check c;
    std::mt19937_64 rng(8);
    const Sample x(normal_values(rng, 200));
    const Sample y(normal_values(rng, 200));
    TestConfig cfg;
    cfg.mc_samples = 10000;
    cfg.seed = 800;
    const PosteriorDraws draws = posterior_samples(x, y, cfg);
    const Moments m = moments_lower(x, y, cfg.s);
    const double sd = std::sqrt(m.variance);
    const double ks = oracle::ks_distance(draws.lower, [&](double g) { return normal_cdf((g - m.mean) / sd); });
    c.require(ks < 0.05, "KS distance");
    c.detail << "KS distance " << ks << " (mean " << m.mean << ", sd " << sd << ")";
    return c;
}

// 9 --------------------------------------------------------------------------
std::string invoke(const std::vector<std::string>& args, int& code) {
    std::ostringstream out;
    std::ostringstream err;
    code = cli::run(args, out, err);
    return out.str();
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

Check determinism() {
    Check c;
    ExperimentSpec spec;
    spec.delta_grid = {-0.4, 0.0, 0.4};
    spec.n1 = 9;
    spec.n2 = 11;
    spec.runs = 60;
    spec.mc_samples = 1000;
    spec.seed = 900;
    const ExperimentResult base = run_experiment(spec, 1);
    c.require(run_experiment(spec, 1) == base, "repeat");
    c.require(run_experiment(spec, 2) == base, "2 shards");
    c.require(run_experiment(spec, 8) == base, "8 shards");

    namespace fs = std::filesystem;
    const fs::path dir = fs::temp_directory_path() / ("idp_acceptance_" + std::to_string(::getpid()));
    fs::create_directories(dir);
    std::ofstream(dir / "x.txt") << "0.3\n-0.2\n1.4\n0.8\n0.1\n";
    std::ofstream(dir / "y.txt") << "0.5\n0.6\n1.9\n-0.1\n0.2\n1.2\n";
    const std::string x = (dir / "x.txt").string();
    const std::string y = (dir / "y.txt").string();

    std::size_t commands = 0;
    auto same_output = [&](const std::string& name, const std::function<std::string(const std::string&)>& once) {
        const std::string ref = once("1");
        for (const char* par : {"1", "2", "8"}) c.require(once(par) == ref, name + " with " + par);
        ++commands;
    };
    for (const char* fmt : {"text", "csv", "json"}) {
        same_output(std::string("test ") + fmt, [&](const std::string& par) {
            int code = 0;
            return invoke({"test", "--x", x, "--y", y, "--seed", "5", "--format", fmt, "--threads", par}, code);
        });
    }
    for (const char* fmt : {"csv", "json"}) {
        same_output(std::string("simulate ") + fmt, [&](const std::string& par) {
            int code = 0;
            return invoke({"simulate", "--delta-min", "-0.5", "--delta-max", "0.5", "--steps", "3", "--n1", "8",
                           "--n2", "8", "--runs", "30", "--mc-samples", "500", "--seed", "6", "--format", fmt,
                           "--shards", par},
                          code);
        });
        same_output(std::string("posterior ") + fmt, [&](const std::string& par) {
            int code = 0;
            const fs::path out = dir / ("post_" + par + "." + fmt);
            invoke({"posterior", "--x", x, "--y", y, "--mc-samples", "3000", "--seed", "7", "--format", fmt,
                    "--threads", par, "--out", out.string()},
                   code);
            return slurp(out);
        });
    }
    fs::remove_all(dir);
    c.detail << "run_experiment and " << commands << " command variants identical across repeats and 1/2/8 shards";
    return c;
}

}  // namespace

int main(int argc, char** argv) {
    Mode mode;
    CLI::App app{"Acceptance criteria"};
    std::vector<int> only;
    app.add_flag("--long", mode.long_mode, "Full run counts");
    app.add_option("--only", only, "Run only these criteria");
    CLI11_PARSE(app, argc, argv);

    struct Criterion {
        int id;
        const char* name;
        std::function<Check()> run;
    };
    const std::vector<Criterion> criteria{
        {1, "exactness", exactness},
        {2, "moment and probability oracles", oracle_suite},
        {3, "lower/upper duality", duality},
        {4, "accuracy at delta = 0, gamma = 0.05", [&] { return table_one(mode); }},
        {5, "accuracy at delta = 0 for gamma = 0.1, 0.25", [&] { return table_two(mode); }},
        {6, "indeterminacy peak", [&] { return indeterminacy_peak(mode); }},
        {7, "consistency under unequal variances", [&] { return consistency_contrast(mode); }},
        {8, "asymptotic normality", asymptotic_normality},
        {9, "determinism", determinism},
    };

    std::printf("acceptance (%s mode)\n", mode.long_mode ? "long" : "desk");
    int failures = 0;
    int selected = 0;
    for (const auto& criterion : criteria) {
        if (!only.empty() && std::find(only.begin(), only.end(), criterion.id) == only.end()) continue;
        ++selected;
        const auto start = std::chrono::steady_clock::now();
        const Check result = criterion.run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        failures += !result.ok;
        std::printf("%s criterion %d (%s): %s [%.1fs]\n", result.ok ? "PASS" : "FAIL", criterion.id, criterion.name,
                    result.detail.str().c_str(), secs);
        std::fflush(stdout);
    }
    std::printf("%d/%d criteria passed\n", selected - failures, selected);
    return failures == 0 ? 0 : 1;
}
