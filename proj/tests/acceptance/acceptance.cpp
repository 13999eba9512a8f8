// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.
#include "hyptimes/app/cli.hpp"
#include "hyptimes/app/properties.hpp"
#include "hyptimes/classify.hpp"
#include "hyptimes/entropy.hpp"
#include "hyptimes/format.hpp"
#include "hyptimes/random.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>
#include <string>
#include <vector>

using namespace hyptimes;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = true;
    std::string detail;

    void require(bool ok, const std::string& what) {
        if (!ok) pass = false;
        if (!detail.empty()) detail += "; ";
        detail += what + (ok ? "" : " [x]");
    }
};

std::string num(double v) { return format_real(v); }

Outcome suite_outcome(const app::SuiteReport& r) {
    Outcome o;
    o.require(r.passed(), r.suite + " " + std::to_string(r.checks - r.failures.size()) + "/" +
                              std::to_string(r.checks) + " checks over " + std::to_string(r.cases) +
                              " cases");
    if (!r.failures.empty()) {
        const auto& f = r.failures.front();
        o.detail += " first failure: case " + std::to_string(f.case_index) + " " + f.check + " " + f.detail;
    }
    return o;
}

Outcome timesets_oracle() {
    const app::SuiteReport exhaustive = app::timesets_oracle_exhaustive();
    const app::SuiteReport random = app::timesets_oracle_suite(1000, 1);
    Outcome o = suite_outcome(exhaustive);
    o.require(exhaustive.cases >= 100000, "exhaustive subsample " + std::to_string(exhaustive.cases) + " >= 1e5");
    const Outcome r = suite_outcome(random);
    o.require(r.pass, r.detail);
    return o;
}

Outcome inequalities() { return suite_outcome(app::inequalities_suite(1000, 1)); }

Outcome misiurewicz() { return suite_outcome(app::misiurewicz_suite(500, 1)); }

Outcome metric() {
    Outcome o = suite_outcome(app::metric_suite(1000, 1));
    const std::vector<std::size_t> horizons{1000, 10000};
    const Outcome d = suite_outcome(app::defect_suite(100, horizons, 1));
    o.require(d.pass, "defect <= 4/n: " + d.detail);
    return o;
}

Outcome volume_decay() {
    const SystemSpec cat2 = make_system("cat2");
    const GridPartition partition(2, 4);
    std::vector<TorusPoint> points;
    for (std::size_t j = 0; j < default_decay_points; ++j) points.push_back(random_point(2, derive_seed(1, j)));
    const auto curve = mean_volume_decay(cat2, points, 20, partition);
    const double slope = decay_slope(curve, 5, 20);
    const double target = std::log((3.0 + std::sqrt(5.0)) / 2.0);
    Outcome o;
    o.require(std::abs(slope - target) <= 0.05 * target,
              "slope " + num(slope) + " vs " + num(target) + " within 5%");
    return o;
}

ExperimentConfig full_config(const std::string& system) {
    ExperimentConfig c;
    c.system = system;
    c.seeds = 100;
    c.horizon = 100000;
    c.burn_in = 1000;
    return c;
}

Outcome catrot() {
    const EnsembleResult run = ensemble_run(full_config("catrot"));
    double worst_exp = 0.0, worst_beta = 0.0;
    std::size_t close = 0;
    for (const auto& r : run.records) {
        worst_exp = std::max(worst_exp, std::abs(r.exponents[1]));
        worst_beta = std::max(worst_beta, std::abs(r.beta[0].values.cwiseAbs().maxCoeff()));
        if (r.empirical_distance <= 0.02) ++close;
    }
    Outcome o;
    o.require(run.records.size() == 100, std::to_string(run.records.size()) + " seeds");
    o.require(worst_exp <= 1e-12, "max |center exponent| " + num(worst_exp));
    o.require(worst_beta == 0.0, "max beta_1 entry " + num(worst_beta));
    o.require(close >= 95, std::to_string(close) + " seeds with empirical distance <= 0.02");
    return o;
}

Outcome catns() {
    const double eps = 0.01;
    const double target = std::log(1.0 - 2.0 * std::numbers::pi * eps);
    const ExperimentConfig config = full_config("catns");
    const EnsembleResult run = ensemble_run(config);
    std::size_t near = 0, basin = 0, candidates = 0;
    double worst_candidate = 0.0;
    for (const auto& r : run.records) {
        if (std::abs(r.exponents[1] - target) <= 0.1 * std::abs(target)) ++near;
        if (r.label.to_string() == "HyperbolicBasin(0)") ++basin;
        if (!std::isnan(r.candidate_distance)) {
            ++candidates;
            worst_candidate = std::max(worst_candidate, r.candidate_distance);
        }
    }
    Outcome o;
    o.require(near == 100, std::to_string(near) + "/100 center exponents within 10% of " + num(target));
    o.require(basin >= 95, std::to_string(basin) + " seeds HyperbolicBasin(0)");
    o.require(candidates == 100 && worst_candidate <= 0.05,
              std::to_string(candidates) + " candidates, max distance " + num(worst_candidate));

    // A seed on the repelling circle.
    const SystemSpec system = make_system("catns");
    TorusPoint x0 = random_point(3, derive_seed(config.master_seed, 1000));
    x0(2) = 0.0;
    const ClassificationRecord neg = classify_seed(system, x0, config);
    const double up = std::log(1.0 + 2.0 * std::numbers::pi * eps);
    CandidateParams p = config.candidate;
    const double cand = weak_star_distance(srb_candidate_measure(system, x0, 1, p, config.horizon),
                                           system.reference());
    o.require(std::abs(neg.exponents[1] - up) <= 1e-9 && neg.alpha[0].summary() >= 0.99 && cand >= 0.1,
              "control: exponent " + num(neg.exponents[1]) + ", alpha_1 " + num(neg.alpha[0].summary()) +
                  ", candidate distance " + num(cand));
    return o;
}

Outcome lin4() {
    const EnsembleResult run = ensemble_run(full_config("lin4"));
    const double logs[] = {std::log(2.0 + std::sqrt(3.0)), std::log((3.0 + std::sqrt(5.0)) / 2.0),
                           -std::log((3.0 + std::sqrt(5.0)) / 2.0), std::log(2.0 - std::sqrt(3.0))};
    double worst_exp = 0.0, worst_candidate = 0.0;
    std::size_t basin = 0, candidates = 0;
    for (const auto& r : run.records) {
        for (int i = 0; i < 4; ++i) worst_exp = std::max(worst_exp, std::abs(r.exponents[i] - logs[i]));
        if (r.label.to_string() == "HyperbolicBasin(1)") ++basin;
        if (!std::isnan(r.candidate_distance)) {
            ++candidates;
            worst_candidate = std::max(worst_candidate, r.candidate_distance);
        }
    }
    Outcome o;
    o.require(worst_exp <= 1e-9, "max exponent error " + num(worst_exp));
    o.require(basin == 100, std::to_string(basin) + "/100 HyperbolicBasin(1)");
    o.require(candidates == 100 && worst_candidate <= 0.05,
              std::to_string(candidates) + " candidates, max distance " + num(worst_candidate));
    return o;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

Outcome determinism() {
    const fs::path root = fs::temp_directory_path() / "hyptimes-acceptance-determinism";
    fs::remove_all(root);
    fs::create_directories(root);
    const fs::path cfg = root / "config.json";
    std::ofstream(cfg) << R"({"system": {"name": "catns", "params": {"epsilon": 0.01}}, "seeds": 100,
  "horizon": 100000, "burn_in": 1000, "output_dir": ")" + (root / "out").generic_string() + "\"}";
    const std::string path = cfg.string();
    Outcome o;
    for (const char* run : {"a", "b"}) {
        for (const char* cmd : {"classify", "entropy"}) {
            const char* argv[] = {"hyptimes", cmd, path.c_str()};
            std::ostringstream out, err;
            const int code = app::run_cli(3, argv, out, err);
            if (code != app::exit_ok) o.require(false, std::string(cmd) + " exited " + std::to_string(code) + ": " + err.str());
        }
        fs::rename(root / "out", root / run);
    }
    std::size_t files = 0, same = 0;
    for (const auto& entry : fs::directory_iterator(root / "a")) {
        ++files;
        if (slurp(entry.path()) == slurp(root / "b" / entry.path().filename())) ++same;
        else o.require(false, entry.path().filename().string() + " differs");
    }
    o.require(files >= 7 && same == files, std::to_string(same) + "/" + std::to_string(files) + " files identical");
    fs::remove_all(root);
    return o;
}

struct Criterion {
    int id;
    const char* name;
    double limit_seconds;  // 0: no runtime limit
    std::function<Outcome()> run;
};

} // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "timeset oracle equivalence", 120, timesets_oracle},
        {2, "inequality suites", 0, inequalities},
        {3, "Misiurewicz bounds", 120, misiurewicz},
        {4, "metric axioms and invariance defect", 0, metric},
        {5, "cat2 volume decay", 30, volume_decay},
        {6, "catrot", 300, catrot},
        {7, "catns", 600, catns},
        {8, "lin4", 300, lin4},
        {9, "determinism", 0, determinism},
    };
    int failed = 0;
    for (const auto& c : criteria) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = c.run();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (c.limit_seconds > 0) o.require(secs <= c.limit_seconds, "runtime limit " + num(c.limit_seconds) + " s");
        if (!o.pass) ++failed;
        std::ostringstream time;
        time.precision(1);
        time << std::fixed << secs;
        std::cout << (o.pass ? "PASS" : "FAIL") << " [" << c.id << "] " << c.name << " (" << time.str()
                  << " s): " << o.detail << std::endl;
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed" << std::endl;
    return failed == 0 ? 0 : 1;
}
