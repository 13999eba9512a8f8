#include "hyptimes/app/cli.hpp"
#include "hyptimes/app/config_io.hpp"
#include "hyptimes/errors.hpp"

#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

using namespace hyptimes;
namespace fs = std::filesystem;

namespace {

struct Run {
    int code = -1;
    std::string out;
    std::string err;
};

Run run(std::vector<std::string> args) {
    args.insert(args.begin(), "hyptimes");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    Run r;
    r.code = app::run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
    r.out = out.str();
    r.err = err.str();
    return r;
}

fs::path scratch(const std::string& name) {
    const fs::path dir = fs::temp_directory_path() / ("hyptimes-cli-" + name);
    fs::remove_all(dir);
    fs::create_directories(dir);
    return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream s;
    s << in.rdbuf();
    return s.str();
}

std::string classify_config(const fs::path& out) {
    return R"({"system": {"name": "catns", "params": {"epsilon": 0.01}}, "seeds": 3, "horizon": 3000,
  "burn_in": 100, "m_grid": [10, 100], "candidate": {"m": 20, "n": 20, "p": 20},
  "output_dir": ")" + out.generic_string() + "\"}";
}

} // namespace

TEST_CASE("times on a sequence file") {
    const fs::path dir = scratch("times");
    write(dir / "a.csv", "1,-1,2,-3,1\n");
    const Run r = run({"times", "--seq", (dir / "a.csv").string(), "--delta", "0.5"});
    CHECK(r.code == app::exit_ok);
    CHECK(r.out.find("E: 1,3") != std::string::npos);
    CHECK(r.out.find("density n=") != std::string::npos);

    CHECK(run({"times", "--seq", (dir / "a.csv").string(), "--delta", "0"}).code == app::exit_usage);
    CHECK(run({"times", "--seq", (dir / "missing.csv").string(), "--delta", "0.5"}).code == app::exit_runtime);
    CHECK(run({"times", "--delta", "0.5"}).code == app::exit_usage);
}

TEST_CASE("times on a system orbit") {
    const Run r = run({"times", "--system", "catns", "--index", "1", "--length", "200", "--delta", "0.01", "--m", "5"});
    CHECK(r.code == app::exit_ok);
    CHECK(r.out.find("E: \n") != std::string::npos);
    CHECK(run({"times", "--system", "catns", "--param", "epsilon=0.3", "--delta", "0.1"}).code == app::exit_usage);
    CHECK(run({"times", "--system", "henon", "--delta", "0.1"}).code == app::exit_usage);
}

TEST_CASE("usage errors") {
    CHECK(run({}).code == app::exit_usage);
    CHECK(run({"frobnicate"}).code == app::exit_usage);
    CHECK(run({"properties", "--suite", "nope"}).code == app::exit_usage);
}

TEST_CASE("config errors name the field") {
    const auto path_of = [](const std::string& text) {
        try {
            app::parse_config(text);
        } catch (const ConfigError& e) {
            return e.path();
        }
        return std::string("<none>");
    };
    CHECK(path_of(R"({"system": {"name": "catns", "params": {"epsilon": 0.2}}})") == "system.params");
    CHECK(path_of(R"({"system": {"name": "henon"}})") == "system.name");
    CHECK(path_of(R"({"system": {"name": "cat2"}, "delta_grid": [0.1, 0.01]})") == "delta_grid[1]");
    CHECK(path_of(R"({"system": {"name": "cat2"}, "seeds": -3})") == "seeds");
    CHECK(path_of(R"({"system": {"name": "cat2"}, "colour": 1})") == "colour");
    CHECK(path_of(R"({"system": {"name": "cat2"}, "candidate": {"q": 1}})") == "candidate.q");
    CHECK(path_of(R"({"system": {"name": "cat2"}, "sample_points": [[0.1]]})") == "sample_points[0]");
    CHECK(path_of(R"({"seeds": 3})") == "system");
    CHECK(path_of(R"({"system": {"name": "cat2"}})") == "<none>");

    const ExperimentConfig c = app::parse_config(R"({"system": {"name": "lin4"}, "seeds": 7})");
    const ExperimentConfig back = app::parse_config(app::dump_config(c));
    CHECK(back.system == "lin4");
    CHECK(back.seeds == 7);
    CHECK(back.m_grid == c.m_grid);

    const fs::path dir = scratch("badconfig");
    write(dir / "bad.json", R"({"system": {"name": "cat2"}, "horizon": 0})");
    const Run r = run({"classify", (dir / "bad.json").string()});
    CHECK(r.code == app::exit_usage);
    CHECK(r.err.find("horizon") != std::string::npos);
}

TEST_CASE("classify is deterministic") {
    const fs::path dir = scratch("classify");
    write(dir / "a.json", classify_config(dir / "a"));
    write(dir / "b.json", classify_config(dir / "b"));
    REQUIRE(run({"classify", (dir / "a.json").string()}).code == app::exit_ok);
    REQUIRE(run({"classify", (dir / "b.json").string()}).code == app::exit_ok);
    for (const char* f : {"records.csv", "profiles.csv", "density_curves.csv", "exponents_hist.csv"}) {
        CAPTURE(f);
        CHECK(!slurp(dir / "a" / f).empty());
        CHECK(slurp(dir / "a" / f) == slurp(dir / "b" / f));
    }
    CHECK(slurp(dir / "a" / "records.csv").find("HyperbolicBasin(0)") != std::string::npos);
    CHECK(slurp(dir / "a" / "summary.json").find("\"label_counts\"") != std::string::npos);
}

TEST_CASE("entropy command") {
    const fs::path dir = scratch("entropy");
    write(dir / "c.json", R"({"system": {"name": "cat2"}, "seeds": 16, "decay_steps": 12,
  "output_dir": ")" + (dir / "out").generic_string() + "\"}");
    const Run r = run({"entropy", (dir / "c.json").string()});
    REQUIRE(r.code == app::exit_ok);
    CHECK(r.out.rfind("slope: ", 0) == 0);
    const std::string bounds = slurp(dir / "out" / "bounds.csv");
    CHECK(bounds.rfind("kind,m,lhs,rhs,holds\n", 0) == 0);
    CHECK(bounds.find(",0\n") == std::string::npos);

    write(dir / "p.json", R"({"system": {"name": "cat2"}, "sample_points": [[0, 0]], "decay_steps": 6,
  "output_dir": ")" + (dir / "pt").generic_string() + "\"}");
    REQUIRE(run({"entropy", (dir / "p.json").string()}).code == app::exit_ok);
    CHECK(slurp(dir / "pt" / "bounds.csv").find("fixed,1,0,") != std::string::npos);
}

TEST_CASE("properties command") {
    const fs::path dir = scratch("props");
    const Run a = run({"properties", "--suite", "metric", "--cases", "50", "--seed", "3",
                       "--output-dir", dir.string()});
    const Run b = run({"properties", "--suite", "metric", "--cases", "50", "--seed", "3",
                       "--output-dir", dir.string()});
    CHECK(a.code == app::exit_ok);
    CHECK(a.out == b.out);
    CHECK(a.out.find("metric: ") == 0);
    CHECK(run({"properties", "--suite", "timesets-oracle", "--cases", "200"}).code == app::exit_ok);
}
