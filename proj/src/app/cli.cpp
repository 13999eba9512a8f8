#include "hyptimes/app/cli.hpp"

#include "hyptimes/app/config_io.hpp"
#include "hyptimes/app/properties.hpp"
#include "hyptimes/classify.hpp"
#include "hyptimes/entropy.hpp"
#include "hyptimes/errors.hpp"
#include "hyptimes/format.hpp"
#include "hyptimes/hyperbolic_times.hpp"
#include "hyptimes/random.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <ostream>

namespace hyptimes::app {

namespace {

namespace fs = std::filesystem;

/// Bad flag values found after parsing; reported with exit code 2.
class UsageError : public Error {
public:
    using Error::Error;
};

struct TimesOptions {
    std::string seq_file;
    std::string system;
    std::vector<std::string> params;
    std::uint64_t seed = 0;
    int index = 0;
    std::size_t length = 1000;
    double delta = 0.0;
    std::size_t m = 1;
    std::size_t n = 0;        // G((N)) window; 0 means M
    std::size_t horizon = 0;  // density horizon; 0 means length - 1
};

SystemParams parse_params(const std::vector<std::string>& items) {
    SystemParams out;
    for (const auto& item : items) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) throw UsageError("--param expects key=value, got '" + item + "'");
        try {
            std::size_t used = 0;
            const double v = std::stod(item.substr(eq + 1), &used);
            if (used != item.size() - eq - 1) throw std::invalid_argument(item);
            out[item.substr(0, eq)] = v;
        } catch (const std::logic_error&) {
            throw UsageError("--param value is not a number: '" + item + "'");
        }
    }
    return out;
}

void print_times(std::ostream& out, const RealSequence& a, const TimesOptions& opt) {
    const std::size_t big_n = opt.n ? opt.n : opt.m;
    const std::size_t length = static_cast<std::size_t>(a.size());
    const std::size_t horizon = opt.horizon ? opt.horizon : std::max<std::size_t>(length - 1, 1);

    const TimeSet e = hyperbolic_times(a, opt.delta);
    const TimeSet f = weakly_hyperbolic_times(a, opt.delta, opt.m);
    const TimeSet g = mildly_hyperbolic_times(a, opt.delta, opt.m);
    const TimeSet gg = g_double(a, opt.delta, opt.m, big_n);
    const TimeSet e_m = dilate(e, opt.m);
    const TimeSet e_chain = chain(e, opt.m);
    const TimeSet f_m = dilate(f, opt.m);

    out << "E: " << format_times(e) << "\n";
    out << "F: " << format_times(f) << "\n";
    out << "G: " << format_times(g) << "\n";
    out << "G((N)): " << format_times(gg) << "\n";
    out << "E(M): " << format_times(e_m) << "\n";
    out << "E<M>: " << format_times(e_chain) << "\n";
    out << "boundary(E): " << format_times(boundary(e)) << "\n";
    out << "density n=" << horizon << ": E=" << format_real(density(e, horizon))
        << " E(M)=" << format_real(density(e_m, horizon))
        << " F(M)=" << format_real(density(f_m, horizon))
        << " G((N))=" << format_real(density(gg, horizon)) << "\n";
}

int cmd_times(const TimesOptions& opt, std::ostream& out) {
    const bool from_file = !opt.seq_file.empty();
    if (from_file == !opt.system.empty())
        throw UsageError("give exactly one of --seq or --system");

    std::vector<RealSequence> sequences;
    if (from_file) {
        std::ifstream in(opt.seq_file);
        if (!in) throw Error("cannot read sequence file " + opt.seq_file);
        sequences = read_sequences_csv(in);
        if (sequences.empty()) throw Error("no sequence in " + opt.seq_file);
    } else {
        const SystemSpec system = [&] {
            try {
                return make_system(opt.system, parse_params(opt.params));
            } catch (const InvalidParameter& e) {
                throw UsageError(e.what());
            }
        }();
        if (opt.index < 0 || opt.index >= system.observable_count())
            throw UsageError("--index must lie in 0.." + std::to_string(system.observable_count() - 1));
        const TorusPoint x0 = random_point(system.dim(), derive_seed(opt.seed, 0));
        sequences.push_back(observable_sequence(system, x0, opt.length, opt.index));
    }
    for (std::size_t s = 0; s < sequences.size(); ++s) {
        if (sequences.size() > 1) out << "# sequence " << s << "\n";
        print_times(out, sequences[s], opt);
    }
    return exit_ok;
}

/// Collects output files so that a failed run leaves none of them behind.
class OutputSet {
public:
    explicit OutputSet(fs::path dir) : dir_(std::move(dir)) { fs::create_directories(dir_); }
    OutputSet(const OutputSet&) = delete;
    OutputSet& operator=(const OutputSet&) = delete;
    ~OutputSet() {
        if (committed_) return;
        std::error_code ec;
        for (const auto& p : written_) fs::remove(p, ec);
    }

    void write(const std::string& name, const std::string& contents) {
        const fs::path p = dir_ / name;
        write_file_atomic(p, contents);
        written_.push_back(p);
    }
    void commit() { committed_ = true; }
    const fs::path& dir() const { return dir_; }

private:
    fs::path dir_;
    std::vector<fs::path> written_;
    bool committed_ = false;
};

std::string records_csv(const std::vector<ClassificationRecord>& records, const SystemSpec& system) {
    std::string out = "seed_index,seed";
    for (int i = 0; i < system.dim(); ++i) out += ",x0_" + std::to_string(i);
    for (int i = 0; i < system.observable_count(); ++i) out += ",exponent_" + std::to_string(i);
    for (int i = 1; i <= system.center_count(); ++i) out += ",alpha_" + std::to_string(i);
    for (int i = 1; i <= system.center_count(); ++i) out += ",beta_" + std::to_string(i);
    out += ",label,empirical_distance,candidate_distance,candidate_size\n";
    for (const auto& r : records) {
        out += std::to_string(r.seed_index) + "," + std::to_string(r.seed);
        for (Eigen::Index i = 0; i < r.x0.size(); ++i) out += "," + format_real(r.x0(i));
        for (double e : r.exponents) out += "," + format_real(e);
        for (const auto& p : r.alpha) out += "," + format_real(p.summary());
        for (const auto& p : r.beta) out += "," + format_real(p.summary());
        out += "," + r.label.to_string() + "," + format_real(r.empirical_distance) + "," +
               format_real(r.candidate_distance) + "," + std::to_string(r.candidate_size) + "\n";
    }
    return out;
}

std::string profiles_csv(const std::vector<ClassificationRecord>& records) {
    std::string out = "seed_index,kind,index,delta,m,n,value\n";
    for (const auto& r : records)
        for (const auto* list : {&r.alpha, &r.beta})
            for (const auto& p : *list)
                for (std::size_t a = 0; a < p.grid.deltas.size(); ++a)
                    for (std::size_t b = 0; b < p.grid.windows.size(); ++b)
                        out += std::to_string(r.seed_index) + "," +
                               (p.kind == DensityProfile::Kind::alpha ? "alpha" : "beta") + "," +
                               std::to_string(p.index) + "," + format_real(p.grid.deltas[a]) + "," +
                               std::to_string(p.grid.windows[b]) + "," + std::to_string(p.horizon) +
                               "," +
                               format_real(p.values(static_cast<Eigen::Index>(a),
                                                    static_cast<Eigen::Index>(b))) +
                               "\n";
    return out;
}

std::vector<std::size_t> checkpoints(std::size_t horizon) {
    std::vector<std::size_t> out;
    for (std::size_t decade = 1; decade <= horizon; decade *= 10)
        for (std::size_t f : {1, 2, 5}) {
            const std::size_t n = f * decade;
            if (n >= 10 && n < horizon) out.push_back(n);
        }
    out.push_back(horizon);
    return out;
}

/// Density of E^delta(M) and F^{delta,M}(M) against n, along the orbit of the first seed.
std::string density_curves_csv(const SystemSpec& system, const ExperimentConfig& config) {
    const DensityGrid grid{config.delta_grid, config.m_grid};
    const std::size_t length = profile_sequence_length(config.horizon, grid);
    const TorusPoint x0 = random_point(system.dim(), derive_seed(config.master_seed, 0));
    const Orbit path = orbit(system, x0, length);
    const auto ns = checkpoints(config.horizon);
    std::string out = "seed_index,kind,index,delta,m,n,density\n";
    for (int i = 1; i <= system.center_count(); ++i) {
        const RealSequence phi = observable_sequence(system, path, i);
        const RealSequence negated = -phi;
        for (double delta : grid.deltas)
            for (std::size_t m : grid.windows) {
                const TimeSet alpha_set = dilate(hyperbolic_times(phi, delta), m);
                const TimeSet beta_set = dilate(weakly_hyperbolic_times(negated, delta, m), m);
                for (const auto& [kind, set] :
                     {std::pair<const char*, const TimeSet*>{"alpha", &alpha_set}, {"beta", &beta_set}})
                    for (std::size_t n : ns)
                        out += "0," + std::string(kind) + "," + std::to_string(i) + "," +
                               format_real(delta) + "," + std::to_string(m) + "," + std::to_string(n) +
                               "," + format_real(density(*set, n)) + "\n";
            }
    }
    return out;
}

std::string exponents_hist_csv(const std::vector<ClassificationRecord>& records, int observables) {
    constexpr int bins = 20;
    std::string out = "index,bin,lo,hi,count\n";
    for (int i = 0; i < observables; ++i) {
        double lo = std::numeric_limits<double>::infinity();
        double hi = -lo;
        for (const auto& r : records) {
            lo = std::min(lo, r.exponents[static_cast<std::size_t>(i)]);
            hi = std::max(hi, r.exponents[static_cast<std::size_t>(i)]);
        }
        const int used = hi > lo ? bins : 1;
        std::vector<std::size_t> counts(static_cast<std::size_t>(used), 0);
        for (const auto& r : records) {
            const double e = r.exponents[static_cast<std::size_t>(i)];
            int b = used == 1 ? 0 : static_cast<int>((e - lo) / (hi - lo) * used);
            b = std::clamp(b, 0, used - 1);
            ++counts[static_cast<std::size_t>(b)];
        }
        for (int b = 0; b < used; ++b) {
            const double width = used == 1 ? 0.0 : (hi - lo) / used;
            out += std::to_string(i) + "," + std::to_string(b) + "," + format_real(lo + b * width) + "," +
                   format_real(used == 1 ? hi : lo + (b + 1) * width) + "," +
                   std::to_string(counts[static_cast<std::size_t>(b)]) + "\n";
        }
    }
    return out;
}

std::string summary_json(const EnsembleResult& result, const ExperimentConfig& config) {
    nlohmann::ordered_json labels = nlohmann::ordered_json::object();
    for (const auto& [label, count] : result.summary.label_counts) labels[label] = count;
    const auto real = [](double v) -> nlohmann::ordered_json {
        if (std::isnan(v)) return nullptr;
        return v;
    };
    nlohmann::ordered_json out;
    out["system"] = config.system;
    out["seeds"] = result.records.size();
    out["horizon"] = config.horizon;
    out["label_counts"] = labels;
    out["mean_exponents"] = result.summary.mean_exponents;
    out["mean_empirical_distance"] = real(result.summary.mean_empirical_distance);
    out["mean_candidate_distance"] = real(result.summary.mean_candidate_distance);
    out["candidate_count"] = result.summary.candidate_count;
    out["config"] = nlohmann::ordered_json::parse(dump_config(config));
    return out.dump(2) + "\n";
}

int cmd_classify(const std::string& config_path, std::ostream& out) {
    const ExperimentConfig config = load_config(config_path);
    const SystemSpec system = make_system(config.system, config.params);
    OutputSet files(config.output_dir);
    const EnsembleResult result = ensemble_run(config);
    files.write("records.csv", records_csv(result.records, system));
    files.write("profiles.csv", profiles_csv(result.records));
    files.write("summary.json", summary_json(result, config));
    files.write("density_curves.csv", density_curves_csv(system, config));
    files.write("exponents_hist.csv", exponents_hist_csv(result.records, system.observable_count()));
    files.commit();
    for (const auto& [label, count] : result.summary.label_counts)
        out << label << ": " << count << "\n";
    out << "wrote " << files.dir().string() << "\n";
    return exit_ok;
}

int cmd_entropy(const std::string& config_path, std::ostream& out) {
    const ExperimentConfig config = load_config(config_path);
    const SystemSpec system = make_system(config.system, config.params);
    const GridPartition partition(system.dim(), config.resolution);

    std::vector<TorusPoint> points;
    if (!config.sample_points.empty()) {
        for (const auto& p : config.sample_points)
            points.push_back(Eigen::Map<const Eigen::VectorXd>(p.data(), static_cast<Eigen::Index>(p.size())));
    } else {
        for (std::size_t s = 0; s < config.seeds; ++s)
            points.push_back(random_point(system.dim(), derive_seed(config.master_seed, s)));
    }

    OutputSet files(config.output_dir);
    const std::size_t steps = config.decay_steps;
    const auto curve = mean_volume_decay(system, points, steps, partition, config.segment_half_length);
    const std::size_t fit_from = steps > 5 ? 5 : 0;
    std::string decay = "k,length,neg_log_length,slope\n";
    double final_slope = std::numeric_limits<double>::quiet_NaN();
    for (const auto& p : curve) {
        double slope = std::numeric_limits<double>::quiet_NaN();
        if (p.k > fit_from) slope = final_slope = decay_slope(curve, fit_from, p.k);
        decay += std::to_string(p.k) + "," + format_real(p.length) + "," + format_real(p.neg_log_length) +
                 "," + format_real(slope) + "\n";
    }

    Eigen::MatrixXd pts(system.dim(), static_cast<Eigen::Index>(points.size()));
    for (std::size_t j = 0; j < points.size(); ++j) pts.col(static_cast<Eigen::Index>(j)) = points[j];
    const PointMeasure mu = PointMeasure::uniform(pts);
    const TimeSet fixed = TimeSet::interval(0, steps, steps);

    // F(x): hyperbolic times of the unstable observable along the orbit of x.
    std::vector<TimeSet> varying;
    bool any = false;
    for (const auto& x : points) {
        varying.push_back(
            hyperbolic_times(observable_sequence(system, x, steps, 0), config.candidate.delta));
        any = any || !varying.back().empty();
    }

    std::string bounds = "kind,m,lhs,rhs,holds\n";
    for (std::size_t m = 1; m <= steps; m *= 2) {
        const BoundPair a = misiurewicz_bound_fixed(mu, partition, fixed, m, system);
        bounds += "fixed," + std::to_string(m) + "," + format_real(a.lhs) + "," + format_real(a.rhs) +
                  "," + (a.holds() ? "1" : "0") + "\n";
        if (any) {
            const BoundPair b = misiurewicz_bound_setvalued(mu, partition, varying, m, system);
            bounds += "set_valued," + std::to_string(m) + "," + format_real(b.lhs) + "," +
                      format_real(b.rhs) + "," + (b.holds() ? "1" : "0") + "\n";
        }
    }

    files.write("decay.csv", decay);
    files.write("bounds.csv", bounds);
    files.commit();
    out << "slope: " << format_real(final_slope) << "\n";
    out << "wrote " << files.dir().string() << "\n";
    return exit_ok;
}

int cmd_properties(const std::string& suite, std::size_t cases, std::uint64_t seed,
                   const std::string& output_dir, std::ostream& out) {
    const SuiteReport report = run_suite(suite, cases, seed);
    out << suite << ": " << report.checks - report.failures.size() << "/" << report.checks
        << " checks passed over " << report.cases << " cases\n";
    if (report.passed()) return exit_ok;
    fs::create_directories(output_dir);
    const fs::path path = fs::path(output_dir) / (suite + "-failures.csv");
    write_file_atomic(path, failures_csv(report));
    out << "FAILED: " << report.failures.size() << " failing checks written to " << path.string() << "\n";
    return exit_property_failure;
}

} // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Hyperbolic-time calculus and SRB classification on built-in torus maps", "hyptimes"};
    app.require_subcommand(1);

    TimesOptions times;
    auto* times_cmd = app.add_subcommand("times", "Hyperbolic, weakly and mildly hyperbolic times of a sequence");
    times_cmd->add_option("--seq", times.seq_file, "CSV file, one sequence per row");
    times_cmd->add_option("--system", times.system, "Built-in system")
        ->check(CLI::IsMember(builtin_system_names()));
    times_cmd->add_option("--param", times.params, "System parameter key=value");
    times_cmd->add_option("--seed", times.seed, "Seed of the starting point");
    times_cmd->add_option("--index", times.index, "Observable index i");
    times_cmd->add_option("--length", times.length, "Orbit length for --system")->check(CLI::Range(2, 100000000));
    times_cmd->add_option("--delta", times.delta, "delta > 0")->required()->check(CLI::PositiveNumber);
    times_cmd->add_option("--m", times.m, "Window M >= 1, default 1")->check(CLI::Range(1, 1 << 30));
    times_cmd->add_option("--n", times.n, "Window N of G((N)), default M")->check(CLI::Range(1, 1 << 30));
    times_cmd->add_option("--horizon", times.horizon, "Density horizon, default length - 1")
        ->check(CLI::Range(1, 1 << 30));

    std::string config_path;
    auto* classify_cmd = app.add_subcommand("classify", "Run the classification ensemble of a config");
    classify_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();
    auto* entropy_cmd = app.add_subcommand("entropy", "Volume decay and entropy bounds of a config");
    entropy_cmd->add_option("config", config_path, "Experiment config (JSON)")->required();

    std::string suite;
    std::size_t cases = 1000;
    std::uint64_t seed = 1;
    std::string failures_dir = "property-failures";
    auto* prop_cmd = app.add_subcommand("properties", "Run an invariant suite");
    prop_cmd->add_option("--suite", suite, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    prop_cmd->add_option("--cases", cases, "Number of random cases")->check(CLI::Range(1, 100000000));
    prop_cmd->add_option("--seed", seed, "Master seed of the case generator");
    prop_cmd->add_option("--output-dir", failures_dir, "Where failing cases are written");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? exit_ok : exit_usage;
    }

    try {
        if (times_cmd->parsed()) return cmd_times(times, out);
        if (classify_cmd->parsed()) return cmd_classify(config_path, out);
        if (entropy_cmd->parsed()) return cmd_entropy(config_path, out);
        return cmd_properties(suite, cases, seed, failures_dir, out);
    } catch (const ConfigError& e) {
        err << "config error: " << e.what() << "\n";
        return exit_usage;
    } catch (const UsageError& e) {
        err << "usage error: " << e.what() << "\n";
        return exit_usage;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return exit_runtime;
    }
}

} // namespace hyptimes::app
