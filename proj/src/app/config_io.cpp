#include "hyptimes/app/config_io.hpp"

#include "hyptimes/errors.hpp"

#include <json.hpp>

#include <fstream>
#include <set>
#include <sstream>

namespace hyptimes::app {

namespace {

using nlohmann::json;

void allow_only(const json& obj, const std::string& path, std::set<std::string> keys) {
    if (!obj.is_object()) throw ConfigError(path.empty() ? "<root>" : path, "expected an object");
    for (const auto& [key, value] : obj.items())
        if (!keys.count(key)) throw ConfigError(path.empty() ? key : path + "." + key, "unknown field");
}

std::uint64_t as_unsigned(const json& v, const std::string& path) {
    if (v.is_number_unsigned()) return v.get<std::uint64_t>();
    if (v.is_number_integer()) throw ConfigError(path, "must be nonnegative");
    throw ConfigError(path, "expected an integer");
}

double as_real(const json& v, const std::string& path) {
    if (!v.is_number()) throw ConfigError(path, "expected a number");
    return v.get<double>();
}

int as_int(const json& v, const std::string& path) {
    if (!v.is_number_integer()) throw ConfigError(path, "expected an integer");
    const auto value = v.get<std::int64_t>();
    if (value < -1000000 || value > 1000000) throw ConfigError(path, "out of range");
    return static_cast<int>(value);
}

std::string as_string(const json& v, const std::string& path) {
    if (!v.is_string()) throw ConfigError(path, "expected a string");
    return v.get<std::string>();
}

template <typename T, typename Read>
std::vector<T> as_list(const json& v, const std::string& path, Read read) {
    if (!v.is_array()) throw ConfigError(path, "expected an array");
    std::vector<T> out;
    for (std::size_t j = 0; j < v.size(); ++j)
        out.push_back(read(v[j], path + "[" + std::to_string(j) + "]"));
    return out;
}

} // namespace

ExperimentConfig parse_config(const std::string& text) {
    json root;
    try {
        root = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ConfigError("", std::string("invalid JSON: ") + e.what());
    }
    allow_only(root, "",
               {"system", "master_seed", "seeds", "horizon", "burn_in", "delta_grid", "m_grid",
                "candidate", "resolution", "test_family_size", "output_dir", "decay_steps",
                "segment_half_length", "sample_points"});

    ExperimentConfig c;
    if (!root.contains("system")) throw ConfigError("system", "missing required field");
    const json& sys = root["system"];
    allow_only(sys, "system", {"name", "params"});
    if (!sys.contains("name")) throw ConfigError("system.name", "missing required field");
    c.system = as_string(sys["name"], "system.name");
    if (sys.contains("params")) {
        if (!sys["params"].is_object()) throw ConfigError("system.params", "expected an object");
        for (const auto& [key, value] : sys["params"].items())
            c.params[key] = as_real(value, "system.params." + key);
    }

    const auto uint_field = [&](const char* key, auto& target) {
        if (root.contains(key))
            target = static_cast<std::remove_reference_t<decltype(target)>>(as_unsigned(root[key], key));
    };
    uint_field("master_seed", c.master_seed);
    uint_field("seeds", c.seeds);
    uint_field("horizon", c.horizon);
    uint_field("burn_in", c.burn_in);
    uint_field("decay_steps", c.decay_steps);
    if (root.contains("resolution")) c.resolution = as_int(root["resolution"], "resolution");
    if (root.contains("test_family_size"))
        c.test_family_size = as_int(root["test_family_size"], "test_family_size");
    if (root.contains("output_dir")) c.output_dir = as_string(root["output_dir"], "output_dir");
    if (root.contains("segment_half_length"))
        c.segment_half_length = as_real(root["segment_half_length"], "segment_half_length");
    if (root.contains("delta_grid"))
        c.delta_grid = as_list<double>(root["delta_grid"], "delta_grid", as_real);
    if (root.contains("m_grid"))
        c.m_grid = as_list<std::size_t>(root["m_grid"], "m_grid", [](const json& v, const std::string& p) {
            return static_cast<std::size_t>(as_unsigned(v, p));
        });
    if (root.contains("sample_points"))
        c.sample_points = as_list<std::vector<double>>(
            root["sample_points"], "sample_points",
            [](const json& v, const std::string& p) { return as_list<double>(v, p, as_real); });

    if (root.contains("candidate")) {
        const json& cand = root["candidate"];
        allow_only(cand, "candidate", {"delta", "m", "n", "p"});
        if (cand.contains("delta")) c.candidate.delta = as_real(cand["delta"], "candidate.delta");
        if (cand.contains("m")) c.candidate.window_m = as_unsigned(cand["m"], "candidate.m");
        if (cand.contains("n")) c.candidate.window_n = as_unsigned(cand["n"], "candidate.n");
        if (cand.contains("p")) c.candidate.window_p = as_unsigned(cand["p"], "candidate.p");
    }

    validate(c);
    // Parameter names and ranges are the system's business; surface them as config errors.
    try {
        const SystemSpec system = make_system(c.system, c.params);
        for (std::size_t j = 0; j < c.sample_points.size(); ++j)
            if (static_cast<int>(c.sample_points[j].size()) != system.dim())
                throw ConfigError("sample_points[" + std::to_string(j) + "]",
                                  "expected " + std::to_string(system.dim()) + " coordinates");
        if (system.dim() * c.resolution > 63) throw ConfigError("resolution", "too many atoms");
    } catch (const InvalidParameter& e) {
        throw ConfigError("system.params", e.what());
    }
    return c;
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error("cannot read config file " + path.string());
    std::ostringstream text;
    text << in.rdbuf();
    return parse_config(text.str());
}

std::string dump_config(const ExperimentConfig& c) {
    json params = json::object();
    for (const auto& [k, v] : c.params) params[k] = v;
    json out = {
        {"system", {{"name", c.system}, {"params", params}}},
        {"master_seed", c.master_seed},
        {"seeds", c.seeds},
        {"horizon", c.horizon},
        {"burn_in", c.burn_in},
        {"delta_grid", c.delta_grid},
        {"m_grid", c.m_grid},
        {"candidate",
         {{"delta", c.candidate.delta},
          {"m", c.candidate.window_m},
          {"n", c.candidate.window_n},
          {"p", c.candidate.window_p}}},
        {"resolution", c.resolution},
        {"test_family_size", c.test_family_size},
        {"output_dir", c.output_dir},
        {"decay_steps", c.decay_steps},
        {"segment_half_length", c.segment_half_length},
        {"sample_points", c.sample_points},
    };
    return out.dump(2) + "\n";
}

} // namespace hyptimes::app
