// SPDX-License-Identifier: Apache-2.0
#include "simlearn/config.hpp"

#include <openssl/evp.h>

#include <cmath>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace simlearn {

using nlohmann::json;

namespace {

// Walks one JSON object, remembering which keys were read so unknown keys can
// be reported with their full path.
class Section {
public:
    Section(const json& obj, std::string path) : obj_(obj), path_(std::move(path))
    {
        if (!obj_.is_object()) throw ConfigError("'" + label() + "' must be an object");
    }

    ~Section() = default;

    std::string key_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

    const json* find(const std::string& key)
    {
        seen_.insert(key);
        auto it = obj_.find(key);
        return it == obj_.end() ? nullptr : &*it;
    }

    const json& require(const std::string& key)
    {
        const json* v = find(key);
        if (!v) throw ConfigError("missing required key '" + key_path(key) + "'");
        return *v;
    }

    double number(const std::string& key, double fallback)
    {
        const json* v = find(key);
        return v ? as_number(*v, key) : fallback;
    }

    double required_number(const std::string& key) { return as_number(require(key), key); }

    int integer(const std::string& key, int fallback)
    {
        const json* v = find(key);
        return v ? as_int(*v, key) : fallback;
    }

    int required_integer(const std::string& key) { return as_int(require(key), key); }

    std::optional<double> optional_number(const std::string& key)
    {
        const json* v = find(key);
        if (!v || v->is_null()) return std::nullopt;
        return as_number(*v, key);
    }

    std::optional<int> optional_integer(const std::string& key)
    {
        const json* v = find(key);
        if (!v || v->is_null()) return std::nullopt;
        return as_int(*v, key);
    }

    std::string string(const std::string& key, const std::string& fallback)
    {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_string()) throw ConfigError("'" + key_path(key) + "' must be a string");
        return v->get<std::string>();
    }

    bool boolean(const std::string& key, bool fallback)
    {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_boolean()) throw ConfigError("'" + key_path(key) + "' must be a boolean");
        return v->get<bool>();
    }

    std::vector<double> numbers(const std::string& key, const std::vector<double>& fallback)
    {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_array()) throw ConfigError("'" + key_path(key) + "' must be an array of numbers");
        std::vector<double> out;
        for (const auto& e : *v) out.push_back(as_number(e, key));
        return out;
    }

    std::array<double, 2> pair(const std::string& key, const std::array<double, 2>& fallback)
    {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_array() || v->size() != 2) throw ConfigError("'" + key_path(key) + "' must be a [low, high] pair");
        return {as_number((*v)[0], key), as_number((*v)[1], key)};
    }

    std::vector<std::string> strings(const std::string& key, const std::vector<std::string>& fallback)
    {
        const json* v = find(key);
        if (!v) return fallback;
        if (!v->is_array()) throw ConfigError("'" + key_path(key) + "' must be an array of strings");
        std::vector<std::string> out;
        for (const auto& e : *v) {
            if (!e.is_string()) throw ConfigError("'" + key_path(key) + "' must be an array of strings");
            out.push_back(e.get<std::string>());
        }
        return out;
    }

    void finish() const
    {
        for (auto it = obj_.begin(); it != obj_.end(); ++it)
            if (!seen_.count(it.key())) throw ConfigError("unknown key '" + key_path(it.key()) + "'");
    }

private:
    std::string label() const { return path_.empty() ? "<root>" : path_; }

    double as_number(const json& v, const std::string& key) const
    {
        if (v.is_number()) return v.get<double>();
        if (v.is_string()) {
            const std::string s = v.get<std::string>();
            if (s == "inf") return std::numeric_limits<double>::infinity();
        }
        throw ConfigError("'" + key_path(key) + "' must be a number");
    }

    int as_int(const json& v, const std::string& key) const
    {
        if (!v.is_number_integer()) throw ConfigError("'" + key_path(key) + "' must be an integer");
        const auto x = v.get<std::int64_t>();
        if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max())
            throw ConfigError("'" + key_path(key) + "' is out of range");
        return static_cast<int>(x);
    }

    const json& obj_;
    std::string path_;
    std::set<std::string> seen_;
};

json number_json(double v)
{
    if (std::isinf(v) && v > 0) return "inf";
    return v;
}

template <class T>
json optional_json(const std::optional<T>& v)
{
    return v ? json(*v) : json(nullptr);
}

JammingMode parse_mode(const std::string& s)
{
    if (s == "none") return JammingMode::none;
    if (s == "aware") return JammingMode::aware;
    if (s == "agnostic") return JammingMode::agnostic;
    throw ConfigError("'jamming.mode' must be one of none, aware, agnostic");
}

std::string mode_name(JammingMode m)
{
    switch (m) {
    case JammingMode::none: return "none";
    case JammingMode::aware: return "aware";
    case JammingMode::agnostic: return "agnostic";
    }
    return "none";
}

}  // namespace

json to_json(const RunConfig& cfg)
{
    const Scenario& sc = cfg.scenario;
    const auto& g = sc.geometry;
    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["experiment"] = cfg.experiment;
    doc["seed"] = sc.seed;
    doc["jobs"] = sc.jobs;
    doc["geometry"] = {{"layers", g.layers},
                       {"nx", g.nx},
                       {"ny", g.ny},
                       {"wavelength_m", g.wavelength},
                       {"atom_spacing_wl", g.atom_spacing},
                       {"thickness_wl", g.total_thickness},
                       {"bs_antennas", g.bs_antennas},
                       {"bs_spacing_wl", g.bs_spacing},
                       {"bs_standoff_wl", g.bs_standoff}};
    const auto& u = sc.users;
    doc["users"] = {{"count", u.count},
                    {"azimuth_deg", u.azimuth_deg},
                    {"elevation_deg", u.elevation_deg},
                    {"distance_m", u.distance_m},
                    {"rician_factor", number_json(u.rician_factor)},
                    {"pathloss_exponent", u.pathloss_exponent},
                    {"reference_gain_db", u.reference_gain_db}};
    const auto& t = sc.training;
    doc["training"] = {{"eta0", t.eta0},
                       {"beta", t.beta},
                       {"episodes", t.episodes},
                       {"tolerance", t.tolerance},
                       {"pilots", t.pilots},
                       {"pilot_snr_db", optional_json(sc.training_snr_db)}};
    doc["jamming"] = {{"mode", mode_name(sc.jamming.mode)},
                      {"jsr_db", sc.jamming.jsr_db},
                      {"power_spread", sc.jamming.power_spread}};
    doc["impairments"] = {{"quant_bits", optional_json(sc.impairments.quant_bits)},
                          {"coupling_alpha", optional_json(sc.impairments.coupling_alpha)},
                          {"phase_noise_sigma", optional_json(sc.impairments.phase_noise_sigma)}};
    doc["evaluation"] = {{"snr_db", sc.evaluation.snr_db},
                         {"realizations", sc.evaluation.realizations},
                         {"payload_slots", sc.evaluation.payload_slots},
                         {"constellation_slots", sc.evaluation.constellation_slots}};
    doc["sweep"] = cfg.sweep ? json{{"axis", cfg.sweep->axis}, {"values", cfg.sweep->values}} : json(nullptr);
    doc["output"] = {{"dir", cfg.output.dir},
                     {"formats", cfg.output.formats},
                     {"verbosity", cfg.output.verbosity},
                     {"timings", cfg.output.timings}};
    return doc;
}

RunConfig config_from_json(const json& doc)
{
    RunConfig cfg;
    Section root(doc, "");
    const json& version = root.require("schema_version");
    if (!version.is_number_integer() || version.get<std::int64_t>() != kSchemaVersion)
        throw ConfigError("unsupported 'schema_version' (expected " + std::to_string(kSchemaVersion) + ")");
    cfg.experiment = root.string("experiment", cfg.experiment);
    if (cfg.experiment != "multiuser" && cfg.experiment != "jamming" && cfg.experiment != "sweep")
        throw ConfigError("'experiment' must be one of multiuser, jamming, sweep");
    Scenario& sc = cfg.scenario;
    if (const json* seed = root.find("seed")) {
        if (!seed->is_number_unsigned()) throw ConfigError("'seed' must be a nonnegative integer");
        sc.seed = seed->get<std::uint64_t>();
    }
    sc.jobs = root.integer("jobs", sc.jobs);

    {
        Section s(root.require("geometry"), "geometry");
        auto& g = sc.geometry;
        g.layers = s.required_integer("layers");
        g.nx = s.required_integer("nx");
        g.ny = s.required_integer("ny");
        g.wavelength = s.number("wavelength_m", g.wavelength);
        g.atom_spacing = s.number("atom_spacing_wl", g.atom_spacing);
        g.total_thickness = s.number("thickness_wl", g.total_thickness);
        g.bs_antennas = s.integer("bs_antennas", g.bs_antennas);
        g.bs_spacing = s.number("bs_spacing_wl", g.bs_spacing);
        g.bs_standoff = s.number("bs_standoff_wl", g.bs_standoff);
        s.finish();
    }
    {
        Section s(root.require("users"), "users");
        auto& u = sc.users;
        u.count = s.required_integer("count");
        u.azimuth_deg = s.pair("azimuth_deg", u.azimuth_deg);
        u.elevation_deg = s.pair("elevation_deg", u.elevation_deg);
        u.distance_m = s.pair("distance_m", u.distance_m);
        u.rician_factor = s.number("rician_factor", u.rician_factor);
        u.pathloss_exponent = s.number("pathloss_exponent", u.pathloss_exponent);
        u.reference_gain_db = s.number("reference_gain_db", u.reference_gain_db);
        s.finish();
    }
    if (const json* v = root.find("training")) {
        Section s(*v, "training");
        auto& t = sc.training;
        t.eta0 = s.number("eta0", t.eta0);
        t.beta = s.number("beta", t.beta);
        t.episodes = s.integer("episodes", t.episodes);
        t.tolerance = s.number("tolerance", t.tolerance);
        t.pilots = s.integer("pilots", t.pilots);
        sc.training_snr_db = s.optional_number("pilot_snr_db");
        s.finish();
    }
    if (const json* v = root.find("jamming")) {
        Section s(*v, "jamming");
        sc.jamming.mode = parse_mode(s.string("mode", "none"));
        sc.jamming.jsr_db = s.number("jsr_db", sc.jamming.jsr_db);
        sc.jamming.power_spread = s.pair("power_spread", sc.jamming.power_spread);
        s.finish();
    }
    if (const json* v = root.find("impairments")) {
        Section s(*v, "impairments");
        sc.impairments.quant_bits = s.optional_integer("quant_bits");
        sc.impairments.coupling_alpha = s.optional_number("coupling_alpha");
        sc.impairments.phase_noise_sigma = s.optional_number("phase_noise_sigma");
        s.finish();
    }
    if (const json* v = root.find("evaluation")) {
        Section s(*v, "evaluation");
        auto& e = sc.evaluation;
        e.snr_db = s.numbers("snr_db", e.snr_db);
        e.realizations = s.integer("realizations", e.realizations);
        e.payload_slots = s.integer("payload_slots", e.payload_slots);
        e.constellation_slots = s.integer("constellation_slots", e.constellation_slots);
        s.finish();
    }
    if (const json* v = root.find("sweep"); v && !v->is_null()) {
        Section s(*v, "sweep");
        SweepConfig sw;
        if (!s.require("axis").is_string()) throw ConfigError("'sweep.axis' must be a string");
        sw.axis = s.string("axis", "");
        parse_sweep_axis(sw.axis);
        sw.values = s.numbers("values", {});
        if (!s.find("values")) throw ConfigError("missing required key 'sweep.values'");
        s.finish();
        cfg.sweep = sw;
    }
    if (const json* v = root.find("output")) {
        Section s(*v, "output");
        cfg.output.dir = s.string("dir", cfg.output.dir);
        cfg.output.formats = s.strings("formats", cfg.output.formats);
        for (const auto& f : cfg.output.formats)
            if (f != "csv" && f != "json") throw ConfigError("'output.formats' entries must be csv or json");
        cfg.output.verbosity = s.integer("verbosity", cfg.output.verbosity);
        cfg.output.timings = s.boolean("timings", cfg.output.timings);
        s.finish();
    }
    root.finish();

    if (cfg.experiment == "sweep" && !cfg.sweep) throw ConfigError("missing required key 'sweep' for sweep experiment");
    validate(sc);
    return cfg;
}

json read_json_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ConfigError("cannot read config file '" + path + "'");
    std::stringstream ss;
    ss << in.rdbuf();
    try {
        return json::parse(ss.str());
    } catch (const json::parse_error& e) {
        throw ConfigError("config file '" + path + "' is not valid JSON: " + e.what());
    }
}

RunConfig load_config(const std::string& path)
{
    return config_from_json(read_json_file(path));
}

void apply_override(json& doc, const std::string& assignment)
{
    const auto eq = assignment.find('=');
    if (eq == std::string::npos || eq == 0) throw ConfigError("override must have the form key=value: '" + assignment + "'");
    const std::string key = assignment.substr(0, eq);
    const std::string text = assignment.substr(eq + 1);
    json value;
    try {
        value = json::parse(text);
    } catch (const json::parse_error&) {
        value = text;
    }
    json* node = &doc;
    std::stringstream parts(key);
    std::string part;
    std::vector<std::string> path;
    while (std::getline(parts, part, '.')) {
        if (part.empty()) throw ConfigError("override key has an empty component: '" + key + "'");
        path.push_back(part);
    }
    for (size_t i = 0; i + 1 < path.size(); ++i) {
        if (node->is_null()) *node = json::object();
        if (!node->is_object()) throw ConfigError("override key '" + key + "' descends into a non-object");
        node = &(*node)[path[i]];
    }
    if (node->is_null()) *node = json::object();
    if (!node->is_object()) throw ConfigError("override key '" + key + "' descends into a non-object");
    (*node)[path.back()] = value;
}

std::string canonical_dump(const json& doc)
{
    return doc.dump();
}

std::string sha256_hex(const std::string& bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(), nullptr) != 1)
        throw RuntimeError("SHA-256 computation failed");
    static const char* hex = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
        out.push_back(hex[digest[i] >> 4]);
        out.push_back(hex[digest[i] & 15]);
    }
    return out;
}

std::string config_hash(const RunConfig& cfg)
{
    return sha256_hex(canonical_dump(to_json(cfg)));
}

std::string library_version()
{
    return SIMLEARN_VERSION;
}

}  // namespace simlearn
