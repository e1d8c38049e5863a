// SPDX-License-Identifier: Apache-2.0
// Command-line front end: channel dumps, single trainings, experiments, self-checks.

#include "simlearn/simlearn.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

namespace fs = std::filesystem;
using nlohmann::json;
using namespace simlearn;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfig = 1;
constexpr int kExitRuntime = 2;

struct Options {
    std::string config;
    std::optional<std::uint64_t> seed;
    std::optional<std::string> out;
    std::optional<std::string> snr;
    std::vector<std::string> overrides;
    std::optional<int> jobs;
    bool timings = false;
};

void add_common(CLI::App* cmd, Options& o)
{
    cmd->add_option("--config", o.config, "JSON run configuration")->required();
    cmd->add_option("--seed", o.seed, "master seed (overrides config)");
    cmd->add_option("--out", o.out, "output directory (overrides config)");
    cmd->add_option("--snr", o.snr, "comma-separated SNR grid in dB (overrides config)");
    cmd->add_option("--override", o.overrides, "set a config key, e.g. training.eta0=0.95")->take_all();
    cmd->add_option("--jobs", o.jobs, "worker threads for realizations");
    cmd->add_flag("--timings", o.timings, "record wall-clock timings in the manifest");
}

json snr_list(const std::string& text)
{
    json arr = json::array();
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        if (item.empty()) continue;
        try {
            size_t used = 0;
            const double v = std::stod(item, &used);
            if (used != item.size()) throw std::invalid_argument(item);
            arr.push_back(v);
        } catch (const std::exception&) {
            throw ConfigError("--snr expects comma-separated numbers, got '" + item + "'");
        }
    }
    return arr;
}

RunConfig resolve(const Options& o)
{
    json doc = read_json_file(o.config);
    if (!doc.is_object()) throw ConfigError("config root must be an object");
    for (const auto& ov : o.overrides) apply_override(doc, ov);
    if (o.seed) doc["seed"] = *o.seed;
    if (o.out) doc["output"]["dir"] = *o.out;
    if (o.snr) doc["evaluation"]["snr_db"] = snr_list(*o.snr);
    if (o.jobs) doc["jobs"] = *o.jobs;
    if (o.timings) doc["output"]["timings"] = true;
    return config_from_json(doc);
}

json manifest(const RunConfig& cfg, const std::string& command)
{
    json m;
    m["tool"] = "simlearn";
    m["version"] = library_version();
    m["command"] = command;
    m["schema_version"] = kSchemaVersion;
    m["config"] = to_json(cfg);
    m["config_hash"] = config_hash(cfg);
    m["seeds"] = {{"master", cfg.scenario.seed},
                  {"realizations", cfg.scenario.evaluation.realizations},
                  {"derivation", "derive_seed(master, purpose, realization[, sub])"}};
    return m;
}

class Stopwatch {
public:
    double seconds() const
    {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

void log(const RunConfig& cfg, const std::string& msg)
{
    if (cfg.output.verbosity > 0) std::cerr << msg << '\n';
}

std::string sanitize(const std::string& label)
{
    std::string out;
    for (char c : label) out.push_back(std::isalnum(static_cast<unsigned char>(c)) || c == '.' || c == '-' ? c : '_');
    return out;
}

int cmd_channels(const RunConfig& cfg)
{
    Stopwatch sw;
    const Realization rz = prepare_realization(cfg.scenario, 0);
    const fs::path dir = cfg.output.dir;
    fs::create_directories(dir);
    std::ostringstream ss;
    write_channel_set(ss, rz.channels,
                      {rz.geometry.wavelength, cfg.scenario.seed, rz.geometry.nx, rz.geometry.ny});
    write_text_file(dir / "channels.txt", ss.str());
    json m = manifest(cfg, "channels");
    if (cfg.output.timings) m["timings"] = {{"total_s", sw.seconds()}};
    write_text_file(dir / "manifest.json", m.dump(2) + "\n");
    log(cfg, "wrote " + (dir / "channels.txt").string());
    return kExitOk;
}

int cmd_train(const RunConfig& cfg)
{
    Stopwatch sw;
    Realization rz = prepare_realization(cfg.scenario, 0);
    train_realization(cfg.scenario, rz);
    const fs::path dir = cfg.output.dir;
    fs::create_directories(dir);
    std::ostringstream rec, pb;
    write_train_record_csv(rec, rz.record);
    write_phase_book(pb, rz.trained);
    write_text_file(dir / "train_record.csv", rec.str());
    write_text_file(dir / "phasebook.txt", pb.str());
    json m = manifest(cfg, "train");
    m["seeds"]["realizations"] = 1;
    m["training"] = {{"episodes_run", rz.record.episodes_run},
                     {"termination", rz.record.termination == Termination::max_episodes ? "max_episodes"
                                                                                         : "loss_delta_below_tolerance"},
                     {"initial_loss", rz.record.initial_loss_mean},
                     {"final_loss", rz.record.loss_mean.empty() ? rz.record.initial_loss_mean : rz.record.loss_mean.back()},
                     {"assignment", rz.assignment.antenna_of_user}};
    if (cfg.output.timings) m["timings"] = {{"total_s", sw.seconds()}};
    write_text_file(dir / "manifest.json", m.dump(2) + "\n");
    log(cfg, "episodes " + std::to_string(rz.record.episodes_run) + ", wrote " + dir.string());
    return kExitOk;
}

int cmd_experiment(const RunConfig& cfg, const std::string& command)
{
    Stopwatch sw;
    const fs::path dir = cfg.output.dir;
    if (command == "sweep") {
        if (!cfg.sweep) throw ConfigError("missing required key 'sweep' for sweep experiment");
        const auto reports = run_sweep(cfg.scenario, parse_sweep_axis(cfg.sweep->axis), cfg.sweep->values);
        json top = manifest(cfg, command);
        json entries = json::array();
        for (const auto& r : reports) {
            const fs::path sub = dir / sanitize(r.label);
            json m = manifest(cfg, command);
            m["label"] = r.label;
            write_report(r, sub, cfg.output.formats, m);
            entries.push_back({{"label", r.label}, {"dir", sanitize(r.label)}});
        }
        top["reports"] = entries;
        if (cfg.output.timings) top["timings"] = {{"total_s", sw.seconds()}};
        fs::create_directories(dir);
        write_text_file(dir / "manifest.json", top.dump(2) + "\n");
        log(cfg, "wrote " + std::to_string(reports.size()) + " reports under " + dir.string());
        return kExitOk;
    }
    const ExperimentReport r = command == "multiuser" ? run_multiuser(cfg.scenario) : run_jamming(cfg.scenario);
    json m = manifest(cfg, command);
    m["label"] = r.label;
    if (cfg.output.timings) m["timings"] = {{"total_s", sw.seconds()}};
    write_report(r, dir, cfg.output.formats, m);
    log(cfg, "wrote " + dir.string());
    return kExitOk;
}

int cmd_validate()
{
    const auto results = run_validation_suite();
    int passed = 0;
    for (const auto& r : results) {
        std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name;
        if (!r.passed) std::cout << ": " << r.detail;
        std::cout << '\n';
        passed += r.passed ? 1 : 0;
    }
    std::cout << passed << "/" << results.size() << " checks passed\n";
    return passed == static_cast<int>(results.size()) ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Stacked intelligent metasurface training and link simulation"};
    app.require_subcommand(1);
    Options opts;
    std::string chosen;
    for (const char* name : {"channels", "train", "multiuser", "jamming", "sweep"}) {
        auto* cmd = app.add_subcommand(name);
        add_common(cmd, opts);
        cmd->callback([&chosen, name] { chosen = name; });
    }
    app.add_subcommand("validate", "run the invariant and oracle checks")->callback([&chosen] { chosen = "validate"; });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }

    try {
        if (chosen == "validate") return cmd_validate();
        const RunConfig cfg = resolve(opts);
        if (chosen == "channels") return cmd_channels(cfg);
        if (chosen == "train") return cmd_train(cfg);
        return cmd_experiment(cfg, chosen);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << '\n';
        return kExitConfig;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitRuntime;
    }
}
