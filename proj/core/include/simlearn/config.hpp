// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/experiments.hpp"

#include <nlohmann/json.hpp>
#include <string>
#include <vector>

namespace simlearn {

inline constexpr int kSchemaVersion = 1;

struct SweepConfig {
    std::string axis;
    std::vector<double> values;

    bool operator==(const SweepConfig&) const = default;
};

struct OutputConfig {
    std::string dir = "out";
    std::vector<std::string> formats{"csv", "json"};
    int verbosity = 1;
    bool timings = false;

    bool operator==(const OutputConfig&) const = default;
};

struct RunConfig {
    std::string experiment = "multiuser";
    Scenario scenario;
    std::optional<SweepConfig> sweep;
    OutputConfig output;

    bool operator==(const RunConfig&) const = default;
};

nlohmann::json to_json(const RunConfig& cfg);
RunConfig config_from_json(const nlohmann::json& doc);
RunConfig load_config(const std::string& path);
nlohmann::json read_json_file(const std::string& path);

// Sets a dotted key path (e.g. "training.eta0") from "key=value" text; the
// value is parsed as JSON and falls back to a plain string.
void apply_override(nlohmann::json& doc, const std::string& assignment);

std::string canonical_dump(const nlohmann::json& doc);
std::string sha256_hex(const std::string& bytes);
std::string config_hash(const RunConfig& cfg);

std::string library_version();

}  // namespace simlearn
