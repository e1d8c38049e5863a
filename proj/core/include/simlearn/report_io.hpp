// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/config.hpp"
#include "simlearn/experiments.hpp"

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

namespace simlearn {

// Shortest representation is not used; every float is printed with 17
// significant digits in the classic locale.
std::string format_double(double v);

void write_train_record_csv(std::ostream& os, const TrainRecord& rec);
void write_convergence_csv(std::ostream& os, const ExperimentReport& report);
void write_metrics_csv(std::ostream& os, const std::vector<SnrMetrics>& metrics);
void write_constellation_csv(std::ostream& os, const std::vector<ConstellationPoint>& points);
void write_diagonality_csv(std::ostream& os, const std::vector<DiagonalityMetrics>& layers);
void write_realizations_csv(std::ostream& os, const ExperimentReport& report);

nlohmann::json report_summary(const ExperimentReport& report);

// Writes the report files into dir (created if needed) and returns their paths.
// The manifest is supplied by the caller and written as manifest.json when
// "json" is among the formats.
std::vector<std::filesystem::path> write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                                const std::vector<std::string>& formats,
                                                const nlohmann::json& manifest);

void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace simlearn
