// SPDX-License-Identifier: Apache-2.0
#include "simlearn/report_io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <locale>
#include <ostream>
#include <sstream>

namespace simlearn {

using nlohmann::json;

namespace {

const char* termination_name(Termination t)
{
    return t == Termination::max_episodes ? "max_episodes" : "loss_delta_below_tolerance";
}

json finite_or_null(double v)
{
    return std::isfinite(v) ? json(v) : json(nullptr);
}

json diagonality_json(const DiagonalityMetrics& m)
{
    return {{"avg_diag_power", finite_or_null(m.avg_diag_power)},
            {"avg_offdiag_power", finite_or_null(m.avg_offdiag_power)},
            {"diag_variance_db", finite_or_null(m.diag_variance_db)},
            {"offdiag_suppression_db", finite_or_null(m.offdiag_suppression_db)}};
}

}  // namespace

std::string format_double(double v)
{
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(17) << v;
    return ss.str();
}

void write_train_record_csv(std::ostream& os, const TrainRecord& rec)
{
    os << "episode,loss_mean,loss_std,eta\n";
    os << 0 << ',' << format_double(rec.initial_loss_mean) << ',' << format_double(rec.initial_loss_std) << ','
       << format_double(0.0) << '\n';
    for (size_t t = 0; t < rec.loss_mean.size(); ++t)
        os << t + 1 << ',' << format_double(rec.loss_mean[t]) << ',' << format_double(rec.loss_std[t]) << ','
           << format_double(rec.eta[t]) << '\n';
}

void write_convergence_csv(std::ostream& os, const ExperimentReport& report)
{
    os << "episode,loss_mean,loss_std,eta\n";
    for (size_t t = 0; t < report.convergence.mean.size(); ++t)
        os << t << ',' << format_double(report.convergence.mean[t]) << ',' << format_double(report.convergence.std[t])
           << ',' << format_double(t == 0 ? 0.0 : report.eta[t - 1]) << '\n';
}

void write_metrics_csv(std::ostream& os, const std::vector<SnrMetrics>& metrics)
{
    os << "snr_db,ser,sum_rate,mse\n";
    for (const auto& m : metrics)
        os << format_double(m.snr_db) << ',' << format_double(m.ser) << ',' << format_double(m.sum_rate) << ','
           << format_double(m.mse) << '\n';
}

void write_constellation_csv(std::ostream& os, const std::vector<ConstellationPoint>& points)
{
    os << "slot,user,re,im,ideal_re,ideal_im\n";
    for (const auto& p : points)
        os << p.slot << ',' << p.user << ',' << format_double(p.received.real()) << ','
           << format_double(p.received.imag()) << ',' << format_double(p.ideal.real()) << ','
           << format_double(p.ideal.imag()) << '\n';
}

void write_diagonality_csv(std::ostream& os, const std::vector<DiagonalityMetrics>& layers)
{
    os << "layer,avg_diag_power,avg_offdiag_power,diag_variance_db,offdiag_suppression_db\n";
    for (size_t l = 0; l < layers.size(); ++l)
        os << l + 1 << ',' << format_double(layers[l].avg_diag_power) << ','
           << format_double(layers[l].avg_offdiag_power) << ',' << format_double(layers[l].diag_variance_db) << ','
           << format_double(layers[l].offdiag_suppression_db) << '\n';
}

void write_realizations_csv(std::ostream& os, const ExperimentReport& report)
{
    os << "realization,initial_loss,final_loss,episodes,termination,noise_free_mse\n";
    for (const auto& s : report.per_realization)
        os << s.index << ',' << format_double(s.initial_loss) << ',' << format_double(s.final_loss) << ','
           << s.episodes << ',' << termination_name(s.termination) << ',' << format_double(s.noise_free_mse) << '\n';
}

json report_summary(const ExperimentReport& report)
{
    json j;
    j["label"] = report.label;
    j["realizations"] = report.realizations;
    j["noise_free_mse"] = finite_or_null(report.noise_free_mse);
    j["final_loss_mean"] = report.convergence.mean.empty() ? json(nullptr) : finite_or_null(report.convergence.mean.back());
    json metrics = json::array();
    for (size_t i = 0; i < report.metrics.size(); ++i) {
        const auto& m = report.metrics[i];
        const auto& s = report.metrics_std[i];
        metrics.push_back({{"snr_db", m.snr_db},
                           {"ser", m.ser},
                           {"ser_std", s.ser},
                           {"sum_rate", m.sum_rate},
                           {"sum_rate_std", s.sum_rate},
                           {"mse", m.mse},
                           {"mse_std", s.mse}});
    }
    j["metrics"] = metrics;
    json layers = json::array();
    for (const auto& l : report.layers) layers.push_back(diagonality_json(l));
    j["layers"] = layers;
    return j;
}

void write_text_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw RuntimeError("cannot write '" + path.string() + "'");
    out << content;
    if (!out) throw RuntimeError("write failed for '" + path.string() + "'");
}

std::vector<std::filesystem::path> write_report(const ExperimentReport& report, const std::filesystem::path& dir,
                                                const std::vector<std::string>& formats, const json& manifest)
{
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec) throw RuntimeError("cannot create output directory '" + dir.string() + "': " + ec.message());
    std::vector<std::filesystem::path> files;
    auto emit = [&](const char* name, const std::string& content) {
        const auto p = dir / name;
        write_text_file(p, content);
        files.push_back(p);
    };
    auto has = [&](const char* f) { return std::find(formats.begin(), formats.end(), f) != formats.end(); };

    if (has("csv")) {
        std::ostringstream a, b, c, d, e;
        write_convergence_csv(a, report);
        emit("convergence.csv", a.str());
        write_metrics_csv(b, report.metrics);
        emit("metrics.csv", b.str());
        write_constellation_csv(c, report.constellation);
        emit("constellation.csv", c.str());
        write_diagonality_csv(d, report.layers);
        emit("diagonality.csv", d.str());
        write_realizations_csv(e, report);
        emit("realizations.csv", e.str());
    }
    if (has("json")) {
        json m = manifest;
        m["summary"] = report_summary(report);
        emit("manifest.json", m.dump(2) + "\n");
    }
    return files;
}

}  // namespace simlearn
