// SPDX-License-Identifier: Apache-2.0
#include "simlearn/experiments.hpp"

#include "simlearn/assignment.hpp"
#include "simlearn/metrics.hpp"
#include "simlearn/seeding.hpp"
#include "simlearn/signals.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <random>
#include <sstream>
#include <thread>

namespace simlearn {

namespace {

double deg2rad(double d)
{
    return d * kPi / 180.0;
}

void check_range(const std::array<double, 2>& r, const char* key)
{
    if (!(r[0] <= r[1]) || !std::isfinite(r[0]) || !std::isfinite(r[1]))
        throw ConfigError(std::string(key) + " must be a finite [low, high] pair with low <= high");
}

UserLayout propagation(const Scenario& sc)
{
    UserLayout layout;
    layout.rician_factor = sc.users.rician_factor;
    layout.pathloss_exponent = sc.users.pathloss_exponent;
    layout.reference_gain = std::pow(10.0, sc.users.reference_gain_db / 10.0);
    return layout;
}

Emitter draw_emitter(const UserRegion& region, std::mt19937_64& rng)
{
    auto draw = [&rng](const std::array<double, 2>& r) {
        return r[0] == r[1] ? r[0] : std::uniform_real_distribution<double>(r[0], r[1])(rng);
    };
    Emitter e;
    e.azimuth = deg2rad(draw(region.azimuth_deg));
    e.elevation = deg2rad(draw(region.elevation_deg));
    e.distance = draw(region.distance_m);
    return e;
}

bool jammed(const Scenario& sc)
{
    return sc.jamming.mode != JammingMode::none;
}

JammerPower jammer_power(const Scenario& sc, const Realization& rz)
{
    return {sc.jamming.power_spread[0] * rz.jammer_nominal_power, sc.jamming.power_spread[1] * rz.jammer_nominal_power};
}

struct Evaluation {
    double noise_free_mse = 0.0;
    std::vector<SnrMetrics> metrics;
    std::vector<ConstellationPoint> points;
};

Evaluation evaluate(const Scenario& sc, const Realization& rz, const ImpairmentConfig& imp, std::uint64_t variant,
                    bool dump)
{
    const int k = rz.channels.user_count();
    const int slots = sc.evaluation.payload_slots;
    const std::uint64_t i = static_cast<std::uint64_t>(rz.index);

    const EquivalentChannel reference = equivalent_channel(rz.channels, rz.trained, rz.assignment);
    const ImpairedModel model = impair(rz.trained, imp, derive_seed(sc.seed, "phase-noise", i, variant));
    const EquivalentChannel eq = equivalent_channel(rz.channels, model.phases, rz.assignment, model.response);

    const SymbolFrame payload = gen_frame(k, slots, derive_seed(sc.seed, "payload", i));
    CMatrix clean = eq.selected * payload.symbols;
    double jam_mean_power = 0.0;
    if (jammed(sc)) {
        const JammerPower jp = jammer_power(sc, rz);
        const JammerWaveform jw = jammer_waveform(slots, jp, derive_seed(sc.seed, "payload-jamming", i));
        clean += *eq.jammer_selected * jw.samples.transpose();
        jam_mean_power = JammerWaveform::base_variance * 0.5 * (jp.p_min + jp.p_max);
    }

    Evaluation out;
    const CMatrix normalized = normalize_slots(clean);
    out.noise_free_mse = constellation_mse(normalized, payload.symbols);
    if (dump) {
        const int n = std::min(slots, sc.evaluation.constellation_slots);
        for (int u = 0; u < n; ++u)
            for (int user = 0; user < k; ++user)
                out.points.push_back({u, user, normalized(user, u), payload.symbols(user, u)});
    }
    if (sc.evaluation.snr_db.empty()) return out;

    const CMatrix unit_noise = awgn(k, slots, 1.0, derive_seed(sc.seed, "payload-noise", i));
    for (double snr : sc.evaluation.snr_db) {
        const double nv = snr_to_noise_variance(snr, reference.selected);
        const CMatrix y = clean + std::sqrt(nv) * unit_noise;
        SnrMetrics m;
        m.snr_db = snr;
        m.ser = ser(y, payload.labels);
        m.mse = constellation_mse(normalize_slots(y), payload.symbols);
        m.sum_rate = sinr_and_sumrate(eq, nv, jam_mean_power).sum_rate;
        out.metrics.push_back(m);
    }
    return out;
}

template <class Fn>
void parallel_for(int count, int jobs, Fn&& fn)
{
    std::vector<std::exception_ptr> errors(count);
    std::atomic<int> next{0};
    auto worker = [&]() {
        for (int i = next++; i < count; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    const int threads = std::max(1, std::min(jobs, count));
    if (threads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < threads; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

struct TrainedRealization {
    Realization rz;
    std::vector<DiagonalityMetrics> layers;
    std::vector<Evaluation> evaluations;
};

ExperimentReport assemble(const Scenario& sc, const std::string& label, const std::vector<TrainedRealization>& runs,
                          size_t variant)
{
    ExperimentReport rep;
    rep.label = label;
    rep.realizations = static_cast<int>(runs.size());

    size_t longest = 0;
    for (const auto& r : runs) longest = std::max(longest, r.rz.record.loss_mean.size() + 1);
    std::vector<std::vector<double>> traces;
    for (const auto& r : runs) {
        const TrainRecord& rec = r.rz.record;
        const Evaluation& ev = r.evaluations[variant];
        RealizationSummary s;
        s.index = r.rz.index;
        s.initial_loss = rec.initial_loss_mean;
        s.final_loss = rec.loss_mean.empty() ? rec.initial_loss_mean : rec.loss_mean.back();
        s.episodes = rec.episodes_run;
        s.termination = rec.termination;
        s.loss_trace.push_back(rec.initial_loss_mean);
        s.loss_trace.insert(s.loss_trace.end(), rec.loss_mean.begin(), rec.loss_mean.end());
        s.noise_free_mse = ev.noise_free_mse;
        s.layers = r.layers;
        s.metrics = ev.metrics;
        std::vector<double> padded = s.loss_trace;
        padded.resize(longest, padded.back());
        traces.push_back(std::move(padded));
        rep.per_realization.push_back(std::move(s));
    }
    rep.convergence = monte_carlo_aggregate(traces);
    for (size_t t = 1; t < longest; ++t)
        rep.eta.push_back(lr_schedule(static_cast<int>(t), sc.training.eta0, sc.training.beta));

    const size_t points = sc.evaluation.snr_db.size();
    for (size_t p = 0; p < points; ++p) {
        std::vector<std::vector<double>> v;
        for (const auto& s : rep.per_realization)
            v.push_back({s.metrics[p].ser, s.metrics[p].sum_rate, s.metrics[p].mse});
        const CurveStats st = monte_carlo_aggregate(v);
        rep.metrics.push_back({sc.evaluation.snr_db[p], st.mean[0], st.mean[1], st.mean[2]});
        rep.metrics_std.push_back({sc.evaluation.snr_db[p], st.std[0], st.std[1], st.std[2]});
    }

    const size_t layers = rep.per_realization.front().layers.size();
    for (size_t l = 0; l < layers; ++l) {
        std::vector<DiagonalityMetrics> items;
        for (const auto& s : rep.per_realization) items.push_back(s.layers[l]);
        rep.layers.push_back(average_diagonality(items));
    }

    std::vector<std::vector<double>> mse;
    for (const auto& s : rep.per_realization) mse.push_back({s.noise_free_mse});
    rep.noise_free_mse = monte_carlo_aggregate(mse).mean[0];
    rep.constellation = runs.front().evaluations[variant].points;
    return rep;
}

std::vector<ExperimentReport> run_variants(const Scenario& sc, const std::vector<ImpairmentConfig>& variants,
                                           const std::vector<std::string>& labels)
{
    validate(sc);
    for (const auto& v : variants) {
        Scenario probe = sc;
        probe.impairments = v;
        validate(probe);
    }
    const int count = sc.evaluation.realizations;
    std::vector<TrainedRealization> runs(count);
    parallel_for(count, sc.jobs, [&](int i) {
        TrainedRealization& tr = runs[i];
        tr.rz = prepare_realization(sc, i);
        train_realization(sc, tr.rz);
        if (tr.rz.channels.user_count() >= 2) {
            for (const CMatrix& full : cumulative_layer_channels(tr.rz.channels, tr.rz.trained))
                tr.layers.push_back(diagonality_metrics(select_rows(full, tr.rz.assignment)));
        }
        for (size_t v = 0; v < variants.size(); ++v)
            tr.evaluations.push_back(evaluate(sc, tr.rz, variants[v], v, i == 0));
    });
    std::vector<ExperimentReport> out;
    for (size_t v = 0; v < variants.size(); ++v) out.push_back(assemble(sc, labels[v], runs, v));
    return out;
}

std::string value_label(SweepAxis axis, double v)
{
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << to_string(axis) << '=' << v;
    return ss.str();
}

ExperimentReport run_plain(const Scenario& sc, const std::string& label)
{
    return run_variants(sc, {sc.impairments}, {label}).front();
}

}  // namespace

void validate(const Scenario& sc)
{
    const SimGeometry geom = build_geometry(sc.geometry);
    if (sc.users.count < 1) throw ConfigError("users.count must be >= 1");
    if (geom.bs_antennas < sc.users.count) throw ConfigError("geometry.bs_antennas must be >= users.count");
    check_range(sc.users.azimuth_deg, "users.azimuth_deg");
    check_range(sc.users.elevation_deg, "users.elevation_deg");
    check_range(sc.users.distance_m, "users.distance_m");
    if (!(sc.users.distance_m[0] > 0.0)) throw ConfigError("users.distance_m must be positive");
    if (!(sc.users.rician_factor >= 0.0)) throw ConfigError("users.rician_factor must be >= 0");
    if (!std::isfinite(sc.users.pathloss_exponent)) throw ConfigError("users.pathloss_exponent must be finite");
    if (!std::isfinite(sc.users.reference_gain_db)) throw ConfigError("users.reference_gain_db must be finite");
    validate(sc.training);
    check_range(sc.jamming.power_spread, "jamming.power_spread");
    if (!(sc.jamming.power_spread[0] >= 0.0)) throw ConfigError("jamming.power_spread must be nonnegative");
    if (!std::isfinite(sc.jamming.jsr_db)) throw ConfigError("jamming.jsr_db must be finite");
    const auto& imp = sc.impairments;
    if (imp.quant_bits && (*imp.quant_bits < 1 || *imp.quant_bits > 52))
        throw ConfigError("impairments.quant_bits must be in [1, 52]");
    if (imp.coupling_alpha && !(*imp.coupling_alpha >= 0.0 && *imp.coupling_alpha < 1.0))
        throw ConfigError("impairments.coupling_alpha must be in [0, 1)");
    if (imp.phase_noise_sigma && !(*imp.phase_noise_sigma >= 0.0))
        throw ConfigError("impairments.phase_noise_sigma must be >= 0");
    if (sc.evaluation.realizations < 1) throw ConfigError("evaluation.realizations must be >= 1");
    if (sc.evaluation.payload_slots < 1) throw ConfigError("evaluation.payload_slots must be >= 1");
    if (sc.evaluation.constellation_slots < 0) throw ConfigError("evaluation.constellation_slots must be >= 0");
    for (double s : sc.evaluation.snr_db)
        if (!std::isfinite(s)) throw ConfigError("evaluation.snr_db entries must be finite");
    if (sc.jobs < 1) throw ConfigError("jobs must be >= 1");
}

Realization prepare_realization(const Scenario& sc, int index)
{
    Realization rz;
    rz.index = index;
    rz.geometry = build_geometry(sc.geometry);
    rz.layout = propagation(sc);
    const auto i = static_cast<std::uint64_t>(index);

    std::mt19937_64 rng(derive_seed(sc.seed, "layout", i));
    for (int k = 0; k < sc.users.count; ++k) rz.layout.users.push_back(draw_emitter(sc.users, rng));
    if (jammed(sc)) rz.jammer = draw_emitter(sc.users, rng);

    const RMatrix r_sqrt = correlation_sqrt(correlation_matrix(rz.geometry));
    CMatrix h(rz.geometry.atoms(), sc.users.count);
    for (int k = 0; k < sc.users.count; ++k)
        h.col(k) = rician_channel(rz.geometry, r_sqrt, rz.layout, rz.layout.users[k],
                                  derive_seed(sc.seed, "user-fading", i, static_cast<std::uint64_t>(k)));
    std::optional<CVector> hj;
    if (rz.jammer) {
        hj = rician_channel(rz.geometry, r_sqrt, rz.layout, *rz.jammer, derive_seed(sc.seed, "jammer-fading", i));
        double mean_user_gain = 0.0;
        for (const auto& u : rz.layout.users) mean_user_gain += pathloss_gain(rz.layout, u.distance);
        mean_user_gain /= rz.layout.count();
        rz.jammer_nominal_power =
            std::pow(10.0, sc.jamming.jsr_db / 10.0) * mean_user_gain / pathloss_gain(rz.layout, rz.jammer->distance);
    }
    rz.channels = make_channel_set(rz.geometry, h, std::move(hj));
    rz.initial = PhaseBook::uniform(rz.geometry.layers, rz.geometry.atoms(), derive_seed(sc.seed, "initial-phases", i));
    rz.assignment = assign_antennas(equivalent_channel(rz.channels, rz.initial));
    rz.trained = rz.initial;
    return rz;
}

void train_realization(const Scenario& sc, Realization& rz)
{
    const auto i = static_cast<std::uint64_t>(rz.index);
    const int k = rz.channels.user_count();
    const int u = sc.training.pilots;
    const SymbolFrame pilots = gen_frame(k, u, derive_seed(sc.seed, "pilots", i));

    std::optional<CVector> jam;
    if (sc.jamming.mode == JammingMode::aware)
        jam = jammer_waveform(u, jammer_power(sc, rz), derive_seed(sc.seed, "pilot-jamming", i)).samples;

    std::optional<CMatrix> noise;
    if (sc.training_snr_db) {
        const CMatrix sel = equivalent_channel(rz.channels, rz.initial, rz.assignment).selected;
        noise = awgn(k, u, snr_to_noise_variance(*sc.training_snr_db, sel), derive_seed(sc.seed, "pilot-noise", i));
    }
    TrainResult res = train(rz.channels, pilots.symbols, sc.training, rz.initial, rz.assignment, jam, noise);
    rz.trained = std::move(res.phases);
    rz.record = std::move(res.record);
}

CurveStats monte_carlo_aggregate(const std::vector<std::vector<double>>& per_realization)
{
    if (per_realization.empty()) throw RuntimeError("monte_carlo_aggregate: no realizations");
    const size_t n = per_realization.front().size();
    for (const auto& r : per_realization)
        if (r.size() != n) throw RuntimeError("monte_carlo_aggregate: realizations have mismatched grids");
    CurveStats out;
    out.mean.assign(n, 0.0);
    out.std.assign(n, 0.0);
    const double count = static_cast<double>(per_realization.size());
    for (size_t j = 0; j < n; ++j) {
        // shifted by the first sample so identical inputs reproduce exactly
        const double ref = per_realization.front()[j];
        double sum = 0.0;
        for (const auto& r : per_realization) sum += r[j] - ref;
        const double mean = ref + sum / count;
        double sq = 0.0;
        for (const auto& r : per_realization) sq += (r[j] - mean) * (r[j] - mean);
        out.mean[j] = mean;
        out.std[j] = std::sqrt(sq / count);
    }
    return out;
}

DiagonalityMetrics average_diagonality(const std::vector<DiagonalityMetrics>& items)
{
    if (items.empty()) throw RuntimeError("average_diagonality: empty input");
    DiagonalityMetrics out;
    for (const auto& m : items) {
        out.avg_diag_power += m.avg_diag_power;
        out.avg_offdiag_power += m.avg_offdiag_power;
        out.diag_variance += m.diag_variance;
    }
    const double n = static_cast<double>(items.size());
    out.avg_diag_power /= n;
    out.avg_offdiag_power /= n;
    out.diag_variance /= n;
    out.diag_variance_db = 10.0 * std::log10(out.diag_variance);
    out.offdiag_suppression_db = 10.0 * std::log10(out.avg_diag_power / out.avg_offdiag_power);
    return out;
}

ExperimentReport run_multiuser(const Scenario& sc)
{
    if (sc.jamming.mode != JammingMode::none) throw ConfigError("multiuser experiment requires jamming.mode = none");
    return run_plain(sc, "multiuser");
}

ExperimentReport run_jamming(const Scenario& sc)
{
    if (sc.jamming.mode == JammingMode::none) throw ConfigError("jamming experiment requires jamming.mode aware or agnostic");
    return run_plain(sc, sc.jamming.mode == JammingMode::aware ? "jamming-aware" : "jamming-agnostic");
}

SweepAxis parse_sweep_axis(const std::string& name)
{
    if (name == "N") return SweepAxis::atoms;
    if (name == "B") return SweepAxis::quant_bits;
    if (name == "eta0") return SweepAxis::eta0;
    if (name == "beta") return SweepAxis::beta;
    if (name == "sigma") return SweepAxis::phase_noise;
    if (name == "alpha") return SweepAxis::coupling;
    throw ConfigError("sweep.axis must be one of N, B, eta0, beta, sigma, alpha (got '" + name + "')");
}

std::string to_string(SweepAxis axis)
{
    switch (axis) {
    case SweepAxis::atoms: return "N";
    case SweepAxis::quant_bits: return "B";
    case SweepAxis::eta0: return "eta0";
    case SweepAxis::beta: return "beta";
    case SweepAxis::phase_noise: return "sigma";
    case SweepAxis::coupling: return "alpha";
    }
    return "?";
}

std::vector<ExperimentReport> run_sweep(const Scenario& sc, SweepAxis axis, const std::vector<double>& values)
{
    if (values.empty()) throw ConfigError("sweep.values must not be empty");
    std::vector<std::string> labels;
    for (double v : values) labels.push_back(value_label(axis, v));

    if (axis == SweepAxis::quant_bits || axis == SweepAxis::phase_noise || axis == SweepAxis::coupling) {
        std::vector<ImpairmentConfig> variants;
        for (double v : values) {
            ImpairmentConfig imp = sc.impairments;
            if (axis == SweepAxis::quant_bits) {
                if (v != std::floor(v)) throw ConfigError("sweep values for B must be integers");
                imp.quant_bits = static_cast<int>(v);
            } else if (axis == SweepAxis::phase_noise) {
                imp.phase_noise_sigma = v;
            } else {
                imp.coupling_alpha = v;
            }
            variants.push_back(imp);
        }
        return run_variants(sc, variants, labels);
    }

    std::vector<ExperimentReport> out;
    for (size_t i = 0; i < values.size(); ++i) {
        Scenario s = sc;
        const double v = values[i];
        if (axis == SweepAxis::atoms) {
            const auto side = static_cast<int>(std::lround(std::sqrt(v)));
            if (!(v >= 1.0) || static_cast<double>(side) * side != v)
                throw ConfigError("sweep values for N must be perfect squares");
            s.geometry.nx = side;
            s.geometry.ny = side;
        } else if (axis == SweepAxis::eta0) {
            s.training.eta0 = v;
        } else {
            s.training.beta = v;
        }
        out.push_back(run_plain(s, labels[i]));
    }
    return out;
}

std::vector<ConstellationPoint> distance_robustness(const Scenario& sc, const Realization& rz,
                                                    std::array<double, 2> scale_range, int slots)
{
    if (!(scale_range[0] > 0.0) || !(scale_range[1] >= scale_range[0]) || !std::isfinite(scale_range[1]))
        throw ConfigError("distance scale range must be positive with low <= high");
    if (slots < 1) throw ConfigError("distance robustness needs at least one slot");
    const int k = rz.channels.user_count();
    const auto i = static_cast<std::uint64_t>(rz.index);
    const EquivalentChannel eq = equivalent_channel(rz.channels, rz.trained, rz.assignment);
    const SymbolFrame frame = gen_frame(k, slots, derive_seed(sc.seed, "payload", i));
    std::mt19937_64 rng(derive_seed(sc.seed, "distance-scale", i));
    std::uniform_real_distribution<double> uni(scale_range[0], scale_range[1]);
    const double half_gamma = 0.5 * sc.users.pathloss_exponent;

    CMatrix scaled = frame.symbols;
    for (int u = 0; u < slots; ++u)
        for (int user = 0; user < k; ++user) {
            const double c = scale_range[0] == scale_range[1] ? scale_range[0] : uni(rng);
            scaled(user, u) *= std::pow(c, -half_gamma);
        }
    const CMatrix received = normalize_slots(eq.selected * scaled);
    std::vector<ConstellationPoint> out;
    for (int u = 0; u < slots; ++u)
        for (int user = 0; user < k; ++user) out.push_back({u, user, received(user, u), frame.symbols(user, u)});
    return out;
}

}  // namespace simlearn
