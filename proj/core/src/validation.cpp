// SPDX-License-Identifier: Apache-2.0
#include "simlearn/validation.hpp"

#include "simlearn/simlearn.hpp"

#include <cmath>
#include <functional>
#include <random>
#include <sstream>

namespace simlearn {

namespace {

struct Toy {
    ChannelSet ch;
    PhaseBook pb;
    AntennaAssignment assignment;
    CMatrix pilots;
};

Toy make_toy(int layers, int side, int users, int antennas, std::uint64_t seed)
{
    GeometryParams gp;
    gp.layers = layers;
    gp.nx = side;
    gp.ny = side;
    gp.bs_antennas = antennas;
    const SimGeometry geom = build_geometry(gp);
    const CMatrix h = awgn(geom.atoms(), users, 1.0, derive_seed(seed, "toy-h"));
    Toy t{make_channel_set(geom, h), PhaseBook::uniform(layers, geom.atoms(), derive_seed(seed, "toy-phase")), {}, {}};
    t.assignment = assign_antennas(equivalent_channel(t.ch, t.pb));
    t.pilots = gen_frame(users, 8, derive_seed(seed, "toy-pilots")).symbols;
    return t;
}

std::string fmt(double v)
{
    std::ostringstream ss;
    ss << v;
    return ss.str();
}

CheckResult check(const std::string& name, const std::function<std::string()>& body)
{
    try {
        const std::string failure = body();
        return {name, failure.empty(), failure};
    } catch (const std::exception& e) {
        return {name, false, std::string("exception: ") + e.what()};
    }
}

}  // namespace

std::vector<CheckResult> run_validation_suite()
{
    std::vector<CheckResult> out;

    out.push_back(check("loss range and scale invariance", [] {
        std::mt19937_64 rng(7);
        for (int i = 0; i < 200; ++i) {
            const CVector r = awgn(4, 1, 1.0, rng()).col(0);
            const CVector s = awgn(4, 1, 1.0, rng()).col(0);
            const double l = loss(r, s);
            if (!(l >= 0.0 && l <= 4.0)) return "loss outside [0, 4]: " + fmt(l);
            if (std::abs(loss(3.7 * r, s) - l) > 1e-12 || std::abs(loss(r, 0.2 * s) - l) > 1e-12)
                return std::string("loss not invariant to positive scaling");
        }
        return std::string();
    }));

    out.push_back(check("analytic gradient matches finite differences", [] {
        const Toy t = make_toy(2, 3, 2, 4, 11);
        double worst = 0.0;
        for (int layer = 1; layer <= 2; ++layer) {
            const RVector g = layer_gradient(t.ch, t.pb, t.pilots, std::nullopt, t.assignment, layer);
            for (int n = 0; n < t.pb.atoms(); ++n) {
                const double h = 1e-5;
                RMatrix plus = t.pb.matrix(), minus = t.pb.matrix();
                plus(layer - 1, n) += h;
                minus(layer - 1, n) -= h;
                const double fd = (batch_loss(t.ch, PhaseBook(plus), t.pilots, std::nullopt, t.assignment).mean -
                                   batch_loss(t.ch, PhaseBook(minus), t.pilots, std::nullopt, t.assignment).mean) /
                                  (2.0 * h);
                worst = std::max(worst, std::abs(fd - g(n)) / std::max(std::abs(fd), 1e-6));
            }
        }
        return worst < 1e-4 ? std::string() : "max relative error " + fmt(worst);
    }));

    out.push_back(check("forward agrees with equivalent channel", [] {
        const Toy t = make_toy(3, 4, 3, 5, 12);
        const EquivalentChannel eq = equivalent_channel(t.ch, t.pb);
        for (int i = 0; i < 20; ++i) {
            const CVector s = awgn(3, 1, 1.0, derive_seed(5, "s", i)).col(0);
            const CVector ref = eq.full * s;
            const double err = (forward(t.ch, t.pb, s) - ref).norm() / ref.norm();
            if (err > 1e-12) return "relative error " + fmt(err);
        }
        return std::string();
    }));

    out.push_back(check("FFT inter-layer operator matches dense product", [] {
        GeometryParams gp;
        gp.layers = 2;
        gp.nx = 8;
        gp.ny = 8;
        const SimGeometry geom = build_geometry(gp);
        const GridOperator op(inter_layer_matrix(geom, 2), gp.nx, gp.ny);
        if (!op.fast()) return std::string("operator did not detect grid structure");
        const CMatrix x = awgn(geom.atoms(), 3, 1.0, 99);
        const double e1 = (op.apply(x) - op.dense() * x).norm() / (op.dense() * x).norm();
        const CMatrix y = x.transpose();
        const double e2 = (op.apply_right(y) - y * op.dense()).norm() / (y * op.dense()).norm();
        return std::max(e1, e2) < 1e-12 ? std::string() : "relative error " + fmt(std::max(e1, e2));
    }));

    out.push_back(check("assignment equals exhaustive search", [] {
        std::mt19937_64 rng(3);
        std::uniform_real_distribution<double> uni(0.0, 1.0);
        for (int trial = 0; trial < 30; ++trial) {
            const int m = 5, k = 3;
            RMatrix mag(m, k);
            for (int i = 0; i < m; ++i)
                for (int j = 0; j < k; ++j) mag(i, j) = uni(rng);
            double best = -1.0;
            for (int a = 0; a < m; ++a)
                for (int b = 0; b < m; ++b)
                    for (int c = 0; c < m; ++c)
                        if (a != b && a != c && b != c) best = std::max(best, mag(a, 0) + mag(b, 1) + mag(c, 2));
            const AntennaAssignment as = assign_antennas(mag);
            const double got = mag(as.antenna_of_user[0], 0) + mag(as.antenna_of_user[1], 1) + mag(as.antenna_of_user[2], 2);
            if (got != best) return "suboptimal assignment in trial " + std::to_string(trial);
        }
        return std::string();
    }));

    out.push_back(check("quantizer idempotent and bounded", [] {
        const PhaseBook pb = PhaseBook::uniform(3, 40, 21);
        for (int b = 1; b <= 8; ++b) {
            const PhaseBook q = quantize_phases(pb, b);
            if (!(quantize_phases(q, b) == q)) return "not idempotent at B=" + std::to_string(b);
            for (int l = 1; l <= 3; ++l)
                for (int n = 0; n < 40; ++n) {
                    const double d = std::abs(std::remainder(q.at(l, n) - pb.at(l, n), kTwoPi));
                    if (d > kPi / std::ldexp(1.0, b) + 1e-12) return "error bound violated at B=" + std::to_string(b);
                }
        }
        return std::string();
    }));

    out.push_back(check("coupling matrix structure", [] {
        const RMatrix c = coupling_matrix(12, 0.3);
        if (!(c == c.transpose())) return std::string("not symmetric");
        for (int i = 0; i < 12; ++i)
            for (int j = 0; j < 12; ++j) {
                const double expect = std::abs(i - j) <= kCouplingHalfWidth ? std::pow(0.3, std::abs(i - j)) : 0.0;
                if (c(i, j) != expect) return "entry mismatch at " + std::to_string(i) + "," + std::to_string(j);
            }
        return std::string();
    }));

    out.push_back(check("channel synthesis is pure", [] {
        GeometryParams gp;
        gp.nx = 4;
        gp.ny = 4;
        const SimGeometry geom = build_geometry(gp);
        UserLayout layout;
        layout.users = {{0.3, -0.1, 30.0}, {-0.5, 0.2, 45.0}};
        const CVector a = user_channel(geom, layout, 1, 1234);
        const CVector b = user_channel(geom, layout, 1, 1234);
        if (!(a == b)) return std::string("repeat call differs");
        const CMatrix w2 = inter_layer_matrix(geom, 2);
        for (int l = 3; l <= geom.layers; ++l)
            if (!(inter_layer_matrix(geom, l) == w2)) return "W differs at layer " + std::to_string(l);
        return std::string();
    }));

    out.push_back(check("von Mises circular standard deviation", [] {
        const double kappa = circular_std_to_kappa(0.1);
        std::mt19937_64 rng(17);
        double c = 0.0, s = 0.0;
        const int n = 200000;
        for (int i = 0; i < n; ++i) {
            const double x = sample_von_mises(kappa, rng);
            c += std::cos(x);
            s += std::sin(x);
        }
        const double r = std::hypot(c, s) / n;
        const double sd = std::sqrt(-2.0 * std::log(r));
        return std::abs(sd - 0.1) < 0.003 ? std::string() : "circular std " + fmt(sd);
    }));

    out.push_back(check("QPSK mapping round trip", [] {
        for (std::uint8_t label = 0; label < 4; ++label)
            if (qpsk_label(qpsk_symbol(label)) != label) return "label " + std::to_string(label);
        return std::string();
    }));

    out.push_back(check("phase book text round trip", [] {
        const PhaseBook pb = PhaseBook::uniform(2, 9, 5);
        std::stringstream ss;
        write_phase_book(ss, pb);
        return read_phase_book(ss) == pb ? std::string() : std::string("mismatch after reload");
    }));

    out.push_back(check("training reduces loss", [] {
        Toy t = make_toy(3, 4, 2, 4, 31);
        TrainConfig cfg;
        cfg.eta0 = 0.5;
        cfg.episodes = 60;
        cfg.tolerance = 0.0;
        const TrainResult r = train(t.ch, t.pilots, cfg, t.pb, t.assignment);
        const double end = r.record.loss_mean.back();
        return end < 0.1 * r.record.initial_loss_mean ? std::string() : "final loss " + fmt(end);
    }));

    out.push_back(check("config round trip", [] {
        RunConfig cfg;
        cfg.scenario.impairments.quant_bits = 4;
        cfg.sweep = SweepConfig{"B", {2, 3, 4}};
        const RunConfig back = config_from_json(nlohmann::json::parse(canonical_dump(to_json(cfg))));
        return back == cfg ? std::string() : std::string("reloaded config differs");
    }));

    return out;
}

}  // namespace simlearn
