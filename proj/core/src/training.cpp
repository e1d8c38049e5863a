// SPDX-License-Identifier: Apache-2.0
#include "simlearn/training.hpp"

#include <cmath>
#include <limits>

namespace simlearn {

double loss(const CVector& received, const CVector& transmitted)
{
    if (received.size() != transmitted.size()) throw RuntimeError("loss: length mismatch");
    const double nr = received.norm();
    const double ns = transmitted.norm();
    if (!(nr > 0.0) || !(ns > 0.0)) throw RuntimeError("loss: zero-norm input");
    return (received / nr - transmitted / ns).squaredNorm();
}

RVector slot_losses(const CMatrix& received, const CMatrix& transmitted)
{
    if (received.rows() != transmitted.rows() || received.cols() != transmitted.cols())
        throw RuntimeError("slot_losses: shape mismatch");
    RVector out(received.cols());
    for (Eigen::Index u = 0; u < received.cols(); ++u) out(u) = loss(received.col(u), transmitted.col(u));
    return out;
}

double lr_schedule(int t, double eta0, double beta)
{
    if (t < 1) throw RuntimeError("lr_schedule: episode index starts at 1");
    return eta0 * std::pow(beta, t - 1);
}

void validate(const TrainConfig& cfg)
{
    if (!(cfg.eta0 > 0.0) || !std::isfinite(cfg.eta0)) throw ConfigError("training.eta0 must be positive");
    if (!(cfg.beta > 0.0 && cfg.beta <= 1.0)) throw ConfigError("training.beta must be in (0, 1]");
    if (cfg.episodes < 0) throw ConfigError("training.episodes must be >= 0");
    if (!(cfg.tolerance >= 0.0)) throw ConfigError("training.tolerance must be >= 0");
    if (cfg.pilots < 1) throw ConfigError("training.pilots must be >= 1");
}

namespace {

LossStats stats(const RVector& v)
{
    LossStats s;
    s.mean = v.mean();
    s.std = std::sqrt((v.array() - s.mean).square().mean());
    return s;
}

// Fixed inputs of one training problem: the fields entering layer 1 and the
// per-slot source weights, so the layer-1 input of slot u is x0 * src.col(u).
struct Problem {
    CMatrix x0;     // N x c
    CMatrix src;    // c x U
    CMatrix gsel;   // K x N
    const CMatrix* pilots = nullptr;
    const CMatrix* noise = nullptr;
};

Problem make_problem(const ChannelSet& ch, const PhaseBook& pb, const CMatrix& pilots, const std::optional<CVector>& jam,
                     const AntennaAssignment& assignment)
{
    if (pb.layers() != ch.layers() || pb.atoms() != ch.atoms()) throw RuntimeError("phase book does not match channels");
    if (pilots.rows() != ch.user_count() || pilots.cols() < 1) throw RuntimeError("pilot block has wrong shape");
    if (assignment.users() != ch.user_count()) throw RuntimeError("assignment does not cover every user");
    if (jam && !ch.jammer) throw RuntimeError("jamming waveform given but channel set has no jammer");
    if (jam && jam->size() != pilots.cols()) throw RuntimeError("jamming waveform length differs from pilot count");

    const int k = ch.user_count();
    const int c = k + (jam ? 1 : 0);
    Problem p;
    p.x0.resize(ch.atoms(), c);
    p.x0.leftCols(k) = ch.users;
    p.src.resize(c, pilots.cols());
    p.src.topRows(k) = pilots;
    if (jam) {
        p.x0.col(k) = *ch.jammer;
        p.src.row(k) = jam->transpose();
    }
    p.gsel = select_rows(ch.to_bs, assignment);
    p.pilots = &pilots;
    return p;
}

// back[l-1] maps the phased field of layer l to the selected antennas.
std::vector<CMatrix> backward_maps(const ChannelSet& ch, const PhaseBook& pb, const CMatrix& gsel)
{
    const int layers = ch.layers();
    std::vector<CMatrix> back(layers);
    back[layers - 1] = gsel;
    for (int l = layers - 1; l >= 1; --l) {
        const CMatrix phased = back[l] * pb.response(l + 1).asDiagonal();
        back[l - 1] = ch.inter_layer[l - 1].apply_right(phased);
    }
    return back;
}

CMatrix received(const Problem& p, const CMatrix& back, const CVector& phase, const CMatrix& field)
{
    CMatrix r = back * (phase.asDiagonal() * field) * p.src;
    if (p.noise) r += *p.noise;
    return r;
}

// Gradient of the mean slot loss for one layer given the unphased field
// entering it and the map from its phased output to the antennas.
RVector gradient_kernel(const Problem& p, const CMatrix& back, const CVector& phase, const CMatrix& field)
{
    const CMatrix z = phase.asDiagonal() * (field * p.src);  // N x U
    CMatrix r = back * z;                                      // K x U
    if (p.noise) r += *p.noise;
    const CMatrix& s = *p.pilots;
    CMatrix g(r.rows(), r.cols());
    for (Eigen::Index u = 0; u < r.cols(); ++u) {
        const double nr = r.col(u).norm();
        const double ns = s.col(u).norm();
        if (!(nr > 0.0) || !(ns > 0.0)) throw RuntimeError("layer_gradient: zero-norm slot");
        const cplx proj = s.col(u).dot(r.col(u)) / ns;  // v^H r
        g.col(u) = s.col(u) / (ns * nr) - (proj.real() / (nr * nr * nr)) * r.col(u);
    }
    const CMatrix c = back.adjoint() * g;  // N x U
    const double scale = 2.0 / static_cast<double>(r.cols());
    return scale * (z.array() * c.array().conjugate()).imag().rowwise().sum().matrix();
}

std::vector<CMatrix> forward_fields(const ChannelSet& ch, const PhaseBook& pb, const Problem& p, int upto)
{
    std::vector<CMatrix> fields;
    fields.push_back(p.x0);
    for (int l = 2; l <= upto; ++l)
        fields.push_back(ch.inter_layer[l - 2].apply(pb.response(l - 1).asDiagonal() * fields.back()));
    return fields;
}

}  // namespace

LossStats batch_loss(const ChannelSet& ch, const PhaseBook& pb, const CMatrix& pilots, const std::optional<CVector>& jam,
                     const AntennaAssignment& assignment)
{
    const Problem p = make_problem(ch, pb, pilots, jam, assignment);
    const auto fields = forward_fields(ch, pb, p, ch.layers());
    const CMatrix r = received(p, p.gsel, pb.response(ch.layers()), fields.back());
    return stats(slot_losses(r, pilots));
}

RVector layer_gradient(const ChannelSet& ch, const PhaseBook& pb, const CMatrix& pilots,
                       const std::optional<CVector>& jam, const AntennaAssignment& assignment, int layer)
{
    if (layer < 1 || layer > ch.layers()) throw RuntimeError("layer_gradient: layer out of range");
    const Problem p = make_problem(ch, pb, pilots, jam, assignment);
    const auto back = backward_maps(ch, pb, p.gsel);
    const auto fields = forward_fields(ch, pb, p, layer);
    return gradient_kernel(p, back[layer - 1], pb.response(layer), fields.back());
}

TrainResult train(const ChannelSet& ch, const CMatrix& pilots, const TrainConfig& cfg, const PhaseBook& pb0,
                  const AntennaAssignment& assignment, const std::optional<CVector>& jam,
                  const std::optional<CMatrix>& noise)
{
    validate(cfg);
    Problem p = make_problem(ch, pb0, pilots, jam, assignment);
    if (noise) {
        if (noise->rows() != pilots.rows() || noise->cols() != pilots.cols())
            throw RuntimeError("train: pilot noise has wrong shape");
        p.noise = &*noise;
    }
    const int layers = ch.layers();

    TrainResult out{pb0, {}};
    PhaseBook& pb = out.phases;
    TrainRecord& rec = out.record;
    {
        const auto fields = forward_fields(ch, pb, p, layers);
        const LossStats s = stats(slot_losses(received(p, p.gsel, pb.response(layers), fields.back()), pilots));
        rec.initial_loss_mean = s.mean;
        rec.initial_loss_std = s.std;
    }

    for (int t = 1; t <= cfg.episodes; ++t) {
        const double eta = lr_schedule(t, cfg.eta0, cfg.beta);
        const auto back = backward_maps(ch, pb, p.gsel);
        CMatrix field = p.x0;
        for (int l = 1; l <= layers; ++l) {
            if (l > 1) field = ch.inter_layer[l - 2].apply(pb.response(l - 1).asDiagonal() * field);
            const RVector grad = gradient_kernel(p, back[l - 1], pb.response(l), field);
            pb.set_layer(l, pb.layer(l) - eta * grad);
        }
        const LossStats s = stats(slot_losses(received(p, p.gsel, pb.response(layers), field), pilots));
        rec.loss_mean.push_back(s.mean);
        rec.loss_std.push_back(s.std);
        rec.eta.push_back(eta);
        rec.episodes_run = t;
        if (t >= 2 && std::abs(s.mean - rec.loss_mean[t - 2]) < cfg.tolerance) {
            rec.termination = Termination::loss_delta_below_tolerance;
            break;
        }
    }
    return out;
}

ComplexityEstimate complexity_probe(int atoms, int users, int layers, int pilots, bool jammer)
{
    const double n = atoms, k = users, u = pilots;
    const double sources = k + (jammer ? 1.0 : 0.0);
    // complex multiply-accumulates per slot: field mixing, phase, forward to
    // antennas, back-projection, gradient accumulation; 8 real flops each
    const double cmac = n * u * (sources + 1.0 + k + k + 1.0);
    ComplexityEstimate e;
    e.per_layer_flops = 8.0 * cmac;
    e.per_episode_flops = e.per_layer_flops * layers;
    return e;
}

}  // namespace simlearn
