// SPDX-License-Identifier: Apache-2.0
#include "simlearn/forward_model.hpp"

namespace simlearn {

namespace {

void check_dims(const ChannelSet& ch, const PhaseBook& pb, const LayerResponse& response)
{
    if (pb.layers() != ch.layers() || pb.atoms() != ch.atoms())
        throw RuntimeError("phase book does not match channel set dimensions");
    if (ch.to_bs.cols() != ch.atoms()) throw RuntimeError("G does not match atom count");
    if (response.coupling && (response.coupling->rows() != ch.atoms() || response.coupling->cols() != ch.atoms()))
        throw RuntimeError("coupling matrix does not match atom count");
}

// Propagates a block of fields through all layers and the SIM-to-BS link.
CMatrix propagate(const ChannelSet& ch, const PhaseBook& pb, CMatrix x, const LayerResponse& response)
{
    for (int l = 1; l <= ch.layers(); ++l) {
        if (l > 1) x = ch.inter_layer[l - 2].apply(x);
        x = pb.response(l).asDiagonal() * x;
        if (response.coupling) x = response.coupling->cast<cplx>() * x;
    }
    return ch.to_bs * x;
}

}  // namespace

CVector forward(const ChannelSet& ch, const PhaseBook& pb, const CVector& s, std::optional<cplx> jam,
                const LayerResponse& response)
{
    check_dims(ch, pb, response);
    if (s.size() != ch.user_count()) throw RuntimeError("forward: symbol vector has wrong length");
    if (jam && !ch.jammer) throw RuntimeError("forward: jamming sample given but channel set has no jammer");
    CVector x = ch.users * s;
    if (jam) x += *ch.jammer * *jam;
    return propagate(ch, pb, std::move(x), response).col(0);
}

EquivalentChannel equivalent_channel(const ChannelSet& ch, const PhaseBook& pb, const LayerResponse& response)
{
    check_dims(ch, pb, response);
    const int k = ch.user_count();
    CMatrix x(ch.atoms(), k + (ch.jammer ? 1 : 0));
    x.leftCols(k) = ch.users;
    if (ch.jammer) x.col(k) = *ch.jammer;
    const CMatrix y = propagate(ch, pb, std::move(x), response);
    EquivalentChannel eq;
    eq.full = y.leftCols(k);
    if (ch.jammer) eq.jammer_full = y.col(k);
    return eq;
}

EquivalentChannel equivalent_channel(const ChannelSet& ch, const PhaseBook& pb, const AntennaAssignment& assignment,
                                     const LayerResponse& response)
{
    EquivalentChannel eq = equivalent_channel(ch, pb, response);
    select_antennas(eq, assignment);
    return eq;
}

CMatrix select_rows(const CMatrix& m, const AntennaAssignment& assignment)
{
    CMatrix out(assignment.users(), m.cols());
    for (int k = 0; k < assignment.users(); ++k) {
        const int a = assignment.antenna_of_user[k];
        if (a < 0 || a >= m.rows()) throw RuntimeError("assignment refers to a missing antenna");
        out.row(k) = m.row(a);
    }
    return out;
}

void select_antennas(EquivalentChannel& eq, const AntennaAssignment& assignment)
{
    if (assignment.users() != eq.full.cols()) throw RuntimeError("assignment does not cover every user");
    eq.selected = select_rows(eq.full, assignment);
    if (eq.jammer_full) eq.jammer_selected = CVector(select_rows(*eq.jammer_full, assignment).col(0));
}

std::vector<CMatrix> cumulative_layer_channels(const ChannelSet& ch, const PhaseBook& pb)
{
    check_dims(ch, pb, {});
    std::vector<CMatrix> out;
    RMatrix phases = pb.matrix();
    for (int l = 1; l <= ch.layers(); ++l) {
        RMatrix truncated = phases;
        truncated.bottomRows(ch.layers() - l).setZero();
        out.push_back(equivalent_channel(ch, PhaseBook(truncated)).full);
    }
    return out;
}

}  // namespace simlearn
