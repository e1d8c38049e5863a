// SPDX-License-Identifier: Apache-2.0
#include "simlearn/channel_io.hpp"

#include <iomanip>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>

namespace simlearn {

namespace {

constexpr const char* kMagic = "simlearn-channels";
constexpr int kFormatVersion = 1;

void put_matrix(std::ostream& os, const char* name, const CMatrix& m)
{
    os << name << ' ' << m.rows() << ' ' << m.cols() << '\n';
    for (Eigen::Index i = 0; i < m.rows(); ++i)
        for (Eigen::Index j = 0; j < m.cols(); ++j) os << m(i, j).real() << ' ' << m(i, j).imag() << '\n';
}

void expect(std::istream& is, const std::string& word)
{
    std::string got;
    if (!(is >> got) || got != word) throw RuntimeError("channel dump: expected '" + word + "', got '" + got + "'");
}

CMatrix get_matrix(std::istream& is, const char* name)
{
    expect(is, name);
    Eigen::Index rows = 0, cols = 0;
    if (!(is >> rows >> cols) || rows < 0 || cols < 0) throw RuntimeError(std::string("channel dump: bad shape for ") + name);
    CMatrix m(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            double re = 0.0, im = 0.0;
            if (!(is >> re >> im)) throw RuntimeError(std::string("channel dump: truncated ") + name);
            m(i, j) = cplx(re, im);
        }
    return m;
}

}  // namespace

void write_channel_set(std::ostream& os, const ChannelSet& ch, const ChannelDumpHeader& header)
{
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << std::setprecision(17);
    ss << kMagic << ' ' << kFormatVersion << '\n';
    ss << "wavelength " << header.wavelength << '\n';
    ss << "seed " << header.seed << '\n';
    ss << "grid " << header.nx << ' ' << header.ny << '\n';
    ss << "dims " << ch.atoms() << ' ' << ch.user_count() << ' ' << ch.antennas() << ' ' << ch.layers() << ' '
       << (ch.jammer ? 1 : 0) << '\n';
    put_matrix(ss, "H", ch.users);
    for (const auto& w : ch.inter_layer) put_matrix(ss, "W", w.dense());
    put_matrix(ss, "G", ch.to_bs);
    if (ch.jammer) put_matrix(ss, "J", *ch.jammer);
    os << ss.str();
}

ChannelSet read_channel_set(std::istream& in, ChannelDumpHeader* header)
{
    std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    std::istringstream is(text);
    is.imbue(std::locale::classic());
    expect(is, kMagic);
    int version = 0;
    if (!(is >> version) || version != kFormatVersion) throw RuntimeError("channel dump: unsupported version");
    ChannelDumpHeader h;
    expect(is, "wavelength");
    is >> h.wavelength;
    expect(is, "seed");
    is >> h.seed;
    expect(is, "grid");
    is >> h.nx >> h.ny;
    expect(is, "dims");
    int n = 0, k = 0, m = 0, layers = 0, has_jammer = 0;
    if (!(is >> n >> k >> m >> layers >> has_jammer)) throw RuntimeError("channel dump: bad dims line");
    if (h.nx * h.ny != n || layers < 1) throw RuntimeError("channel dump: inconsistent dims");

    ChannelSet ch;
    ch.users = get_matrix(is, "H");
    for (int l = 2; l <= layers; ++l) ch.inter_layer.emplace_back(get_matrix(is, "W"), h.nx, h.ny);
    ch.to_bs = get_matrix(is, "G");
    if (has_jammer) ch.jammer = CVector(get_matrix(is, "J").col(0));
    if (ch.users.rows() != n || ch.users.cols() != k || ch.to_bs.rows() != m || ch.to_bs.cols() != n)
        throw RuntimeError("channel dump: matrix shapes disagree with dims");
    for (const auto& w : ch.inter_layer)
        if (w.size() != n) throw RuntimeError("channel dump: inter-layer matrix shape");
    if (header) *header = h;
    return ch;
}

}  // namespace simlearn
