// SPDX-License-Identifier: Apache-2.0
#include "simlearn/phase_book.hpp"

#include <cmath>
#include <iomanip>
#include <istream>
#include <locale>
#include <ostream>
#include <sstream>
#include <string>

namespace simlearn {

double canonical_phase(double phi)
{
    if (!std::isfinite(phi)) throw RuntimeError("phase is not finite");
    double r = std::fmod(phi, kTwoPi);
    if (r < 0.0) r += kTwoPi;
    if (r >= kTwoPi) r = 0.0;
    return r;
}

PhaseBook::PhaseBook(int layers, int atoms)
{
    if (layers < 1 || atoms < 1) throw RuntimeError("PhaseBook: dimensions must be positive");
    phases_ = RMatrix::Zero(layers, atoms);
}

PhaseBook::PhaseBook(const RMatrix& phases) : phases_(phases.unaryExpr([](double v) { return canonical_phase(v); }))
{
    if (phases.rows() < 1 || phases.cols() < 1) throw RuntimeError("PhaseBook: dimensions must be positive");
}

PhaseBook PhaseBook::uniform(int layers, int atoms, std::uint64_t seed)
{
    PhaseBook pb(layers, atoms);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, kTwoPi);
    for (int l = 0; l < layers; ++l)
        for (int n = 0; n < atoms; ++n) pb.phases_(l, n) = canonical_phase(u(rng));
    return pb;
}

void PhaseBook::set_layer(int layer, const RVector& phi)
{
    if (phi.size() != atoms()) throw RuntimeError("PhaseBook::set_layer: size mismatch");
    for (int n = 0; n < atoms(); ++n) phases_(layer - 1, n) = canonical_phase(phi(n));
}

CVector PhaseBook::response(int layer) const
{
    CVector r(atoms());
    for (int n = 0; n < atoms(); ++n) r(n) = std::polar(1.0, phases_(layer - 1, n));
    return r;
}

bool PhaseBook::operator==(const PhaseBook& other) const
{
    return phases_.rows() == other.phases_.rows() && phases_.cols() == other.phases_.cols() &&
           phases_ == other.phases_;
}

void write_phase_book(std::ostream& os, const PhaseBook& pb)
{
    std::ostringstream ss;
    ss.imbue(std::locale::classic());
    ss << pb.layers() << ' ' << pb.atoms() << '\n' << std::setprecision(17);
    for (int l = 1; l <= pb.layers(); ++l)
        for (int n = 0; n < pb.atoms(); ++n) ss << pb.at(l, n) << '\n';
    os << ss.str();
}

PhaseBook read_phase_book(std::istream& is)
{
    std::string text((std::istreambuf_iterator<char>(is)), std::istreambuf_iterator<char>());
    std::istringstream ss(text);
    ss.imbue(std::locale::classic());
    int layers = 0, atoms = 0;
    if (!(ss >> layers >> atoms) || layers < 1 || atoms < 1) throw RuntimeError("phase book: bad header");
    RMatrix m(layers, atoms);
    for (int l = 0; l < layers; ++l)
        for (int n = 0; n < atoms; ++n)
            if (!(ss >> m(l, n))) throw RuntimeError("phase book: truncated data");
    std::string extra;
    if (ss >> extra) throw RuntimeError("phase book: trailing data");
    return PhaseBook(m);
}

}  // namespace simlearn
