// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/types.hpp"

#include <iosfwd>
#include <random>

namespace simlearn {

// Maps any finite angle into [0, 2pi).
double canonical_phase(double phi);

class PhaseBook {
public:
    PhaseBook() = default;
    PhaseBook(int layers, int atoms);
    explicit PhaseBook(const RMatrix& phases);

    static PhaseBook uniform(int layers, int atoms, std::uint64_t seed);

    int layers() const { return static_cast<int>(phases_.rows()); }
    int atoms() const { return static_cast<int>(phases_.cols()); }

    // layer is 1-based
    double at(int layer, int atom) const { return phases_(layer - 1, atom); }
    void set(int layer, int atom, double phi) { phases_(layer - 1, atom) = canonical_phase(phi); }
    RVector layer(int layer) const { return phases_.row(layer - 1).transpose(); }
    void set_layer(int layer, const RVector& phi);
    CVector response(int layer) const;

    const RMatrix& matrix() const { return phases_; }

    bool operator==(const PhaseBook& other) const;

private:
    RMatrix phases_;
};

void write_phase_book(std::ostream& os, const PhaseBook& pb);
PhaseBook read_phase_book(std::istream& is);

}  // namespace simlearn
