// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/types.hpp"

#include <memory>

namespace simlearn {

// Linear operator backed by a dense N x N matrix. When the matrix is
// block-Toeplitz with Toeplitz blocks on an nx x ny grid (atom = iy * nx + ix),
// products are evaluated by zero-padded 2-D FFT convolution instead.
class GridOperator {
public:
    GridOperator() = default;
    GridOperator(CMatrix dense, int nx, int ny);
    explicit GridOperator(CMatrix dense);

    const CMatrix& dense() const { return dense_; }
    int size() const { return static_cast<int>(dense_.rows()); }
    bool fast() const { return static_cast<bool>(conv_); }

    // A * x for a block of columns.
    CMatrix apply(const CMatrix& x) const;
    // x * A for a block of rows.
    CMatrix apply_right(const CMatrix& x) const;

    // Smallest grid size at which FFT convolution is used.
    static constexpr int kFastThreshold = 48;

private:
    struct Convolution;
    CMatrix dense_;
    std::shared_ptr<const Convolution> conv_;
};

}  // namespace simlearn
