// SPDX-License-Identifier: Apache-2.0
#include "simlearn/diagonality.hpp"

#include <cmath>
#include <limits>

namespace simlearn {

DiagonalityMetrics diagonality_metrics(const CMatrix& selected)
{
    const Eigen::Index k = selected.rows();
    if (selected.cols() != k) throw RuntimeError("diagonality_metrics: matrix must be square");
    if (k < 2) throw RuntimeError("diagonality_metrics: need at least two users");
    const double fro = selected.norm();
    if (!(fro > 0.0)) throw RuntimeError("diagonality_metrics: zero matrix");
    const CMatrix d = selected / fro;

    DiagonalityMetrics out;
    RVector mag(k);
    double off = 0.0;
    for (Eigen::Index i = 0; i < k; ++i)
        for (Eigen::Index j = 0; j < k; ++j) {
            const double p = std::norm(d(i, j));
            if (i == j) mag(i) = std::sqrt(p);
            else off += p;
        }
    out.avg_diag_power = mag.squaredNorm() / static_cast<double>(k);
    out.avg_offdiag_power = off / static_cast<double>(k * (k - 1));
    const double mean = mag.mean();
    out.diag_variance = (mag.array() - mean).square().mean();
    out.diag_variance_db = 10.0 * std::log10(out.diag_variance);
    out.offdiag_suppression_db = 10.0 * std::log10(out.avg_diag_power / out.avg_offdiag_power);
    return out;
}

}  // namespace simlearn
