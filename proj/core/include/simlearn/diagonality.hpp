// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/types.hpp"

namespace simlearn {

struct DiagonalityMetrics {
    double avg_diag_power = 0.0;
    double avg_offdiag_power = 0.0;
    double diag_variance = 0.0;  // variance of |d_kk|, linear
    double diag_variance_db = 0.0;
    double offdiag_suppression_db = 0.0;
};

// Input is normalized by its Frobenius norm first.
DiagonalityMetrics diagonality_metrics(const CMatrix& selected);

}  // namespace simlearn
