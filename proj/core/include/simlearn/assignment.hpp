// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "simlearn/forward_model.hpp"

namespace simlearn {

// Maximizes sum_k |full(m(k), k)| over injective maps. Among optimal maps the
// lexicographically smallest (m(1), ..., m(K)) is returned.
AntennaAssignment assign_antennas(const EquivalentChannel& eq);
AntennaAssignment assign_antennas(const RMatrix& magnitude);

}  // namespace simlearn
