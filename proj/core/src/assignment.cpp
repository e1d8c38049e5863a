// SPDX-License-Identifier: Apache-2.0
#include "simlearn/assignment.hpp"

#include <limits>
#include <vector>

namespace simlearn {

namespace {

// Minimum-cost assignment of every row to a distinct column (rows <= cols),
// shortest augmenting path formulation with potentials. Returns the total cost.
double hungarian(const RMatrix& cost, std::vector<int>& col_of_row)
{
    const int n = static_cast<int>(cost.rows());
    const int m = static_cast<int>(cost.cols());
    const double inf = std::numeric_limits<double>::infinity();
    std::vector<double> u(n + 1, 0.0), v(m + 1, 0.0);
    std::vector<int> p(m + 1, 0), way(m + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(m + 1, inf);
        std::vector<char> used(m + 1, 0);
        do {
            used[j0] = 1;
            const int i0 = p[j0];
            double delta = inf;
            int j1 = 0;
            for (int j = 1; j <= m; ++j) {
                if (used[j]) continue;
                const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                if (cur < minv[j]) {
                    minv[j] = cur;
                    way[j] = j0;
                }
                if (minv[j] < delta) {
                    delta = minv[j];
                    j1 = j;
                }
            }
            for (int j = 0; j <= m; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            const int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    col_of_row.assign(n, -1);
    double total = 0.0;
    for (int j = 1; j <= m; ++j)
        if (p[j]) {
            col_of_row[p[j] - 1] = j - 1;
            total += cost(p[j] - 1, j - 1);
        }
    return total;
}

// Best attainable sum of magnitudes for users [first, K) over the free antennas.
double best_tail(const RMatrix& mag, int first, const std::vector<char>& taken)
{
    const int k = static_cast<int>(mag.cols());
    if (first >= k) return 0.0;
    std::vector<int> free;
    for (int a = 0; a < mag.rows(); ++a)
        if (!taken[a]) free.push_back(a);
    RMatrix cost(k - first, static_cast<int>(free.size()));
    for (int r = 0; r < cost.rows(); ++r)
        for (int c = 0; c < cost.cols(); ++c) cost(r, c) = -mag(free[c], first + r);
    std::vector<int> dummy;
    return -hungarian(cost, dummy);
}

}  // namespace

AntennaAssignment assign_antennas(const RMatrix& magnitude)
{
    const int m = static_cast<int>(magnitude.rows());
    const int k = static_cast<int>(magnitude.cols());
    if (k < 1) throw RuntimeError("assign_antennas: no users");
    if (m < k) throw RuntimeError("assign_antennas: fewer antennas than users");
    if (!magnitude.allFinite()) throw RuntimeError("assign_antennas: non-finite magnitudes");

    std::vector<char> taken(m, 0);
    const double best = best_tail(magnitude, 0, taken);
    const double tol = 1e-12 * std::max(1.0, std::abs(best));

    // Fix users in order to the lowest antenna that still admits an optimal completion.
    AntennaAssignment out;
    double fixed = 0.0;
    for (int user = 0; user < k; ++user) {
        int chosen = -1;
        for (int a = 0; a < m && chosen < 0; ++a) {
            if (taken[a]) continue;
            taken[a] = 1;
            const double total = fixed + magnitude(a, user) + best_tail(magnitude, user + 1, taken);
            if (total >= best - tol) chosen = a;
            else taken[a] = 0;
        }
        if (chosen < 0) throw RuntimeError("assign_antennas: internal inconsistency");
        fixed += magnitude(chosen, user);
        out.antenna_of_user.push_back(chosen);
    }
    return out;
}

AntennaAssignment assign_antennas(const EquivalentChannel& eq)
{
    return assign_antennas(RMatrix(eq.full.cwiseAbs()));
}

}  // namespace simlearn
