#pragma once

#include <vector>

namespace credal {

struct LpResult {
    bool feasible = false;
    double objective = 0.0;
    std::vector<double> x;
};

/// Minimize c.x subject to A x = b, x >= 0, with a dense two-phase simplex.
/// Problem sizes here are tiny (tens of rows/columns), so no factorization or
/// sparsity is attempted. Dantzig pricing with a Bland fallback for cycling.
LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c);

/// Pivot tolerance shared by the solver and its callers.
inline constexpr double kLpPivotTol = 1e-10;

}  // namespace credal
