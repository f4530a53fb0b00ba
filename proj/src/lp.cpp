#include "credal/lp.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace credal {

namespace {

constexpr double kFeasTol = 1e-9;

// Dense tableau: m rows over (n structural + m artificial) columns plus rhs.
class Tableau {
public:
    Tableau(const std::vector<std::vector<double>>& A, const std::vector<double>& b)
        : m_(A.size()), n_(A.empty() ? 0 : A[0].size()), rows_(m_, std::vector<double>(n_ + m_ + 1, 0.0)),
          basis_(m_) {
        for (std::size_t i = 0; i < m_; ++i) {
            const double sign = b[i] < 0.0 ? -1.0 : 1.0;
            for (std::size_t j = 0; j < n_; ++j) rows_[i][j] = sign * A[i][j];
            rows_[i][n_ + i] = 1.0;
            rows_[i].back() = sign * b[i];
            basis_[i] = n_ + i;
        }
    }

    // Runs simplex on the given cost vector (length n_ + m_); columns with
    // allow[j] == false never enter the basis. Returns false on iteration
    // overflow or unboundedness (neither occurs for the problems posed here,
    // but we fail closed rather than loop).
    bool optimize(const std::vector<double>& cost, const std::vector<char>& allow) {
        std::vector<double> z(n_ + m_);
        double obj = 0.0;
        compute_reduced_costs(cost, z, obj);

        const std::size_t bland_after = 4 * (n_ + m_ + 4);
        for (std::size_t iter = 0; iter < 20000; ++iter) {
            const bool bland = iter >= bland_after;
            std::size_t enter = n_ + m_;
            double best = -kLpPivotTol;
            for (std::size_t j = 0; j < n_ + m_; ++j) {
                if (!allow[j]) continue;
                if (z[j] < best) {
                    best = z[j];
                    enter = j;
                    if (bland) break;
                }
            }
            if (enter == n_ + m_) return true;  // optimal

            std::size_t leave = m_;
            double best_ratio = std::numeric_limits<double>::infinity();
            for (std::size_t i = 0; i < m_; ++i) {
                if (rows_[i][enter] > kLpPivotTol) {
                    const double ratio = rows_[i].back() / rows_[i][enter];
                    if (ratio < best_ratio - kLpPivotTol ||
                        (ratio < best_ratio + kLpPivotTol && (leave == m_ || basis_[i] < basis_[leave]))) {
                        best_ratio = ratio;
                        leave = i;
                    }
                }
            }
            if (leave == m_) return false;  // unbounded

            pivot(leave, enter, z);
        }
        return false;
    }

    double objective(const std::vector<double>& cost) const {
        double obj = 0.0;
        for (std::size_t i = 0; i < m_; ++i) obj += cost[basis_[i]] * rows_[i].back();
        return obj;
    }

    // Pivots basic artificials onto structural columns where possible.
    void drive_out_artificials() {
        std::vector<double> dummy(n_ + m_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) continue;
            for (std::size_t j = 0; j < n_; ++j) {
                if (std::abs(rows_[i][j]) > kLpPivotTol) {
                    pivot(i, j, dummy);
                    break;
                }
            }
            // A row with no structural pivot is redundant; its artificial
            // stays basic at level zero and is barred from re-entering.
        }
    }

    std::vector<double> solution() const {
        std::vector<double> x(n_, 0.0);
        for (std::size_t i = 0; i < m_; ++i) {
            if (basis_[i] < n_) x[basis_[i]] = rows_[i].back();
        }
        return x;
    }

    std::size_t n() const { return n_; }
    std::size_t m() const { return m_; }

private:
    void compute_reduced_costs(const std::vector<double>& cost, std::vector<double>& z,
                               double& obj) const {
        obj = 0.0;
        for (std::size_t j = 0; j < n_ + m_; ++j) z[j] = cost[j];
        for (std::size_t i = 0; i < m_; ++i) {
            const double cb = cost[basis_[i]];
            if (cb == 0.0) continue;
            for (std::size_t j = 0; j < n_ + m_; ++j) z[j] -= cb * rows_[i][j];
            obj += cb * rows_[i].back();
        }
    }

    void pivot(std::size_t r, std::size_t c, std::vector<double>& z) {
        const double inv = 1.0 / rows_[r][c];
        for (double& v : rows_[r]) v *= inv;
        rows_[r][c] = 1.0;  // cancel roundoff on the pivot itself
        for (std::size_t i = 0; i < m_; ++i) {
            if (i == r) continue;
            const double f = rows_[i][c];
            if (f == 0.0) continue;
            for (std::size_t j = 0; j <= n_ + m_; ++j) rows_[i][j] -= f * rows_[r][j];
            rows_[i][c] = 0.0;
        }
        const double fz = z[c];
        if (fz != 0.0) {
            for (std::size_t j = 0; j < n_ + m_; ++j) z[j] -= fz * rows_[r][j];
            z[c] = 0.0;
        }
        basis_[r] = c;
    }

    std::size_t m_, n_;
    std::vector<std::vector<double>> rows_;
    std::vector<std::size_t> basis_;
};

}  // namespace

LpResult solve_lp(const std::vector<std::vector<double>>& A, const std::vector<double>& b,
                  const std::vector<double>& c) {
    if (A.size() != b.size()) throw std::invalid_argument("solve_lp: A rows vs b mismatch");
    for (const auto& row : A) {
        if (row.size() != c.size()) throw std::invalid_argument("solve_lp: A cols vs c mismatch");
    }

    Tableau t(A, b);
    const std::size_t n = t.n(), m = t.m();

    // Phase 1: minimize the artificial mass.
    std::vector<double> phase1_cost(n + m, 0.0);
    for (std::size_t j = n; j < n + m; ++j) phase1_cost[j] = 1.0;
    std::vector<char> allow_all(n + m, 1);
    if (!t.optimize(phase1_cost, allow_all)) return {};
    if (t.objective(phase1_cost) > kFeasTol) return {};  // infeasible

    t.drive_out_artificials();

    // Phase 2: minimize the real objective over structural columns only.
    std::vector<double> phase2_cost(n + m, 0.0);
    for (std::size_t j = 0; j < n; ++j) phase2_cost[j] = c[j];
    std::vector<char> allow(n + m, 0);
    for (std::size_t j = 0; j < n; ++j) allow[j] = 1;
    if (!t.optimize(phase2_cost, allow)) return {};

    LpResult result;
    result.feasible = true;
    result.x = t.solution();
    result.objective = 0.0;
    for (std::size_t j = 0; j < n; ++j) result.objective += c[j] * result.x[j];
    return result;
}

}  // namespace credal
