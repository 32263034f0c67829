#include "ldtk/simplex.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ldtk/numeric.hpp"

namespace ldtk {

namespace {

constexpr double kPivotTol = 1e-10;
constexpr double kCostTol = 1e-9;

// Dense tableau: rows of [structural | slack | artificial | rhs], with an
// objective row of reduced costs kept in sync by every pivot.
struct Tableau {
    int rows = 0;
    int cols = 0;  // columns excluding rhs
    std::vector<std::vector<double>> a;  // rows x (cols + 1)
    std::vector<double> obj;             // reduced costs, size cols + 1 (last = -value)
    std::vector<int> basis;              // basic column per row

    void pivot(int r, int j) {
        double piv = a[r][j];
        double inv = 1.0 / piv;
        for (double& v : a[r]) v *= inv;
        a[r][j] = 1.0;
        for (int i = 0; i < rows; ++i) {
            if (i == r) continue;
            double factor = a[i][j];
            if (factor == 0.0) continue;
            for (int k = 0; k <= cols; ++k) a[i][k] -= factor * a[r][k];
            a[i][j] = 0.0;
        }
        double factor = obj[j];
        if (factor != 0.0) {
            for (int k = 0; k <= cols; ++k) obj[k] -= factor * a[r][k];
            obj[j] = 0.0;
        }
        basis[r] = j;
    }

    // Primal simplex loop over the allowed column range [0, limit).
    LPStatus iterate(int limit, int max_iter, int& iter_count) {
        const int bland_after = std::max(2000, max_iter / 2);
        for (int iter = 0; iter < max_iter; ++iter) {
            ++iter_count;
            int enter = -1;
            if (iter < bland_after) {
                double best = kCostTol;
                for (int j = 0; j < limit; ++j)
                    if (obj[j] > best) {
                        best = obj[j];
                        enter = j;
                    }
            } else {
                for (int j = 0; j < limit; ++j)
                    if (obj[j] > kCostTol) {
                        enter = j;
                        break;
                    }
            }
            if (enter < 0) return LPStatus::Optimal;
            int leave = -1;
            double best_ratio = 0.0;
            for (int i = 0; i < rows; ++i) {
                if (a[i][enter] <= kPivotTol) continue;
                double ratio = std::max(a[i][cols], 0.0) / a[i][enter];
                if (leave < 0 || ratio < best_ratio - 1e-15 ||
                    (ratio <= best_ratio + 1e-15 && basis[i] < basis[leave])) {
                    leave = i;
                    best_ratio = ratio;
                }
            }
            if (leave < 0) return LPStatus::Unbounded;
            pivot(leave, enter);
        }
        return LPStatus::IterationLimit;
    }
};

}  // namespace

double LPResult::dual_value(const DenseLP& lp) const {
    KahanSum s;
    for (std::size_t i = 0; i < dual.size(); ++i) s.add(dual[i] * lp.rhs[i]);
    return s.value();
}

LPResult solve_lp(const DenseLP& lp) {
    const int m = static_cast<int>(lp.rows.size());
    const int n = static_cast<int>(lp.objective.size());
    if (static_cast<int>(lp.rhs.size()) != m)
        throw std::invalid_argument("solve_lp: rhs size mismatch");
    for (const auto& row : lp.rows)
        if (static_cast<int>(row.size()) != n)
            throw std::invalid_argument("solve_lp: row size mismatch");

    std::vector<bool> flipped(m, false);
    int n_art = 0;
    for (int i = 0; i < m; ++i)
        if (lp.rhs[i] < 0.0) {
            flipped[i] = true;
            ++n_art;
        }

    Tableau t;
    t.rows = m;
    t.cols = n + m + n_art;
    t.a.assign(m, std::vector<double>(t.cols + 1, 0.0));
    t.basis.assign(m, -1);
    int art = n + m;
    for (int i = 0; i < m; ++i) {
        double sign = flipped[i] ? -1.0 : 1.0;
        for (int j = 0; j < n; ++j) t.a[i][j] = sign * lp.rows[i][j];
        t.a[i][n + i] = sign;  // slack
        t.a[i][t.cols] = sign * lp.rhs[i];
        if (flipped[i]) {
            t.a[i][art] = 1.0;
            t.basis[i] = art;
            ++art;
        } else {
            t.basis[i] = n + i;
        }
    }

    LPResult res;
    const int max_iter = 20000 + 50 * (m + n);

    if (n_art > 0) {
        // phase 1: maximize -sum(artificials), feasible iff optimum is 0
        t.obj.assign(t.cols + 1, 0.0);
        for (int j = n + m; j < t.cols; ++j) t.obj[j] = -1.0;
        for (int i = 0; i < m; ++i)
            if (t.basis[i] >= n + m)
                for (int k = 0; k <= t.cols; ++k) t.obj[k] += t.a[i][k];
        LPStatus st = t.iterate(t.cols, max_iter, res.iterations);
        if (st == LPStatus::IterationLimit) {
            res.status = st;
            return res;
        }
        double phase1 = -t.obj[t.cols];  // max of -sum(artificials), 0 iff feasible
        if (phase1 < -1e-7) {
            res.status = LPStatus::Infeasible;
            return res;
        }
        // drive basic artificials out where possible
        for (int i = 0; i < m; ++i) {
            if (t.basis[i] < n + m) continue;
            int piv = -1;
            for (int j = 0; j < n + m; ++j)
                if (std::abs(t.a[i][j]) > kPivotTol) {
                    piv = j;
                    break;
                }
            if (piv >= 0) t.pivot(i, piv);
        }
    }

    // phase 2 objective, priced out against the current basis
    t.obj.assign(t.cols + 1, 0.0);
    for (int j = 0; j < n; ++j) t.obj[j] = lp.objective[j];
    for (int i = 0; i < m; ++i) {
        int b = t.basis[i];
        if (b < n && t.obj[b] != 0.0) {
            double factor = t.obj[b];
            for (int k = 0; k <= t.cols; ++k) t.obj[k] -= factor * t.a[i][k];
            t.obj[b] = 0.0;
        }
    }
    LPStatus st = t.iterate(n + m, max_iter, res.iterations);  // artificials stay out
    res.status = st;
    if (st != LPStatus::Optimal) return res;

    res.x.assign(n, 0.0);
    for (int i = 0; i < m; ++i)
        if (t.basis[i] < n) res.x[t.basis[i]] = t.a[i][t.cols];
    res.value = -t.obj[t.cols];
    res.dual.assign(m, 0.0);
    // Slack i keeps the <= sense through any row flip, so the multiplier of
    // the original row is the negated reduced cost of its slack column.
    for (int i = 0; i < m; ++i) res.dual[i] = -t.obj[n + i];
    return res;
}

}  // namespace ldtk
