#pragma once

#include <vector>

namespace ldtk {

// Dense linear program in the form
//     maximize  objective . x
//     subject to  rows[i] . x <= rhs[i],  x >= 0.
// Negative right-hand sides are allowed (phase 1 runs automatically).
struct DenseLP {
    std::vector<std::vector<double>> rows;
    std::vector<double> rhs;
    std::vector<double> objective;
};

enum class LPStatus { Optimal, Infeasible, Unbounded, IterationLimit };

struct LPResult {
    LPStatus status = LPStatus::Optimal;
    double value = 0.0;
    std::vector<double> x;     // primal solution, size = #variables
    std::vector<double> dual;  // row multipliers y >= 0, size = #rows
    int iterations = 0;

    bool optimal() const { return status == LPStatus::Optimal; }
    // Weak-duality certificate: y . rhs, equal to value at optimality.
    double dual_value(const DenseLP& lp) const;
};

// Two-phase primal simplex on a dense tableau. Dantzig pricing with a switch
// to Bland's rule late in the iteration budget to break cycling.
LPResult solve_lp(const DenseLP& lp);

}  // namespace ldtk
