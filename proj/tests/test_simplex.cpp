#include <cmath>

#include "doctest.h"
#include "ldtk/simplex.hpp"

using namespace ldtk;

TEST_CASE("simplex solves a textbook two-variable program") {
    // max 3x + 5y st x <= 4, 2y <= 12, 3x + 2y <= 18
    DenseLP lp;
    lp.objective = {3.0, 5.0};
    lp.rows = {{1.0, 0.0}, {0.0, 2.0}, {3.0, 2.0}};
    lp.rhs = {4.0, 12.0, 18.0};
    LPResult r = solve_lp(lp);
    REQUIRE(r.optimal());
    CHECK(r.value == doctest::Approx(36.0).epsilon(1e-12));
    CHECK(r.x[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.x[1] == doctest::Approx(6.0).epsilon(1e-12));
}

TEST_CASE("simplex dual certificate matches the primal value at optimality") {
    DenseLP lp;
    lp.objective = {2.0, 1.0, 4.0};
    lp.rows = {{1.0, 1.0, 1.0}, {2.0, 0.0, 1.0}, {0.0, 1.0, 3.0}};
    lp.rhs = {5.0, 6.0, 9.0};
    LPResult r = solve_lp(lp);
    REQUIRE(r.optimal());
    CHECK(r.dual_value(lp) == doctest::Approx(r.value).epsilon(1e-10));
    for (double y : r.dual) CHECK(y >= -1e-12);
    // dual feasibility: y^T A >= c componentwise
    for (std::size_t j = 0; j < lp.objective.size(); ++j) {
        double lhs = 0.0;
        for (std::size_t i = 0; i < lp.rows.size(); ++i) lhs += r.dual[i] * lp.rows[i][j];
        CHECK(lhs >= lp.objective[j] - 1e-9);
    }
}

TEST_CASE("simplex detects unboundedness") {
    DenseLP lp;
    lp.objective = {1.0, 0.0};
    lp.rows = {{-1.0, 1.0}};
    lp.rhs = {1.0};
    LPResult r = solve_lp(lp);
    CHECK(r.status == LPStatus::Unbounded);
}

TEST_CASE("simplex detects infeasibility through phase one") {
    // x1 + x2 <= 1 and -x1 - x2 <= -3 cannot both hold with x >= 0
    DenseLP lp;
    lp.objective = {1.0, 1.0};
    lp.rows = {{1.0, 1.0}, {-1.0, -1.0}};
    lp.rhs = {1.0, -3.0};
    LPResult r = solve_lp(lp);
    CHECK(r.status == LPStatus::Infeasible);
}

TEST_CASE("simplex handles negative right-hand sides that are feasible") {
    // -x <= -2 means x >= 2; max -x gives x = 2, value -2
    DenseLP lp;
    lp.objective = {-1.0};
    lp.rows = {{-1.0}, {1.0}};
    lp.rhs = {-2.0, 10.0};
    LPResult r = solve_lp(lp);
    REQUIRE(r.optimal());
    CHECK(r.value == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(r.x[0] == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.dual_value(lp) == doctest::Approx(r.value).epsilon(1e-10));
}

TEST_CASE("simplex survives a degenerate vertex") {
    // three constraints meet at (1, 0); Dantzig pricing with the Bland switch
    DenseLP lp;
    lp.objective = {1.0, 1.0};
    lp.rows = {{1.0, 0.0}, {1.0, 1.0}, {1.0, 2.0}};
    lp.rhs = {1.0, 1.0, 1.0};
    LPResult r = solve_lp(lp);
    REQUIRE(r.optimal());
    CHECK(r.value == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("zero objective returns any feasible point with value zero") {
    DenseLP lp;
    lp.objective = {0.0, 0.0};
    lp.rows = {{1.0, 1.0}};
    lp.rhs = {1.0};
    LPResult r = solve_lp(lp);
    REQUIRE(r.optimal());
    CHECK(r.value == 0.0);
    CHECK(r.x[0] >= -1e-12);
    CHECK(r.x[1] >= -1e-12);
    CHECK(r.x[0] + r.x[1] <= 1.0 + 1e-12);
}
