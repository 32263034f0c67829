#pragma once

#include <tuple>
#include <vector>

#include "ldtk/measure.hpp"
#include "ldtk/metric_space.hpp"
#include "ldtk/partition.hpp"

namespace ldtk {

struct BLWitness {
    double distance = 0.0;
    std::vector<Point> support;  // merged support the LP ran on
    std::vector<double> f;       // optimal test function on support, |f| <= 1
    double primal = 0.0;
    double dual = 0.0;  // dual certificate value; |primal - dual| <= 1e-9
    int lp_rounds = 1;  // constraint-generation rounds
};

// Exact bounded-Lipschitz distance between finitely supported measures:
//     sup { integral(f dnu) - integral(f dmu) : |f| <= 1, f 1-Lipschitz }
// solved as an LP over the merged support with constraint generation.
BLWitness bl_distance_witness(const FiniteMeasure& nu, const FiniteMeasure& mu,
                              const MetricSpace& space);

// Core LP on an explicit signed weight vector (delta = nu - mu on `support`,
// summing to 0). Lets optimizers evaluate d_BL on raw iterates that are not
// normalized measures.
BLWitness bl_from_delta(const std::vector<Point>& support, const std::vector<double>& delta,
                        const MetricSpace& space);

double bl_distance(const FiniteMeasure& nu, const FiniteMeasure& mu, const MetricSpace& space);

// Coupling upper bound: sum of w_i * min(d(x_i, y_i), 2) for a coupling given
// as weighted pairs; always >= bl_distance of the two marginals.
double coupling_bound(const std::vector<std::tuple<Point, Point, double>>& pairs,
                      const MetricSpace& space);

// The projection coupling (X, pi^m X) as weighted pairs of an empirical
// sample; its coupling_bound dominates d_BL(L_n, L_n^m).
std::vector<std::tuple<Point, Point, double>> projection_coupling(const EmpiricalMeasure& L,
                                                                  const TaggedPartition& part);

// Same coupling for a finite measure: each atom paired with its cell tag.
std::vector<std::tuple<Point, Point, double>> projection_coupling(const FiniteMeasure& sigma,
                                                                  const TaggedPartition& part);

// Closed-ball membership with +1e-9 slack.
bool in_ball(const FiniteMeasure& sigma, const FiniteMeasure& center, double radius,
             const MetricSpace& space);

}  // namespace ldtk
