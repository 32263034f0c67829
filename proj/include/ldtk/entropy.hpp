#pragma once

#include <string>
#include <vector>

#include "ldtk/measure.hpp"
#include "ldtk/partition.hpp"
#include "ldtk/rational.hpp"

namespace ldtk {

// H(nu|mu) = sum nu(a) log(nu(a)/mu(a)) with 0 log 0 = 0; +infinity when nu
// charges a mu-null point.
double relative_entropy_integral(const FiniteMeasure& nu, const FiniteMeasure& mu);

// Union of the two supports, sorted; the index set for test functions f.
std::vector<Point> merged_support(const FiniteMeasure& nu, const FiniteMeasure& mu);

struct VariationalResult {
    double value = 0.0;
    std::vector<double> f;  // maximizer on merged_support(nu, mu)
    int sweeps = 0;
    double grad_norm = 0.0;
};

// sup over |f| <= bound of  integral(f dnu) - log integral(e^f dmu),
// by cyclic coordinate ascent with box clamping (closed-form coordinate
// updates). Throws optimizer_failure_error if the projected gradient has not
// reached 1e-10 within the sweep cap.
VariationalResult relative_entropy_variational(const FiniteMeasure& nu, const FiniteMeasure& mu,
                                               double bound);

struct InequalitySlack {
    double slack = 0.0;
    bool pass = true;
};

// Entropy inequality: integral(f dnu) <= H(nu|mu) + log integral(e^f dmu).
// f is indexed against merged_support(nu, mu). Pass at slack >= -1e-9.
InequalitySlack entropy_inequality_check(const std::vector<double>& f, const FiniteMeasure& nu,
                                         const FiniteMeasure& mu);

struct EntropyLadder {
    std::vector<int> depths;
    std::vector<double> values;  // H(nu^m | mu^m) per depth
    double limit_estimate = 0.0;
};

// Discretized relative entropies along the partition sequence; nondecreasing
// in m, converging to H(nu|mu) from below.
EntropyLadder entropy_ladder(const AnyMeasure& nu, const AnyMeasure& mu,
                             const PartitionSequence& seq);

struct MartingaleTrace {
    std::vector<int> depths;
    std::vector<std::vector<double>> s_values;  // per depth, by cell index
    std::vector<double> expectation;            // E_mu[S_m], 1 when nu << mu
    std::vector<double> s_log_s;                // E_mu[S_m log S_m] = H(nu^m|mu^m)
    double ui_bound = 0.0;                      // sup_m E_mu[S_m log S_m]
};

// The density-ratio martingale S_m = (d nu^m / d mu^m) composed with the
// projection: cell-wise values, means, and the uniform-integrability bound.
MartingaleTrace martingale_trace(const AnyMeasure& nu, const AnyMeasure& mu,
                                 const PartitionSequence& seq);

// Exact-weight measure for the rational tower check: weights[i]/denominator
// on support[i].
struct RationalMeasure {
    std::vector<Point> support;
    std::vector<Rational> weights;

    Rational mass_in(const TaggedPartition& part, int cell) const;
    FiniteMeasure to_finite() const;
};

struct TowerCheck {
    bool exact = true;
    std::string detail;  // first failing cell on mismatch
};

// Verifies E_mu[S_{m+1} | F_m] = S_m cell-by-cell in exact rational
// arithmetic, plus E_mu[S_m] = 1, across all consecutive depths of seq.
TowerCheck tower_check_exact(const RationalMeasure& nu, const RationalMeasure& mu,
                             const PartitionSequence& seq);

// Quadrature oracle: integral of p_nu log(p_nu / p_mu) over [lo, hi] for
// analytic densities, adaptive Simpson at tolerance 1e-8.
double kl_divergence_quadrature(const SourceMeasure& nu, const SourceMeasure& mu, double lo,
                                double hi);

}  // namespace ldtk
