#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "ldtk/measure.hpp"
#include "ldtk/metric_space.hpp"
#include "ldtk/partition.hpp"

namespace ldtk {

// ---------------------------------------------------------------------------
// Method of types: exact finite-alphabet probabilities, the independent oracle.

// Exact P(L_n satisfies predicate) by enumerating all type classes of size n
// over mu's support. The predicate receives each type as a FiniteMeasure with
// weights k/n. Guarded at 1e7 type classes.
double types_probability(const FiniteMeasure& mu, int n,
                         const std::function<bool(const FiniteMeasure&)>& predicate);

// Number of type classes (compositions of n into |support| parts); the guard
// quantity for types_probability.
double types_count(std::size_t alphabet, int n);

// ---------------------------------------------------------------------------
// Monte Carlo rate estimation.

struct RatePoint {
    int n = 0;
    long long hits = 0;
    long long reps = 0;
    double p_hat = 0.0;
    double wilson_lo = 0.0;  // 95% Wilson interval for the hit probability
    double wilson_hi = 0.0;
    double rate = 0.0;       // -(1/n) log p_hat; +inf when hits == 0
    double rate_bound = 0.0; // one-sided: -(1/n) log wilson_hi
};

struct RateReport {
    std::string set_description;
    double radius = 0.0;
    std::vector<RatePoint> points;
    double entropy_rate = 0.0;  // inf over the ball of H(.|mu_m), by ball_inf_entropy
    std::vector<double> gaps;   // empirical rate minus entropy rate, per n
};

// Estimates P(L_n in the closed BL ball around center) for each n, with
// Wilson 95% uncertainty, and compares against the entropy rate of the ball.
// mu must be atomic (its support doubles as the tag set for the entropy side).
RateReport mc_rate(const SourceMeasure& mu, const FiniteMeasure& center, double radius,
                   const std::vector<int>& n_list, int reps, std::uint64_t seed,
                   const MetricSpace& space);

// ---------------------------------------------------------------------------
// Exponential equivalence of L_n and its discretization L_n^m.

struct ExpEquivReport {
    int n = 0;
    int m = 0;
    long long reps = 0;
    bool per_sample_ok = true;     // coupling chain held in every replicate
    std::string first_violation;
    long long event_count = 0;     // occurrences of d_BL(L_n, L_n^m) > 3/m
    double event_budget = 0.0;     // exp(-m n)
    long long lp_evaluations = 0;  // replicates where the exact LP was needed
    double max_chain_bound = 0.0;  // max over replicates of 1/m + (2/n)#bad
    bool pass = true;
};

// Per replicate: checks the deterministic chain
//   d_BL(L_n, L_n^m) <= coupling <= 1/m + (2/n) #{i : X_i in a bad cell}
// via the projection coupling, resolving the event {d_BL > 3/m} exactly (the
// LP runs only when the cheap bound cannot already decide it). lp_probes
// forces that many leading replicates through the full LP cross-check.
ExpEquivReport exp_equivalence_check(const SourceMeasure& mu, const PartitionSequence& seq, int n,
                                     int m, long long reps, std::uint64_t seed,
                                     int lp_probes = 64);

// ---------------------------------------------------------------------------
// Ball-infimum entropy and the sup-inf ladder.

struct BallInfResult {
    double value = 0.0;  // inf of H(sigma|mu_m) over the ball; +inf if empty
    std::optional<FiniteMeasure> minimizer;  // argmin when finite
    double fw_gap = 0.0;       // Frank-Wolfe duality gap at the returned point
    double feasibility = 0.0;  // d_BL(minimizer, center) - radius (<= 1e-9)
    int restarts_used = 0;
};

// inf { H(sigma | mu_m) : sigma on mu_m's tags, d_BL(sigma, center) <= radius }
// by Frank-Wolfe over the simplex with BL cutting planes, 8 deterministic
// restarts. Returns +inf when the ball misses the simplex entirely.
BallInfResult ball_inf_entropy_witness(const FiniteMeasure& center, const FiniteMeasure& mu_m,
                                       double radius, const MetricSpace& space);

double ball_inf_entropy(const FiniteMeasure& center, const FiniteMeasure& mu_m, double radius,
                        const MetricSpace& space);

struct SupInfLadder {
    std::vector<int> depths;
    std::vector<double> values;   // inf-ball entropy at radius 1/sqrt(m)
    double running_sup = 0.0;
    double entropy_limit = 0.0;   // H(nu|mu) ladder limit, the comparison target
};

// For each depth m >= m0, the infimum of H(sigma|mu^m) over the closed
// 1/sqrt(m)-ball around nu. Values never exceed the entropy limit (the easy
// direction); the running sup trends toward it on lossless fixtures.
SupInfLadder supinf_ladder(const AnyMeasure& nu, const SourceMeasure& mu,
                           const PartitionSequence& seq, int m0);

// ---------------------------------------------------------------------------
// Finite-n inequality chains behind the two LDP bounds.

struct PropChainReport {
    int n = 0;
    int m = 0;
    long long reps = 0;
    double eps = 0.0;
    double alpha = 0.0;      // entropy bound of nu used for the constant c
    double inflation = 0.0;  // (3 + c)/m with c = 3 + 2 alpha
    long long count_coarse_ball = 0;   // A: d_BL(L_n^m, nu^m) <= eps
    long long count_fine_ball = 0;     // B: d_BL(L_n, nu) <= eps + inflation
    long long count_equiv_event = 0;   // C: d_BL(L_n, L_n^m) > 3/m
    long long count_fine_eps = 0;      // A': d_BL(L_n, nu) <= eps
    long long count_coarse_infl = 0;   // B': d_BL(L_n^m, nu^m) <= eps + inflation
    bool forward_containment = true;   // every A replicate lies in B union C
    bool mirrored_containment = true;  // every A' replicate lies in B' union C
    std::string first_violation;
    bool pass = true;
};

// Monte Carlo verification of the two union-bound inequalities behind the
// upper/lower LDP propositions, checked as per-replicate set containments.
PropChainReport proposition_chain_check(const FiniteMeasure& nu, const SourceMeasure& mu,
                                        const PartitionSequence& seq, int n, double eps, int m,
                                        long long reps, std::uint64_t seed);

}  // namespace ldtk
