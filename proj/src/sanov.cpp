#include "ldtk/sanov.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldtk/bl_metric.hpp"
#include "ldtk/entropy.hpp"
#include "ldtk/errors.hpp"
#include "ldtk/numeric.hpp"
#include "ldtk/rng.hpp"
#include "ldtk/simplex.hpp"

namespace ldtk {

// ---------------------------------------------------------------------------
// Method of types

double types_count(std::size_t alphabet, int n) {
    // C(n + k - 1, k - 1) by the multiplicative formula: exact while the
    // partial products fit a double, and past the resource guard only the
    // magnitude matters.
    double count = 1.0;
    for (std::size_t i = 1; i < alphabet; ++i)
        count = count * (n + static_cast<double>(i)) / static_cast<double>(i);
    return count;
}

double types_probability(const FiniteMeasure& mu, int n,
                         const std::function<bool(const FiniteMeasure&)>& predicate) {
    if (n < 1) throw std::invalid_argument("types_probability: n must be at least 1");
    const std::size_t k = mu.size();
    if (types_count(k, n) > 1e7)
        throw resource_limit_error("types_probability: more than 1e7 type classes");
    std::vector<double> log_mu(k);
    for (std::size_t i = 0; i < k; ++i) log_mu[i] = std::log(mu.weight(i));
    const double log_n_fact = std::lgamma(static_cast<double>(n) + 1.0);
    std::vector<int> counts(k, 0);
    KahanSum total;

    auto emit = [&]() {
        double logp = log_n_fact;
        std::vector<Point> pts;
        std::vector<double> w;
        for (std::size_t i = 0; i < k; ++i) {
            logp -= std::lgamma(static_cast<double>(counts[i]) + 1.0);
            logp += counts[i] * log_mu[i];
            if (counts[i] > 0) {
                pts.push_back(mu.point(i));
                w.push_back(static_cast<double>(counts[i]) / n);
            }
        }
        FiniteMeasure type(std::move(pts), std::move(w));
        if (predicate(type)) total.add(std::exp(logp));
    };

    // depth-first composition enumeration of n into k parts
    std::function<void(std::size_t, int)> rec = [&](std::size_t pos, int left) {
        if (pos + 1 == k) {
            counts[pos] = left;
            emit();
            return;
        }
        for (int c = 0; c <= left; ++c) {
            counts[pos] = c;
            rec(pos + 1, left - c);
        }
    };
    rec(0, n);
    return total.value();
}

// ---------------------------------------------------------------------------
// Monte Carlo rate estimation

RateReport mc_rate(const SourceMeasure& mu, const FiniteMeasure& center, double radius,
                   const std::vector<int>& n_list, int reps, std::uint64_t seed,
                   const MetricSpace& space) {
    if (reps < 1) throw std::invalid_argument("mc_rate: reps must be at least 1");
    if (!(radius > 0.0)) throw std::invalid_argument("mc_rate: radius must be positive");
    if (n_list.empty()) throw std::invalid_argument("mc_rate: empty n list");
    if (!mu.is_atomic())
        throw unsupported_measure_error(
            "mc_rate: entropy side needs an atomic mu (its support is the tag set)");

    RateReport report;
    report.radius = radius;
    {
        std::ostringstream os;
        os << "closed BL ball of radius " << radius << " around " << center.size() << " atoms";
        report.set_description = os.str();
    }
    report.entropy_rate = ball_inf_entropy(center, mu.atoms(), radius, space);

    std::uint64_t next_index = 0;
    for (int n : n_list) {
        if (n < 1) throw std::invalid_argument("mc_rate: n must be at least 1");
        RatePoint pt;
        pt.n = n;
        pt.reps = reps;
        for (int rep = 0; rep < reps; ++rep) {
            std::vector<Point> samples;
            samples.reserve(n);
            for (int i = 0; i < n; ++i) samples.push_back(mu.sample(seed, next_index++));
            EmpiricalMeasure L(std::move(samples));
            if (in_ball(L.measure(), center, radius, space)) ++pt.hits;
        }
        pt.p_hat = static_cast<double>(pt.hits) / reps;
        WilsonInterval wi = wilson_interval(static_cast<std::size_t>(pt.hits),
                                            static_cast<std::size_t>(reps));
        pt.wilson_lo = wi.lo;
        pt.wilson_hi = wi.hi;
        pt.rate = pt.hits > 0 ? -std::log(pt.p_hat) / n : kInf;
        pt.rate_bound = wi.hi > 0.0 ? -std::log(wi.hi) / n : kInf;
        report.points.push_back(pt);
        report.gaps.push_back(pt.rate - report.entropy_rate);
    }
    return report;
}

// ---------------------------------------------------------------------------
// Exponential equivalence

ExpEquivReport exp_equivalence_check(const SourceMeasure& mu, const PartitionSequence& seq, int n,
                                     int m, long long reps, std::uint64_t seed, int lp_probes) {
    if (n < 1 || reps < 1) throw std::invalid_argument("exp_equivalence: n and reps >= 1");
    const TaggedPartition& part = seq.at(m);
    const MetricSpace& space = seq.space();

    ExpEquivReport rep_out;
    rep_out.n = n;
    rep_out.m = m;
    rep_out.reps = reps;
    rep_out.event_budget = std::exp(-static_cast<double>(m) * n);
    const double threshold = 3.0 / m;

    auto record_violation = [&](const std::string& msg) {
        if (rep_out.per_sample_ok) {
            rep_out.per_sample_ok = false;
            rep_out.first_violation = msg;
        }
    };

    for (long long rep = 0; rep < reps; ++rep) {
        std::vector<Point> samples;
        samples.reserve(n);
        for (int i = 0; i < n; ++i)
            samples.push_back(mu.sample(seed, static_cast<std::uint64_t>(rep) * n + i));
        EmpiricalMeasure L(std::move(samples));

        int bad = 0;
        KahanSum coupling;
        for (const Point& x : L.samples()) {
            const Cell& c = part.cell(part.locate(x));
            if (!c.is_good) ++bad;
            coupling.add(std::min(space.distance(x, c.tag), 2.0) / n);
        }
        double chain = 1.0 / m + 2.0 * bad / n;
        rep_out.max_chain_bound = std::max(rep_out.max_chain_bound, chain);
        if (coupling.value() > chain + 1e-12) {
            std::ostringstream os;
            os << "replicate " << rep << ": coupling " << coupling.value()
               << " exceeds the chain bound " << chain;
            record_violation(os.str());
        }

        bool need_lp = rep < lp_probes || chain > threshold;
        if (!need_lp) continue;
        ++rep_out.lp_evaluations;
        EmpiricalMeasure Lm = discretize_empirical(L, part);
        double d = bl_distance(L.measure(), Lm.measure(), space);
        if (d > coupling.value() + 1e-9) {
            std::ostringstream os;
            os << "replicate " << rep << ": d_BL " << d << " exceeds the coupling bound "
               << coupling.value();
            record_violation(os.str());
        }
        if (d > threshold) ++rep_out.event_count;
    }

    double freq = static_cast<double>(rep_out.event_count) / reps;
    bool event_ok = rep_out.event_count == 0 ||
                    wilson_interval(static_cast<std::size_t>(rep_out.event_count),
                                    static_cast<std::size_t>(reps))
                            .lo <= rep_out.event_budget;
    (void)freq;
    rep_out.pass = rep_out.per_sample_ok && event_ok;
    return rep_out;
}

// ---------------------------------------------------------------------------
// Ball-infimum entropy

namespace {

// Shared scaffolding for the constrained KL minimization: the simplex over
// tags, an outer polytope of BL cutting planes, and exact BL evaluations on
// the merged support of tags and center.
struct BallInfSolver {
    const FiniteMeasure& center;
    const FiniteMeasure& mu_m;
    double radius;
    const MetricSpace& space;

    std::vector<Point> tags;
    std::vector<double> mu_w;
    int k = 0;

    std::vector<Point> merged;        // tags united with center support
    std::vector<double> center_mass;  // center weight per merged point
    std::vector<int> tag_slot;        // tag i -> merged index

    // cuts: g on tags with intercept c_int = integral(g dcenter);
    // ball row: g . sigma <= radius + c_int
    std::vector<std::vector<double>> cut_g;
    std::vector<double> cut_c;

    BallInfSolver(const FiniteMeasure& center_, const FiniteMeasure& mu_m_, double radius_,
                  const MetricSpace& space_)
        : center(center_), mu_m(mu_m_), radius(radius_), space(space_) {
        tags = mu_m.support();
        mu_w = mu_m.weights();
        k = static_cast<int>(tags.size());
        merged = tags;
        merged.insert(merged.end(), center.support().begin(), center.support().end());
        std::sort(merged.begin(), merged.end());
        merged.erase(std::unique(merged.begin(), merged.end()), merged.end());
        center_mass.assign(merged.size(), 0.0);
        for (std::size_t i = 0; i < merged.size(); ++i) center_mass[i] = center.mass_of(merged[i]);
        tag_slot.resize(k);
        for (int i = 0; i < k; ++i) {
            auto it = std::lower_bound(merged.begin(), merged.end(), tags[i]);
            tag_slot[i] = static_cast<int>(it - merged.begin());
        }
    }

    double bl_of(const std::vector<double>& sigma, BLWitness* witness_out = nullptr) {
        std::vector<double> delta(merged.size());
        for (std::size_t j = 0; j < merged.size(); ++j) delta[j] = -center_mass[j];
        for (int i = 0; i < k; ++i) delta[tag_slot[i]] += sigma[i];
        BLWitness w = bl_from_delta(merged, delta, space);
        if (witness_out) *witness_out = w;
        return w.distance;
    }

    void add_cut(const BLWitness& w) {
        std::vector<double> g(k);
        for (int i = 0; i < k; ++i) g[i] = w.f[tag_slot[i]];
        KahanSum c_int;
        for (std::size_t j = 0; j < merged.size(); ++j) c_int.add(center_mass[j] * w.f[j]);
        cut_g.push_back(std::move(g));
        cut_c.push_back(c_int.value());
    }

    // min over the simplex of d_BL(sigma, center), by epigraph cutting planes;
    // returns the distance and the attaining sigma.
    double min_distance(std::vector<double>& arg_out) {
        std::vector<double> sigma(k, 1.0 / k);
        double best = bl_of(sigma);
        for (int round = 0; round < 60; ++round) {
            DenseLP lp;  // variables: sigma (k) then t
            lp.objective.assign(k + 1, 0.0);
            lp.objective[k] = -1.0;  // maximize -t
            auto push_row = [&](std::vector<double> row, double rhs) {
                lp.rows.push_back(std::move(row));
                lp.rhs.push_back(rhs);
            };
            std::vector<double> ones(k + 1, 1.0);
            ones[k] = 0.0;
            push_row(ones, 1.0);
            for (double& v : ones) v = -v;
            ones[k] = 0.0;
            push_row(ones, -1.0);
            for (std::size_t c = 0; c < cut_g.size(); ++c) {
                std::vector<double> row(cut_g[c]);
                row.push_back(-1.0);
                push_row(std::move(row), cut_c[c]);
            }
            LPResult res = solve_lp(lp);
            if (!res.optimal())
                throw optimizer_failure_error("ball feasibility LP failed",
                                              static_cast<double>(res.status));
            std::vector<double> cand(res.x.begin(), res.x.begin() + k);
            double model = -res.value;  // modeled distance lower bound
            BLWitness w;
            double truth = bl_of(cand, &w);
            if (truth < best) {
                best = truth;
                arg_out = cand;
            }
            if (truth <= model + 1e-10) break;
            add_cut(w);
        }
        if (arg_out.empty()) arg_out = sigma;
        return best;
    }

    double objective(const std::vector<double>& sigma) const {
        KahanSum s;
        for (int i = 0; i < k; ++i) {
            double v = xlogxy(sigma[i], mu_w[i]);
            if (std::isinf(v)) return kInf;
            s.add(v);
        }
        return std::max(s.value(), 0.0);
    }

    std::vector<double> gradient(const std::vector<double>& sigma) const {
        std::vector<double> g(k);
        for (int i = 0; i < k; ++i)
            g[i] = std::log(std::max(sigma[i], 1e-18) / mu_w[i]) + 1.0;
        return g;
    }

    // Largest step from feas toward x that stays in the true ball.
    std::vector<double> blend_feasible(const std::vector<double>& x,
                                       const std::vector<double>& feas) {
        if (bl_of(x) <= radius + 1e-9) return x;
        double lo = 0.0, hi = 1.0;  // u = 1 is x, u = 0 is feas
        for (int it = 0; it < 30; ++it) {
            double mid = 0.5 * (lo + hi);
            std::vector<double> probe(k);
            for (int i = 0; i < k; ++i) probe[i] = feas[i] + mid * (x[i] - feas[i]);
            if (bl_of(probe) <= radius + 1e-10)
                lo = mid;
            else
                hi = mid;
        }
        std::vector<double> out(k);
        for (int i = 0; i < k; ++i) out[i] = feas[i] + lo * (x[i] - feas[i]);
        return out;
    }

    // LMO over the outer polytope (simplex + accumulated ball cuts).
    std::vector<double> lmo(const std::vector<double>& grad) {
        DenseLP lp;
        lp.objective.assign(k, 0.0);
        for (int i = 0; i < k; ++i) lp.objective[i] = -grad[i];
        lp.rows.push_back(std::vector<double>(k, 1.0));
        lp.rhs.push_back(1.0);
        lp.rows.push_back(std::vector<double>(k, -1.0));
        lp.rhs.push_back(-1.0);
        for (std::size_t c = 0; c < cut_g.size(); ++c) {
            lp.rows.push_back(cut_g[c]);
            lp.rhs.push_back(radius + cut_c[c]);
        }
        LPResult res = solve_lp(lp);
        if (!res.optimal())
            throw optimizer_failure_error("ball LMO LP failed", static_cast<double>(res.status));
        return res.x;
    }

    // Exact line search on the segment [x, s]: bisection on the directional
    // derivative of the convex objective.
    double line_search(const std::vector<double>& x, const std::vector<double>& s) const {
        auto deriv = [&](double t) {
            double d = 0.0;
            for (int i = 0; i < k; ++i) {
                double di = s[i] - x[i];
                if (di == 0.0) continue;
                double v = std::max(x[i] + t * di, 1e-18);
                d += di * (std::log(v / mu_w[i]) + 1.0);
            }
            return d;
        };
        if (deriv(1.0) <= 0.0) return 1.0;
        if (deriv(0.0) >= 0.0) return 0.0;
        double lo = 0.0, hi = 1.0;
        for (int it = 0; it < 80; ++it) {
            double mid = 0.5 * (lo + hi);
            (deriv(mid) < 0.0 ? lo : hi) = mid;
        }
        return 0.5 * (lo + hi);
    }

    void renormalize(std::vector<double>& sigma) const {
        double total = 0.0;
        for (double& v : sigma) {
            if (v < 0.0) v = 0.0;
            total += v;
        }
        if (total > 0.0)
            for (double& v : sigma) v /= total;
    }

    struct RunResult {
        std::vector<double> x;
        double value = kInf;
        double gap = kInf;
    };

    RunResult frank_wolfe(std::vector<double> x, const std::vector<double>& feas, int max_iter) {
        RunResult out;
        int check_every = k > 64 ? 20 : 10;
        for (int it = 0; it < max_iter; ++it) {
            std::vector<double> grad = gradient(x);
            std::vector<double> s = lmo(grad);
            double gap = 0.0;
            for (int i = 0; i < k; ++i) gap += grad[i] * (x[i] - s[i]);
            out.gap = gap;
            if (gap <= 1e-9) break;
            double t = line_search(x, s);
            if (t <= 0.0) break;
            for (int i = 0; i < k; ++i) x[i] += t * (s[i] - x[i]);
            renormalize(x);
            if ((it + 1) % check_every == 0) {
                BLWitness w;
                if (bl_of(x, &w) > radius + 1e-9) {
                    add_cut(w);
                    x = blend_feasible(x, feas);
                }
            }
        }
        BLWitness w;
        if (bl_of(x, &w) > radius + 1e-9) {
            add_cut(w);
            x = blend_feasible(x, feas);
        }
        out.x = x;
        out.value = objective(x);
        return out;
    }

    // Pairwise-transfer polish for small instances: 1-D convex searches along
    // e_i - e_j inside the cut polytope, re-verified against the true ball.
    void polish(std::vector<double>& x, const std::vector<double>& feas) {
        if (k > 16) return;
        for (int outer = 0; outer < 4; ++outer) {
            for (int round = 0; round < 12; ++round) {
                for (int i = 0; i < k; ++i)
                    for (int j = 0; j < k; ++j) {
                        if (i == j) continue;
                        double t_hi = x[j];  // sigma_j - t >= 0
                        double t_lo = 0.0;
                        for (std::size_t c = 0; c < cut_g.size(); ++c) {
                            double coef = cut_g[c][i] - cut_g[c][j];
                            if (coef <= 1e-15) continue;
                            double room = radius + cut_c[c];
                            for (int a = 0; a < k; ++a) room -= cut_g[c][a] * x[a];
                            t_hi = std::min(t_hi, room / coef);
                        }
                        if (t_hi <= t_lo + 1e-15) continue;
                        auto h = [&](double t) {
                            double v = xlogxy(x[i] + t, mu_w[i]) + xlogxy(x[j] - t, mu_w[j]);
                            return v;
                        };
                        double t = golden_minimize(h, t_lo, t_hi, 1e-14, 120);
                        if (h(t) < h(0.0) - 1e-15) {
                            x[i] += t;
                            x[j] -= t;
                        }
                    }
            }
            BLWitness w;
            if (bl_of(x, &w) <= radius + 1e-9) break;
            add_cut(w);
            x = blend_feasible(x, feas);
        }
    }
};

}  // namespace

BallInfResult ball_inf_entropy_witness(const FiniteMeasure& center, const FiniteMeasure& mu_m,
                                       double radius, const MetricSpace& space) {
    if (radius < 0.0) throw std::invalid_argument("ball_inf_entropy: negative radius");
    BallInfResult result;

    BallInfSolver solver(center, mu_m, radius, space);
    const int k = solver.k;

    // mu_m itself in the ball: the unconstrained minimum 0 is attained
    std::vector<double> mu_vec = mu_m.weights();
    if (radius >= 2.0 || solver.bl_of(mu_vec) <= radius + 1e-9) {
        result.value = 0.0;
        result.minimizer = mu_m;
        result.fw_gap = 0.0;
        result.feasibility = 0.0;
        result.restarts_used = 0;
        return result;
    }

    // feasibility: the closest simplex point seeds everything else
    std::vector<double> feas;
    double min_dist = solver.min_distance(feas);
    if (min_dist > radius + 1e-9) {
        result.value = kInf;
        result.feasibility = min_dist - radius;
        return result;
    }

    // deterministic restart pool
    std::vector<std::vector<double>> starts;
    starts.push_back(feas);
    {  // center restricted to the tag set, when that is a probability vector
        std::vector<double> c(k, 0.0);
        double mass = 0.0;
        for (int i = 0; i < k; ++i) {
            c[i] = center.mass_of(solver.tags[i]);
            mass += c[i];
        }
        if (mass > 1.0 - 1e-12) starts.push_back(solver.blend_feasible(c, feas));
    }
    starts.push_back(solver.blend_feasible(std::vector<double>(k, 1.0 / k), feas));
    if (k <= 64) {
        // heaviest center tags as vertex starts
        std::vector<int> order(k);
        for (int i = 0; i < k; ++i) order[i] = i;
        std::sort(order.begin(), order.end(), [&](int a, int b) {
            double ca = center.mass_of(solver.tags[a]);
            double cb = center.mass_of(solver.tags[b]);
            if (ca != cb) return ca > cb;
            return a < b;
        });
        for (int v = 0; v < std::min(k, 4); ++v) {
            std::vector<double> e(k, 0.0);
            e[order[v]] = 1.0;
            starts.push_back(solver.blend_feasible(e, feas));
        }
        std::vector<double> blended_mu = solver.blend_feasible(mu_vec, feas);
        starts.push_back(blended_mu);
    }
    if (starts.size() > 8) starts.resize(8);

    const int max_iter = k > 64 ? 300 : 600;
    BallInfSolver::RunResult best;
    for (const auto& s0 : starts) {
        BallInfSolver::RunResult run = solver.frank_wolfe(s0, feas, max_iter);
        ++result.restarts_used;
        if (run.value < best.value) best = run;
    }
    solver.polish(best.x, feas);
    best.value = solver.objective(best.x);

    result.value = best.value;
    result.fw_gap = best.gap;
    result.feasibility = solver.bl_of(best.x) - radius;
    solver.renormalize(best.x);
    result.minimizer = FiniteMeasure(solver.tags, best.x);
    return result;
}

double ball_inf_entropy(const FiniteMeasure& center, const FiniteMeasure& mu_m, double radius,
                        const MetricSpace& space) {
    return ball_inf_entropy_witness(center, mu_m, radius, space).value;
}

// ---------------------------------------------------------------------------
// Sup-inf ladder

SupInfLadder supinf_ladder(const AnyMeasure& nu, const SourceMeasure& mu,
                           const PartitionSequence& seq, int m0) {
    if (m0 < 1 || m0 > seq.max_depth())
        throw std::invalid_argument("supinf_ladder: m0 outside the sequence depth range");
    const MetricSpace& space = seq.space();

    // finite surrogate of nu at the deepest partition is the ball center
    FiniteMeasure center = nu.is_finite() || nu.source().is_atomic()
                               ? (nu.is_finite() ? nu.finite() : nu.source().atoms())
                               : discretize(nu, seq.at(seq.max_depth()));

    SupInfLadder ladder;
    ladder.entropy_limit = entropy_ladder(nu, AnyMeasure(mu), seq).limit_estimate;
    double sup = -kInf;
    for (int m = m0; m <= seq.max_depth(); ++m) {
        const TaggedPartition& part = seq.at(m);
        FiniteMeasure mu_disc = discretize(mu, part);
        double radius = 1.0 / std::sqrt(static_cast<double>(m));
        double value = ball_inf_entropy(center, mu_disc, radius, space);
        // nu's own discretization is a feasible competitor whenever it sits in
        // the ball; its entropy never exceeds H(nu|mu)
        FiniteMeasure nu_disc = discretize(nu, part);
        if (in_ball(nu_disc, center, radius, space))
            value = std::min(value, relative_entropy_integral(nu_disc, mu_disc));
        ladder.depths.push_back(m);
        ladder.values.push_back(value);
        sup = std::max(sup, value);
    }
    ladder.running_sup = sup;
    return ladder;
}

// ---------------------------------------------------------------------------
// Proposition chains

PropChainReport proposition_chain_check(const FiniteMeasure& nu, const SourceMeasure& mu,
                                        const PartitionSequence& seq, int n, double eps, int m,
                                        long long reps, std::uint64_t seed) {
    if (n < 1 || reps < 1) throw std::invalid_argument("proposition chain: n and reps >= 1");
    if (!(eps > 0.0)) throw std::invalid_argument("proposition chain: eps must be positive");
    const TaggedPartition& part = seq.at(m);
    const MetricSpace& space = seq.space();

    double alpha;
    if (mu.is_atomic())
        alpha = relative_entropy_integral(nu, mu.atoms());
    else
        alpha = entropy_ladder(AnyMeasure(nu), AnyMeasure(mu), seq).limit_estimate;
    if (std::isinf(alpha))
        throw std::invalid_argument(
            "proposition chain: nu must have finite relative entropy against mu");

    PropChainReport rep_out;
    rep_out.n = n;
    rep_out.m = m;
    rep_out.reps = reps;
    rep_out.eps = eps;
    rep_out.alpha = alpha;
    double c = 3.0 + 2.0 * alpha;
    rep_out.inflation = (3.0 + c) / m;
    const double threshold = 3.0 / m;

    FiniteMeasure nu_m = discretize(nu, part);

    auto fail = [&](const std::string& msg, bool forward) {
        if (forward)
            rep_out.forward_containment = false;
        else
            rep_out.mirrored_containment = false;
        if (rep_out.first_violation.empty()) rep_out.first_violation = msg;
    };

    for (long long rep = 0; rep < reps; ++rep) {
        std::vector<Point> samples;
        samples.reserve(n);
        for (int i = 0; i < n; ++i)
            samples.push_back(mu.sample(seed, static_cast<std::uint64_t>(rep) * n + i));
        EmpiricalMeasure L(std::move(samples));
        EmpiricalMeasure Lm = discretize_empirical(L, part);

        double d_coarse = bl_distance(Lm.measure(), nu_m, space);
        double d_fine = bl_distance(L.measure(), nu, space);

        // the equivalence event, resolved cheaply when the chain bound decides
        int bad = 0;
        for (const Point& x : L.samples())
            if (!part.cell(part.locate(x)).is_good) ++bad;
        double chain = 1.0 / m + 2.0 * static_cast<double>(bad) / n;
        bool event;
        if (chain <= threshold)
            event = false;
        else
            event = bl_distance(L.measure(), Lm.measure(), space) > threshold;

        bool A = d_coarse <= eps + 1e-9;
        bool B = d_fine <= eps + rep_out.inflation + 1e-8;
        bool Ap = d_fine <= eps + 1e-9;
        bool Bp = d_coarse <= eps + rep_out.inflation + 1e-8;
        if (A) ++rep_out.count_coarse_ball;
        if (B) ++rep_out.count_fine_ball;
        if (event) ++rep_out.count_equiv_event;
        if (Ap) ++rep_out.count_fine_eps;
        if (Bp) ++rep_out.count_coarse_infl;
        if (A && !(B || event)) {
            std::ostringstream os;
            os << "replicate " << rep << ": coarse ball event escapes the union (d_fine "
               << d_fine << ", inflated radius " << eps + rep_out.inflation << ")";
            fail(os.str(), true);
        }
        if (Ap && !(Bp || event)) {
            std::ostringstream os;
            os << "replicate " << rep << ": fine ball event escapes the mirrored union (d_coarse "
               << d_coarse << ", inflated radius " << eps + rep_out.inflation << ")";
            fail(os.str(), false);
        }
    }
    rep_out.pass = rep_out.forward_containment && rep_out.mirrored_containment;
    return rep_out;
}

}  // namespace ldtk
