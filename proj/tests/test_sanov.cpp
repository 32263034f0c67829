#include <cmath>
#include <vector>

#include "doctest.h"
#include "ldtk/bl_metric.hpp"
#include "ldtk/entropy.hpp"
#include "ldtk/errors.hpp"
#include "ldtk/measure.hpp"
#include "ldtk/sanov.hpp"
#include "oracles.hpp"

using namespace ldtk;

namespace {

FiniteMeasure coin(double p) {
    return FiniteMeasure({Point::coord(0.0), Point::coord(1.0)}, {1.0 - p, p});
}

}  // namespace

TEST_CASE("types_count enumerates compositions") {
    CHECK(types_count(2, 4) == 5.0);          // (n+1) for a binary alphabet
    CHECK(types_count(3, 4) == 15.0);         // C(6, 2)
    CHECK(types_count(2, 400) == 401.0);
    CHECK(types_count(1, 10) == 1.0);
}

TEST_CASE("types probabilities sum to one and match direct binomials") {
    FiniteMeasure mu = coin(0.5);
    double total = types_probability(mu, 12, [](const FiniteMeasure&) { return true; });
    CHECK(total == doctest::Approx(1.0).epsilon(1e-12));

    // P(at least 3 heads of 4) = 5/16 for the fair coin
    double tail = types_probability(mu, 4, [](const FiniteMeasure& t) {
        return t.mass_of(Point::coord(1.0)) >= 0.75 - 1e-12;
    });
    CHECK(tail == doctest::Approx(5.0 / 16.0).epsilon(1e-12));

    // biased coin, exact binomial at n = 3: P(all heads) = 0.7^3
    double cube = types_probability(coin(0.7), 3, [](const FiniteMeasure& t) {
        return t.mass_of(Point::coord(1.0)) >= 1.0 - 1e-12;
    });
    CHECK(cube == doctest::Approx(0.343).epsilon(1e-12));
}

TEST_CASE("types enumeration stops at the class-count guard") {
    std::vector<Point> pts;
    std::vector<double> w;
    for (int i = 0; i < 30; ++i) {
        pts.push_back(Point::coord(i / 30.0));
        w.push_back(1.0 / 30.0);
    }
    FiniteMeasure wide(pts, w);
    CHECK_THROWS_AS(types_probability(wide, 100, [](const FiniteMeasure&) { return true; }),
                    resource_limit_error);
}

TEST_CASE("mc_rate recovers the ball entropy rate on the biased-coin fixture") {
    MetricSpace space = MetricSpace::interval(0.0, 1.0);
    SourceMeasure mu = SourceMeasure::finite(coin(0.5));
    FiniteMeasure center = coin(0.75);

    RateReport rep = mc_rate(mu, center, 0.2, {30, 60}, 2000, 11, space);
    // ball q in [0.05, 0.45]; nearest to 1/2 is 0.45, frozen KL value
    CHECK(rep.entropy_rate == doctest::Approx(0.005008366846356839).epsilon(1e-9));
    REQUIRE(rep.points.size() == 2);
    for (const RatePoint& pt : rep.points) {
        CHECK(pt.reps == 2000);
        CHECK(pt.hits >= 0);
        CHECK(pt.hits <= pt.reps);
        CHECK(pt.wilson_lo <= pt.p_hat);
        CHECK(pt.p_hat <= pt.wilson_hi);
        if (pt.hits > 0) {
            CHECK(pt.rate == doctest::Approx(-std::log(pt.p_hat) / pt.n).epsilon(1e-12));
            // one-sided bound is always below the point estimate
            CHECK(pt.rate_bound <= pt.rate + 1e-12);
        }
    }
    REQUIRE(rep.gaps.size() == 2);
    for (std::size_t i = 0; i < rep.gaps.size(); ++i)
        CHECK(rep.gaps[i] == doctest::Approx(rep.points[i].rate - rep.entropy_rate).epsilon(1e-12));

    CHECK_THROWS_AS(mc_rate(SourceMeasure::gaussian(0.0, 1.0), center, 0.2, {10}, 100, 1, space),
                    unsupported_measure_error);
    CHECK_THROWS_AS(mc_rate(mu, center, -0.1, {10}, 100, 1, space), std::invalid_argument);
    CHECK_THROWS_AS(mc_rate(mu, center, 0.2, {}, 100, 1, space), std::invalid_argument);
}

TEST_CASE("exponential equivalence holds on a small gaussian run") {
    SourceMeasure mu = SourceMeasure::gaussian(1.0, 1.0);
    MetricSpace space = MetricSpace::interval(-kInf, kInf);
    PartitionSequence seq = build_sequence(space, build_exhaustion(mu, 2), 2);

    ExpEquivReport rep = exp_equivalence_check(mu, seq, 30, 2, 500, 3, 16);
    CHECK(rep.per_sample_ok);
    CHECK(rep.event_count == 0);
    CHECK(rep.pass);
    CHECK(rep.lp_evaluations >= 16);
    CHECK(rep.event_budget == doctest::Approx(std::exp(-60.0)).epsilon(1e-12));
    CHECK(rep.max_chain_bound >= 0.5);  // the 1/m term alone
    CHECK(rep.first_violation.empty());
}

TEST_CASE("ball infimum entropy handles the degenerate geometries") {
    MetricSpace space = MetricSpace::interval(0.0, 1.0);
    FiniteMeasure mu_m = coin(0.5);

    // center equal to mu_m: infimum 0 at the center itself
    BallInfResult at_center = ball_inf_entropy_witness(mu_m, mu_m, 0.05, space);
    CHECK(at_center.value == 0.0);
    REQUIRE(at_center.minimizer.has_value());
    CHECK(*at_center.minimizer == mu_m);

    // radius 2 covers the whole simplex regardless of the center
    BallInfResult whole = ball_inf_entropy_witness(FiniteMeasure::dirac(Point::coord(0.0)), mu_m,
                                                   2.0, space);
    CHECK(whole.value == 0.0);

    // empty ball: tags sit at 0 and 1, center far outside any reachable point
    MetricSpace wide = MetricSpace::interval(0.0, 9.0);
    BallInfResult empty = ball_inf_entropy_witness(FiniteMeasure::dirac(Point::coord(8.0)), mu_m,
                                                   0.05, wide);
    CHECK(std::isinf(empty.value));
    CHECK_FALSE(empty.minimizer.has_value());

    CHECK_THROWS_AS(ball_inf_entropy_witness(mu_m, mu_m, -0.5, space), std::invalid_argument);
}

TEST_CASE("ball infimum entropy matches the zoom-grid oracle on a two-tag case") {
    MetricSpace space = MetricSpace::interval(0.0, 1.0);
    FiniteMeasure mu_m = coin(0.5);
    FiniteMeasure center = coin(0.75);
    double lib = ball_inf_entropy(center, mu_m, 0.2, space);
    double ref = oracles::oracle_ball_inf(center, mu_m, 0.2, space);
    CHECK(lib == doctest::Approx(ref).epsilon(1e-7));
    CHECK(lib == doctest::Approx(0.005008366846356839).epsilon(1e-10));
}

TEST_CASE("supinf ladder stays below the entropy limit on atomic fixtures") {
    MetricSpace space = MetricSpace::interval(0.0, 1.0);
    std::vector<Point> pts;
    std::vector<double> mw, nw;
    for (int i = 0; i < 8; ++i) {
        pts.push_back(Point::coord((i + 0.5) / 8.0));
        mw.push_back(1.0 / 8.0);
        nw.push_back((i % 2 == 0 ? 1.5 : 0.5) / 8.0);
    }
    FiniteMeasure nu_atoms(pts, nw);
    SourceMeasure mu = SourceMeasure::finite(FiniteMeasure(pts, mw));
    PartitionSequence seq = build_sequence(space, build_exhaustion(mu, 5), 5);

    SupInfLadder ladder = supinf_ladder(AnyMeasure(nu_atoms), mu, seq, 1);
    double h = relative_entropy_integral(nu_atoms, mu.atoms());
    REQUIRE(ladder.values.size() == 5);
    for (double v : ladder.values) CHECK(v <= h + 1e-9);
    CHECK(ladder.running_sup <= h + 1e-9);
    CHECK(ladder.entropy_limit == doctest::Approx(h).epsilon(1e-12));
    CHECK(ladder.running_sup >= 0.0);
}

TEST_CASE("proposition chains hold with zero violations on an atomic fixture") {
    MetricSpace space = MetricSpace::interval(0.0, 1.0);
    std::vector<Point> pts;
    std::vector<double> w;
    for (int i = 0; i < 4; ++i) {
        pts.push_back(Point::coord((i + 0.5) / 4.0));
        w.push_back(0.25);
    }
    SourceMeasure mu = SourceMeasure::finite(FiniteMeasure(pts, w));
    FiniteMeasure nu(pts, {0.4, 0.3, 0.2, 0.1});
    PartitionSequence seq = build_sequence(space, build_exhaustion(mu, 4), 4);

    PropChainReport rep = proposition_chain_check(nu, mu, seq, 25, 0.15, 4, 150, 99);
    CHECK(rep.pass);
    CHECK(rep.forward_containment);
    CHECK(rep.mirrored_containment);
    CHECK(rep.first_violation.empty());
    CHECK(rep.alpha == doctest::Approx(relative_entropy_integral(nu, mu.atoms())).epsilon(1e-9));
    CHECK(rep.inflation == doctest::Approx((3.0 + 3.0 + 2.0 * rep.alpha) / 4.0).epsilon(1e-12));
    // the wider ball dominates the narrower one on both sides
    CHECK(rep.count_fine_ball >= rep.count_fine_eps);
    CHECK(rep.count_coarse_infl >= rep.count_coarse_ball);
    CHECK(rep.reps == 150);
}

TEST_CASE("proposition chain validates its arguments") {
    MetricSpace space = MetricSpace::interval(0.0, 1.0);
    SourceMeasure mu = SourceMeasure::uniform(0.0, 1.0);
    FiniteMeasure nu = coin(0.5);
    PartitionSequence seq = build_sequence(space, build_exhaustion(mu, 2), 2);
    CHECK_THROWS_AS(proposition_chain_check(nu, mu, seq, 0, 0.1, 2, 10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(proposition_chain_check(nu, mu, seq, 10, 0.1, 3, 10, 1),
                    std::invalid_argument);
    CHECK_THROWS_AS(proposition_chain_check(nu, mu, seq, 10, -0.2, 2, 10, 1),
                    std::invalid_argument);
}
