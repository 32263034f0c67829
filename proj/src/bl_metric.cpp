#include "ldtk/bl_metric.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "ldtk/errors.hpp"
#include "ldtk/numeric.hpp"
#include "ldtk/simplex.hpp"

namespace ldtk {

namespace {

constexpr double kViolationTol = 1e-10;

// The LP runs on shifted variables x = f + 1 in [0, 2], which keeps every
// right-hand side nonnegative: box rows x_i <= 2 and pair rows
// x_i - x_j <= d(p_i, p_j). Since delta sums to 0, the objective
// sum(delta * x) equals sum(delta * f).
struct PairRow {
    int i, j;
    double d;
};

}  // namespace

BLWitness bl_from_delta(const std::vector<Point>& support, const std::vector<double>& delta,
                        const MetricSpace& space) {
    const int n = static_cast<int>(support.size());
    if (n == 0 || static_cast<int>(delta.size()) != n)
        throw std::invalid_argument("bl distance: support/delta mismatch");
    for (const Point& p : support)
        if (!space.contains(p))
            throw std::domain_error("bl distance: support point " + to_string(p) +
                                    " outside the space");

    BLWitness w;
    w.support = support;
    w.f.assign(n, 0.0);
    if (n == 1) return w;

    DenseLP lp;
    lp.objective = delta;
    std::vector<PairRow> pairs;
    for (int i = 0; i < n; ++i) {
        std::vector<double> row(n, 0.0);
        row[i] = 1.0;
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(2.0);
    }
    auto add_pair = [&](int i, int j) {
        std::vector<double> row(n, 0.0);
        row[i] = 1.0;
        row[j] = -1.0;
        lp.rows.push_back(std::move(row));
        lp.rhs.push_back(space.distance(support[i], support[j]));
        pairs.push_back({i, j, lp.rhs.back()});
    };
    if (space.is_interval()) {
        // collinear points: adjacent constraints imply all pairs by chaining
        for (int i = 0; i + 1 < n; ++i) {
            add_pair(i, i + 1);
            add_pair(i + 1, i);
        }
    }

    LPResult res;
    const int max_rounds = 200;
    int round = 0;
    for (; round < max_rounds; ++round) {
        res = solve_lp(lp);
        if (!res.optimal())
            throw optimizer_failure_error("bl distance: LP did not reach optimality",
                                          static_cast<double>(res.status));
        // constraint generation: admit the most violated Lipschitz pairs
        double worst = 0.0;
        std::vector<std::pair<double, std::pair<int, int>>> violated;
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                if (i == j) continue;
                double v = res.x[i] - res.x[j] - space.distance(support[i], support[j]);
                if (v > kViolationTol) violated.push_back({v, {i, j}});
                worst = std::max(worst, v);
            }
        if (violated.empty()) break;
        std::sort(violated.begin(), violated.end(),
                  [](const auto& a, const auto& b) { return a.first > b.first; });
        std::size_t take = std::min<std::size_t>(violated.size(), 2 * n);
        for (std::size_t k = 0; k < take; ++k)
            add_pair(violated[k].second.first, violated[k].second.second);
    }
    if (round == max_rounds)
        throw optimizer_failure_error("bl distance: constraint generation did not settle", 0.0);

    w.primal = res.value;
    w.dual = res.dual_value(lp);
    w.lp_rounds = round + 1;
    w.distance = std::clamp(res.value, 0.0, 2.0);
    for (int i = 0; i < n; ++i) w.f[i] = res.x[i] - 1.0;
    return w;
}

namespace {

BLWitness bl_merged(const FiniteMeasure& nu, const FiniteMeasure& mu, const MetricSpace& space) {
    std::vector<Point> pts(nu.support());
    pts.insert(pts.end(), mu.support().begin(), mu.support().end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    std::vector<double> delta(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        delta[i] = nu.mass_of(pts[i]) - mu.mass_of(pts[i]);
    return bl_from_delta(pts, delta, space);
}

}  // namespace

BLWitness bl_distance_witness(const FiniteMeasure& nu, const FiniteMeasure& mu,
                              const MetricSpace& space) {
    return bl_merged(nu, mu, space);
}

double bl_distance(const FiniteMeasure& nu, const FiniteMeasure& mu, const MetricSpace& space) {
    return bl_merged(nu, mu, space).distance;
}

double coupling_bound(const std::vector<std::tuple<Point, Point, double>>& pairs,
                      const MetricSpace& space) {
    KahanSum total;
    KahanSum bound;
    for (const auto& [x, y, w] : pairs) {
        if (!(w >= 0.0)) throw std::invalid_argument("coupling bound: negative weight");
        total.add(w);
        bound.add(w * std::min(space.distance(x, y), 2.0));
    }
    if (std::abs(total.value() - 1.0) > 1e-9)
        throw std::invalid_argument("coupling bound: weights sum to " +
                                    std::to_string(total.value()) + ", not 1");
    return bound.value();
}

std::vector<std::tuple<Point, Point, double>> projection_coupling(const EmpiricalMeasure& L,
                                                                  const TaggedPartition& part) {
    std::vector<std::tuple<Point, Point, double>> pairs;
    pairs.reserve(L.count());
    double w = 1.0 / static_cast<double>(L.count());
    for (const Point& x : L.samples()) pairs.emplace_back(x, part.project_point(x), w);
    return pairs;
}

std::vector<std::tuple<Point, Point, double>> projection_coupling(const FiniteMeasure& sigma,
                                                                  const TaggedPartition& part) {
    std::vector<std::tuple<Point, Point, double>> pairs;
    pairs.reserve(sigma.size());
    for (std::size_t i = 0; i < sigma.size(); ++i)
        pairs.emplace_back(sigma.point(i), part.project_point(sigma.point(i)), sigma.weight(i));
    return pairs;
}

bool in_ball(const FiniteMeasure& sigma, const FiniteMeasure& center, double radius,
             const MetricSpace& space) {
    if (radius < 0.0) throw std::invalid_argument("in_ball: negative radius");
    if (radius >= 2.0) return true;  // d_BL never exceeds 2
    return bl_distance(sigma, center, space) <= radius + 1e-9;
}

}  // namespace ldtk
