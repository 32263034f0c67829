#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ldtk/numeric.hpp"
#include "ldtk/point.hpp"

namespace ldtk {

class SourceMeasure;

enum class SpaceKind { Interval, FinitePoints, Cloud };

// A concrete metric ground space: a closed real interval (bounds may be
// infinite), a finite point set with an explicit distance matrix, or a finite
// point cloud in R^d under the Euclidean metric.
class MetricSpace {
public:
    static MetricSpace interval(double lo, double hi);
    static MetricSpace finite_points(std::vector<std::vector<double>> distance_matrix);
    static MetricSpace cloud(std::vector<std::vector<double>> coordinates);

    SpaceKind kind() const { return kind_; }
    bool is_interval() const { return kind_ == SpaceKind::Interval; }

    double lo() const { return lo_; }
    double hi() const { return hi_; }
    std::size_t point_count() const { return n_points_; }
    const std::vector<double>& coordinates(int id) const { return coords_[id]; }

    bool contains(const Point& p) const;
    double distance(const Point& a, const Point& b) const;  // throws std::domain_error off-space

    // Largest pairwise distance within a member set (finite kinds).
    double set_diameter(const std::vector<int>& members) const;

    std::string describe() const;

private:
    MetricSpace() = default;

    SpaceKind kind_ = SpaceKind::Interval;
    double lo_ = 0.0, hi_ = 0.0;
    std::size_t n_points_ = 0;
    std::vector<std::vector<double>> dist_;    // FinitePoints
    std::vector<std::vector<double>> coords_;  // Cloud
};

// Nested compact sets K_1 <= ... <= K_m with certified tail bounds
// mu(K_m^c) <= e^{-m^2-1}/m. Interval spaces store [lo_m, hi_m); finite kinds
// always exhaust with the full point set (tail exactly zero).
struct CompactExhaustion {
    SpaceKind kind = SpaceKind::Interval;
    std::vector<double> lo;          // per depth, interval kinds
    std::vector<double> hi;
    std::vector<double> tail_bound;  // certified upper bound on mu(K_m^c)

    int depth() const { return static_cast<int>(tail_bound.size()); }
};

// The per-depth tail budget e^{-m^2-1}/m.
inline double exhaustion_budget(int m) {
    return std::exp(-static_cast<double>(m) * m - 1.0) / static_cast<double>(m);
}

CompactExhaustion build_exhaustion(const SourceMeasure& mu, int m_max);

struct MetricCheckResult {
    bool ok = true;
    std::string detail;
};

// Metric axioms on random triples: symmetry, zero diagonal, nonnegativity,
// triangle inequality with 1e-12 slack.
MetricCheckResult validate_metric(const MetricSpace& space, int triples, std::uint64_t seed);

}  // namespace ldtk
