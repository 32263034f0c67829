#include "ldtk/metric_space.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "ldtk/rng.hpp"

namespace ldtk {

MetricSpace MetricSpace::interval(double lo, double hi) {
    if (std::isnan(lo) || std::isnan(hi) || !(lo < hi))
        throw std::invalid_argument("interval space: need lo < hi");
    MetricSpace s;
    s.kind_ = SpaceKind::Interval;
    s.lo_ = lo;
    s.hi_ = hi;
    return s;
}

MetricSpace MetricSpace::finite_points(std::vector<std::vector<double>> distance_matrix) {
    std::size_t n = distance_matrix.size();
    if (n == 0) throw std::invalid_argument("finite space: need at least one point");
    for (std::size_t i = 0; i < n; ++i) {
        if (distance_matrix[i].size() != n)
            throw std::invalid_argument("finite space: distance matrix must be square");
        if (distance_matrix[i][i] != 0.0)
            throw std::invalid_argument("finite space: nonzero diagonal entry");
        for (std::size_t j = 0; j < n; ++j) {
            double d = distance_matrix[i][j];
            if (!(d >= 0.0)) throw std::invalid_argument("finite space: negative distance");
            if (d != distance_matrix[j][i])
                throw std::invalid_argument("finite space: asymmetric distance matrix");
        }
    }
    MetricSpace s;
    s.kind_ = SpaceKind::FinitePoints;
    s.n_points_ = n;
    s.dist_ = std::move(distance_matrix);
    return s;
}

MetricSpace MetricSpace::cloud(std::vector<std::vector<double>> coordinates) {
    std::size_t n = coordinates.size();
    if (n == 0) throw std::invalid_argument("cloud space: need at least one point");
    std::size_t dim = coordinates[0].size();
    if (dim == 0) throw std::invalid_argument("cloud space: zero-dimensional points");
    for (const auto& p : coordinates)
        if (p.size() != dim) throw std::invalid_argument("cloud space: ragged coordinates");
    MetricSpace s;
    s.kind_ = SpaceKind::Cloud;
    s.n_points_ = n;
    s.coords_ = std::move(coordinates);
    return s;
}

bool MetricSpace::contains(const Point& p) const {
    if (kind_ == SpaceKind::Interval)
        return !p.is_indexed() && p.x >= lo_ && p.x <= hi_ && !std::isnan(p.x);
    return p.is_indexed() && p.id < static_cast<int>(n_points_);
}

double MetricSpace::distance(const Point& a, const Point& b) const {
    if (!contains(a) || !contains(b)) throw std::domain_error("distance: point outside space");
    switch (kind_) {
        case SpaceKind::Interval:
            return std::abs(a.x - b.x);
        case SpaceKind::FinitePoints:
            return dist_[a.id][b.id];
        case SpaceKind::Cloud: {
            const auto& u = coords_[a.id];
            const auto& v = coords_[b.id];
            double s = 0.0;
            for (std::size_t i = 0; i < u.size(); ++i) {
                double d = u[i] - v[i];
                s += d * d;
            }
            return std::sqrt(s);
        }
    }
    return 0.0;
}

double MetricSpace::set_diameter(const std::vector<int>& members) const {
    double d = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            d = std::max(d, distance(Point::indexed(members[i]), Point::indexed(members[j])));
    return d;
}

std::string MetricSpace::describe() const {
    std::ostringstream os;
    switch (kind_) {
        case SpaceKind::Interval:
            os << "interval[" << lo_ << ", " << hi_ << "]";
            break;
        case SpaceKind::FinitePoints:
            os << "finite(" << n_points_ << " points)";
            break;
        case SpaceKind::Cloud:
            os << "cloud(" << n_points_ << " points, dim " << coords_[0].size() << ")";
            break;
    }
    return os.str();
}

MetricCheckResult validate_metric(const MetricSpace& space, int triples, std::uint64_t seed) {
    const double slack = 1e-12;
    auto random_point = [&](std::uint64_t index, std::uint64_t lane) {
        if (space.is_interval()) {
            double lo = std::isfinite(space.lo()) ? space.lo() : -50.0;
            double hi = std::isfinite(space.hi()) ? space.hi() : 50.0;
            return Point::coord(lo + (hi - lo) * unit_double(seed, index, lane));
        }
        std::uint64_t n = space.point_count();
        return Point::indexed(static_cast<int>(draw_bits(seed, index, lane) % n));
    };
    for (int t = 0; t < triples; ++t) {
        Point x = random_point(t, 0), y = random_point(t, 1), z = random_point(t, 2);
        double dxy = space.distance(x, y);
        double dyx = space.distance(y, x);
        double dxz = space.distance(x, z);
        double dyz = space.distance(y, z);
        MetricCheckResult bad;
        bad.ok = false;
        if (space.distance(x, x) != 0.0) {
            bad.detail = "nonzero self-distance at " + to_string(x);
            return bad;
        }
        if (dxy != dyx) {
            bad.detail = "asymmetry at (" + to_string(x) + ", " + to_string(y) + ")";
            return bad;
        }
        if (!(dxy >= 0.0)) {
            bad.detail = "negative distance at (" + to_string(x) + ", " + to_string(y) + ")";
            return bad;
        }
        if (dxz > dxy + dyz + slack) {
            bad.detail = "triangle violation at (" + to_string(x) + ", " + to_string(y) + ", " +
                         to_string(z) + ")";
            return bad;
        }
    }
    return MetricCheckResult{};
}

}  // namespace ldtk
