#include "ldtk/partition.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <sstream>
#include <stdexcept>

#include "ldtk/errors.hpp"
#include "ldtk/numeric.hpp"
#include "ldtk/rng.hpp"

namespace ldtk {

namespace {

constexpr int kMaxCells = 2000000;

std::string cell_label(const Cell& c) {
    std::ostringstream os;
    os << "depth " << c.depth << " cell " << c.index;
    if (c.members.empty())
        os << " [" << c.lo << ", " << c.hi << (c.closed_hi ? "]" : ")");
    else
        os << " {" << c.members.size() << " pts}";
    return os.str();
}

int split_count(double w, double target) {
    if (!(w > 0.0) || !std::isfinite(w)) throw std::logic_error("split_count: bad width");
    int k = std::max(1, static_cast<int>(std::ceil(w / target - 1e-12)));
    while (w / k > target) ++k;
    return k;
}

Point bad_tag(double lo, double hi) {
    if (std::isinf(lo)) return Point::coord(hi - 1.0);
    if (std::isinf(hi)) return Point::coord(lo + 1.0);
    return Point::coord(0.5 * (lo + hi));
}

bool interval_has(const Cell& c, double x) {
    return x >= c.lo && (x < c.hi || (c.closed_hi && x == c.hi));
}

// Equal-width tiling of [a, b) into good cells of width <= target; the first
// boundary is exactly a and the last exactly b.
std::vector<Cell> tile_interval(double a, double b, int depth, double target, bool close_top,
                                int parent) {
    std::vector<Cell> out;
    if (!(b > a)) return out;
    int k = split_count(b - a, target);
    for (int i = 0; i < k; ++i) {
        Cell c;
        c.depth = depth;
        c.lo = i == 0 ? a : a + (b - a) * (static_cast<double>(i) / k);
        c.hi = i == k - 1 ? b : a + (b - a) * (static_cast<double>(i + 1) / k);
        c.closed_hi = close_top && i == k - 1;
        c.is_good = true;
        c.tag = Point::coord(0.5 * (c.lo + c.hi));
        c.parent = parent;
        out.push_back(c);
    }
    return out;
}

void inherit_tag(std::vector<Cell>& kids, std::size_t first, std::size_t last, const Cell& parent) {
    for (std::size_t i = first; i < last; ++i) {
        if (interval_has(kids[i], parent.tag.x)) {
            kids[i].tag = parent.tag;
            return;
        }
    }
    throw std::logic_error("refinement lost a parent tag: " + cell_label(parent));
}

// --- finite-kind clustering -------------------------------------------------

double cluster_diam(const MetricSpace& space, const std::vector<int>& members) {
    double d = 0.0;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            d = std::max(d, space.distance(Point::indexed(members[i]), Point::indexed(members[j])));
    return d;
}

void split_cluster(const MetricSpace& space, std::vector<int> members, double target,
                   std::vector<std::vector<int>>& out) {
    if (members.size() <= 1 || cluster_diam(space, members) <= target) {
        std::sort(members.begin(), members.end());
        out.push_back(std::move(members));
        return;
    }
    int pa = -1, pb = -1;
    double best = -1.0;
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j) {
            double d = space.distance(Point::indexed(members[i]), Point::indexed(members[j]));
            if (d > best) {
                best = d;
                pa = members[i];
                pb = members[j];
            }
        }
    std::vector<int> left, right;
    for (int id : members) {
        double da = space.distance(Point::indexed(id), Point::indexed(pa));
        double db = space.distance(Point::indexed(id), Point::indexed(pb));
        (da <= db ? left : right).push_back(id);
    }
    split_cluster(space, std::move(left), target, out);
    split_cluster(space, std::move(right), target, out);
}

int medoid(const MetricSpace& space, const std::vector<int>& members) {
    int best = members.front();
    double best_r = kInf;
    for (int cand : members) {
        double r = 0.0;
        for (int other : members)
            r = std::max(r, space.distance(Point::indexed(cand), Point::indexed(other)));
        if (r < best_r) {
            best_r = r;
            best = cand;
        }
    }
    return best;
}

}  // namespace

// ---------------------------------------------------------------------------
// TaggedPartition

TaggedPartition TaggedPartition::from_cells(const MetricSpace& space, int depth,
                                            std::vector<Cell> cells) {
    if (cells.empty()) throw std::invalid_argument("partition: no cells");
    if (depth < 1) throw std::invalid_argument("partition: depth must be at least 1");
    TaggedPartition p;
    p.space_ = &space;
    p.depth_ = depth;
    for (Cell& c : cells) {
        c.depth = depth;
        std::sort(c.members.begin(), c.members.end());
    }
    std::stable_sort(cells.begin(), cells.end(), [](const Cell& a, const Cell& b) {
        if (a.is_good != b.is_good) return a.is_good;
        if (a.members.empty() && b.members.empty()) return a.lo < b.lo;
        if (!a.members.empty() && !b.members.empty()) return a.members.front() < b.members.front();
        return false;
    });
    for (std::size_t i = 0; i < cells.size(); ++i) cells[i].index = static_cast<int>(i);
    p.good_count_ = static_cast<int>(
        std::count_if(cells.begin(), cells.end(), [](const Cell& c) { return c.is_good; }));
    p.cells_ = std::move(cells);
    p.build_lookup();
    return p;
}

void TaggedPartition::build_lookup() {
    if (space_->is_interval()) {
        std::vector<std::pair<double, int>> order;
        for (const Cell& c : cells_) order.emplace_back(c.lo, c.index);
        std::sort(order.begin(), order.end());
        boundaries_.clear();
        slot_to_cell_.clear();
        for (auto& [lo, idx] : order) {
            boundaries_.push_back(lo);
            slot_to_cell_.push_back(idx);
        }
    } else {
        point_cell_.assign(space_->point_count(), -1);
        for (const Cell& c : cells_)
            for (int id : c.members)
                if (point_cell_[id] < 0) point_cell_[id] = c.index;
    }
}

int TaggedPartition::locate(const Point& p) const {
    if (!space_->contains(p))
        throw std::domain_error("locate: point " + to_string(p) + " outside the space");
    if (space_->is_interval()) {
        auto it = std::upper_bound(boundaries_.begin(), boundaries_.end(), p.x);
        if (it == boundaries_.begin())
            throw std::logic_error("locate: point " + to_string(p) + " below every cell");
        int idx = slot_to_cell_[static_cast<std::size_t>(it - boundaries_.begin()) - 1];
        if (!cell_contains(idx, p))
            throw std::logic_error("locate: partition gap at " + to_string(p));
        return idx;
    }
    int idx = point_cell_[p.id];
    if (idx < 0) throw std::logic_error("locate: point " + to_string(p) + " in no cell");
    return idx;
}

bool TaggedPartition::cell_contains(int i, const Point& p) const {
    const Cell& c = cells_[i];
    if (space_->is_interval()) return !p.is_indexed() && interval_has(c, p.x);
    return p.is_indexed() && std::binary_search(c.members.begin(), c.members.end(), p.id);
}

// ---------------------------------------------------------------------------
// PartitionSequence

PartitionSequence PartitionSequence::from_partitions(const MetricSpace& space,
                                                     std::vector<TaggedPartition> partitions) {
    if (partitions.empty()) throw std::invalid_argument("sequence: no partitions");
    for (std::size_t i = 0; i < partitions.size(); ++i)
        if (partitions[i].depth() != static_cast<int>(i) + 1)
            throw std::invalid_argument("sequence: depths must run 1..m_max in order");
    PartitionSequence s;
    s.space_ = &space;
    s.partitions_ = std::move(partitions);
    return s;
}

const TaggedPartition& PartitionSequence::at(int m) const {
    if (m < 1 || m > max_depth())
        throw std::invalid_argument("sequence: depth " + std::to_string(m) + " out of range");
    return partitions_[m - 1];
}

Point project(const TaggedPartition& partition, const Point& x) {
    return partition.project_point(x);
}

// ---------------------------------------------------------------------------
// build_sequence

namespace {

TaggedPartition build_interval_depth1(const MetricSpace& space, double A, double B) {
    std::vector<Cell> cells = tile_interval(A, B, 1, 0.5, B == space.hi(), -1);
    if (cells.empty()) throw std::invalid_argument("build_sequence: empty good region");
    if (space.lo() < A) {
        Cell c;
        c.depth = 1;
        c.lo = space.lo();
        c.hi = A;
        c.is_good = false;
        c.tag = bad_tag(c.lo, c.hi);
        cells.push_back(c);
    }
    if (B < space.hi()) {
        Cell c;
        c.depth = 1;
        c.lo = B;
        c.hi = space.hi();
        c.closed_hi = std::isfinite(space.hi());
        c.is_good = false;
        c.tag = bad_tag(c.lo, c.hi);
        cells.push_back(c);
    }
    return TaggedPartition::from_cells(space, 1, std::move(cells));
}

TaggedPartition refine_interval(const MetricSpace& space, const TaggedPartition& prev, double A,
                                double B) {
    int depth = prev.depth() + 1;
    double target = 1.0 / (2.0 * depth);
    // hull of the previous good region distinguishes the two tail cells
    double glo = kInf, ghi = -kInf;
    for (const Cell& pc : prev.cells())
        if (pc.is_good) {
            glo = std::min(glo, pc.lo);
            ghi = std::max(ghi, pc.hi);
        }
    std::vector<Cell> cells;
    auto push_bad = [&](double lo, double hi, bool closed, int parent) {
        Cell bad;
        bad.depth = depth;
        bad.lo = lo;
        bad.hi = hi;
        bad.closed_hi = closed;
        bad.is_good = false;
        bad.tag = bad_tag(lo, hi);
        bad.parent = parent;
        cells.push_back(bad);
    };
    for (const Cell& pc : prev.cells()) {
        std::size_t first = cells.size();
        if (pc.is_good) {
            auto kids = tile_interval(pc.lo, pc.hi, depth, target, pc.closed_hi, pc.index);
            cells.insert(cells.end(), kids.begin(), kids.end());
        } else if (pc.hi == glo) {  // left tail cell: good region grows into [A, pc.hi)
            if (pc.lo < A) push_bad(pc.lo, A, false, pc.index);
            auto kids = tile_interval(A, pc.hi, depth, target, false, pc.index);
            cells.insert(cells.end(), kids.begin(), kids.end());
        } else {  // right tail cell: good region grows into [pc.lo, B)
            auto kids = tile_interval(pc.lo, B, depth, target, pc.closed_hi && B == pc.hi,
                                      pc.index);
            cells.insert(cells.end(), kids.begin(), kids.end());
            if (B < pc.hi) push_bad(B, pc.hi, pc.closed_hi, pc.index);
        }
        if (cells.size() == first)
            throw std::logic_error("build_sequence: cell lost its children: " + cell_label(pc));
        inherit_tag(cells, first, cells.size(), pc);
        if (static_cast<int>(cells.size()) > kMaxCells)
            throw resource_limit_error("build_sequence: cell budget exceeded at depth " +
                                       std::to_string(depth));
    }
    return TaggedPartition::from_cells(space, depth, std::move(cells));
}

TaggedPartition refine_finite(const MetricSpace& space, const TaggedPartition* prev, int depth) {
    double target = 1.0 / (2.0 * depth);
    std::vector<Cell> cells;
    auto add_clusters = [&](const std::vector<int>& members, const Cell* parent) {
        std::vector<std::vector<int>> clusters;
        split_cluster(space, members, target, clusters);
        std::size_t first = cells.size();
        for (auto& cl : clusters) {
            Cell c;
            c.depth = depth;
            c.members = std::move(cl);
            c.is_good = true;
            c.tag = Point::indexed(medoid(space, c.members));
            c.parent = parent ? parent->index : -1;
            cells.push_back(std::move(c));
        }
        if (parent) {
            for (std::size_t i = first; i < cells.size(); ++i) {
                if (std::binary_search(cells[i].members.begin(), cells[i].members.end(),
                                       parent->tag.id)) {
                    cells[i].tag = parent->tag;
                    return;
                }
            }
            throw std::logic_error("refinement lost a parent tag: " + cell_label(*parent));
        }
    };
    if (!prev) {
        std::vector<int> all(space.point_count());
        for (std::size_t i = 0; i < all.size(); ++i) all[i] = static_cast<int>(i);
        add_clusters(all, nullptr);
    } else {
        for (const Cell& pc : prev->cells()) add_clusters(pc.members, &pc);
    }
    return TaggedPartition::from_cells(space, depth, std::move(cells));
}

}  // namespace

PartitionSequence build_sequence(const MetricSpace& space, const CompactExhaustion& exhaustion,
                                 int m_max) {
    if (m_max < 1) throw std::invalid_argument("build_sequence: depth must be at least 1");
    if (exhaustion.depth() < m_max)
        throw std::invalid_argument("build_sequence: exhaustion shallower than requested depth");
    std::vector<TaggedPartition> parts;
    if (space.is_interval()) {
        if (exhaustion.kind != SpaceKind::Interval)
            throw std::invalid_argument("build_sequence: exhaustion kind does not match space");
        auto clamp_lo = [&](int m) { return std::max(exhaustion.lo[m - 1], space.lo()); };
        auto clamp_hi = [&](int m) { return std::min(exhaustion.hi[m - 1], space.hi()); };
        parts.push_back(build_interval_depth1(space, clamp_lo(1), clamp_hi(1)));
        for (int m = 2; m <= m_max; ++m)
            parts.push_back(refine_interval(space, parts.back(), clamp_lo(m), clamp_hi(m)));
    } else {
        if (space.point_count() == 0) throw std::invalid_argument("build_sequence: empty space");
        parts.push_back(refine_finite(space, nullptr, 1));
        for (int m = 2; m <= m_max; ++m)
            parts.push_back(refine_finite(space, &parts.back(), m));
    }
    return PartitionSequence::from_partitions(space, std::move(parts));
}

// ---------------------------------------------------------------------------
// refine_check

namespace {

struct Checker {
    RefineReport report;

    void fail(const std::string& name, const std::string& detail) {
        for (auto& c : report.checks)
            if (c.name == name) {
                if (c.pass) {
                    c.pass = false;
                    c.detail = detail;
                    report.ok = false;
                }
                return;
            }
    }

    void declare(const std::string& name) { report.checks.push_back({name, true, ""}); }
};

}  // namespace

const CheckLine* RefineReport::find(const std::string& name) const {
    for (const auto& c : checks)
        if (c.name == name) return &c;
    return nullptr;
}

RefineReport refine_check(const PartitionSequence& seq, int sample_points, std::uint64_t seed) {
    Checker ck;
    ck.declare("cover");
    ck.declare("good-first");
    ck.declare("good-diam");
    ck.declare("tail-cells");
    ck.declare("nested");
    ck.declare("tags");
    ck.declare("project");

    const MetricSpace& space = seq.space();
    bool interval = space.is_interval();

    for (int m = 1; m <= seq.max_depth(); ++m) {
        const TaggedPartition& part = seq.at(m);

        // cover: disjoint cells filling the space exactly
        if (interval) {
            std::vector<const Cell*> order;
            for (const Cell& c : part.cells()) order.push_back(&c);
            std::sort(order.begin(), order.end(),
                      [](const Cell* a, const Cell* b) { return a->lo < b->lo; });
            if (order.front()->lo != space.lo())
                ck.fail("cover", cell_label(*order.front()) + " does not start at the space edge");
            if (order.back()->hi != space.hi())
                ck.fail("cover", cell_label(*order.back()) + " does not end at the space edge");
            if (order.back()->closed_hi != std::isfinite(space.hi()))
                ck.fail("cover", cell_label(*order.back()) + " has the wrong top closure");
            for (std::size_t i = 0; i < order.size(); ++i) {
                if (!(order[i]->lo < order[i]->hi))
                    ck.fail("cover", cell_label(*order[i]) + " is empty");
                if (i + 1 < order.size()) {
                    if (order[i]->hi != order[i + 1]->lo)
                        ck.fail("cover", "gap or overlap between " + cell_label(*order[i]) +
                                             " and " + cell_label(*order[i + 1]));
                    if (order[i]->closed_hi)
                        ck.fail("cover", cell_label(*order[i]) + " closed against a neighbour");
                }
            }
        } else {
            std::vector<int> seen;
            for (const Cell& c : part.cells())
                seen.insert(seen.end(), c.members.begin(), c.members.end());
            std::sort(seen.begin(), seen.end());
            bool exact = seen.size() == space.point_count();
            for (std::size_t i = 0; exact && i < seen.size(); ++i)
                exact = seen[i] == static_cast<int>(i);
            if (!exact)
                ck.fail("cover", "depth " + std::to_string(m) +
                                     " members do not enumerate the point set exactly");
        }

        // ordering and diameters
        for (const Cell& c : part.cells()) {
            bool should_be_good = c.index < part.good_count();
            if (c.is_good != should_be_good)
                ck.fail("good-first", cell_label(c) + " breaks the good-cells-first ordering");
            if (c.is_good) {
                double diam = interval ? c.width() : cluster_diam(space, c.members);
                if (!(diam < 1.0 / m))
                    ck.fail("good-diam", cell_label(c) + " has diameter " + std::to_string(diam) +
                                             " >= 1/" + std::to_string(m));
            }
        }

        // bad cells: at most two, flanking the good region
        int bad = part.size() - part.good_count();
        if (bad > 2 || (!interval && bad > 0))
            ck.fail("tail-cells",
                    "depth " + std::to_string(m) + " has " + std::to_string(bad) + " bad cells");
        if (interval && bad > 0) {
            double glo = kInf, ghi = -kInf;
            for (const Cell& c : part.cells())
                if (c.is_good) {
                    glo = std::min(glo, c.lo);
                    ghi = std::max(ghi, c.hi);
                }
            for (const Cell& c : part.cells())
                if (!c.is_good && !(c.hi <= glo || c.lo >= ghi))
                    ck.fail("tail-cells", cell_label(c) + " is not a tail interval");
        }

        // tags: inside the cell, pairwise distinct
        std::set<Point> tags;
        for (const Cell& c : part.cells()) {
            if (!part.cell_contains(c.index, c.tag))
                ck.fail("tags", cell_label(c) + " tag " + to_string(c.tag) + " lies outside");
            if (!tags.insert(c.tag).second)
                ck.fail("tags", "duplicate tag " + to_string(c.tag) + " at depth " +
                                    std::to_string(m));
        }
        if (m >= 2) {
            for (const Cell& pc : seq.at(m - 1).cells())
                if (tags.find(pc.tag) == tags.end())
                    ck.fail("tags", "tag " + to_string(pc.tag) + " of " + cell_label(pc) +
                                        " is dropped at depth " + std::to_string(m));
        }

        // nestedness: each cell sits inside its parent, children tile the parent
        if (m >= 2) {
            const TaggedPartition& coarse = seq.at(m - 1);
            std::vector<std::vector<const Cell*>> kids(coarse.size());
            for (const Cell& c : part.cells()) {
                if (c.parent < 0 || c.parent >= coarse.size()) {
                    ck.fail("nested", cell_label(c) + " has no valid parent");
                    continue;
                }
                const Cell& pc = coarse.cell(c.parent);
                bool inside = interval
                                  ? pc.lo <= c.lo && c.hi <= pc.hi
                                  : std::includes(pc.members.begin(), pc.members.end(),
                                                  c.members.begin(), c.members.end());
                if (!inside)
                    ck.fail("nested", cell_label(c) + " is not inside " + cell_label(pc));
                kids[c.parent].push_back(&c);
            }
            for (int pi = 0; pi < coarse.size(); ++pi) {
                const Cell& pc = coarse.cell(pi);
                if (kids[pi].empty()) {
                    ck.fail("nested", cell_label(pc) + " has no children");
                    continue;
                }
                if (interval) {
                    std::sort(kids[pi].begin(), kids[pi].end(),
                              [](const Cell* a, const Cell* b) { return a->lo < b->lo; });
                    bool exact = kids[pi].front()->lo == pc.lo && kids[pi].back()->hi == pc.hi &&
                                 kids[pi].back()->closed_hi == pc.closed_hi;
                    for (std::size_t i = 0; i + 1 < kids[pi].size() && exact; ++i)
                        exact = kids[pi][i]->hi == kids[pi][i + 1]->lo;
                    if (!exact)
                        ck.fail("nested", "children of " + cell_label(pc) +
                                              " do not tile it exactly");
                } else {
                    std::vector<int> got;
                    for (const Cell* c : kids[pi])
                        got.insert(got.end(), c->members.begin(), c->members.end());
                    std::sort(got.begin(), got.end());
                    if (got != pc.members)
                        ck.fail("nested", "children of " + cell_label(pc) +
                                              " do not partition its members");
                }
            }
        }
    }

    // projection consistency on random points: projecting at m+1 then at m
    // equals projecting at m directly, and tags are projection-fixed
    if (seq.max_depth() >= 1) {
        int pairs = std::max(1, seq.max_depth() - 1);
        int per_pair = std::max(1, sample_points / pairs);
        std::uint64_t draw = 0;
        for (int m = 1; m <= seq.max_depth(); ++m) {
            const TaggedPartition& part = seq.at(m);
            for (const Cell& c : part.cells()) {
                if (project(part, c.tag) != c.tag) {
                    ck.fail("project", "tag of " + cell_label(c) + " is not projection-fixed");
                    break;
                }
            }
            if (m == seq.max_depth()) break;
            const TaggedPartition& fine = seq.at(m + 1);
            for (int t = 0; t < per_pair; ++t) {
                const Cell& c =
                    fine.cell(static_cast<int>(unit_double(seed, draw, 0) * fine.size()) %
                              fine.size());
                Point x;
                if (interval) {
                    double lo = std::isinf(c.lo) ? c.hi - 10.0 : c.lo;
                    double hi = std::isinf(c.hi) ? c.lo + 10.0 : c.hi;
                    x = Point::coord(lo + (hi - lo) * unit_double(seed, draw, 1));
                } else {
                    std::size_t k = static_cast<std::size_t>(unit_double(seed, draw, 1) *
                                                             c.members.size()) %
                                    c.members.size();
                    x = Point::indexed(c.members[k]);
                }
                ++draw;
                Point two_step = project(seq.at(m), project(fine, x));
                Point one_step = project(seq.at(m), x);
                if (two_step != one_step) {
                    ck.fail("project", "composed projection differs at " + to_string(x) +
                                           " between depths " + std::to_string(m + 1) + " and " +
                                           std::to_string(m));
                    break;
                }
            }
        }
    }

    return ck.report;
}

}  // namespace ldtk
