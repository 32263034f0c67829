#pragma once

#include <string>
#include <vector>

#include "ldtk/metric_space.hpp"
#include "ldtk/point.hpp"

namespace ldtk {

// One cell of a tagged partition. Interval cells are [lo, hi), except that a
// cell may own its right endpoint (closed_hi) when it ends at a finite space
// boundary. Finite kinds list member point ids instead.
struct Cell {
    int depth = 0;
    int index = 0;
    double lo = 0.0;
    double hi = 0.0;
    bool closed_hi = false;
    std::vector<int> members;
    Point tag;
    bool is_good = false;
    int parent = -1;  // index of the containing cell one level up, -1 at depth 1

    double width() const { return hi - lo; }
};

// A finite partition of the space at one depth m: good cells first (diameter
// < 1/m, covering K_m), then the bad cells covering K_m^c.
class TaggedPartition {
public:
    static TaggedPartition from_cells(const MetricSpace& space, int depth, std::vector<Cell> cells);

    int depth() const { return depth_; }
    int size() const { return static_cast<int>(cells_.size()); }
    int good_count() const { return good_count_; }
    const Cell& cell(int i) const { return cells_[i]; }
    const std::vector<Cell>& cells() const { return cells_; }
    const MetricSpace& space() const { return *space_; }

    // Index of the unique cell containing p; throws std::domain_error for a
    // point outside the space, std::logic_error if no cell contains it.
    int locate(const Point& p) const;
    Point project_point(const Point& p) const { return cells_[locate(p)].tag; }

    // True if p lies in cell i by direct membership (no lookup structures).
    bool cell_contains(int i, const Point& p) const;

private:
    TaggedPartition() = default;
    void build_lookup();

    const MetricSpace* space_ = nullptr;
    int depth_ = 1;
    int good_count_ = 0;
    std::vector<Cell> cells_;
    // interval lookup: cell order sorted by lo, with boundaries
    std::vector<double> boundaries_;
    std::vector<int> slot_to_cell_;
    // finite lookup: point id -> cell index
    std::vector<int> point_cell_;
};

// Nested tagged partitions indexed by depth m = 1..max_depth, with tag sets
// M_m growing along refinements.
class PartitionSequence {
public:
    static PartitionSequence from_partitions(const MetricSpace& space,
                                             std::vector<TaggedPartition> partitions);

    const TaggedPartition& at(int m) const;  // m is 1-based
    int max_depth() const { return static_cast<int>(partitions_.size()); }
    const MetricSpace& space() const { return *space_; }

private:
    PartitionSequence() = default;
    const MetricSpace* space_ = nullptr;
    std::vector<TaggedPartition> partitions_;
};

// Builds the nested sequence over the exhaustion: good cells of width at most
// 1/(2m) tiling K_m, at most two interval tail cells, refinement by splitting
// parent cells, tags re-used so that M_m is contained in M_{m+1}.
PartitionSequence build_sequence(const MetricSpace& space, const CompactExhaustion& exhaustion,
                                 int m_max);

Point project(const TaggedPartition& partition, const Point& x);

struct CheckLine {
    std::string name;
    bool pass = true;
    std::string detail;
};

struct RefineReport {
    bool ok = true;
    std::vector<CheckLine> checks;

    const CheckLine* find(const std::string& name) const;
};

// Structural validation of a sequence: disjoint cover, good-cell diameters,
// good-first ordering, nestedness with exact parent refinement, tag membership
// and tag-set inclusion. Reports the first counterexample per check.
RefineReport refine_check(const PartitionSequence& seq, int sample_points = 10000,
                          std::uint64_t seed = 1);

}  // namespace ldtk
