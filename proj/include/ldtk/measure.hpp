#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "ldtk/errors.hpp"
#include "ldtk/metric_space.hpp"
#include "ldtk/partition.hpp"
#include "ldtk/point.hpp"

namespace ldtk {

// A probability measure with finite support. Canonical form: support sorted,
// duplicates merged, zero-weight atoms dropped, weights summing to 1 within
// 1e-12.
class FiniteMeasure {
public:
    FiniteMeasure(std::vector<Point> support, std::vector<double> weights);

    std::size_t size() const { return support_.size(); }
    const Point& point(std::size_t i) const { return support_[i]; }
    double weight(std::size_t i) const { return weights_[i]; }
    const std::vector<Point>& support() const { return support_; }
    const std::vector<double>& weights() const { return weights_; }

    // Mass of the atom at p; 0 when p is not in the support.
    double mass_of(const Point& p) const;
    int find(const Point& p) const;  // support index or -1

    static FiniteMeasure dirac(const Point& p) { return FiniteMeasure({p}, {1.0}); }

    friend bool operator==(const FiniteMeasure& a, const FiniteMeasure& b) {
        return a.support_ == b.support_ && a.weights_ == b.weights_;
    }

private:
    std::vector<Point> support_;
    std::vector<double> weights_;
};

enum class Family { Finite, Uniform, Gaussian, Exponential, Mixture, Empirical };

std::string family_name(Family f);

// A sampleable source measure: finite atoms, uniform on an interval, Gaussian,
// exponential, a mixture of analytic components, or an empirical file load.
// Sampling is contract-pure: draw i is a function of (seed, i) only.
class SourceMeasure {
public:
    static SourceMeasure finite(FiniteMeasure atoms);
    static SourceMeasure uniform(double lo, double hi);
    static SourceMeasure gaussian(double mean, double sd);
    static SourceMeasure exponential(double rate);
    static SourceMeasure mixture(std::vector<SourceMeasure> components, std::vector<double> weights);
    static SourceMeasure empirical_from_file(const std::string& path);
    static SourceMeasure empirical(std::vector<double> values);

    Family family() const { return family_; }
    bool is_atomic() const { return family_ == Family::Finite || family_ == Family::Empirical; }
    const FiniteMeasure& atoms() const;

    // Interval-family pointwise data.
    double density(double x) const;
    double cdf(double x) const;
    // Mass of [lo, hi) plus the atom at hi when closed_hi.
    double interval_mass(double lo, double hi, bool closed_hi) const;

    double support_lo() const { return support_lo_; }
    double support_hi() const { return support_hi_; }
    bool compact_support() const;

    // Smallest interval [lo, hi] this measure can certify to hold all but at
    // most p of its mass; achieved tail reported. Throws
    // unsupported_measure_error when no tail-quantile rule exists.
    struct TailInterval {
        double lo = 0.0, hi = 0.0, tail = 0.0;
    };
    TailInterval tail_interval(double p) const;

    Point sample(std::uint64_t seed, std::uint64_t index) const;

    // Mean and KL helpers for analytic families (used by oracles and checks).
    double mean() const;

    std::string describe() const;

    // Parameters (valid per family).
    double param_a() const { return a_; }
    double param_b() const { return b_; }
    const std::vector<SourceMeasure>& components() const { return components_; }
    const std::vector<double>& component_weights() const { return comp_weights_; }

private:
    SourceMeasure() = default;
    void verify_normalization() const;

    Family family_ = Family::Uniform;
    double a_ = 0.0, b_ = 1.0;  // uniform: lo/hi; gaussian: mean/sd; exponential: rate in a_
    double support_lo_ = 0.0, support_hi_ = 1.0;
    std::shared_ptr<const FiniteMeasure> atoms_;
    std::vector<SourceMeasure> components_;
    std::vector<double> comp_weights_;
};

// A non-owning reference to either measure representation.
class AnyMeasure {
public:
    AnyMeasure(const FiniteMeasure& fm) : fm_(&fm) {}
    AnyMeasure(const SourceMeasure& sm) : sm_(&sm) {}

    bool is_finite() const { return fm_ != nullptr; }
    const FiniteMeasure& finite() const { return *fm_; }
    const SourceMeasure& source() const { return *sm_; }

private:
    const FiniteMeasure* fm_ = nullptr;
    const SourceMeasure* sm_ = nullptr;
};

// An empirical measure: the raw sample list plus its canonical finite form
// with atom weights in multiples of 1/n.
class EmpiricalMeasure {
public:
    explicit EmpiricalMeasure(std::vector<Point> samples);

    std::size_t count() const { return samples_.size(); }
    const std::vector<Point>& samples() const { return samples_; }
    const FiniteMeasure& measure() const { return measure_; }

private:
    std::vector<Point> samples_;
    FiniteMeasure measure_;
};

EmpiricalMeasure sample_empirical(const SourceMeasure& mu, std::size_t n, std::uint64_t seed);

// Mass of each cell under nu, indexed like partition.cell().
std::vector<double> cell_masses(const AnyMeasure& nu, const TaggedPartition& partition);

// Pushforward through the projection of a tagged partition: the mass of every
// cell moves onto its tag.
FiniteMeasure discretize(const FiniteMeasure& nu, const TaggedPartition& partition);
FiniteMeasure discretize(const SourceMeasure& nu, const TaggedPartition& partition);
FiniteMeasure discretize(const AnyMeasure& nu, const TaggedPartition& partition);

// Empirical pushforward: project every sample, keeping multiplicity.
EmpiricalMeasure discretize_empirical(const EmpiricalMeasure& L, const TaggedPartition& partition);

// The lifting of a tag-supported weight vector sigma at depth m: the measure
// that matches sigma across depth-m cells and is proportional to mu inside
// each cell. Discretizing at depth m returns sigma; at deeper levels the cell
// masses scale mu's by the per-cell factors.
class LiftedMeasure {
public:
    LiftedMeasure(FiniteMeasure sigma, const SourceMeasure& mu, const PartitionSequence& seq,
                  int depth);

    int depth() const { return depth_; }
    const FiniteMeasure& sigma() const { return sigma_; }
    double factor(int cell_index) const { return factors_[cell_index]; }

    // Pushforward at target_depth >= depth().
    FiniteMeasure discretized(int target_depth) const;

    // Materialized atom form (atomic mu only).
    FiniteMeasure as_finite() const;

    // Density at x (analytic interval mu only).
    double density(double x) const;

private:
    FiniteMeasure sigma_;
    const SourceMeasure* mu_;
    const PartitionSequence* seq_;
    int depth_;
    std::vector<double> factors_;  // sigma(cell)/mu(cell) per depth-m cell
    std::vector<double> mu_cell_mass_;
};

LiftedMeasure lift(const FiniteMeasure& sigma, const SourceMeasure& mu,
                   const PartitionSequence& seq, int depth);

}  // namespace ldtk
