#include "ldtk/measure.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <numeric>
#include <sstream>

#include "ldtk/numeric.hpp"
#include "ldtk/rng.hpp"

namespace ldtk {

namespace {
constexpr double kWeightSumTol = 1e-12;
}

FiniteMeasure::FiniteMeasure(std::vector<Point> support, std::vector<double> weights) {
    if (support.size() != weights.size())
        throw std::invalid_argument("finite measure: support/weight size mismatch");
    if (support.empty()) throw std::invalid_argument("finite measure: empty support");
    std::vector<std::size_t> order(support.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return support[a] < support[b]; });
    KahanSum total;
    for (std::size_t k : order) {
        double w = weights[k];
        if (std::isnan(w) || w < -kWeightSumTol)
            throw std::invalid_argument("finite measure: negative weight");
        if (w <= 0.0) continue;  // clamp -0 / fp dust, drop null atoms
        if (!support_.empty() && support_.back() == support[k]) {
            weights_.back() += w;
        } else {
            support_.push_back(support[k]);
            weights_.push_back(w);
        }
        total.add(w);
    }
    if (support_.empty()) throw std::invalid_argument("finite measure: all weights zero");
    if (std::abs(total.value() - 1.0) > kWeightSumTol)
        throw std::invalid_argument("finite measure: weights sum to " +
                                    std::to_string(total.value()) + ", not 1");
}

double FiniteMeasure::mass_of(const Point& p) const {
    int i = find(p);
    return i < 0 ? 0.0 : weights_[i];
}

int FiniteMeasure::find(const Point& p) const {
    auto it = std::lower_bound(support_.begin(), support_.end(), p);
    if (it != support_.end() && *it == p) return static_cast<int>(it - support_.begin());
    return -1;
}

std::string family_name(Family f) {
    switch (f) {
        case Family::Finite: return "finite";
        case Family::Uniform: return "uniform";
        case Family::Gaussian: return "gaussian";
        case Family::Exponential: return "exponential";
        case Family::Mixture: return "mixture";
        case Family::Empirical: return "empirical";
    }
    return "?";
}

// ---------------------------------------------------------------------------
// SourceMeasure

SourceMeasure SourceMeasure::finite(FiniteMeasure atoms) {
    SourceMeasure s;
    s.family_ = Family::Finite;
    s.atoms_ = std::make_shared<const FiniteMeasure>(std::move(atoms));
    bool indexed = s.atoms_->point(0).is_indexed();
    for (const auto& p : s.atoms_->support())
        if (p.is_indexed() != indexed)
            throw std::invalid_argument("finite source: mixed point kinds");
    if (!indexed) {
        s.support_lo_ = s.atoms_->point(0).x;
        s.support_hi_ = s.atoms_->point(s.atoms_->size() - 1).x;
    }
    return s;
}

SourceMeasure SourceMeasure::uniform(double lo, double hi) {
    if (!(std::isfinite(lo) && std::isfinite(hi) && lo < hi))
        throw std::invalid_argument("uniform: need finite lo < hi");
    SourceMeasure s;
    s.family_ = Family::Uniform;
    s.a_ = lo;
    s.b_ = hi;
    s.support_lo_ = lo;
    s.support_hi_ = hi;
    s.verify_normalization();
    return s;
}

SourceMeasure SourceMeasure::gaussian(double mean, double sd) {
    if (!(std::isfinite(mean) && std::isfinite(sd) && sd > 0.0))
        throw std::invalid_argument("gaussian: need finite mean and sd > 0");
    SourceMeasure s;
    s.family_ = Family::Gaussian;
    s.a_ = mean;
    s.b_ = sd;
    s.support_lo_ = -kInf;
    s.support_hi_ = kInf;
    s.verify_normalization();
    return s;
}

SourceMeasure SourceMeasure::exponential(double rate) {
    if (!(std::isfinite(rate) && rate > 0.0)) throw std::invalid_argument("exponential: rate > 0");
    SourceMeasure s;
    s.family_ = Family::Exponential;
    s.a_ = rate;
    s.support_lo_ = 0.0;
    s.support_hi_ = kInf;
    s.verify_normalization();
    return s;
}

SourceMeasure SourceMeasure::mixture(std::vector<SourceMeasure> components,
                                     std::vector<double> weights) {
    if (components.empty() || components.size() != weights.size())
        throw std::invalid_argument("mixture: need matching nonempty components/weights");
    double sum = kahan_total(weights);
    if (std::abs(sum - 1.0) > 1e-9) throw std::invalid_argument("mixture: weights must sum to 1");
    SourceMeasure s;
    s.family_ = Family::Mixture;
    s.support_lo_ = kInf;
    s.support_hi_ = -kInf;
    for (const auto& c : components) {
        if (c.family_ == Family::Mixture)
            throw std::invalid_argument("mixture: nested mixtures unsupported");
        if (c.is_atomic() && c.atoms().point(0).is_indexed())
            throw std::invalid_argument("mixture: indexed atomic components unsupported");
        s.support_lo_ = std::min(s.support_lo_, c.support_lo_);
        s.support_hi_ = std::max(s.support_hi_, c.support_hi_);
    }
    for (double w : weights)
        if (!(w >= 0.0)) throw std::invalid_argument("mixture: negative weight");
    s.components_ = std::move(components);
    s.comp_weights_ = std::move(weights);
    s.verify_normalization();
    return s;
}

SourceMeasure SourceMeasure::empirical(std::vector<double> values) {
    if (values.empty()) throw std::invalid_argument("empirical: no samples");
    std::vector<Point> pts;
    pts.reserve(values.size());
    for (double v : values) {
        if (!std::isfinite(v)) throw std::invalid_argument("empirical: non-finite sample");
        pts.push_back(Point::coord(v));
    }
    double w = 1.0 / static_cast<double>(values.size());
    SourceMeasure s = finite(FiniteMeasure(std::move(pts), std::vector<double>(values.size(), w)));
    s.family_ = Family::Empirical;
    return s;
}

SourceMeasure SourceMeasure::empirical_from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("empirical: cannot open " + path);
    std::vector<double> values;
    std::string line;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::size_t pos = 0;
        double v;
        try {
            v = std::stod(line, &pos);
        } catch (const std::exception&) {
            throw std::invalid_argument("empirical: bad line in " + path + ": " + line);
        }
        values.push_back(v);
    }
    if (values.empty()) throw std::invalid_argument("empirical: no samples in " + path);
    return empirical(std::move(values));
}

const FiniteMeasure& SourceMeasure::atoms() const {
    if (!atoms_) throw std::logic_error("atoms(): not an atomic measure");
    return *atoms_;
}

double SourceMeasure::density(double x) const {
    switch (family_) {
        case Family::Uniform:
            return (x >= a_ && x <= b_) ? 1.0 / (b_ - a_) : 0.0;
        case Family::Gaussian:
            return normal_pdf((x - a_) / b_) / b_;
        case Family::Exponential:
            return x >= 0.0 ? a_ * std::exp(-a_ * x) : 0.0;
        case Family::Mixture: {
            double d = 0.0;
            for (std::size_t i = 0; i < components_.size(); ++i)
                d += comp_weights_[i] * components_[i].density(x);
            return d;
        }
        default:
            throw unsupported_measure_error("density: atomic measure has no density");
    }
}

double SourceMeasure::cdf(double x) const {
    switch (family_) {
        case Family::Uniform:
            if (x <= a_) return 0.0;
            if (x >= b_) return 1.0;
            return (x - a_) / (b_ - a_);
        case Family::Gaussian:
            return normal_cdf((x - a_) / b_);
        case Family::Exponential:
            return x <= 0.0 ? 0.0 : -std::expm1(-a_ * x);
        case Family::Mixture: {
            double c = 0.0;
            for (std::size_t i = 0; i < components_.size(); ++i)
                c += comp_weights_[i] * components_[i].cdf(x);
            return c;
        }
        case Family::Finite:
        case Family::Empirical: {
            double c = 0.0;
            for (std::size_t i = 0; i < atoms_->size(); ++i)
                if (atoms_->point(i).x <= x) c += atoms_->weight(i);
            return c;
        }
    }
    return 0.0;
}

double SourceMeasure::interval_mass(double lo, double hi, bool closed_hi) const {
    if (!(hi >= lo)) return 0.0;
    switch (family_) {
        case Family::Gaussian: {
            double zl = (lo - a_) / b_;
            double zh = (hi - a_) / b_;
            // tail-stable branch: survival differences on the right half
            if (zl + zh > 0.0) return normal_sf(zl) - normal_sf(zh);
            return normal_cdf(zh) - normal_cdf(zl);
        }
        case Family::Exponential: {
            double l = std::max(lo, 0.0);
            double h = std::max(hi, 0.0);
            double el = std::isinf(l) ? 0.0 : std::exp(-a_ * l);
            double eh = std::isinf(h) ? 0.0 : std::exp(-a_ * h);
            return el - eh;
        }
        case Family::Uniform: {
            double l = std::max(lo, a_);
            double h = std::min(hi, b_);
            return h > l ? (h - l) / (b_ - a_) : 0.0;
        }
        case Family::Mixture: {
            double s = 0.0;
            for (std::size_t i = 0; i < components_.size(); ++i)
                s += comp_weights_[i] * components_[i].interval_mass(lo, hi, closed_hi);
            return s;
        }
        case Family::Finite:
        case Family::Empirical: {
            double s = 0.0;
            for (std::size_t i = 0; i < atoms_->size(); ++i) {
                double x = atoms_->point(i).x;
                if ((x >= lo && x < hi) || (closed_hi && x == hi)) s += atoms_->weight(i);
            }
            return s;
        }
    }
    return 0.0;
}

bool SourceMeasure::compact_support() const {
    return std::isfinite(support_lo_) && std::isfinite(support_hi_);
}

SourceMeasure::TailInterval SourceMeasure::tail_interval(double p) const {
    if (!(p > 0.0 && p < 1.0)) throw std::invalid_argument("tail_interval: p outside (0,1)");
    TailInterval t;
    switch (family_) {
        case Family::Uniform:
            t.lo = a_;
            t.hi = b_;
            t.tail = 0.0;
            return t;
        case Family::Gaussian: {
            double c = normal_sf_quantile(0.5 * p);
            t.lo = a_ - c * b_;
            t.hi = a_ + c * b_;
            t.tail = 2.0 * normal_sf(c);
            return t;
        }
        case Family::Exponential:
            t.lo = 0.0;
            t.hi = -std::log(p) / a_;
            t.tail = p;
            return t;
        case Family::Mixture: {
            t.lo = kInf;
            t.hi = -kInf;
            double tail = 0.0;
            for (std::size_t i = 0; i < components_.size(); ++i) {
                TailInterval ci = components_[i].tail_interval(p);
                t.lo = std::min(t.lo, ci.lo);
                t.hi = std::max(t.hi, ci.hi);
                tail += comp_weights_[i] * ci.tail;
            }
            t.tail = tail;
            return t;
        }
        case Family::Finite:
        case Family::Empirical: {
            if (atoms_->point(0).is_indexed())
                throw unsupported_measure_error(
                    "tail_interval: indexed atoms have no interval hull");
            double lo = atoms_->point(0).x;
            double hi = atoms_->point(atoms_->size() - 1).x;
            // right margin keeps the top atom strictly inside half-open tilings
            t.lo = lo;
            t.hi = hi + 1e-9 * std::max(1.0, std::abs(hi));
            t.tail = 0.0;
            return t;
        }
    }
    throw unsupported_measure_error("tail_interval: no tail-quantile rule for this family");
}

Point SourceMeasure::sample(std::uint64_t seed, std::uint64_t index) const {
    // Lane allocation: the measure draws on lanes 0-1; a mixture picks its
    // component on lane 0 and delegates the component draw to lanes 2-3.
    switch (family_) {
        case Family::Uniform:
            return Point::coord(a_ + (b_ - a_) * unit_double(seed, index, 0));
        case Family::Gaussian:
            return Point::coord(a_ + b_ * normal_draw(seed, index, 0));
        case Family::Exponential:
            return Point::coord(-std::log(unit_double(seed, index, 0)) / a_);
        case Family::Finite:
        case Family::Empirical: {
            double u = unit_double(seed, index, 0);
            double acc = 0.0;
            for (std::size_t i = 0; i < atoms_->size(); ++i) {
                acc += atoms_->weight(i);
                if (u <= acc) return atoms_->point(i);
            }
            return atoms_->point(atoms_->size() - 1);
        }
        case Family::Mixture: {
            double u = unit_double(seed, index, 0);
            double acc = 0.0;
            std::size_t pick = components_.size() - 1;
            for (std::size_t i = 0; i < components_.size(); ++i) {
                acc += comp_weights_[i];
                if (u <= acc) {
                    pick = i;
                    break;
                }
            }
            const SourceMeasure& c = components_[pick];
            switch (c.family_) {
                case Family::Uniform:
                    return Point::coord(c.a_ + (c.b_ - c.a_) * unit_double(seed, index, 2));
                case Family::Gaussian:
                    return Point::coord(c.a_ + c.b_ * normal_draw(seed, index, 2));
                case Family::Exponential:
                    return Point::coord(-std::log(unit_double(seed, index, 2)) / c.a_);
                default: {
                    double v = unit_double(seed, index, 2);
                    double a2 = 0.0;
                    const FiniteMeasure& at = *c.atoms_;
                    for (std::size_t i = 0; i < at.size(); ++i) {
                        a2 += at.weight(i);
                        if (v <= a2) return at.point(i);
                    }
                    return at.point(at.size() - 1);
                }
            }
        }
    }
    throw std::logic_error("sample: unreachable");
}

double SourceMeasure::mean() const {
    switch (family_) {
        case Family::Uniform:
            return 0.5 * (a_ + b_);
        case Family::Gaussian:
            return a_;
        case Family::Exponential:
            return 1.0 / a_;
        case Family::Mixture: {
            double m = 0.0;
            for (std::size_t i = 0; i < components_.size(); ++i)
                m += comp_weights_[i] * components_[i].mean();
            return m;
        }
        case Family::Finite:
        case Family::Empirical: {
            double m = 0.0;
            for (std::size_t i = 0; i < atoms_->size(); ++i) {
                if (atoms_->point(i).is_indexed())
                    throw unsupported_measure_error("mean: indexed atoms");
                m += atoms_->weight(i) * atoms_->point(i).x;
            }
            return m;
        }
    }
    return 0.0;
}

std::string SourceMeasure::describe() const {
    std::ostringstream os;
    os << family_name(family_);
    switch (family_) {
        case Family::Uniform:
            os << "[" << a_ << ", " << b_ << "]";
            break;
        case Family::Gaussian:
            os << "(" << a_ << ", " << b_ << ")";
            break;
        case Family::Exponential:
            os << "(rate " << a_ << ")";
            break;
        case Family::Finite:
        case Family::Empirical:
            os << "(" << atoms_->size() << " atoms)";
            break;
        case Family::Mixture:
            os << "(" << components_.size() << " components)";
            break;
    }
    return os.str();
}

void SourceMeasure::verify_normalization() const {
    if (is_atomic()) return;  // finite weights already validated
    TailInterval t = tail_interval(1e-9);
    double integral = adaptive_simpson([this](double x) { return density(x); }, t.lo, t.hi, 1e-9);
    if (std::abs(integral - 1.0) > 1e-6)
        throw std::invalid_argument(describe() + ": density integrates to " +
                                    std::to_string(integral));
}

// ---------------------------------------------------------------------------
// Empirical measures

namespace {
FiniteMeasure merge_samples(const std::vector<Point>& samples) {
    std::vector<Point> sorted = samples;
    std::sort(sorted.begin(), sorted.end());
    std::vector<Point> support;
    std::vector<double> weights;
    double n = static_cast<double>(samples.size());
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j < sorted.size() && sorted[j] == sorted[i]) ++j;
        support.push_back(sorted[i]);
        weights.push_back(static_cast<double>(j - i) / n);
        i = j;
    }
    return FiniteMeasure(std::move(support), std::move(weights));
}
}  // namespace

EmpiricalMeasure::EmpiricalMeasure(std::vector<Point> samples)
    : samples_(std::move(samples)), measure_(merge_samples(samples_)) {
    if (samples_.empty()) throw std::invalid_argument("empirical measure: no samples");
}

EmpiricalMeasure sample_empirical(const SourceMeasure& mu, std::size_t n, std::uint64_t seed) {
    if (n == 0) throw std::invalid_argument("sample_empirical: n must be at least 1");
    std::vector<Point> samples;
    samples.reserve(n);
    for (std::size_t i = 0; i < n; ++i) samples.push_back(mu.sample(seed, i));
    return EmpiricalMeasure(std::move(samples));
}

// ---------------------------------------------------------------------------
// Discretization

std::vector<double> cell_masses(const AnyMeasure& nu, const TaggedPartition& partition) {
    std::vector<double> mass(partition.size(), 0.0);
    if (nu.is_finite() || nu.source().is_atomic()) {
        const FiniteMeasure& fm = nu.is_finite() ? nu.finite() : nu.source().atoms();
        for (std::size_t i = 0; i < fm.size(); ++i)
            mass[partition.locate(fm.point(i))] += fm.weight(i);
        return mass;
    }
    const SourceMeasure& sm = nu.source();
    if (!partition.space().is_interval())
        throw unsupported_measure_error("discretize: analytic measure on a non-interval space");
    for (int i = 0; i < partition.size(); ++i) {
        const Cell& c = partition.cell(i);
        double m = sm.interval_mass(c.lo, c.hi, c.closed_hi);
        mass[i] = m < 0.0 ? 0.0 : m;
    }
    return mass;
}

FiniteMeasure discretize(const AnyMeasure& nu, const TaggedPartition& partition) {
    std::vector<double> mass = cell_masses(nu, partition);
    std::vector<Point> tags;
    tags.reserve(mass.size());
    for (int i = 0; i < partition.size(); ++i) tags.push_back(partition.cell(i).tag);
    return FiniteMeasure(std::move(tags), std::move(mass));
}

FiniteMeasure discretize(const FiniteMeasure& nu, const TaggedPartition& partition) {
    return discretize(AnyMeasure(nu), partition);
}

FiniteMeasure discretize(const SourceMeasure& nu, const TaggedPartition& partition) {
    return discretize(AnyMeasure(nu), partition);
}

EmpiricalMeasure discretize_empirical(const EmpiricalMeasure& L, const TaggedPartition& partition) {
    std::vector<Point> projected;
    projected.reserve(L.count());
    for (const Point& p : L.samples()) projected.push_back(partition.project_point(p));
    return EmpiricalMeasure(std::move(projected));
}

// ---------------------------------------------------------------------------
// Lifting

LiftedMeasure::LiftedMeasure(FiniteMeasure sigma, const SourceMeasure& mu,
                             const PartitionSequence& seq, int depth)
    : sigma_(std::move(sigma)), mu_(&mu), seq_(&seq), depth_(depth) {
    const TaggedPartition& part = seq.at(depth);
    mu_cell_mass_ = cell_masses(AnyMeasure(mu), part);
    factors_.assign(part.size(), 0.0);

    // sigma must live on the tag set
    std::map<Point, int> tag_cell;
    for (int i = 0; i < part.size(); ++i) tag_cell[part.cell(i).tag] = i;
    for (std::size_t k = 0; k < sigma_.size(); ++k) {
        auto it = tag_cell.find(sigma_.point(k));
        if (it == tag_cell.end())
            throw std::invalid_argument("lift: weight on a point that is not a tag at depth " +
                                        std::to_string(depth));
        int cell = it->second;
        if (mu_cell_mass_[cell] <= 0.0)
            throw infeasible_lift_error("lift: sigma charges a null cell (tag " +
                                        to_string(sigma_.point(k)) + ")");
        factors_[cell] = sigma_.weight(k) / mu_cell_mass_[cell];
    }
}

FiniteMeasure LiftedMeasure::discretized(int target_depth) const {
    if (target_depth < depth_)
        throw std::invalid_argument("lifted discretize: target coarser than the lift depth");
    if (target_depth == depth_) return sigma_;
    const TaggedPartition& fine = seq_->at(target_depth);
    std::vector<double> fine_mass = cell_masses(AnyMeasure(*mu_), fine);
    std::vector<Point> tags(fine.size());
    std::vector<double> mass(fine.size());
    for (int i = 0; i < fine.size(); ++i) {
        int anc = i;
        for (int d = target_depth; d > depth_; --d) anc = seq_->at(d).cell(anc).parent;
        tags[i] = fine.cell(i).tag;
        mass[i] = factors_[anc] * fine_mass[i];
    }
    return FiniteMeasure(std::move(tags), std::move(mass));
}

FiniteMeasure LiftedMeasure::as_finite() const {
    if (!mu_->is_atomic()) throw unsupported_measure_error("as_finite: base measure not atomic");
    const FiniteMeasure& at = mu_->atoms();
    const TaggedPartition& part = seq_->at(depth_);
    std::vector<Point> pts;
    std::vector<double> w;
    for (std::size_t i = 0; i < at.size(); ++i) {
        pts.push_back(at.point(i));
        w.push_back(at.weight(i) * factors_[part.locate(at.point(i))]);
    }
    return FiniteMeasure(std::move(pts), std::move(w));
}

double LiftedMeasure::density(double x) const {
    const TaggedPartition& part = seq_->at(depth_);
    return mu_->density(x) * factors_[part.locate(Point::coord(x))];
}

LiftedMeasure lift(const FiniteMeasure& sigma, const SourceMeasure& mu,
                   const PartitionSequence& seq, int depth) {
    return LiftedMeasure(sigma, mu, seq, depth);
}

// ---------------------------------------------------------------------------
// Compact exhaustion

CompactExhaustion build_exhaustion(const SourceMeasure& mu, int m_max) {
    if (m_max < 1) throw std::invalid_argument("build_exhaustion: depth must be at least 1");
    CompactExhaustion ex;
    if (mu.is_atomic() && mu.atoms().point(0).is_indexed()) {
        // finite ground space: the full point set is compact, tails are zero
        ex.kind = SpaceKind::FinitePoints;
        ex.tail_bound.assign(m_max, 0.0);
        return ex;
    }
    ex.kind = SpaceKind::Interval;
    for (int m = 1; m <= m_max; ++m) {
        double budget = exhaustion_budget(m);
        SourceMeasure::TailInterval t = mu.tail_interval(0.99 * budget);
        if (!(t.tail <= budget))
            throw unsupported_measure_error("build_exhaustion: cannot certify tail at depth " +
                                            std::to_string(m));
        if (!ex.lo.empty()) {
            // numeric quantile jitter must not break nestedness
            t.lo = std::min(t.lo, ex.lo.back());
            t.hi = std::max(t.hi, ex.hi.back());
        }
        ex.lo.push_back(t.lo);
        ex.hi.push_back(t.hi);
        ex.tail_bound.push_back(t.tail);
    }
    return ex;
}

}  // namespace ldtk
