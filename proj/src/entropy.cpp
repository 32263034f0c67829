#include "ldtk/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ldtk/errors.hpp"
#include "ldtk/numeric.hpp"

namespace ldtk {

double relative_entropy_integral(const FiniteMeasure& nu, const FiniteMeasure& mu) {
    KahanSum s;
    for (std::size_t i = 0; i < nu.size(); ++i) {
        double w = nu.weight(i);
        double q = mu.mass_of(nu.point(i));
        if (q <= 0.0) return kInf;
        s.add(w * std::log(w / q));
    }
    double h = s.value();
    // Gibbs: the exact value is nonnegative; clamp summation dust only
    if (h < 0.0 && h > -1e-12) return 0.0;
    return h;
}

std::vector<Point> merged_support(const FiniteMeasure& nu, const FiniteMeasure& mu) {
    std::vector<Point> pts(nu.support());
    pts.insert(pts.end(), mu.support().begin(), mu.support().end());
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    return pts;
}

VariationalResult relative_entropy_variational(const FiniteMeasure& nu, const FiniteMeasure& mu,
                                               double bound) {
    if (!(bound > 0.0)) throw std::invalid_argument("variational entropy: bound must be positive");
    std::vector<Point> pts = merged_support(nu, mu);
    std::size_t n = pts.size();
    std::vector<double> p(n), q(n), f(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        p[i] = nu.mass_of(pts[i]);
        q[i] = mu.mass_of(pts[i]);
    }

    auto z_total = [&] {
        KahanSum z;
        for (std::size_t i = 0; i < n; ++i)
            if (q[i] > 0.0) z.add(q[i] * std::exp(f[i]));
        return z.value();
    };

    // Cyclic coordinate ascent; each coordinate update is the closed-form
    // stationary point of the concave objective, clamped to the box.
    const int max_sweeps = 10000;
    double residual = kInf;
    int sweep = 0;
    for (; sweep < max_sweeps; ++sweep) {
        double z = z_total();
        for (std::size_t i = 0; i < n; ++i) {
            double zmi = z - (q[i] > 0.0 ? q[i] * std::exp(f[i]) : 0.0);
            double target;
            if (q[i] <= 0.0 || p[i] >= 1.0)
                target = p[i] > 0.0 ? bound : 0.0;
            else if (p[i] <= 0.0)
                target = -bound;
            else
                target = std::log(p[i] * zmi / (q[i] * (1.0 - p[i])));
            f[i] = std::clamp(target, -bound, bound);
            z = zmi + (q[i] > 0.0 ? q[i] * std::exp(f[i]) : 0.0);
        }
        // projected-gradient residual at the sweep end
        z = z_total();
        residual = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            double g = p[i] - (q[i] > 0.0 ? q[i] * std::exp(f[i]) / z : 0.0);
            double viol;
            if (f[i] >= bound - 1e-15)
                viol = std::max(0.0, -g);
            else if (f[i] <= -bound + 1e-15)
                viol = std::max(0.0, g);
            else
                viol = std::abs(g);
            residual = std::max(residual, viol);
        }
        if (residual <= 1e-10) break;
    }
    if (residual > 1e-10)
        throw optimizer_failure_error("variational entropy ascent stalled", residual);

    VariationalResult r;
    r.f = f;
    r.sweeps = sweep + 1;
    r.grad_norm = residual;
    KahanSum lin;
    std::vector<double> logs;
    for (std::size_t i = 0; i < n; ++i) {
        lin.add(p[i] * f[i]);
        if (q[i] > 0.0) logs.push_back(std::log(q[i]) + f[i]);
    }
    r.value = lin.value() - log_sum_exp(logs);
    if (r.value < 0.0 && r.value > -1e-12) r.value = 0.0;
    return r;
}

InequalitySlack entropy_inequality_check(const std::vector<double>& f, const FiniteMeasure& nu,
                                         const FiniteMeasure& mu) {
    std::vector<Point> pts = merged_support(nu, mu);
    if (f.size() != pts.size())
        throw std::invalid_argument("entropy inequality: f must match the merged support");
    double h = relative_entropy_integral(nu, mu);
    InequalitySlack out;
    if (std::isinf(h)) {
        out.slack = kInf;
        return out;
    }
    KahanSum lin;
    std::vector<double> logs;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        lin.add(nu.mass_of(pts[i]) * f[i]);
        double q = mu.mass_of(pts[i]);
        if (q > 0.0) logs.push_back(std::log(q) + f[i]);
    }
    out.slack = h + log_sum_exp(logs) - lin.value();
    out.pass = out.slack >= -1e-9;
    return out;
}

EntropyLadder entropy_ladder(const AnyMeasure& nu, const AnyMeasure& mu,
                             const PartitionSequence& seq) {
    EntropyLadder ladder;
    for (int m = 1; m <= seq.max_depth(); ++m) {
        const TaggedPartition& part = seq.at(m);
        ladder.depths.push_back(m);
        ladder.values.push_back(
            relative_entropy_integral(discretize(nu, part), discretize(mu, part)));
    }
    ladder.limit_estimate = ladder.values.back();
    return ladder;
}

MartingaleTrace martingale_trace(const AnyMeasure& nu, const AnyMeasure& mu,
                                 const PartitionSequence& seq) {
    MartingaleTrace trace;
    trace.ui_bound = 0.0;
    for (int m = 1; m <= seq.max_depth(); ++m) {
        const TaggedPartition& part = seq.at(m);
        std::vector<double> nu_c = cell_masses(nu, part);
        std::vector<double> mu_c = cell_masses(mu, part);
        std::vector<double> s(part.size(), 0.0);
        KahanSum mean;
        KahanSum slogs;
        bool infinite = false;
        for (int i = 0; i < part.size(); ++i) {
            if (mu_c[i] > 0.0) {
                s[i] = nu_c[i] / mu_c[i];
                mean.add(nu_c[i]);
                if (nu_c[i] > 0.0) slogs.add(nu_c[i] * std::log(s[i]));
            } else if (nu_c[i] > 0.0) {
                infinite = true;  // nu escapes mu's support: S undefined there
            }
        }
        trace.depths.push_back(m);
        trace.s_values.push_back(std::move(s));
        trace.expectation.push_back(mean.value());
        trace.s_log_s.push_back(infinite ? kInf : std::max(slogs.value(), 0.0));
        trace.ui_bound = std::max(trace.ui_bound, trace.s_log_s.back());
    }
    return trace;
}

Rational RationalMeasure::mass_in(const TaggedPartition& part, int cell) const {
    Rational total(0);
    for (std::size_t i = 0; i < support.size(); ++i)
        if (part.cell_contains(cell, support[i])) total = total + weights[i];
    return total;
}

FiniteMeasure RationalMeasure::to_finite() const {
    std::vector<double> w;
    w.reserve(weights.size());
    for (const Rational& r : weights) w.push_back(r.to_double());
    return FiniteMeasure(support, std::move(w));
}

TowerCheck tower_check_exact(const RationalMeasure& nu, const RationalMeasure& mu,
                             const PartitionSequence& seq) {
    TowerCheck out;
    auto fail = [&](const std::string& msg) {
        if (out.exact) {
            out.exact = false;
            out.detail = msg;
        }
    };
    const Rational one(1);
    std::vector<std::vector<Rational>> nu_cells, mu_cells;
    for (int m = 1; m <= seq.max_depth(); ++m) {
        const TaggedPartition& part = seq.at(m);
        std::vector<Rational> nc(part.size()), mc(part.size());
        Rational mean(0);
        for (int i = 0; i < part.size(); ++i) {
            nc[i] = nu.mass_in(part, i);
            mc[i] = mu.mass_in(part, i);
            if (mc[i].is_zero() && !nc[i].is_zero())
                fail("depth " + std::to_string(m) + " cell " + std::to_string(i) +
                     ": nu charges a mu-null cell");
            if (!mc[i].is_zero()) mean = mean + nc[i];
        }
        if (mean != one)
            fail("depth " + std::to_string(m) + ": E[S] = " + mean.to_string() + " != 1");
        nu_cells.push_back(std::move(nc));
        mu_cells.push_back(std::move(mc));
    }
    // tower property: mu-weighted average of child ratios equals the parent ratio
    for (int m = 1; m < seq.max_depth(); ++m) {
        const TaggedPartition& coarse = seq.at(m);
        const TaggedPartition& fine = seq.at(m + 1);
        std::vector<Rational> child_sum(coarse.size(), Rational(0));
        for (int c = 0; c < fine.size(); ++c) {
            if (mu_cells[m][c].is_zero()) continue;
            // mu(child) * S_{m+1}(child) = nu(child)
            child_sum[fine.cell(c).parent] = child_sum[fine.cell(c).parent] + nu_cells[m][c];
        }
        for (int p = 0; p < coarse.size(); ++p) {
            if (mu_cells[m - 1][p].is_zero()) continue;
            Rational lhs = child_sum[p] / mu_cells[m - 1][p];
            Rational rhs = nu_cells[m - 1][p] / mu_cells[m - 1][p];
            if (lhs != rhs)
                fail("depths " + std::to_string(m + 1) + "->" + std::to_string(m) + " cell " +
                     std::to_string(p) + ": E[S|F] = " + lhs.to_string() + " != S = " +
                     rhs.to_string());
        }
    }
    return out;
}

double kl_divergence_quadrature(const SourceMeasure& nu, const SourceMeasure& mu, double lo,
                                double hi) {
    return adaptive_simpson(
        [&](double x) {
            double a = nu.density(x);
            if (a <= 0.0) return 0.0;
            return a * std::log(a / mu.density(x));
        },
        lo, hi, 1e-8);
}

}  // namespace ldtk
