#pragma once

/**
 * @file verify.hpp
 * @brief Sampled comparison of smooth-map composites.
 *
 * Laws whose two sides are compositions of structural (linear, constant
 * coefficient) maps are checked with tolerance 0; a floating tolerance
 * applies only when a nonlinear map evaluated through jet arithmetic
 * participates.  Samples are drawn uniformly from [-2,2]^p; a
 * primitive-domain violation triggers resampling (at most 100 retries,
 * after which the check reports an inconclusive sample).
 */

#include <cmath>
#include <random>

#include "report.hpp"
#include "smooth_map.hpp"

namespace jetgeom {

struct CheckContext {
    std::mt19937_64 rng;
    int samples = 100;
    double tol = 1e-9;
    double lo = -2.0, hi = 2.0;
    static constexpr int kMaxRetries = 100;

    explicit CheckContext(std::uint64_t seed = 0, int samples_ = 100, double tol_ = 1e-9)
        : rng(seed), samples(samples_), tol(tol_) {}

    /// Draw from the dyadic lattice (multiples of 2^-10) in [lo, hi): short
    /// sums of lattice values are exact in double, so structural-only laws
    /// (permutations and bundle additions) can be held to tolerance 0.
    double draw() {
        auto k = std::uniform_int_distribution<long long>(
            (long long)(lo * 1024.0), (long long)(hi * 1024.0) - 1)(rng);
        return double(k) / 1024.0;
    }

    std::vector<double> point(int dim) {
        std::vector<double> x(std::size_t(dim), 0.0);
        for (double& v : x) v = draw();
        return x;
    }

    JetPoint<double> jet(int order, int dim) {
        JetPoint<double> j(order, dim);
        for (double& v : j.data) v = draw();
        return j;
    }
};

/// Componentwise relative residual, normalized by max(1, |l|, |r|).
inline double residual(const std::vector<double>& l, const std::vector<double>& r) {
    double m = 0.0;
    for (std::size_t i = 0; i < l.size(); ++i) {
        double scale = std::max({1.0, std::abs(l[i]), std::abs(r[i])});
        m = std::max(m, std::abs(l[i] - r[i]) / scale);
    }
    return m;
}

/**
 * Compare two composites on random jets of the given order.  tol == 0
 * demands exact double equality (valid for index-manipulation laws).
 */
inline LawReport compare_maps(std::string name, const SmoothMap<double>& lhs,
                              const SmoothMap<double>& rhs, CheckContext& ctx, double tol,
                              int order = 0) {
    if (lhs.in_dim() != rhs.in_dim() || lhs.out_dim() != rhs.out_dim())
        throw dim_error("compare_maps '" + name + "': signatures differ");
    LawReport rep;
    rep.name = std::move(name);
    for (int k = 0; k < ctx.samples; ++k) {
        JetPoint<double> x;
        JetPoint<double> l, r;
        bool ok = false;
        for (int attempt = 0; attempt < CheckContext::kMaxRetries && !ok; ++attempt) {
            x = ctx.jet(order, lhs.in_dim());
            try {
                l = lhs.eval(x);
                r = rhs.eval(x);
                ok = true;
            } catch (const eval_error&) {
                // domain violation; resample
            }
        }
        if (!ok) {
            rep.status = Status::Inconclusive;
            Witness w;
            w.note = "no in-domain sample found after 100 retries";
            rep.witness = std::move(w);
            return rep;
        }
        ++rep.samples;
        const double res = residual(l.data, r.data);
        if (res > rep.max_residual) rep.max_residual = res;
        if (res > tol && rep.status == Status::Pass) {
            rep.status = Status::Fail;
            Witness w;
            w.input = x.data;
            w.lhs = l.data;
            w.rhs = r.data;
            rep.witness = std::move(w);
        }
    }
    return rep;
}

/// Exact-equality comparison (no sampling tolerance), used for laws that
/// are pure index manipulations.
inline LawReport compare_exact(std::string name, const SmoothMap<double>& lhs,
                               const SmoothMap<double>& rhs, CheckContext& ctx, int order = 0) {
    return compare_maps(std::move(name), lhs, rhs, ctx, 0.0, order);
}

}  // namespace jetgeom
