#pragma once

/**
 * @file jet.hpp
 * @brief Truncated nilpotent jet arithmetic: R[e0..e{k-1}] / (e_i^2).
 *
 * A ScalarJet of order k holds 2^k coefficients indexed by subsets of the
 * epsilon levels {0,...,k-1} (bitmask index).  Order 0 is a plain scalar,
 * order 1 is a dual number, order k models an order-k iterated tangent
 * vector of the real line.  A JetPoint is the vector-valued analogue: one
 * R^n coefficient block per level set, the concrete carrier of T^k(R^n).
 */

#include <cmath>
#include <cstdint>
#include <sstream>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

namespace jetgeom {

/// Deepest supported iterated tangent.  The double-lift conditions need
/// order-4 carriers, and applying them to the lift of a pulled-back
/// connection (whose K already embeds a T^2) needs order 5; 6 leaves a
/// margin.
inline constexpr int kMaxOrder = 6;

/// Bitmask over epsilon levels 0..k-1.
using LevelSet = std::uint32_t;

struct eval_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct dim_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

inline void check_order(int order) {
    if (order < 0 || order > kMaxOrder)
        throw dim_error("jet order " + std::to_string(order) + " out of range [0," +
                        std::to_string(kMaxOrder) + "]");
}

enum class Prim { Sin, Cos, Exp, Log, Sqrt, Tanh };

inline const char* prim_name(Prim p) {
    switch (p) {
    case Prim::Sin: return "sin";
    case Prim::Cos: return "cos";
    case Prim::Exp: return "exp";
    case Prim::Log: return "log";
    case Prim::Sqrt: return "sqrt";
    case Prim::Tanh: return "tanh";
    }
    return "?";
}

template <typename Real>
struct ScalarJet {
    int order = 0;
    std::vector<Real> c;  // size 2^order, index = level-set bitmask

    ScalarJet() : c(1, Real(0)) {}

    explicit ScalarJet(int k) : order(k) {
        check_order(k);
        c.assign(std::size_t(1) << k, Real(0));
    }

    ScalarJet(int k, Real value) : ScalarJet(k) { c[0] = value; }

    static ScalarJet constant(int k, Real value) { return ScalarJet(k, value); }

    /// The jet of the identity coordinate seeded along one level.
    static ScalarJet seeded(int k, Real value, int level, Real velocity = Real(1)) {
        ScalarJet j(k, value);
        j.c[LevelSet(1) << level] = velocity;
        return j;
    }

    std::size_t size() const { return c.size(); }
};

namespace detail {
inline void require_same_order(int a, int b) {
    if (a != b)
        throw dim_error("jet order mismatch: " + std::to_string(a) + " vs " + std::to_string(b));
}
}  // namespace detail

template <typename Real>
ScalarJet<Real> jet_add(const ScalarJet<Real>& a, const ScalarJet<Real>& b) {
    detail::require_same_order(a.order, b.order);
    ScalarJet<Real> r(a.order);
    for (std::size_t s = 0; s < r.size(); ++s) r.c[s] = a.c[s] + b.c[s];
    return r;
}

template <typename Real>
ScalarJet<Real> jet_sub(const ScalarJet<Real>& a, const ScalarJet<Real>& b) {
    detail::require_same_order(a.order, b.order);
    ScalarJet<Real> r(a.order);
    for (std::size_t s = 0; s < r.size(); ++s) r.c[s] = a.c[s] - b.c[s];
    return r;
}

template <typename Real>
ScalarJet<Real> jet_neg(const ScalarJet<Real>& a) {
    ScalarJet<Real> r(a.order);
    for (std::size_t s = 0; s < r.size(); ++s) r.c[s] = -a.c[s];
    return r;
}

/// Product in R[e0..e{k-1}]/(e_i^2): (a*b)_S = sum over disjoint unions
/// A | B = S, A & B = 0, of a_A * b_B.  Subset convolution over the mask.
template <typename Real>
ScalarJet<Real> jet_mul(const ScalarJet<Real>& a, const ScalarJet<Real>& b) {
    detail::require_same_order(a.order, b.order);
    ScalarJet<Real> r(a.order);
    for (LevelSet s = 0; s < r.size(); ++s) {
        Real acc(0);
        LevelSet sub = s;
        while (true) {
            acc += a.c[sub] * b.c[s ^ sub];
            if (sub == 0) break;
            sub = (sub - 1) & s;
        }
        r.c[s] = acc;
    }
    return r;
}

template <typename Real>
ScalarJet<Real> jet_scale(const ScalarJet<Real>& a, Real k) {
    ScalarJet<Real> r(a.order);
    for (std::size_t s = 0; s < r.size(); ++s) r.c[s] = k * a.c[s];
    return r;
}

namespace detail {

/// Split off the top level: a = lo + e_{k-1} * hi, both of order k-1.
template <typename Real>
void split_top(const ScalarJet<Real>& a, ScalarJet<Real>& lo, ScalarJet<Real>& hi) {
    const int k = a.order - 1;
    lo = ScalarJet<Real>(k);
    hi = ScalarJet<Real>(k);
    const LevelSet top = LevelSet(1) << k;
    for (LevelSet s = 0; s < lo.size(); ++s) {
        lo.c[s] = a.c[s];
        hi.c[s] = a.c[s | top];
    }
}

template <typename Real>
ScalarJet<Real> join_top(const ScalarJet<Real>& lo, const ScalarJet<Real>& hi) {
    ScalarJet<Real> r(lo.order + 1);
    const LevelSet top = LevelSet(1) << lo.order;
    for (LevelSet s = 0; s < lo.size(); ++s) {
        r.c[s] = lo.c[s];
        r.c[s | top] = hi.c[s];
    }
    return r;
}

}  // namespace detail

/// Multiplicative inverse; requires an invertible base coefficient.
/// Recursion on the top level: 1/(p + e q) = r - e (r q r), r = 1/p.
template <typename Real>
ScalarJet<Real> jet_recip(const ScalarJet<Real>& a) {
    if (a.order == 0) {
        if (a.c[0] == Real(0)) throw eval_error("division by jet with zero base coefficient");
        ScalarJet<Real> r(0);
        r.c[0] = Real(1) / a.c[0];
        return r;
    }
    ScalarJet<Real> lo, hi;
    detail::split_top(a, lo, hi);
    ScalarJet<Real> r = jet_recip(lo);
    return detail::join_top(r, jet_neg(jet_mul(r, jet_mul(hi, r))));
}

template <typename Real>
ScalarJet<Real> jet_div(const ScalarJet<Real>& a, const ScalarJet<Real>& b) {
    return jet_mul(a, jet_recip(b));
}

/// Integer power by repeated multiplication; negative exponents via recip.
template <typename Real>
ScalarJet<Real> jet_pow(const ScalarJet<Real>& a, long long e) {
    if (e < 0) return jet_recip(jet_pow(a, -e));
    ScalarJet<Real> r = ScalarJet<Real>::constant(a.order, Real(1));
    ScalarJet<Real> base = a;
    while (e > 0) {
        if (e & 1) r = jet_mul(r, base);
        base = jet_mul(base, base);
        e >>= 1;
    }
    return r;
}

/// Lift of a smooth primitive to jets.  Writing a = p + e q with p, q of
/// order k-1, f(a) = f(p) + e f'(p) q; order 0 is ordinary evaluation.
template <typename Real>
ScalarJet<Real> jet_primitive(Prim f, const ScalarJet<Real>& a) {
    if constexpr (!std::is_floating_point_v<Real>) {
        (void)f;
        (void)a;
        throw eval_error("transcendental primitives are unavailable in exact arithmetic");
    } else {
        if (a.order == 0) {
            const Real x = a.c[0];
            ScalarJet<Real> r(0);
            switch (f) {
            case Prim::Sin: r.c[0] = std::sin(x); break;
            case Prim::Cos: r.c[0] = std::cos(x); break;
            case Prim::Exp: r.c[0] = std::exp(x); break;
            case Prim::Tanh: r.c[0] = std::tanh(x); break;
            case Prim::Log:
                if (!(x > Real(0))) {
                    std::ostringstream os;
                    os << "log domain violation at base value " << x;
                    throw eval_error(os.str());
                }
                r.c[0] = std::log(x);
                break;
            case Prim::Sqrt:
                if (!(x > Real(0))) {
                    std::ostringstream os;
                    os << "sqrt domain violation at base value " << x;
                    throw eval_error(os.str());
                }
                r.c[0] = std::sqrt(x);
                break;
            }
            return r;
        }
        ScalarJet<Real> p, q;
        detail::split_top(a, p, q);
        ScalarJet<Real> fp = jet_primitive(f, p);
        ScalarJet<Real> dfp;  // f'(p), via closed-form derivative primitives
        switch (f) {
        case Prim::Sin: dfp = jet_primitive(Prim::Cos, p); break;
        case Prim::Cos: dfp = jet_neg(jet_primitive(Prim::Sin, p)); break;
        case Prim::Exp: dfp = fp; break;
        case Prim::Log: dfp = jet_recip(p); break;
        case Prim::Sqrt: dfp = jet_div(ScalarJet<Real>::constant(p.order, Real(0.5)), fp); break;
        case Prim::Tanh:
            dfp = jet_sub(ScalarJet<Real>::constant(p.order, Real(1)), jet_mul(fp, fp));
            break;
        }
        return detail::join_top(fp, jet_mul(dfp, q));
    }
}

/**
 * An order-k iterated tangent vector over R^n: one R^n block per level
 * set, stored flat in ascending-mask order.  That flat layout is exactly
 * the coordinate presentation (x, v, w, a, ...) of T^k(R^n) used by the
 * structural maps, so flattening is free.
 */
template <typename Real>
struct JetPoint {
    int order = 0;
    int dim = 0;
    std::vector<Real> data;  // (1 << order) * dim, block S at offset S*dim

    JetPoint() = default;

    JetPoint(int k, int n) : order(k), dim(n) {
        check_order(k);
        if (n < 0) throw dim_error("negative dimension");
        data.assign((std::size_t(1) << k) * std::size_t(n), Real(0));
    }

    /// A plain point of R^n as an order-0 jet.
    static JetPoint point(std::vector<Real> x) {
        JetPoint p(0, int(x.size()));
        p.data = std::move(x);
        return p;
    }

    /// Reinterpret a flat vector of length 2^k * n as an order-k jet.
    static JetPoint from_flat(int k, int n, std::vector<Real> flat) {
        JetPoint p(k, n);
        if (flat.size() != p.data.size()) throw dim_error("flat jet data has wrong length");
        p.data = std::move(flat);
        return p;
    }

    Real& at(LevelSet s, int i) { return data[std::size_t(s) * dim + i]; }
    const Real& at(LevelSet s, int i) const { return data[std::size_t(s) * dim + i]; }

    std::size_t components() const { return std::size_t(1) << order; }

    /// Scalar jet of coordinate i.
    ScalarJet<Real> coordinate(int i) const {
        ScalarJet<Real> j(order);
        for (LevelSet s = 0; s < components(); ++s) j.c[s] = at(s, i);
        return j;
    }
};

/// Coordinate realization of the canonical flip and its whiskerings:
/// transpose two epsilon levels, moving block S to block sigma(S).
template <typename Real>
JetPoint<Real> swap_levels(const JetPoint<Real>& j, int li, int lj) {
    if (li < 0 || li >= j.order || lj < 0 || lj >= j.order)
        throw dim_error("swap_levels: level out of range for order " + std::to_string(j.order));
    if (li == lj) return j;
    JetPoint<Real> r(j.order, j.dim);
    const LevelSet bi = LevelSet(1) << li, bj = LevelSet(1) << lj;
    for (LevelSet s = 0; s < j.components(); ++s) {
        LevelSet t = s;
        const bool hi = s & bi, hj = s & bj;
        if (hi != hj) t = s ^ bi ^ bj;
        for (int i = 0; i < j.dim; ++i) r.at(t, i) = j.at(s, i);
    }
    return r;
}

template <typename Real>
JetPoint<Real> jet_point_add(const JetPoint<Real>& a, const JetPoint<Real>& b) {
    if (a.order != b.order || a.dim != b.dim) throw dim_error("jet point shape mismatch");
    JetPoint<Real> r = a;
    for (std::size_t i = 0; i < r.data.size(); ++i) r.data[i] += b.data[i];
    return r;
}

/**
 * Repack a jet over R^{2p} into a jet one order higher over R^p: block S
 * keeps the first p coordinates and block S | top takes the last p.  This
 * is how the tangent lift feeds (base, tangent) pairs to the underlying
 * map; the new epsilon is always the highest level.
 */
template <typename Real>
JetPoint<Real> pack_lift_input(const JetPoint<Real>& in) {
    if (in.dim % 2 != 0) throw dim_error("tangent-lift input dimension must be even");
    const int p = in.dim / 2;
    JetPoint<Real> out(in.order + 1, p);
    const LevelSet top = LevelSet(1) << in.order;
    for (LevelSet s = 0; s < in.components(); ++s)
        for (int i = 0; i < p; ++i) {
            out.at(s, i) = in.at(s, i);
            out.at(s | top, i) = in.at(s, p + i);
        }
    return out;
}

/// Inverse of pack_lift_input on the output side: fold the top level of an
/// order-(k+1) jet over R^q back into an order-k jet over R^{2q}.
template <typename Real>
JetPoint<Real> unpack_lift_output(const JetPoint<Real>& in) {
    if (in.order == 0) throw dim_error("cannot unpack an order-0 jet");
    const int q = in.dim;
    JetPoint<Real> out(in.order - 1, 2 * q);
    const LevelSet top = LevelSet(1) << (in.order - 1);
    for (LevelSet s = 0; s < out.components(); ++s)
        for (int i = 0; i < q; ++i) {
            out.at(s, i) = in.at(s, i);
            out.at(s, q + i) = in.at(s | top, i);
        }
    return out;
}

}  // namespace jetgeom
