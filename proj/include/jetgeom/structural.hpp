#pragma once

/**
 * @file structural.hpp
 * @brief Structural natural transformations of the tangent category on
 * R^n, realized as constant-coefficient linear SmoothMaps, plus a sampled
 * verifier for the tangent-category axioms.
 *
 * Flat coordinate conventions (blocks of size n, ascending level-set
 * order):
 *   TM      = (x, v)
 *   T2M     = (x, v, w, a)        v = level 0, w = level 1, a = both
 *   T_m M   = (x, u_0, ..., u_{m-1})
 *   T_m(TM) = (x, v, w_0, a_0, ..., w_{m-1}, a_{m-1})
 *
 * The axiom inventory checked by verify_tangent_axioms is the standard
 * one for tangent categories:
 *   - naturality of p, 0, +, l, c against the supplied test maps;
 *   - additive-bundle laws for (p, 0, +): section, unit, associativity,
 *     commutativity, projection;
 *   - c is an involution; the braid identity T(c) c_T T(c) = c_T T(c) c_T
 *     on T^3;
 *   - l-coherences: l T(l) = l l_T, l c = l, and the section identities
 *     l T(p) = p 0 and l p_T = p 0;
 *   - c_m T(pi_i) = pi_i c for m = 2;
 *   - universality of the vertical lift, both directions, through the
 *     explicit inverse mu.
 * Structural-only identities are required to hold exactly (tolerance 0);
 * naturality squares with jet-evaluated nonlinear maps use the context
 * tolerance.
 */

#include "smooth_map.hpp"
#include "verify.hpp"

namespace jetgeom {

/// p : TM -> M, (x,v) |-> x.
template <typename Real = double>
SmoothMap<Real> proj_p(int n) {
    return select_blocks<Real>(2 * n, n, {0});
}

/// 0 : M -> TM, x |-> (x,0).
template <typename Real = double>
SmoothMap<Real> zero_section(int n) {
    LinMat<Real> m(2 * n, n);
    for (int i = 0; i < n; ++i) m.at(i, i) = Real(1);
    return SmoothMap<Real>::linear(std::move(m));
}

/// + : T2M -> TM, (x,v,w) |-> (x, v+w).
template <typename Real = double>
SmoothMap<Real> plus_map(int n) {
    LinMat<Real> m(2 * n, 3 * n);
    for (int i = 0; i < n; ++i) {
        m.at(i, i) = Real(1);
        m.at(n + i, n + i) = Real(1);
        m.at(n + i, 2 * n + i) = Real(1);
    }
    return SmoothMap<Real>::linear(std::move(m));
}

/// l : TM -> T^2M, (x,v) |-> (x,0,0,v) (vertical lift).
template <typename Real = double>
SmoothMap<Real> ell_map(int n) {
    LinMat<Real> m(4 * n, 2 * n);
    for (int i = 0; i < n; ++i) {
        m.at(i, i) = Real(1);
        m.at(3 * n + i, n + i) = Real(1);
    }
    return SmoothMap<Real>::linear(std::move(m));
}

/// c : T^2M -> T^2M, (x,v,w,a) |-> (x,w,v,a) (canonical flip).
template <typename Real = double>
SmoothMap<Real> flip_map(int n) {
    return select_blocks<Real>(4 * n, n, {0, 2, 1, 3});
}

/// mu : T_2M -> T^2M, (x,v,w) |-> (x,w,0,v); the universality comparison
/// for the vertical lift, mu = <pi_0 l, pi_1 0> T(+).
template <typename Real = double>
SmoothMap<Real> mu_map(int n) {
    LinMat<Real> m(4 * n, 3 * n);
    for (int i = 0; i < n; ++i) {
        m.at(i, i) = Real(1);
        m.at(n + i, 2 * n + i) = Real(1);
        m.at(3 * n + i, n + i) = Real(1);
    }
    return SmoothMap<Real>::linear(std::move(m));
}

/// pi_i : T_mM -> TM, (x, u_0..u_{m-1}) |-> (x, u_i).
template <typename Real = double>
SmoothMap<Real> pi_map(int m, int n, int i) {
    if (i < 0 || i >= m) throw dim_error("pi_map: index out of range");
    return select_blocks<Real>((m + 1) * n, n, {0, 1 + i});
}

/// c_m : T_m(TM) -> T(T_mM), (x,v,w_*,a_*) |-> (x,w_*,v,a_*); the unique
/// map with c_m T(pi_i) = pi_i c.
template <typename Real = double>
SmoothMap<Real> flip_n_map(int m, int n) {
    std::vector<int> blocks;
    blocks.push_back(0);
    for (int j = 0; j < m; ++j) blocks.push_back(2 + 2 * j);
    blocks.push_back(1);
    for (int j = 0; j < m; ++j) blocks.push_back(3 + 2 * j);
    return select_blocks<Real>((2 + 2 * m) * n, n, blocks);
}

/// (c x c) : T_2(TM) -> T(T_2M), the flip applied on both fiber factors.
template <typename Real = double>
SmoothMap<Real> flip_pair_map(int n) {
    return select_blocks<Real>(6 * n, n, {0, 2, 4, 1, 3, 5});
}

/// T_2(f) : T_2M -> T_2N, (x,v,w) |-> (f(x), Df v, Df w), built from two
/// tangent lifts sharing the base evaluation.
template <typename Real = double>
SmoothMap<Real> t2_of(const SmoothMap<Real>& f) {
    const int p = f.in_dim(), q = f.out_dim();
    auto tf = tangent_lift(f);
    auto left = compose(select_blocks<Real>(3 * p, p, {0, 1}), tf);
    auto right = compose(select_blocks<Real>(3 * p, p, {0, 2}), tf);
    return compose(pair_map(left, right), select_blocks<Real>(4 * q, q, {0, 1, 3}));
}

/// <f, g-fiber>: pair two maps into a common bundle (base dim `base`),
/// keeping f whole and appending only the fiber part of g.
template <typename Real = double>
SmoothMap<Real> fiber_pair(const SmoothMap<Real>& f, const SmoothMap<Real>& g, int base) {
    auto p = pair_map(f, g);
    std::vector<int> idx;
    for (int i = 0; i < f.out_dim(); ++i) idx.push_back(i);
    for (int i = base; i < g.out_dim(); ++i) idx.push_back(f.out_dim() + i);
    return compose(p, select_map<Real>(p.out_dim(), idx));
}

/**
 * Check the tangent-category axiom suite at dimension n against the given
 * test maps (each with input dim n).  Failures land in the report; this
 * never throws on a law violation.
 */
inline LawReport verify_tangent_axioms(int n, const std::vector<SmoothMap<double>>& test_maps,
                                       CheckContext& ctx) {
    std::vector<LawReport> laws;
    auto p = proj_p<double>(n);
    auto z = zero_section<double>(n);
    auto pl = plus_map<double>(n);
    auto l = ell_map<double>(n);
    auto c = flip_map<double>(n);
    auto id_n = SmoothMap<double>::identity(n);

    // Naturality squares against each test map (jet-evaluated, tolerance).
    for (std::size_t ti = 0; ti < test_maps.size(); ++ti) {
        const SmoothMap<double>& f = test_maps[ti];
        const int m = f.out_dim();
        const std::string tag = "[map " + std::to_string(ti) + "]";
        auto tf = tangent_lift(f);
        auto ttf = tangent_lift(tf);
        laws.push_back(compare_maps("naturality-p " + tag, compose(tf, proj_p<double>(m)),
                                    compose(proj_p<double>(n), f), ctx, ctx.tol));
        laws.push_back(compare_maps("naturality-0 " + tag, compose(f, zero_section<double>(m)),
                                    compose(zero_section<double>(n), tf), ctx, ctx.tol));
        laws.push_back(compare_maps("naturality-plus " + tag, compose(t2_of(f), plus_map<double>(m)),
                                    compose(plus_map<double>(n), tf), ctx, ctx.tol));
        laws.push_back(compare_maps("naturality-ell " + tag, compose(tf, ell_map<double>(m)),
                                    compose(ell_map<double>(n), ttf), ctx, ctx.tol));
        laws.push_back(compare_maps("naturality-flip " + tag, compose(ttf, flip_map<double>(m)),
                                    compose(flip_map<double>(n), ttf), ctx, ctx.tol));
    }

    // Additive-bundle laws for (p, 0, +); exact, these are index maps.
    laws.push_back(compare_exact("bundle-zero-section", compose(z, p), id_n, ctx));
    laws.push_back(compare_exact("bundle-plus-proj", compose(pl, p),
                                 select_blocks<double>(3 * n, n, {0}), ctx));
    // unit: (x,v) -> (x,v,0) -> plus = (x,v)
    {
        LinMat<double> emb(3 * n, 2 * n);
        for (int i = 0; i < 2 * n; ++i) emb.at(i, i) = 1.0;
        laws.push_back(compare_exact("bundle-plus-unit",
                                     compose(SmoothMap<double>::linear(emb), pl),
                                     SmoothMap<double>::identity(2 * n), ctx));
    }
    // commutativity: plus(x,w,v) = plus(x,v,w)
    laws.push_back(compare_exact("bundle-plus-comm",
                                 compose(select_blocks<double>(3 * n, n, {0, 2, 1}), pl), pl, ctx));
    // associativity on T_3M
    {
        auto add01 = compose(select_blocks<double>(4 * n, n, {0, 1, 2}), pl);  // (x, u0+u1)
        auto lhs = compose(fiber_pair(add01, select_blocks<double>(4 * n, n, {0, 3}), n), pl);
        auto add12 = compose(select_blocks<double>(4 * n, n, {0, 2, 3}), pl);
        auto rhs = compose(fiber_pair(select_blocks<double>(4 * n, n, {0, 1}), add12, n), pl);
        laws.push_back(compare_exact("bundle-plus-assoc", lhs, rhs, ctx));
    }

    // Flip coherences (exact).
    laws.push_back(compare_exact("flip-involution", compose(c, c), SmoothMap<double>::identity(4 * n), ctx));
    {
        auto tc = tangent_lift(c);      // swaps levels 0,1 on T^3
        auto ct = flip_map<double>(2 * n);  // swaps levels 1,2 on T^3
        laws.push_back(compare_exact("flip-braid", compose(compose(tc, ct), tc),
                                     compose(compose(ct, tc), ct), ctx));
    }

    // Vertical-lift coherences (exact).
    laws.push_back(compare_exact("ell-coherence", compose(l, tangent_lift(l)),
                                 compose(l, ell_map<double>(2 * n)), ctx));
    laws.push_back(compare_exact("ell-flip", compose(l, c), l, ctx));
    laws.push_back(compare_exact("ell-Tp-section", compose(l, tangent_lift(p)), compose(p, z), ctx));
    laws.push_back(compare_exact("ell-p-section", compose(l, proj_p<double>(2 * n)), compose(p, z), ctx));

    // c_2 T(pi_i) = pi_i c.
    for (int i = 0; i < 2; ++i) {
        auto lhs = compose(flip_n_map<double>(2, n), tangent_lift(pi_map<double>(2, n, i)));
        auto rhs = compose(pi_map<double>(2, 2 * n, i), c);
        laws.push_back(compare_exact("flip2-pi" + std::to_string(i), lhs, rhs, ctx));
    }

    // Universality of the vertical lift through the explicit inverse mu:
    // (x,v,0,a) = mu(x,a,v), and mu-images project to zero under T(p).
    {
        auto mu = mu_map<double>(n);
        auto emb = select_blocks<double>(3 * n, n, {0, 1});  // (x,v,a) -> (x,v)
        LinMat<double> ker(4 * n, 3 * n);                    // (x,v,a) -> (x,v,0,a)
        for (int i = 0; i < n; ++i) {
            ker.at(i, i) = 1.0;
            ker.at(n + i, n + i) = 1.0;
            ker.at(3 * n + i, 2 * n + i) = 1.0;
        }
        auto swap_va = select_blocks<double>(3 * n, n, {0, 2, 1});
        laws.push_back(compare_exact("lift-universality-into", SmoothMap<double>::linear(ker),
                                     compose(swap_va, mu), ctx));
        laws.push_back(compare_exact("lift-universality-back",
                                     compose(mu, select_blocks<double>(4 * n, n, {0, 3, 1})),
                                     SmoothMap<double>::identity(3 * n), ctx));
        laws.push_back(compare_exact("lift-universality-kernel", compose(mu, tangent_lift(p)),
                                     compose(compose(select_blocks<double>(3 * n, n, {0}), z),
                                             SmoothMap<double>::identity(2 * n)),
                                     ctx));
        (void)emb;
    }

    return LawReport::combine("tangent-axioms[n=" + std::to_string(n) + "]", std::move(laws));
}

}  // namespace jetgeom
