#pragma once

/**
 * @file connection.hpp
 * @brief Connections on the tangent bundle of R^n in Christoffel form.
 *
 * A vertical connection is a map K : T^2M -> TM; in coordinates
 *   K(x, v, w, a)_l = a_l + sum_{ij} Gamma^l_{ij}(x) v_i w_j,
 * with v the p_{TM}-slot (level 0) and w the T(p)-slot (level 1).  The
 * zero field gives K(x,v,w,a) = (x,a), the canonical connection of the
 * differential object R^n.
 *
 * Alongside the verifier for the vertical-connection axioms this module
 * provides: synthesis of the unique compatible horizontal connection H,
 * the compatibility checks pairing K with H, torsion and flatness
 * criteria with independent classical tensor oracles, the lifted
 * connection K_T = T(c) c T(K) c on TM (with H_T), the three-way
 * flat-torsion-free equivalence, and pullbacks along diffeomorphisms
 * (the generator of nontrivial flat torsion-free examples).
 */

#include <optional>

#include "structural.hpp"

namespace jetgeom {

/// The n^3 coefficient functions Gamma^l_{ij}(x), each an expression in
/// x0..x{n-1}; stored at index (l*n + i)*n + j.
struct ChristoffelField {
    int n = 0;
    std::vector<ExprPtr> entries;

    const ExprPtr& at(int l, int i, int j) const {
        return entries[std::size_t((l * n + i) * n + j)];
    }

    static ChristoffelField zero(int n) {
        ChristoffelField g;
        g.n = n;
        g.entries.assign(std::size_t(n) * n * n, Expr::number(0));
        return g;
    }

    /// Parse n^3 expression strings, ordered l-major then i then j.
    static ChristoffelField parse(int n, const std::vector<std::string>& src) {
        if (int(src.size()) != n * n * n)
            throw dim_error("Christoffel field needs " + std::to_string(n * n * n) +
                            " entries, got " + std::to_string(int(src.size())));
        ChristoffelField g;
        g.n = n;
        g.entries.reserve(src.size());
        for (const std::string& s : src) g.entries.push_back(parse_expr_text(s, n));
        return g;
    }
};

struct Connection {
    int n = 0;
    SmoothMap<double> K;  // T^2M -> TM, i.e. R^{4n} -> R^{2n}
    SmoothMap<double> H;  // T_2M -> T^2M, i.e. R^{3n} -> R^{4n}
    std::optional<ChristoffelField> gamma;
};

/**
 * The unique horizontal connection compatible with K, as a composite
 * valid for any K of the Christoffel shape (a-slot coefficient 1):
 * H(x,u0,u1) has T(p)-slot u0, p_{TM}-slot u1, and a-slot forced to
 * -K_fib(x,u1,u0,0) so that H K = p_2 0 holds.
 */
template <typename Real = double>
SmoothMap<Real> horizontal_from_vertical(int n, const SmoothMap<Real>& K) {
    // J : (x,u0,u1) -> (x,u1,u0,0)
    LinMat<Real> j(4 * n, 3 * n);
    for (int i = 0; i < n; ++i) {
        j.at(i, i) = Real(1);
        j.at(n + i, 2 * n + i) = Real(1);
        j.at(2 * n + i, n + i) = Real(1);
    }
    auto J = SmoothMap<Real>::linear(std::move(j));
    // L : (x,k) -> (0,0,0,-k)
    LinMat<Real> l(4 * n, 2 * n);
    for (int i = 0; i < n; ++i) l.at(3 * n + i, n + i) = Real(-1);
    auto L = SmoothMap<Real>::linear(std::move(l));
    return SmoothMap<Real>::sum(J, compose(J, K, L));
}

/// Build the connection K(x,v,w,a) = (x, a + Gamma(x)(v,w)) with its
/// horizontal companion.
inline Connection connection_from_christoffel(const ChristoffelField& g) {
    const int n = g.n;
    std::vector<ExprPtr> body;
    for (int l = 0; l < n; ++l) body.push_back(Expr::variable(l));
    for (int l = 0; l < n; ++l) {
        ExprPtr acc = Expr::variable(3 * n + l);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                ExprPtr term = Expr::binary(Expr::Kind::Mul, g.at(l, i, j),
                                            Expr::binary(Expr::Kind::Mul, Expr::variable(n + i),
                                                         Expr::variable(2 * n + j)));
                acc = Expr::binary(Expr::Kind::Add, acc, term);
            }
        body.push_back(std::move(acc));
    }
    Connection c;
    c.n = n;
    c.K = SmoothMap<double>::from_components(4 * n, std::move(body));
    c.H = horizontal_from_vertical(n, c.K);
    c.gamma = g;
    return c;
}

namespace detail {

/// The fibre-product comparison <T(p), p_{TM}, K> : T^2M -> R^{4n},
/// sending (x,v,w,a) to (x, w, v, K_fib(x,v,w,a)).
inline SmoothMap<double> fiber_product_forward(const Connection& c) {
    const int n = c.n;
    return fiber_pair(select_blocks<double>(4 * n, n, {0, 2, 1}), c.K, n);
}

/// Its explicit inverse (x,u,v,k) -> (x, v, u, k - K_fib(x,v,u,0)).
inline SmoothMap<double> fiber_product_inverse(const Connection& c) {
    const int n = c.n;
    auto rearrange = select_blocks<double>(4 * n, n, {0, 2, 1, 3});
    // (x,u,v,k) -> (x,v,u,0), feeding K to isolate the quadratic term.
    LinMat<double> j0(4 * n, 4 * n);
    for (int i = 0; i < n; ++i) {
        j0.at(i, i) = 1.0;
        j0.at(n + i, 2 * n + i) = 1.0;
        j0.at(2 * n + i, n + i) = 1.0;
    }
    LinMat<double> negfib(4 * n, 2 * n);
    for (int i = 0; i < n; ++i) negfib.at(3 * n + i, n + i) = -1.0;
    auto corr = compose(SmoothMap<double>::linear(std::move(j0)), c.K,
                        SmoothMap<double>::linear(std::move(negfib)));
    return SmoothMap<double>::sum(rearrange, corr);
}

}  // namespace detail

/**
 * The vertical-connection axiom suite for K:
 *   (a) l K = 1 (retraction of the vertical lift);
 *   (b) K p = p_{TM} p = T(p) p (K lives over the base);
 *   (c) K l = l_{TM} T(K) and K l = T(l) c_{TM} T(K);
 *   (d) additivity of K over both bundle structures on T^2M, including
 *       preservation of both zero sections;
 * plus the fibre-product condition: <T(p), p_{TM}, K> is invertible,
 * checked by composing the explicit inverse both ways.
 */
inline LawReport verify_vertical_connection(const Connection& c, CheckContext& ctx) {
    const int n = c.n;
    std::vector<LawReport> laws;
    auto p = proj_p<double>(n);
    auto z = zero_section<double>(n);
    auto l = ell_map<double>(n);
    auto pTM = proj_p<double>(2 * n);
    auto Tp = tangent_lift(p);
    auto TK = tangent_lift(c.K);
    auto p_then_zero = compose(p, z);  // TM -> TM, (x,v) -> (x,0)

    laws.push_back(compare_maps("vertical-retraction", compose(l, c.K),
                                SmoothMap<double>::identity(2 * n), ctx, ctx.tol));
    laws.push_back(compare_maps("vertical-base-p", compose(c.K, p), compose(pTM, p), ctx, ctx.tol));
    laws.push_back(compare_maps("vertical-base-Tp", compose(c.K, p), compose(Tp, p), ctx, ctx.tol));

    laws.push_back(compare_maps("vertical-ell-coherence", compose(c.K, l),
                                compose(ell_map<double>(2 * n), TK), ctx, ctx.tol));
    laws.push_back(compare_maps("vertical-ell-flip-coherence", compose(c.K, l),
                                compose(tangent_lift(l), flip_map<double>(2 * n), TK), ctx,
                                ctx.tol));

    // (d) zero sections: 0_{TM} K = p 0 and T(0) K = p 0.
    laws.push_back(compare_maps("vertical-zero-p", compose(zero_section<double>(2 * n), c.K),
                                p_then_zero, ctx, ctx.tol));
    laws.push_back(compare_maps("vertical-zero-Tp", compose(tangent_lift(z), c.K), p_then_zero,
                                ctx, ctx.tol));

    // (d) additivity over p_{TM} (shared (x,v); inputs (x,v,w,a,w',a')).
    {
        auto fst = select_blocks<double>(6 * n, n, {0, 1, 2, 3});
        auto snd = select_blocks<double>(6 * n, n, {0, 1, 4, 5});
        LinMat<double> add(4 * n, 6 * n);
        for (int i = 0; i < 2 * n; ++i) add.at(i, i) = 1.0;
        for (int i = 0; i < 2 * n; ++i) {
            add.at(2 * n + i, 2 * n + i) = 1.0;
            add.at(2 * n + i, 4 * n + i) = 1.0;
        }
        auto lhs = compose(SmoothMap<double>::linear(std::move(add)), c.K);
        auto rhs = compose(fiber_pair(compose(fst, c.K), compose(snd, c.K), n), plus_map<double>(n));
        laws.push_back(compare_maps("vertical-additive-p", lhs, rhs, ctx, ctx.tol));
    }
    // (d) additivity over T(p) (shared (x,w); inputs (x,v,w,a,v',a')).
    {
        auto fst = select_blocks<double>(6 * n, n, {0, 1, 2, 3});
        auto snd = select_blocks<double>(6 * n, n, {0, 4, 2, 5});
        LinMat<double> add(4 * n, 6 * n);
        for (int i = 0; i < n; ++i) add.at(i, i) = 1.0;
        for (int i = 0; i < n; ++i) {
            add.at(n + i, n + i) = 1.0;
            add.at(n + i, 4 * n + i) = 1.0;
        }
        for (int i = 0; i < n; ++i) add.at(2 * n + i, 2 * n + i) = 1.0;
        for (int i = 0; i < n; ++i) {
            add.at(3 * n + i, 3 * n + i) = 1.0;
            add.at(3 * n + i, 5 * n + i) = 1.0;
        }
        auto lhs = compose(SmoothMap<double>::linear(std::move(add)), c.K);
        auto rhs = compose(fiber_pair(compose(fst, c.K), compose(snd, c.K), n), plus_map<double>(n));
        laws.push_back(compare_maps("vertical-additive-Tp", lhs, rhs, ctx, ctx.tol));
    }

    // Fibre-product round trips.
    auto fwd = detail::fiber_product_forward(c);
    auto inv = detail::fiber_product_inverse(c);
    laws.push_back(compare_maps("fiber-product-retract", compose(fwd, inv),
                                SmoothMap<double>::identity(4 * n), ctx, ctx.tol));
    laws.push_back(compare_maps("fiber-product-section", compose(inv, fwd),
                                SmoothMap<double>::identity(4 * n), ctx, ctx.tol));

    return LawReport::combine("vertical-connection", std::move(laws));
}

/// Torsion-freeness: c K = K.  For a Christoffel source this is exactly
/// the symmetry Gamma^l_{ij} = Gamma^l_{ji}, cross-checked separately by
/// the torsion tensor oracle in tests.
inline LawReport is_torsion_free(const Connection& c, CheckContext& ctx) {
    auto rep = compare_maps("torsion-free", compose(flip_map<double>(c.n), c.K), c.K, ctx, ctx.tol);
    return rep;
}

/// Flatness: c T(K) K = T(K) K on T^3M, where the flip acts at the
/// object TM (it swaps the two outer tangent directions).
inline LawReport is_flat(const Connection& c, CheckContext& ctx) {
    auto TK = tangent_lift(c.K);
    return compare_maps("flat", compose(flip_map<double>(2 * c.n), TK, c.K), compose(TK, c.K),
                        ctx, ctx.tol);
}

/// The three equations defining H: H T(p) = pi_0, H p_{TM} = pi_1,
/// H K = p_2 0.
inline LawReport verify_horizontal(const Connection& c, CheckContext& ctx) {
    const int n = c.n;
    std::vector<LawReport> laws;
    laws.push_back(compare_maps("horizontal-Tp", compose(c.H, tangent_lift(proj_p<double>(n))),
                                pi_map<double>(2, n, 0), ctx, ctx.tol));
    laws.push_back(compare_maps("horizontal-p", compose(c.H, proj_p<double>(2 * n)),
                                pi_map<double>(2, n, 1), ctx, ctx.tol));
    laws.push_back(compare_maps("horizontal-K", compose(c.H, c.K),
                                compose(select_blocks<double>(3 * n, n, {0}), zero_section<double>(n)),
                                ctx, ctx.tol));
    return LawReport::combine("horizontal-connection", std::move(laws));
}

/**
 * Compatibility of the (K, H) pair: H K = p_2 0, and the decomposition
 * <K, p_{TM}> mu + <T(p), p_{TM}> H = 1 on T^2M, where the sum is the
 * fiberwise addition over p_{TM}.
 */
inline LawReport verify_compatibility(const Connection& c, CheckContext& ctx) {
    const int n = c.n;
    std::vector<LawReport> laws;
    laws.push_back(compare_maps("compatibility-HK", compose(c.H, c.K),
                                compose(select_blocks<double>(3 * n, n, {0}), zero_section<double>(n)),
                                ctx, ctx.tol));
    // Vertical part: <K, p_{TM}> mu = (x, v, 0, K_fib).
    auto vert = compose(fiber_pair(c.K, proj_p<double>(2 * n), n), mu_map<double>(n));
    // Horizontal part: U H with U = <T(p), p_{TM}> = (x,w,v).
    auto horiz = compose(select_blocks<double>(4 * n, n, {0, 2, 1}), c.H);
    // p_{TM}-fiberwise addition of the two parts (they share (x,v)).
    LinMat<double> add(4 * n, 8 * n);
    for (int i = 0; i < 2 * n; ++i) add.at(i, i) = 1.0;
    for (int i = 0; i < 2 * n; ++i) {
        add.at(2 * n + i, 2 * n + i) = 1.0;
        add.at(2 * n + i, 6 * n + i) = 1.0;
    }
    auto recomposed = compose(pair_map(vert, horiz), SmoothMap<double>::linear(std::move(add)));
    laws.push_back(compare_maps("compatibility-decomposition", recomposed,
                                SmoothMap<double>::identity(4 * n), ctx, ctx.tol));
    return LawReport::combine("compatibility", std::move(laws));
}

/// The lifted connection on TM: K_T = T(c) c T(K) c, and when H is
/// present H_T = (c x c) T(H) c T(c).  The result lives at dimension 2n.
inline Connection lift_connection(const Connection& c) {
    const int n = c.n;
    Connection out;
    out.n = 2 * n;
    out.K = compose(tangent_lift(flip_map<double>(n)), flip_map<double>(2 * n),
                    tangent_lift(c.K), flip_map<double>(n));
    if (c.H.valid())
        out.H = compose(flip_pair_map<double>(n), tangent_lift(c.H), flip_map<double>(2 * n),
                        tangent_lift(flip_map<double>(n)));
    return out;
}

/// The two structural identities tying K_T back to K: K_T T(p) = T^2(p) K
/// and T(l) K_T = K l.
inline LawReport verify_lifted(const Connection& c, const Connection& lifted, CheckContext& ctx) {
    const int n = c.n;
    std::vector<LawReport> laws;
    auto Tp = tangent_lift(proj_p<double>(n));
    laws.push_back(compare_maps("lifted-base", compose(lifted.K, Tp),
                                compose(tangent_lift(Tp), c.K), ctx, ctx.tol));
    laws.push_back(compare_maps("lifted-ell", compose(tangent_lift(ell_map<double>(n)), lifted.K),
                                compose(c.K, ell_map<double>(n)), ctx, ctx.tol));
    return LawReport::combine("lifted-connection", std::move(laws));
}

struct FtfReport {
    bool flat = false;
    bool torsion_free = false;
    bool cond_lift = false;         // K_T K = T(K) K
    bool cond_double_lift = false;  // K_{TT} T(K) = T^2(K) K_T
    LawReport report;

    bool holds() const { return flat && torsion_free; }
    bool agree() const {
        return (flat && torsion_free) == cond_lift && cond_lift == cond_double_lift;
    }
};

/**
 * The flat-torsion-free equivalence: evaluates independently
 *   (i)   K is flat and torsion-free,
 *   (ii)  K_T K = T(K) K on T^3M,
 *   (iii) K_{TT} T(K) = T^2(K) K_T on T^4M,
 * and reports whether the three booleans agree (they must, for every
 * connection).
 */
inline FtfReport ftf_equivalence(const Connection& c, CheckContext& ctx) {
    FtfReport out;
    std::vector<LawReport> laws;

    LawReport flat = is_flat(c, ctx);
    LawReport tf = is_torsion_free(c, ctx);
    out.flat = flat.passed();
    out.torsion_free = tf.passed();

    Connection lifted = lift_connection(c);
    auto TK = tangent_lift(c.K);
    LawReport lift_cond =
        compare_maps("condition-lift", compose(lifted.K, c.K), compose(TK, c.K), ctx, ctx.tol);
    out.cond_lift = lift_cond.passed();

    Connection lifted2 = lift_connection(lifted);
    LawReport dbl = compare_maps("condition-double-lift", compose(lifted2.K, TK),
                                 compose(tangent_lift(TK), lifted.K), ctx, ctx.tol);
    out.cond_double_lift = dbl.passed();

    LawReport agree;
    agree.name = "conditions-agree";
    if (!out.agree()) {
        agree.status = Status::Fail;
        Witness w;
        w.note = std::string("flat=") + (out.flat ? "1" : "0") +
                 " torsion_free=" + (out.torsion_free ? "1" : "0") +
                 " lift=" + (out.cond_lift ? "1" : "0") +
                 " double-lift=" + (out.cond_double_lift ? "1" : "0");
        agree.witness = std::move(w);
    }

    laws.push_back(std::move(flat));
    laws.push_back(std::move(tf));
    laws.push_back(std::move(lift_cond));
    laws.push_back(std::move(dbl));
    laws.push_back(std::move(agree));

    // The combined status reflects only the theorem (agreement); a
    // connection with torsion is not an error.
    out.report = LawReport::combine("ftf-equivalence", std::move(laws));
    if (out.agree()) {
        out.report.status = out.report.status == Status::Inconclusive ? Status::Inconclusive
                                                                      : Status::Pass;
        out.report.witness.reset();
    }
    return out;
}

/**
 * Transport a connection along a diffeomorphism pair (phi with two-sided
 * inverse psi): K_src = T^2(phi) K_target T(psi), which makes phi a
 * connection-preserving map from the result to the target by
 * construction.  The inverse property is checked at samples.
 */
inline Connection pullback_connection(const Connection& target, const SmoothMap<double>& phi,
                                      const SmoothMap<double>& psi, CheckContext& ctx) {
    const int n = target.n;
    if (phi.in_dim() != n || phi.out_dim() != n || psi.in_dim() != n || psi.out_dim() != n)
        throw dim_error("pullback_connection: phi/psi must be endomaps of R^n");
    auto id = SmoothMap<double>::identity(n);
    if (!compare_maps("inverse-right", compose(phi, psi), id, ctx, ctx.tol).passed() ||
        !compare_maps("inverse-left", compose(psi, phi), id, ctx, ctx.tol).passed())
        throw eval_error("pullback_connection: psi is not a two-sided inverse of phi on samples");
    Connection out;
    out.n = n;
    out.K = compose(tangent_lift(tangent_lift(phi)), target.K, tangent_lift(psi));
    out.H = horizontal_from_vertical(n, out.K);
    return out;
}

// ---------------------------------------------------------------------
// Classical tensor oracles.  These read the Christoffel symbols back out
// of K itself (Gamma^l_{ij}(x) = K_fib(x, e_i, e_j, 0)_l, partials via
// order-1 jets), so they apply equally to parsed and pulled-back
// connections and are independent of the categorical criteria above.

/// All Gamma^l_{ij}(x), indexed (l*n + i)*n + j.
inline std::vector<double> christoffel_at(const Connection& c, const std::vector<double>& x) {
    const int n = c.n;
    std::vector<double> out(std::size_t(n) * n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            JetPoint<double> in(0, 4 * n);
            for (int m = 0; m < n; ++m) in.at(0, m) = x[std::size_t(m)];
            in.at(0, n + i) = 1.0;
            in.at(0, 2 * n + j) = 1.0;
            JetPoint<double> r = c.K.eval(in);
            for (int l = 0; l < n; ++l) out[std::size_t((l * n + i) * n + j)] = r.at(0, n + l);
        }
    return out;
}

/// All partials d_m Gamma^l_{ij}(x), indexed ((m*n + l)*n + i)*n + j.
inline std::vector<double> christoffel_partials_at(const Connection& c,
                                                   const std::vector<double>& x) {
    const int n = c.n;
    std::vector<double> out(std::size_t(n) * n * n * n);
    for (int m = 0; m < n; ++m)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) {
                JetPoint<double> in(1, 4 * n);
                for (int q = 0; q < n; ++q) in.at(0, q) = x[std::size_t(q)];
                in.at(0, n + i) = 1.0;
                in.at(0, 2 * n + j) = 1.0;
                in.at(1, m) = 1.0;  // differentiate in the x_m direction
                JetPoint<double> r = c.K.eval(in);
                for (int l = 0; l < n; ++l)
                    out[std::size_t(((m * n + l) * n + i) * n + j)] = r.at(1, n + l);
            }
    return out;
}

/// T^l_{ij}(x) = Gamma^l_{ij} - Gamma^l_{ji}, indexed (l*n + i)*n + j.
inline std::vector<double> torsion_tensor(const Connection& c, const std::vector<double>& x) {
    const int n = c.n;
    auto g = christoffel_at(c, x);
    std::vector<double> t(g.size());
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                t[std::size_t((l * n + i) * n + j)] = g[std::size_t((l * n + i) * n + j)] -
                                                      g[std::size_t((l * n + j) * n + i)];
    return t;
}

/// R(e_i, e_j)e_k, the commutator of covariant derivatives.  Our symbols
/// carry the differentiated field in the first lower slot and the
/// direction in the second (nabla_X Y = dY.X + Gamma(Y, X)), so
///   R^l_{ijk}(x) = d_i Gamma^l_{kj} - d_j Gamma^l_{ki}
///               + sum_m (Gamma^l_{mi} Gamma^m_{kj} - Gamma^l_{mj} Gamma^m_{ki}),
/// indexed ((l*n + i)*n + j)*n + k.  This vanishes exactly when the
/// categorical flatness equation holds, torsion or not.
inline std::vector<double> curvature_tensor(const Connection& c, const std::vector<double>& x) {
    const int n = c.n;
    auto g = christoffel_at(c, x);
    auto dg = christoffel_partials_at(c, x);
    auto G = [&](int l, int i, int j) { return g[std::size_t((l * n + i) * n + j)]; };
    auto dG = [&](int m, int l, int i, int j) {
        return dg[std::size_t(((m * n + l) * n + i) * n + j)];
    };
    std::vector<double> r(std::size_t(n) * n * n * n);
    for (int l = 0; l < n; ++l)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j)
                for (int k = 0; k < n; ++k) {
                    double acc = dG(i, l, k, j) - dG(j, l, k, i);
                    for (int m = 0; m < n; ++m)
                        acc += G(l, m, i) * G(m, k, j) - G(l, m, j) * G(m, k, i);
                    r[std::size_t(((l * n + i) * n + j) * n + k)] = acc;
                }
    return r;
}

/// Convenience overloads running the oracles straight off a Christoffel
/// field (they build the corresponding K first).
inline std::vector<double> torsion_tensor(const ChristoffelField& g, const std::vector<double>& x) {
    return torsion_tensor(connection_from_christoffel(g), x);
}
inline std::vector<double> curvature_tensor(const ChristoffelField& g,
                                            const std::vector<double>& x) {
    return curvature_tensor(connection_from_christoffel(g), x);
}

}  // namespace jetgeom
