#pragma once

/**
 * @file geometry.hpp
 * @brief Geometric spaces (R^n, K) and their morphisms.
 *
 * A morphism f : (M, K) -> (N, K') is a smooth map whose square
 * T^2(f) K' = K T(f) commutes; between zero-Christoffel spaces this is
 * exactly local affineness (all second partials vanish), and it is
 * equivalent to preservation of the horizontal connections,
 * T_2(f) H' = H T^2(f).  Tangent spaces carry the lifted connection,
 * and for a flat torsion-free space K itself is a morphism from the
 * double tangent space to the tangent space.
 */

#include "connection.hpp"

namespace jetgeom {

struct GeometricSpace {
    int n = 0;
    Connection conn;
};

inline GeometricSpace make_space(Connection c) {
    GeometricSpace g;
    g.n = c.n;
    g.conn = std::move(c);
    return g;
}

/// The space (R^n, K0) with the canonical connection K0(x,v,w,a) = (x,a).
inline GeometricSpace zero_space(int n) {
    return make_space(connection_from_christoffel(ChristoffelField::zero(n)));
}

/// The morphism square T^2(f) K_dst = K_src T(f) at sampled order-2 jets.
inline LawReport is_geometric_morphism(const SmoothMap<double>& f, const GeometricSpace& src,
                                       const GeometricSpace& dst, CheckContext& ctx) {
    if (f.in_dim() != src.n || f.out_dim() != dst.n)
        throw dim_error("is_geometric_morphism: map dims do not match the spaces");
    auto lhs = compose(tangent_lift(tangent_lift(f)), dst.conn.K);
    auto rhs = compose(src.conn.K, tangent_lift(f));
    return compare_maps("geometric-morphism", lhs, rhs, ctx, ctx.tol);
}

/**
 * Local affineness: every second partial of every component of f
 * vanishes at every sample, read off order-2 jets seeded with basis
 * tangent pairs (levels 0 and 1 carry e_i and e_j; the mixed coefficient
 * is then exactly d^2 f_c / dx_i dx_j).
 */
inline LawReport is_locally_affine(const SmoothMap<double>& f, CheckContext& ctx) {
    const int n = f.in_dim();
    LawReport rep;
    rep.name = "locally-affine";
    for (int s = 0; s < ctx.samples; ++s) {
        std::vector<double> x;
        JetPoint<double> out;
        bool ok = false;
        int ii = 0, jj = 0;
        double worst = 0.0;
        int worst_c = -1, worst_i = -1, worst_j = -1;
        for (int attempt = 0; attempt < CheckContext::kMaxRetries && !ok; ++attempt) {
            x = ctx.point(n);
            try {
                worst = 0.0;
                worst_c = worst_i = worst_j = -1;
                for (ii = 0; ii < n; ++ii)
                    for (jj = ii; jj < n; ++jj) {
                        JetPoint<double> in(2, n);
                        for (int m = 0; m < n; ++m) in.at(0, m) = x[std::size_t(m)];
                        in.at(1, ii) = 1.0;
                        in.at(2, jj) = 1.0;
                        out = f.eval(in);
                        for (int c = 0; c < f.out_dim(); ++c) {
                            double h = std::abs(out.at(3, c));
                            if (h > worst) {
                                worst = h;
                                worst_c = c;
                                worst_i = ii;
                                worst_j = jj;
                            }
                        }
                    }
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
        rep.max_residual = std::max(rep.max_residual, worst);
        if (worst > ctx.tol && rep.status == Status::Pass) {
            rep.status = Status::Fail;
            Witness w;
            w.input = x;
            w.lhs = {worst};
            w.rhs = {0.0};
            w.note = "second partial of component " + std::to_string(worst_c) + " wrt (x" +
                     std::to_string(worst_i) + ", x" + std::to_string(worst_j) +
                     ") does not vanish";
            rep.witness = std::move(w);
        }
    }
    return rep;
}

/// The tangent space (TM, K_T) of a geometric space.
inline GeometricSpace tangent_space(const GeometricSpace& g) {
    return make_space(lift_connection(g.conn));
}

/// The coordinatewise translation x -> x + 1; locally affine, and a
/// morphism of any space whose Christoffel symbols it leaves invariant.
inline SmoothMap<double> translation_map(int n) {
    std::vector<ExprPtr> body;
    for (int i = 0; i < n; ++i)
        body.push_back(Expr::binary(Expr::Kind::Add, Expr::variable(i), Expr::number(1)));
    return SmoothMap<double>::from_components(n, std::move(body));
}

/**
 * For a flat torsion-free space, K is itself a geometric morphism
 * (T^2M, K_{TT}) -> (TM, K_T); additionally a supplied locally affine
 * map must make the naturality square T^2(f) K = K T(f) commute.  The
 * check is gated on the flat-torsion-free equivalence and reports
 * skipped when the gate fails.
 */
inline LawReport check_self_morphism(const GeometricSpace& g, CheckContext& ctx,
                                     const SmoothMap<double>* affine_f = nullptr) {
    FtfReport gate = ftf_equivalence(g.conn, ctx);
    if (!gate.holds())
        return LawReport::skipped("self-morphism",
                                  "connection is not flat torsion-free; theorem does not apply");
    std::vector<LawReport> laws;
    GeometricSpace tg = tangent_space(g);
    GeometricSpace ttg = tangent_space(tg);
    {
        LawReport r = is_geometric_morphism(g.conn.K, ttg, tg, ctx);
        r.name = "self-morphism-square";
        laws.push_back(std::move(r));
    }
    // Naturality is an equation over morphisms of geometric spaces, so the
    // affine witness must itself be a morphism of g.  When none is supplied
    // use the unit translation for translation-invariant Christoffel
    // fields, otherwise fall back to the identity.
    SmoothMap<double> f;
    if (affine_f) {
        f = *affine_f;
    } else {
        auto g0 = christoffel_at(g.conn, std::vector<double>(std::size_t(g.n), 0.25));
        auto g1 = christoffel_at(g.conn, std::vector<double>(std::size_t(g.n), 1.25));
        double shift = 0.0;
        for (std::size_t i = 0; i < g0.size(); ++i)
            shift = std::max(shift, std::abs(g0[i] - g1[i]));
        f = shift <= ctx.tol ? translation_map(g.n) : SmoothMap<double>::identity(g.n);
    }
    {
        LawReport r = is_locally_affine(f, ctx);
        r.name = "naturality-affine-witness";
        laws.push_back(std::move(r));
    }
    {
        auto lhs = compose(tangent_lift(tangent_lift(f)), g.conn.K);
        auto rhs = compose(g.conn.K, tangent_lift(f));
        laws.push_back(compare_maps("naturality-square", lhs, rhs, ctx, ctx.tol));
    }
    return LawReport::combine("self-morphism", std::move(laws));
}

/**
 * Preservation of horizontal connections, T_2(f) H' = H T^2(f), which
 * must agree as a boolean with the K-square on the same spaces.
 */
inline LawReport is_horizontal_preserving(const SmoothMap<double>& f, const GeometricSpace& src,
                                          const GeometricSpace& dst, CheckContext& ctx) {
    if (!src.conn.H.valid() || !dst.conn.H.valid())
        throw dim_error("is_horizontal_preserving: both spaces need a horizontal connection");
    std::vector<LawReport> laws;
    auto lhs = compose(t2_of(f), dst.conn.H);
    auto rhs = compose(src.conn.H, tangent_lift(tangent_lift(f)));
    LawReport hsq = compare_maps("horizontal-square", lhs, rhs, ctx, ctx.tol);
    LawReport ksq = is_geometric_morphism(f, src, dst, ctx);
    LawReport agree;
    agree.name = "square-agreement";
    if (hsq.passed() != ksq.passed()) {
        agree.status = Status::Fail;
        Witness w;
        w.note = std::string("horizontal-square=") + status_name(hsq.status) +
                 " geometric-morphism=" + status_name(ksq.status);
        agree.witness = std::move(w);
    }
    laws.push_back(std::move(hsq));
    laws.push_back(std::move(ksq));
    laws.push_back(std::move(agree));
    return LawReport::combine("horizontal-preserving", std::move(laws));
}

}  // namespace jetgeom
