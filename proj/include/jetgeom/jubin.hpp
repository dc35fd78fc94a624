#pragma once

/**
 * @file jubin.hpp
 * @brief The parametric monad/comonad/bimonad family on the tangent
 * functor, verified in exact rational arithmetic.
 *
 * For parameters a, b the structure maps are, in flat coordinates:
 *   mu^a     : (x,v,w,d) -> (x, v+w+ad)        monad multiplication
 *   eta      : x -> (x,0)                      monad unit (zero section)
 *   delta^b  : (x,v) -> (x, v, v, bv)          comonad comultiplication
 *   eps      : (x,v) -> x                      comonad counit (projection)
 *   lambda   : (x,v,w,d) -> (x, w, v+w+ad, bw-d)   mixed distributive law
 * All are linear with rational coefficients, so the laws are decided
 * exactly by evaluation on the affine basis {0, e_0, ..., e_{dim-1}}.
 *
 * The mixed distributive law lambda : PG => GP (P the monad, G the
 * comonad, both the tangent functor) is checked against the four
 * standard compatibility diagrams:
 *   (unit)     eta_{GM} ; lambda            = G(eta)
 *   (counit)   lambda ; eps_{PM}            = P(eps)
 *   (mult)     mu_{GM} ; lambda             = P(lambda) ; lambda_{PM} ; G(mu)
 *   (comult)   lambda ; delta_{PM}          = P(delta) ; lambda_{GM} ; G(lambda)
 * Whiskering conventions: G(f) = P(f) = tangent_lift(f) (new top level);
 * a component at TM is the same structural map built at doubled
 * dimension.
 */

#include <boost/rational.hpp>

#include "structural.hpp"

namespace jetgeom {

using Rat = boost::rational<long long>;

/// Parse "p/q", an integer, or a decimal string into an exact rational.
inline Rat parse_rational(const std::string& s) {
    std::size_t slash = s.find('/');
    auto parse_int_part = [](const std::string& t) -> Rat {
        std::size_t pos = 0;
        bool neg = false;
        if (pos < t.size() && (t[pos] == '-' || t[pos] == '+')) neg = t[pos++] == '-';
        long long num = 0, den = 1;
        bool any = false, frac = false;
        for (; pos < t.size(); ++pos) {
            if (t[pos] == '.') {
                if (frac) throw eval_error("malformed rational '" + t + "'");
                frac = true;
            } else if (std::isdigit(static_cast<unsigned char>(t[pos]))) {
                num = num * 10 + (t[pos] - '0');
                if (frac) den *= 10;
                any = true;
            } else {
                throw eval_error("malformed rational '" + t + "'");
            }
        }
        if (!any) throw eval_error("malformed rational '" + t + "'");
        return Rat(neg ? -num : num, den);
    };
    if (slash == std::string::npos) return parse_int_part(s);
    Rat num = parse_int_part(s.substr(0, slash));
    Rat den = parse_int_part(s.substr(slash + 1));
    if (den == Rat(0)) throw eval_error("zero denominator in rational '" + s + "'");
    return num / den;
}

inline std::string rational_to_string(const Rat& r) {
    std::string s = std::to_string(r.numerator());
    if (r.denominator() != 1) s += "/" + std::to_string(r.denominator());
    return s;
}

/// mu^a at an object of dimension m: (x,v,w,d) -> (x, v+w+ad).
inline SmoothMap<Rat> jubin_mu(const Rat& a, int m) {
    LinMat<Rat> mat(2 * m, 4 * m);
    for (int i = 0; i < m; ++i) {
        mat.at(i, i) = Rat(1);
        mat.at(m + i, m + i) = Rat(1);
        mat.at(m + i, 2 * m + i) = Rat(1);
        mat.at(m + i, 3 * m + i) = a;
    }
    return SmoothMap<Rat>::linear(std::move(mat));
}

/// eta at dimension m: the zero section.
inline SmoothMap<Rat> jubin_eta(int m) { return zero_section<Rat>(m); }

/// delta^b at dimension m: (x,v) -> (x, v, v, bv).
inline SmoothMap<Rat> jubin_delta(const Rat& b, int m) {
    LinMat<Rat> mat(4 * m, 2 * m);
    for (int i = 0; i < m; ++i) {
        mat.at(i, i) = Rat(1);
        mat.at(m + i, m + i) = Rat(1);
        mat.at(2 * m + i, m + i) = Rat(1);
        mat.at(3 * m + i, m + i) = b;
    }
    return SmoothMap<Rat>::linear(std::move(mat));
}

/// eps at dimension m: the bundle projection.
inline SmoothMap<Rat> jubin_eps(int m) { return proj_p<Rat>(m); }

/// lambda^{a,b} at dimension m: (x,v,w,d) -> (x, w, v+w+ad, bw-d).
inline SmoothMap<Rat> jubin_lambda(const Rat& a, const Rat& b, int m) {
    LinMat<Rat> mat(4 * m, 4 * m);
    for (int i = 0; i < m; ++i) {
        mat.at(i, i) = Rat(1);
        mat.at(m + i, 2 * m + i) = Rat(1);
        mat.at(2 * m + i, m + i) = Rat(1);
        mat.at(2 * m + i, 2 * m + i) = Rat(1);
        mat.at(2 * m + i, 3 * m + i) = a;
        mat.at(3 * m + i, 2 * m + i) = b;
        mat.at(3 * m + i, 3 * m + i) = Rat(-1);
    }
    return SmoothMap<Rat>::linear(std::move(mat));
}

struct BimonadInstance {
    Rat a, b;
    int n = 0;
    SmoothMap<Rat> mu;      // T^2 -> T
    SmoothMap<Rat> eta;     // Id  -> T
    SmoothMap<Rat> delta;   // T   -> T^2
    SmoothMap<Rat> eps;     // T   -> Id
    SmoothMap<Rat> lambda;  // T^2 -> T^2
};

inline BimonadInstance build_instance(const Rat& a, const Rat& b, int n) {
    BimonadInstance inst;
    inst.a = a;
    inst.b = b;
    inst.n = n;
    inst.mu = jubin_mu(a, n);
    inst.eta = jubin_eta(n);
    inst.delta = jubin_delta(b, n);
    inst.eps = jubin_eps(n);
    inst.lambda = jubin_lambda(a, b, n);
    return inst;
}

/**
 * Exact equality of two affine maps, decided on the affine basis (the
 * origin and every unit vector).  max_residual reports the largest
 * absolute rational discrepancy, converted to double.
 */
inline LawReport exact_compare(std::string name, const SmoothMap<Rat>& lhs,
                               const SmoothMap<Rat>& rhs) {
    if (lhs.in_dim() != rhs.in_dim() || lhs.out_dim() != rhs.out_dim())
        throw dim_error("exact_compare '" + name + "': signatures differ");
    LawReport rep;
    rep.name = std::move(name);
    const int d = lhs.in_dim();
    for (int k = -1; k < d; ++k) {
        JetPoint<Rat> x(0, d);
        if (k >= 0) x.at(0, k) = Rat(1);
        JetPoint<Rat> l = lhs.eval(x);
        JetPoint<Rat> r = rhs.eval(x);
        ++rep.samples;
        Rat worst(0);
        for (std::size_t i = 0; i < l.data.size(); ++i) {
            Rat diff = l.data[i] - r.data[i];
            if (diff < Rat(0)) diff = -diff;
            if (diff > worst) worst = diff;
        }
        double res = boost::rational_cast<double>(worst);
        rep.max_residual = std::max(rep.max_residual, res);
        if (worst != Rat(0) && rep.status == Status::Pass) {
            rep.status = Status::Fail;
            Witness w;
            for (const Rat& v : x.data) w.input.push_back(boost::rational_cast<double>(v));
            for (const Rat& v : l.data) w.lhs.push_back(boost::rational_cast<double>(v));
            for (const Rat& v : r.data) w.rhs.push_back(boost::rational_cast<double>(v));
            w.note = k < 0 ? "at the origin" : "at basis vector e" + std::to_string(k);
            rep.witness = std::move(w);
        }
    }
    return rep;
}

/// Unit laws and associativity for (T, eta, mu^a).
inline LawReport verify_monad_laws(const BimonadInstance& inst) {
    const int n = inst.n;
    std::vector<LawReport> laws;
    auto id = SmoothMap<Rat>::identity(2 * n);
    laws.push_back(exact_compare("monad-unit-left", compose(jubin_eta(2 * n), inst.mu), id));
    laws.push_back(exact_compare("monad-unit-right", compose(tangent_lift(inst.eta), inst.mu), id));
    laws.push_back(exact_compare("monad-assoc", compose(tangent_lift(inst.mu), inst.mu),
                                 compose(jubin_mu(inst.a, 2 * n), inst.mu)));
    return LawReport::combine("monad-laws", std::move(laws));
}

/// Counit laws and coassociativity for (T, eps, delta^b).
inline LawReport verify_comonad_laws(const BimonadInstance& inst) {
    const int n = inst.n;
    std::vector<LawReport> laws;
    auto id = SmoothMap<Rat>::identity(2 * n);
    laws.push_back(exact_compare("comonad-counit-left", compose(inst.delta, jubin_eps(2 * n)), id));
    laws.push_back(
        exact_compare("comonad-counit-right", compose(inst.delta, tangent_lift(inst.eps)), id));
    laws.push_back(exact_compare("comonad-coassoc", compose(inst.delta, tangent_lift(inst.delta)),
                                 compose(inst.delta, jubin_delta(inst.b, 2 * n))));
    return LawReport::combine("comonad-laws", std::move(laws));
}

/// The four mixed-distributive-law diagrams for lambda (see file docs).
inline LawReport verify_mixed_law(const BimonadInstance& inst) {
    const int n = inst.n;
    std::vector<LawReport> laws;
    laws.push_back(exact_compare("mixed-unit-square", compose(jubin_eta(2 * n), inst.lambda),
                                 tangent_lift(inst.eta)));
    laws.push_back(exact_compare("mixed-counit-square", compose(inst.lambda, jubin_eps(2 * n)),
                                 tangent_lift(inst.eps)));
    auto lambda_tm = jubin_lambda(inst.a, inst.b, 2 * n);
    laws.push_back(exact_compare(
        "mixed-multiplication-pentagon", compose(jubin_mu(inst.a, 2 * n), inst.lambda),
        compose(tangent_lift(inst.lambda), lambda_tm, tangent_lift(inst.mu))));
    laws.push_back(exact_compare(
        "mixed-comultiplication-pentagon", compose(inst.lambda, jubin_delta(inst.b, 2 * n)),
        compose(tangent_lift(inst.delta), lambda_tm, tangent_lift(inst.lambda))));
    return LawReport::combine("mixed-law", std::move(laws));
}

/// Superposition check: every structure map f satisfies
/// f(p+q) + f(0) = f(p) + f(q) at fixed rational points, confirming the
/// affine-basis evaluation strategy is exhaustive.
inline LawReport verify_affine_structure(const BimonadInstance& inst) {
    std::vector<LawReport> laws;
    auto check = [&](const char* name, const SmoothMap<Rat>& f) {
        const int d = f.in_dim();
        JetPoint<Rat> p(0, d), q(0, d), pq(0, d), zero(0, d);
        for (int i = 0; i < d; ++i) {
            p.at(0, i) = Rat(i + 1, 2);
            q.at(0, i) = Rat(2 * i - 3, 3);
            pq.at(0, i) = p.at(0, i) + q.at(0, i);
        }
        JetPoint<Rat> lhs = jet_point_add(f.eval(pq), f.eval(zero));
        JetPoint<Rat> rhs = jet_point_add(f.eval(p), f.eval(q));
        LawReport rep;
        rep.name = name;
        rep.samples = 1;
        for (std::size_t i = 0; i < lhs.data.size(); ++i) {
            Rat diff = lhs.data[i] - rhs.data[i];
            if (diff != Rat(0)) {
                rep.status = Status::Fail;
                rep.max_residual =
                    std::max(rep.max_residual, std::abs(boost::rational_cast<double>(diff)));
            }
        }
        laws.push_back(std::move(rep));
    };
    check("affine-mu", inst.mu);
    check("affine-eta", inst.eta);
    check("affine-delta", inst.delta);
    check("affine-eps", inst.eps);
    check("affine-lambda", inst.lambda);
    return LawReport::combine("affine-structure", std::move(laws));
}

}  // namespace jetgeom
