#pragma once

/**
 * @file smooth_map.hpp
 * @brief Smooth maps R^p -> R^q evaluable over jets of any supported order.
 *
 * A SmoothMap is a small immutable DAG: parsed expression bodies, constant
 * linear maps, tangent lifts, composites, pairings, and pointwise sums.
 * Evaluating a map at an order-k jet computes the order-k iterated tangent
 * of the map; the tangent lift is evaluator-level (one extra epsilon
 * level), never a source-to-source transform, so T(f) is exact by
 * construction.
 */

#include <memory>
#include <string>
#include <vector>

#include "expr.hpp"
#include "jet.hpp"

namespace jetgeom {

/// Dense matrix with entries in the scalar type; used for the structural
/// maps (all of which are constant-coefficient linear maps).
template <typename Real>
struct LinMat {
    int rows = 0, cols = 0;
    std::vector<Real> a;  // row-major

    LinMat() = default;
    LinMat(int r, int c) : rows(r), cols(c), a(std::size_t(r) * c, Real(0)) {}

    Real& at(int r, int c) { return a[std::size_t(r) * cols + c]; }
    const Real& at(int r, int c) const { return a[std::size_t(r) * cols + c]; }

    static LinMat identity(int n) {
        LinMat m(n, n);
        for (int i = 0; i < n; ++i) m.at(i, i) = Real(1);
        return m;
    }
};

template <typename Real>
class SmoothMap {
    struct Node;
    using NodePtr = std::shared_ptr<const Node>;

    struct Node {
        enum class Kind { Exprs, Linear, Lift, Compose, Pair, Sum } kind;
        int in_dim = 0, out_dim = 0;
        std::vector<ExprPtr> body;  // Exprs
        LinMat<Real> mat;           // Linear
        NodePtr a, b;               // children
    };

    NodePtr node_;
    explicit SmoothMap(NodePtr n) : node_(std::move(n)) {}

  public:
    SmoothMap() = default;

    int in_dim() const { return node_->in_dim; }
    int out_dim() const { return node_->out_dim; }
    bool valid() const { return node_ != nullptr; }

    /// Parsed expression map.
    static SmoothMap from_components(int in_dim, std::vector<ExprPtr> body) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Exprs;
        n->in_dim = in_dim;
        n->out_dim = int(body.size());
        n->body = std::move(body);
        return SmoothMap(std::move(n));
    }

    static SmoothMap linear(LinMat<Real> m) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Linear;
        n->in_dim = m.cols;
        n->out_dim = m.rows;
        n->mat = std::move(m);
        return SmoothMap(std::move(n));
    }

    static SmoothMap identity(int dim) { return linear(LinMat<Real>::identity(dim)); }

    /// The tangent lift T(f): argument pairs (base, tangent) occupy jet
    /// levels (existing, new highest); dims double on both sides.
    static SmoothMap lift(const SmoothMap& f) {
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Lift;
        n->in_dim = 2 * f.in_dim();
        n->out_dim = 2 * f.out_dim();
        n->a = f.node_;
        return SmoothMap(std::move(n));
    }

    /// Diagrammatic composite: f then g.
    static SmoothMap compose(const SmoothMap& f, const SmoothMap& g) {
        if (f.out_dim() != g.in_dim())
            throw dim_error("compose: inner output dim " + std::to_string(f.out_dim()) +
                            " != outer input dim " + std::to_string(g.in_dim()));
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Compose;
        n->in_dim = f.in_dim();
        n->out_dim = g.out_dim();
        n->a = f.node_;
        n->b = g.node_;
        return SmoothMap(std::move(n));
    }

    /// Pairing <f,g> on a shared input; outputs are concatenated.
    static SmoothMap pair(const SmoothMap& f, const SmoothMap& g) {
        if (f.in_dim() != g.in_dim()) throw dim_error("pair: input dims differ");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Pair;
        n->in_dim = f.in_dim();
        n->out_dim = f.out_dim() + g.out_dim();
        n->a = f.node_;
        n->b = g.node_;
        return SmoothMap(std::move(n));
    }

    /// Pointwise sum of two maps with identical signatures.
    static SmoothMap sum(const SmoothMap& f, const SmoothMap& g) {
        if (f.in_dim() != g.in_dim() || f.out_dim() != g.out_dim())
            throw dim_error("sum: signatures differ");
        auto n = std::make_shared<Node>();
        n->kind = Node::Kind::Sum;
        n->in_dim = f.in_dim();
        n->out_dim = f.out_dim();
        n->a = f.node_;
        n->b = g.node_;
        return SmoothMap(std::move(n));
    }

    JetPoint<Real> eval(const JetPoint<Real>& x) const { return eval_node(*node_, x); }

    /// Order-0 evaluation on a plain point.
    std::vector<Real> operator()(const std::vector<Real>& x) const {
        return eval(JetPoint<Real>::point(x)).data;
    }

    bool is_expr_map() const { return node_->kind == Node::Kind::Exprs; }

    /// Canonical printed form (expression maps only).
    std::string to_source() const {
        if (!is_expr_map()) throw dim_error("only parsed maps have a printable source form");
        std::string s;
        for (std::size_t i = 0; i < node_->body.size(); ++i) {
            if (i) s += "; ";
            s += to_string(*node_->body[i]);
        }
        return s;
    }

    std::string describe() const {
        switch (node_->kind) {
        case Node::Kind::Exprs: return "expr[" + to_source() + "]";
        case Node::Kind::Linear: return "linear(" + std::to_string(out_dim()) + "x" + std::to_string(in_dim()) + ")";
        case Node::Kind::Lift: return "T(" + SmoothMap(node_->a).describe() + ")";
        case Node::Kind::Compose:
            return SmoothMap(node_->a).describe() + " ; " + SmoothMap(node_->b).describe();
        case Node::Kind::Pair:
            return "<" + SmoothMap(node_->a).describe() + ", " + SmoothMap(node_->b).describe() + ">";
        case Node::Kind::Sum:
            return "(" + SmoothMap(node_->a).describe() + " + " + SmoothMap(node_->b).describe() + ")";
        }
        return "?";
    }

  private:
    static JetPoint<Real> eval_node(const Node& n, const JetPoint<Real>& x) {
        if (x.dim != n.in_dim)
            throw dim_error("map expects input dim " + std::to_string(n.in_dim) + ", got " +
                            std::to_string(x.dim));
        switch (n.kind) {
        case Node::Kind::Exprs: {
            std::vector<ScalarJet<Real>> vars;
            vars.reserve(std::size_t(n.in_dim));
            for (int i = 0; i < n.in_dim; ++i) vars.push_back(x.coordinate(i));
            JetPoint<Real> out(x.order, n.out_dim);
            for (int j = 0; j < n.out_dim; ++j) {
                ScalarJet<Real> v = eval_expr(*n.body[std::size_t(j)], vars, x.order);
                for (LevelSet s = 0; s < out.components(); ++s) out.at(s, j) = v.c[s];
            }
            return out;
        }
        case Node::Kind::Linear: {
            JetPoint<Real> out(x.order, n.out_dim);
            for (LevelSet s = 0; s < x.components(); ++s)
                for (int r = 0; r < n.mat.rows; ++r) {
                    Real acc(0);
                    for (int c = 0; c < n.mat.cols; ++c) {
                        const Real& m = n.mat.at(r, c);
                        if (m != Real(0)) acc += m * x.at(s, c);
                    }
                    out.at(s, r) = acc;
                }
            return out;
        }
        case Node::Kind::Lift: return unpack_lift_output(eval_node(*n.a, pack_lift_input(x)));
        case Node::Kind::Compose: return eval_node(*n.b, eval_node(*n.a, x));
        case Node::Kind::Pair: {
            JetPoint<Real> fa = eval_node(*n.a, x);
            JetPoint<Real> fb = eval_node(*n.b, x);
            JetPoint<Real> out(x.order, n.out_dim);
            const int da = n.a->out_dim;
            for (LevelSet s = 0; s < out.components(); ++s) {
                for (int i = 0; i < da; ++i) out.at(s, i) = fa.at(s, i);
                for (int i = 0; i < n.b->out_dim; ++i) out.at(s, da + i) = fb.at(s, i);
            }
            return out;
        }
        case Node::Kind::Sum: return jet_point_add(eval_node(*n.a, x), eval_node(*n.b, x));
        }
        throw eval_error("corrupt map node");
    }
};

/// Parse a smooth map from source text with declared arities.
template <typename Real = double>
SmoothMap<Real> parse_map(std::string_view source, int in_dim, int out_dim) {
    return SmoothMap<Real>::from_components(in_dim, parse_components(source, in_dim, out_dim));
}

template <typename Real>
SmoothMap<Real> tangent_lift(const SmoothMap<Real>& f) {
    return SmoothMap<Real>::lift(f);
}

template <typename Real>
SmoothMap<Real> compose(const SmoothMap<Real>& f, const SmoothMap<Real>& g) {
    return SmoothMap<Real>::compose(f, g);
}

template <typename Real, typename... Rest>
SmoothMap<Real> compose(const SmoothMap<Real>& f, const SmoothMap<Real>& g, const Rest&... rest) {
    return compose(SmoothMap<Real>::compose(f, g), rest...);
}

template <typename Real>
SmoothMap<Real> pair_map(const SmoothMap<Real>& f, const SmoothMap<Real>& g) {
    return SmoothMap<Real>::pair(f, g);
}

/// Linear map selecting the listed input coordinates, in order.
template <typename Real>
SmoothMap<Real> select_map(int in_dim, const std::vector<int>& idx) {
    LinMat<Real> m(int(idx.size()), in_dim);
    for (int r = 0; r < int(idx.size()); ++r) m.at(r, idx[std::size_t(r)]) = Real(1);
    return SmoothMap<Real>::linear(std::move(m));
}

/// Linear map selecting contiguous blocks [start, start+len) of size `unit`.
template <typename Real>
SmoothMap<Real> select_blocks(int in_dim, int unit, const std::vector<int>& blocks) {
    std::vector<int> idx;
    for (int b : blocks)
        for (int i = 0; i < unit; ++i) idx.push_back(b * unit + i);
    return select_map<Real>(in_dim, idx);
}

}  // namespace jetgeom
