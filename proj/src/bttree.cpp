#include "padictree/bttree.hpp"

#include <algorithm>

#include "padictree/scalar_io.hpp"

namespace padictree {

std::string Vertex::key() const {
    return std::to_string(level) + "|" + center.a().to_literal() + "|" + center.b().to_literal();
}

std::string Vertex::literal() const {
    return "(" + std::to_string(level) + "; " + ext_short_string(center) + ")";
}

Mat2 vertex_lift(const Vertex& v) {
    const ExtContext* ctx = v.center.ctx();
    return Mat2{Ext::p_power(ctx, v.level), v.center, Ext::zero(ctx), Ext::one(ctx)};
}

Vertex vertex_of_matrix(const Mat2& raw, int64_t digit_cap) {
    Ext dt = raw.det();
    if (dt.is_zero()) throw SingularMatrix("lattice basis is singular at working precision");
    int64_t vdet = dt.valuation();

    bool pivot_d;
    if (raw.d.is_zero()) {
        if (raw.c.is_zero())
            throw SingularMatrix("bottom row vanishes at working precision");
        pivot_d = false;
    } else if (raw.c.is_zero()) {
        pivot_d = true;
    } else {
        pivot_d = raw.d.valuation() <= raw.c.valuation();
    }
    const Ext& pivot = pivot_d ? raw.d : raw.c;
    const Ext& top = pivot_d ? raw.b : raw.a;
    int64_t m = vdet - 2 * pivot.valuation();
    Ext center_raw = digit_cap >= 0
                         ? top.mul(pivot.inverse(), digit_cap)
                         : top / pivot;
    return Vertex{m, center_raw.mod_power(m)};
}

Vertex vertex_of_matrix(const ProjMatrix& g) { return vertex_of_matrix(g.lift()); }

Vertex apply(const ProjMatrix& g, const Vertex& v, int64_t digit_cap) {
    return apply(g.lift(), v, digit_cap);
}

Vertex apply(const Mat2& g, const Vertex& v, int64_t digit_cap) {
    Mat2 prod{g.a.shifted(v.level), g.a.mul(v.center, digit_cap) + g.b, g.c.shifted(v.level),
              g.c.mul(v.center, digit_cap) + g.d};
    return vertex_of_matrix(prod, digit_cap);
}

int64_t tree_distance(const Vertex& v, const Vertex& w) {
    int64_t cap = std::min(v.level, w.level);
    int64_t j = (v.center - w.center).valuation_clamped(cap);
    return (v.level - j) + (w.level - j);
}

std::vector<NeighborInfo> neighbors(const Vertex& v) {
    std::vector<NeighborInfo> out;
    const ExtContext* ctx = v.center.ctx();
    int64_t p = ctx->prime();
    out.reserve(size_t(p * p + 1));
    out.push_back(NeighborInfo{parent_vertex(v), true});
    for (int64_t y = 0; y < p; ++y)
        for (int64_t x = 0; x < p; ++x)
            out.push_back(NeighborInfo{child_vertex(v, x, y), y == 0});
    return out;
}

Vertex parent_vertex(const Vertex& v) { return Vertex{v.level - 1, v.center.mod_power(v.level - 1)}; }

Vertex child_vertex(const Vertex& v, int64_t x, int64_t y) {
    const ExtContext* ctx = v.center.ctx();
    int64_t p = ctx->prime();
    Ext t(ctx, x ? Padic::from_digits(p, v.level, {uint32_t(x)}, true) : Padic::zero(p),
          y ? Padic::from_digits(p, v.level, {uint32_t(y)}, true) : Padic::zero(p));
    return Vertex{v.level + 1, v.center + t};
}

Vertex base_vertex(const ExtContext* ctx) { return Vertex{0, Ext::zero(ctx)}; }

Vertex reference_vertex(const ExtContext* ctx, int64_t j) { return Vertex{j, Ext::zero(ctx)}; }

std::vector<Vertex> tree_path(const Vertex& u, const Vertex& w) {
    int64_t cap = std::min(u.level, w.level);
    int64_t j = (u.center - w.center).valuation_clamped(cap);
    std::vector<Vertex> out;
    for (int64_t lvl = u.level; lvl > j; --lvl) out.push_back(Vertex{lvl, u.center.mod_power(lvl)});
    for (int64_t lvl = j; lvl <= w.level; ++lvl) out.push_back(Vertex{lvl, w.center.mod_power(lvl)});
    return out;
}

std::vector<Vertex> ray_to_boundary(const Vertex& v, const BoundaryPoint& x, int64_t depth) {
    std::vector<Vertex> out;
    out.reserve(size_t(depth + 1));
    out.push_back(v);
    if (x.inf) {
        Vertex cur = v;
        for (int64_t k = 0; k < depth; ++k) {
            cur = parent_vertex(cur);
            out.push_back(cur);
        }
        return out;
    }
    // join level of the ray with the (inf, x) geodesic
    int64_t j = (x.value - v.center).valuation_clamped(v.level);
    Vertex cur = v;
    int64_t k = 0;
    for (int64_t lvl = v.level - 1; lvl >= j && k < depth; --lvl, ++k) {
        cur = parent_vertex(cur);
        out.push_back(cur);
    }
    for (int64_t lvl = cur.level + 1; k < depth; ++lvl, ++k) {
        cur = Vertex{lvl, x.value.mod_power(lvl)};
        out.push_back(cur);
    }
    return out;
}

Vertex step_toward(const Vertex& v, const BoundaryPoint& x) {
    return ray_to_boundary(v, x, 1).at(1);
}

bool in_H_subtree(const ProjMatrix& g, const Vertex& v) {
    return in_H_subtree_pre(g.inverse().lift(), v);
}

bool in_H_subtree_pre(const Mat2& g_inverse, const Vertex& v) {
    Vertex w = apply(g_inverse, v);
    return w.center.in_base_field();
}

bool halftree_contains(const HalfTree& B, const Vertex& v) {
    return tree_distance(v, B.toward) < tree_distance(v, B.root);
}

bool halftrees_disjoint(const HalfTree& B1, const HalfTree& B2) {
    return !halftree_contains(B2, B1.toward) && !halftree_contains(B1, B2.toward);
}

std::string dot_for_vertices(const std::string& graph_name, const std::vector<Vertex>& vs,
                             bool with_tree_edges) {
    std::vector<Vertex> sorted = vs;
    std::sort(sorted.begin(), sorted.end(), [](const Vertex& a, const Vertex& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.key() < b.key();
    });
    std::string out = "graph \"" + graph_name + "\" {\n";
    for (const Vertex& v : sorted)
        out += "  \"" + v.key() + "\" [label=\"" + v.literal() + "\"];\n";
    if (with_tree_edges) {
        for (size_t i = 0; i < sorted.size(); ++i)
            for (size_t j = i + 1; j < sorted.size(); ++j)
                if (tree_distance(sorted[i], sorted[j]) == 1)
                    out += "  \"" + sorted[i].key() + "\" -- \"" + sorted[j].key() + "\";\n";
    }
    out += "}\n";
    return out;
}

} // namespace padictree
