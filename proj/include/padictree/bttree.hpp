#pragma once

#include <string>
#include <vector>

#include "padictree/pgl2.hpp"

namespace padictree {

/// Vertex of the Bruhat-Tits tree of PGL_2(K): the lattice class
/// [[p^level, center],[0,1]] with the center reduced modulo p^level.
struct Vertex {
    int64_t level = 0;
    Ext center; // exact, digits strictly below p^level

    std::string key() const;     // canonical id, usable for hashing/sorting
    std::string literal() const; // "(m; a)" display form

    bool operator==(const Vertex& o) const { return level == o.level && key() == o.key(); }
};

/// Column reduction of an invertible matrix over O_K to the vertex it fixes.
Vertex vertex_of_matrix(const Mat2& raw, int64_t digit_cap = -1);
Vertex vertex_of_matrix(const ProjMatrix& g);

Mat2 vertex_lift(const Vertex& v); // [[p^m, a],[0,1]]

/// g . v through the lattice action.
Vertex apply(const ProjMatrix& g, const Vertex& v, int64_t digit_cap = -1);
Vertex apply(const Mat2& g, const Vertex& v, int64_t digit_cap = -1);

/// Edge count between two vertices:
/// (m - j) + (n - j) with j = min(m, n, nu(a - b)).
int64_t tree_distance(const Vertex& v, const Vertex& w);

struct NeighborInfo {
    Vertex v;
    bool qp_direction; // parent, or child with residue in F_p
};

/// Parent first, then the p^2 children in the fixed residue order
/// {x + w y : 0 <= x, y < p}, index x + p*y.
std::vector<NeighborInfo> neighbors(const Vertex& v);

Vertex parent_vertex(const Vertex& v);
Vertex child_vertex(const Vertex& v, int64_t x, int64_t y);

Vertex base_vertex(const ExtContext* ctx);                // (0; 0)
Vertex reference_vertex(const ExtContext* ctx, int64_t j); // (j; 0)

/// Vertex chain of the geodesic segment [u, w], endpoints included.
std::vector<Vertex> tree_path(const Vertex& u, const Vertex& w);

/// First depth+1 vertices of the geodesic ray [v, x).
std::vector<Vertex> ray_to_boundary(const Vertex& v, const BoundaryPoint& x, int64_t depth);
Vertex step_toward(const Vertex& v, const BoundaryPoint& x);

/// Membership of v in the H-subtree g.T_H.
bool in_H_subtree(const ProjMatrix& g, const Vertex& v);
/// Fast path taking the precomputed inverse lift of g.
bool in_H_subtree_pre(const Mat2& g_inverse, const Vertex& v);

/// Branch {x : d(x, toward) < d(x, root)} at the oriented edge root->toward.
struct HalfTree {
    Vertex root, toward;
};

bool halftree_contains(const HalfTree& B, const Vertex& v);
/// Equivalent to emptiness of the intersection for branches on distinct
/// oriented edges; identical edges report not disjoint.
bool halftrees_disjoint(const HalfTree& B1, const HalfTree& B2);

/// DOT emission for a finite vertex set; edges between set members at tree
/// distance one are drawn when requested.
std::string dot_for_vertices(const std::string& graph_name, const std::vector<Vertex>& vs,
                             bool with_tree_edges);

} // namespace padictree
