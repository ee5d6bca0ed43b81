#pragma once

#include <functional>
#include <optional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "padictree/bttree.hpp"

namespace padictree {

/// Freely reduced word over the generators; letter +i / -i is g_i^{+1/-1},
/// indices 1-based.
struct Word {
    std::vector<int32_t> letters;

    static Word identity() { return Word{}; }
    bool empty() const { return letters.empty(); }
    size_t length() const { return letters.size(); }
    Word inverse() const;
    Word appended(int32_t letter) const;
    Word concat(const Word& o) const;
    std::string name() const; // "e", "g1 g3^-1", "g2^3"
    bool operator==(const Word&) const = default;
    bool operator<(const Word& o) const;
};

struct GenSpec {
    ProjMatrix matrix;
    std::optional<int64_t> fixed_offset;
};

/// Verified generator: matrix, inverse, diagonal data, chosen axis labeling
/// offset and the two ping-pong half-trees it induces.
struct GenData {
    ProjMatrix mat, inv;
    HyperbolicData hyp;
    int64_t offset = 0;
    Vertex w0, w1, wn, wn1; // labeled axis vertices v_0, v_1, v_n, v_{n+1}
    HalfTree o_plus, o_minus;
};

/// Indexed axis labeling: vertices v_lo .. v_hi with v_j -> attracting end as
/// j grows, v_0 at the projection of the base vertex shifted by `offset`.
std::vector<Vertex> axis_label(const HyperbolicData& hyp, int64_t offset, int64_t lo, int64_t hi);

/// Quotient of the invariant subtree: fundamental-domain vertices, their
/// S_Gamma degrees, and the identified edges.
struct CoreGraph {
    struct Edge {
        int32_t from = 0, to = 0;
        Word label; // identity for F-internal edges
    };
    std::vector<Vertex> vertices; // sorted by (level, key)
    std::vector<int64_t> degrees;
    std::vector<Edge> edges;
    int64_t diameter = 0;
    int64_t stabilized_at = 0; // word length certificate: V(l) == V(l+1)
    std::map<std::string, int32_t> index_map;

    bool contains(const Vertex& v) const { return index_map.count(v.key()) > 0; }
    bool contains_key(const std::string& k) const { return index_map.count(k) > 0; }
    int32_t index_of(const Vertex& v) const;
    std::string to_dot() const;
};

struct HighBranchedReport {
    bool schottky_ok = true;
    bool degree_ok = false;
    std::optional<Vertex> low_degree_vertex;
    int64_t low_degree = 0;
    bool geodesic_ok = false;
    std::optional<std::pair<Vertex, Vertex>> failing_pair;
    bool cond2_ok = false;
    std::optional<Word> cond2_witness;
    DensityWitness cond2_detail;

    bool ok() const { return degree_ok && geodesic_ok && cond2_ok; }
};

class SchottkyGroup {
public:
    /// Ping-pong verification: searches axis-labeling offsets in [-window,
    /// window] per generator (fixed offsets are honored) for mutually
    /// disjoint half-trees; keeps the lexicographically first witness.
    static SchottkyGroup verify(std::shared_ptr<const ExtContext> ctx, std::vector<GenSpec> gens,
                                int64_t window);

    const ExtContext* ctx() const { return ctx_.get(); }
    std::shared_ptr<const ExtContext> ctx_ref() const { return ctx_; }
    size_t num_gens() const { return gens_.size(); }
    const GenData& gen(size_t i) const { return gens_[i]; }
    std::vector<int64_t> offsets() const;

    const Mat2& letter_lift(int32_t letter) const;
    ProjMatrix word_matrix(const Word& w) const;
    Mat2 word_lift(const Word& w) const;

    /// Which ping-pong half-tree contains v: (generator index, +1/-1).
    std::optional<std::pair<size_t, int>> containing_halftree(const Vertex& v) const;
    bool in_F(const Vertex& v) const;

    struct Reduction {
        Vertex rep;
        Word word; // word * rep == input vertex
    };
    Reduction reduce_to_F(const Vertex& v) const;

    /// Fixed points of all reduced words up to max_len, deduplicated at
    /// truncation depth; monotone in max_len.
    std::vector<BoundaryPoint> limit_points(int64_t max_len) const;

    /// Collect F-vertices on word axes by increasing word length; stops at
    /// the first length whose vertex set repeats (certificate l vs l+1) and
    /// throws NotStabilized if the cap is hit first.
    const CoreGraph& ensure_core(int64_t max_len_cap);
    const CoreGraph& core() const;
    bool has_core() const { return core_.has_value(); }

    bool in_s_gamma(const Vertex& v) const;
    int64_t s_gamma_degree(const Vertex& v) const;

    HighBranchedReport high_branched_check(int64_t word_len, bool search_words) const;

    /// Word whose axis agrees with the geodesic (alpha, beta) on the
    /// radius-depth ball around the projection of the base vertex.
    Word axis_approximate(const BoundaryPoint& alpha, const BoundaryPoint& beta, int64_t depth,
                          int64_t witness_len) const;

    /// Depth-first enumeration of freely reduced words of length <= max_len
    /// (letter order g1, g1^-1, g2, ...), with scale-normalized lifts.
    void for_each_word(int64_t max_len,
                       const std::function<void(const Word&, const Mat2&)>& visit) const;

    /// Max distance from the base vertex to any stored labeling anchor.
    int64_t anchor_radius() const { return anchor_radius_; }

private:
    SchottkyGroup() = default;

    std::shared_ptr<const ExtContext> ctx_;
    std::vector<GenData> gens_;
    int64_t window_ = 0;
    int64_t anchor_radius_ = 0;
    std::optional<CoreGraph> core_;
};

/// Scale a raw lift so its minimal entry valuation is zero.
Mat2 normalize_scale(const Mat2& m);

/// Last common vertex of the rays from `from` toward x and y.
Vertex project_to_geodesic(const Vertex& from, const BoundaryPoint& x, const BoundaryPoint& y);

} // namespace padictree
