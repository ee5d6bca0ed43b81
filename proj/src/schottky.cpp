#include "padictree/schottky.hpp"

#include <algorithm>
#include <map>

namespace padictree {

// --- Word -------------------------------------------------------------------

Word Word::inverse() const {
    Word out;
    out.letters.reserve(letters.size());
    for (auto it = letters.rbegin(); it != letters.rend(); ++it) out.letters.push_back(-*it);
    return out;
}

Word Word::appended(int32_t letter) const {
    Word out = *this;
    if (!out.letters.empty() && out.letters.back() == -letter)
        out.letters.pop_back();
    else
        out.letters.push_back(letter);
    return out;
}

Word Word::concat(const Word& o) const {
    Word out = *this;
    for (int32_t l : o.letters) out = out.appended(l);
    return out;
}

std::string Word::name() const {
    if (letters.empty()) return "e";
    std::string out;
    size_t i = 0;
    while (i < letters.size()) {
        size_t j = i;
        while (j < letters.size() && letters[j] == letters[i]) ++j;
        int64_t run = int64_t(j - i);
        int32_t l = letters[i];
        if (!out.empty()) out += " ";
        out += "g" + std::to_string(std::abs(l));
        int64_t e = l > 0 ? run : -run;
        if (e != 1) out += "^" + std::to_string(e);
        i = j;
    }
    return out;
}

bool Word::operator<(const Word& o) const {
    if (letters.size() != o.letters.size()) return letters.size() < o.letters.size();
    return letters < o.letters;
}

// --- helpers ------------------------------------------------------------------

Mat2 normalize_scale(const Mat2& m) {
    int64_t lo = kInfPrec;
    for (const Ext* e : {&m.a, &m.b, &m.c, &m.d}) lo = std::min(lo, e->val_lower_bound());
    if (lo == 0 || lo >= kInfPrec) return m;
    return Mat2{m.a.shifted(-lo), m.b.shifted(-lo), m.c.shifted(-lo), m.d.shifted(-lo)};
}

Vertex project_to_geodesic(const Vertex& from, const BoundaryPoint& x, const BoundaryPoint& y) {
    Vertex cur = from;
    for (int64_t k = 0; k < 128; ++k) {
        Vertex sx = step_toward(cur, x);
        Vertex sy = step_toward(cur, y);
        if (!(sx == sy)) return cur;
        cur = sx;
    }
    throw PrecisionExhausted("projection onto a geodesic did not converge");
}

namespace {

Vertex advance_on_axis(const HyperbolicData& hyp, Vertex from, int64_t steps) {
    const BoundaryPoint& target = steps >= 0 ? hyp.fixed_plus : hyp.fixed_minus;
    for (int64_t k = 0; k < std::abs(steps); ++k) from = step_toward(from, target);
    return from;
}

} // namespace

std::vector<Vertex> axis_label(const HyperbolicData& hyp, int64_t offset, int64_t lo, int64_t hi) {
    const ExtContext* ctx = hyp.conjugator.ctx();
    Vertex anchor = project_to_geodesic(base_vertex(ctx), hyp.fixed_minus, hyp.fixed_plus);
    std::vector<Vertex> out;
    Vertex cur = advance_on_axis(hyp, anchor, offset + lo);
    out.push_back(cur);
    for (int64_t j = lo + 1; j <= hi; ++j) {
        cur = step_toward(cur, hyp.fixed_plus);
        out.push_back(cur);
    }
    return out;
}

// --- verification --------------------------------------------------------------

namespace {

GenData make_gen_data(const ProjMatrix& mat, const HyperbolicData& hyp, int64_t offset) {
    GenData g;
    g.mat = mat;
    g.inv = mat.inverse();
    g.hyp = hyp;
    g.offset = offset;
    std::vector<Vertex> axis = axis_label(hyp, offset, 0, hyp.length + 1);
    g.w0 = axis.front();
    g.w1 = axis[1];
    g.wn = axis[size_t(hyp.length)];
    g.wn1 = axis[size_t(hyp.length + 1)];
    g.o_minus = HalfTree{g.w1, g.w0};
    g.o_plus = HalfTree{g.wn, g.wn1};
    return g;
}

bool gens_compatible(const GenData& a, const GenData& b) {
    return halftrees_disjoint(a.o_plus, b.o_plus) && halftrees_disjoint(a.o_plus, b.o_minus) &&
           halftrees_disjoint(a.o_minus, b.o_plus) && halftrees_disjoint(a.o_minus, b.o_minus);
}

std::string halftree_pair_text(size_t i, size_t j) {
    return "half-trees of g" + std::to_string(i + 1) + " and g" + std::to_string(j + 1) +
           " intersect";
}

} // namespace

SchottkyGroup SchottkyGroup::verify(std::shared_ptr<const ExtContext> ctx,
                                    std::vector<GenSpec> gens, int64_t window) {
    if (gens.size() < 2) throw ConfigError("a Schottky basis needs at least two generators");
    if (window < 0 || window > 16) throw ConfigError("offset window out of range [0, 16]");

    size_t n = gens.size();
    std::vector<HyperbolicData> hyps;
    hyps.reserve(n);
    for (size_t i = 0; i < n; ++i) {
        auto h = classify(gens[i].matrix);
        if (!h)
            throw NonHyperbolicGenerator("generator g" + std::to_string(i + 1) +
                                         " is not hyperbolic");
        hyps.push_back(*h);
    }

    // candidate labelings per generator
    std::vector<std::vector<GenData>> cands(n);
    for (size_t i = 0; i < n; ++i) {
        std::vector<int64_t> offs;
        if (gens[i].fixed_offset)
            offs.push_back(*gens[i].fixed_offset);
        else
            for (int64_t o = -window; o <= window; ++o) offs.push_back(o);
        for (int64_t o : offs) {
            GenData g = make_gen_data(gens[i].matrix, hyps[i], o);
            if (!halftrees_disjoint(g.o_plus, g.o_minus)) continue;
            cands[i].push_back(std::move(g));
        }
        if (cands[i].empty())
            throw NoValidLabeling("no admissible labeling offset for generator g" +
                                  std::to_string(i + 1));
    }

    // depth-first search for the lexicographically first compatible offsets
    std::vector<size_t> pick(n, 0);
    std::string blocker = halftree_pair_text(0, std::min<size_t>(1, n - 1));
    size_t deepest = 0;
    std::vector<size_t> stack;
    stack.reserve(n);
    // iterative backtracking
    size_t level = 0;
    std::vector<size_t> idx(n, 0);
    while (true) {
        if (level == n) break; // solved
        bool placed = false;
        for (size_t& k = idx[level]; k < cands[level].size(); ++k) {
            bool ok = true;
            for (size_t j = 0; j < level; ++j) {
                if (!gens_compatible(cands[j][pick[j]], cands[level][k])) {
                    ok = false;
                    if (level >= deepest) {
                        deepest = level;
                        blocker = halftree_pair_text(j, level);
                    }
                    break;
                }
            }
            if (ok) {
                pick[level] = k;
                ++k;
                placed = true;
                break;
            }
        }
        if (placed) {
            ++level;
            if (level < n) idx[level] = 0;
        } else {
            if (level == 0)
                throw NoValidLabeling("no mutually disjoint half-tree labeling in window (" +
                                      blocker + ")");
            --level;
        }
    }

    SchottkyGroup grp;
    grp.ctx_ = std::move(ctx);
    grp.window_ = window;
    grp.gens_.reserve(n);
    for (size_t i = 0; i < n; ++i) grp.gens_.push_back(cands[i][pick[i]]);
    Vertex base = base_vertex(grp.ctx_.get());
    for (const GenData& g : grp.gens_)
        for (const Vertex* v : {&g.w0, &g.w1, &g.wn, &g.wn1})
            grp.anchor_radius_ = std::max(grp.anchor_radius_, tree_distance(base, *v));
    return grp;
}

std::vector<int64_t> SchottkyGroup::offsets() const {
    std::vector<int64_t> out;
    out.reserve(gens_.size());
    for (const GenData& g : gens_) out.push_back(g.offset);
    return out;
}

const Mat2& SchottkyGroup::letter_lift(int32_t letter) const {
    size_t i = size_t(std::abs(letter)) - 1;
    return letter > 0 ? gens_[i].mat.lift() : gens_[i].inv.lift();
}

ProjMatrix SchottkyGroup::word_matrix(const Word& w) const {
    return ProjMatrix::canonicalize(word_lift(w));
}

Mat2 SchottkyGroup::word_lift(const Word& w) const {
    Mat2 acc = ProjMatrix::identity(ctx_.get()).lift();
    for (int32_t l : w.letters) acc = normalize_scale(acc.mul(letter_lift(l)));
    return acc;
}

std::optional<std::pair<size_t, int>> SchottkyGroup::containing_halftree(const Vertex& v) const {
    for (size_t i = 0; i < gens_.size(); ++i) {
        if (halftree_contains(gens_[i].o_plus, v)) return std::make_pair(i, +1);
        if (halftree_contains(gens_[i].o_minus, v)) return std::make_pair(i, -1);
    }
    return std::nullopt;
}

bool SchottkyGroup::in_F(const Vertex& v) const { return !containing_halftree(v).has_value(); }

SchottkyGroup::Reduction SchottkyGroup::reduce_to_F(const Vertex& v) const {
    // distance bound: hop root to root until F is reached
    int64_t bound = 0;
    {
        Vertex cur = v;
        for (int k = 0; k < 64; ++k) {
            auto ht = containing_halftree(cur);
            if (!ht) break;
            const GenData& g = gens_[ht->first];
            const Vertex& root = ht->second > 0 ? g.o_plus.root : g.o_minus.root;
            bound += tree_distance(cur, root);
            cur = root;
        }
    }
    int64_t cap = bound + 8;
    Reduction r{v, Word::identity()};
    for (int64_t iters = 0;; ++iters) {
        auto ht = containing_halftree(r.rep);
        if (!ht) return r;
        if (iters > cap) throw InternalError("ping-pong reduction exceeded its bound");
        size_t i = ht->first;
        if (ht->second > 0) {
            r.rep = apply(gens_[i].inv, r.rep);
            r.word = r.word.appended(int32_t(i + 1));
        } else {
            r.rep = apply(gens_[i].mat, r.rep);
            r.word = r.word.appended(-int32_t(i + 1));
        }
    }
}

void SchottkyGroup::for_each_word(
    int64_t max_len, const std::function<void(const Word&, const Mat2&)>& visit) const {
    Word w = Word::identity();
    std::vector<Mat2> stack{ProjMatrix::identity(ctx_.get()).lift()};
    std::function<void()> rec = [&]() {
        if (int64_t(w.length()) >= max_len) return;
        for (size_t i = 1; i <= gens_.size(); ++i) {
            for (int32_t letter : {int32_t(i), -int32_t(i)}) {
                if (!w.letters.empty() && w.letters.back() == -letter) continue;
                w.letters.push_back(letter);
                stack.push_back(normalize_scale(stack.back().mul(letter_lift(letter))));
                visit(w, stack.back());
                rec();
                stack.pop_back();
                w.letters.pop_back();
            }
        }
    };
    rec();
}

std::vector<BoundaryPoint> SchottkyGroup::limit_points(int64_t max_len) const {
    const int64_t dedup_depth = std::min<int64_t>(ctx_->precision() / 2, 24);
    std::map<std::string, BoundaryPoint> found;
    auto key_of = [&](const BoundaryPoint& b) -> std::string {
        if (b.inf) return "inf";
        return b.value.mod_power(dedup_depth).to_literal();
    };
    for_each_word(max_len, [&](const Word& w, const Mat2& m) {
        (void)w;
        auto h = classify(ProjMatrix::canonicalize(m));
        if (!h) return;
        found.emplace(key_of(h->fixed_plus), h->fixed_plus);
        found.emplace(key_of(h->fixed_minus), h->fixed_minus);
    });
    std::vector<BoundaryPoint> out;
    out.reserve(found.size());
    for (auto& [k, v] : found) out.push_back(v);
    return out;
}

// --- core graph -----------------------------------------------------------------

int32_t CoreGraph::index_of(const Vertex& v) const {
    auto it = index_map.find(v.key());
    if (it == index_map.end()) throw InternalError("vertex not in core");
    return it->second;
}

std::string CoreGraph::to_dot() const {
    std::string out = "graph core {\n";
    for (size_t i = 0; i < vertices.size(); ++i)
        out += "  \"" + vertices[i].key() + "\" [label=\"" + vertices[i].literal() +
               " deg=" + std::to_string(degrees[i]) + "\"];\n";
    for (const Edge& e : edges) {
        out += "  \"" + vertices[size_t(e.from)].key() + "\" -- \"" +
               vertices[size_t(e.to)].key() + "\"";
        if (!e.label.empty()) out += " [label=\"" + e.label.name() + "\"]";
        out += ";\n";
    }
    out += "}\n";
    return out;
}

const CoreGraph& SchottkyGroup::core() const {
    if (!core_) throw InternalError("core graph not computed; call ensure_core first");
    return *core_;
}

const CoreGraph& SchottkyGroup::ensure_core(int64_t max_len_cap) {
    if (core_) return *core_;
    Vertex base = base_vertex(ctx_.get());
    int64_t reach = anchor_radius_;

    std::map<std::string, Vertex> found;
    auto collect_axis = [&](const HyperbolicData& h) {
        Vertex anchor = project_to_geodesic(base, h.fixed_minus, h.fixed_plus);
        for (int dir = 0; dir < 2; ++dir) {
            const BoundaryPoint& target = dir == 0 ? h.fixed_plus : h.fixed_minus;
            Vertex cur = dir == 0 ? anchor : step_toward(anchor, target);
            while (tree_distance(cur, base) <= reach) {
                if (in_F(cur)) found.emplace(cur.key(), cur);
                cur = step_toward(cur, target);
            }
        }
    };

    int64_t stabilized_at = -1;
    std::set<std::string> prev_keys;
    for (int64_t len = 1; len <= max_len_cap; ++len) {
        for_each_word(len, [&](const Word& w, const Mat2& m) {
            if (int64_t(w.length()) != len) return;
            if (w.length() >= 2 && w.letters.front() == -w.letters.back())
                return; // axes of non-cyclically-reduced words stay inside one half-tree
            auto h = classify(ProjMatrix::canonicalize(m));
            if (!h) return;
            collect_axis(*h);
        });
        std::set<std::string> now;
        for (auto& [k, v] : found) now.insert(k);
        if (len >= 2 && now == prev_keys) {
            stabilized_at = len - 1;
            break;
        }
        prev_keys = std::move(now);
    }
    if (stabilized_at < 0)
        throw NotStabilized("core vertex set did not stabilize within the word-length cap");

    CoreGraph g;
    g.stabilized_at = stabilized_at;
    for (auto& [k, v] : found) g.vertices.push_back(v);
    std::sort(g.vertices.begin(), g.vertices.end(), [](const Vertex& a, const Vertex& b) {
        if (a.level != b.level) return a.level < b.level;
        return a.key() < b.key();
    });
    for (size_t i = 0; i < g.vertices.size(); ++i) g.index_map[g.vertices[i].key()] = int32_t(i);
    g.degrees.assign(g.vertices.size(), 0);

    struct Rec {
        int32_t from, to;
        std::vector<int32_t> letters;
    };
    std::vector<Rec> recs;
    for (size_t vi = 0; vi < g.vertices.size(); ++vi) {
        for (const NeighborInfo& nb : neighbors(g.vertices[vi])) {
            Reduction r = reduce_to_F(nb.v);
            auto it = g.index_map.find(r.rep.key());
            if (it == g.index_map.end()) continue; // direction leaves the invariant subtree
            g.degrees[vi]++;
            recs.push_back(Rec{int32_t(vi), it->second, r.word.letters});
        }
    }
    // each quotient edge shows up as a reciprocal pair; keep the smaller record
    std::set<std::tuple<int32_t, int32_t, std::vector<int32_t>>> seen;
    for (const Rec& r : recs) {
        Word w{r.letters};
        Word wi = w.inverse();
        std::tuple<int32_t, int32_t, std::vector<int32_t>> self{r.from, r.to, r.letters};
        std::tuple<int32_t, int32_t, std::vector<int32_t>> recip{r.to, r.from, wi.letters};
        if (recip < self) continue;
        if (seen.insert(self).second) g.edges.push_back(CoreGraph::Edge{r.from, r.to, w});
    }

    for (size_t i = 0; i < g.vertices.size(); ++i)
        for (size_t j = i + 1; j < g.vertices.size(); ++j)
            g.diameter = std::max(g.diameter, tree_distance(g.vertices[i], g.vertices[j]));

    core_ = std::move(g);
    return *core_;
}

bool SchottkyGroup::in_s_gamma(const Vertex& v) const {
    Reduction r = reduce_to_F(v);
    return core().contains(r.rep);
}

int64_t SchottkyGroup::s_gamma_degree(const Vertex& v) const {
    Reduction r = reduce_to_F(v);
    const CoreGraph& c = core();
    return c.degrees[size_t(c.index_of(r.rep))];
}

// --- high-branchedness ------------------------------------------------------------

HighBranchedReport SchottkyGroup::high_branched_check(int64_t word_len, bool search_words) const {
    const CoreGraph& c = core();
    int64_t p = ctx_->prime();
    int64_t need1 = p * p - p + 2;
    int64_t need2 = p * p - p + 3;

    HighBranchedReport rep;
    rep.degree_ok = true;
    for (size_t i = 0; i < c.vertices.size(); ++i) {
        if (c.degrees[i] < need1) {
            rep.degree_ok = false;
            rep.low_degree_vertex = c.vertices[i];
            rep.low_degree = c.degrees[i];
            break;
        }
    }

    // F' = core vertices with a neighbor outside F
    std::vector<Vertex> fprime;
    for (const Vertex& v : c.vertices) {
        bool boundary = false;
        for (const NeighborInfo& nb : neighbors(v))
            if (containing_halftree(nb.v)) {
                boundary = true;
                break;
            }
        if (boundary) fprime.push_back(v);
    }
    rep.geodesic_ok = true;
    for (size_t i = 0; i < fprime.size() && rep.geodesic_ok; ++i) {
        for (size_t j = i; j < fprime.size(); ++j) {
            bool okpair = false;
            for (const Vertex& w : tree_path(fprime[i], fprime[j])) {
                Reduction r = reduce_to_F(w);
                if (c.contains(r.rep) && c.degrees[size_t(c.index_of(r.rep))] >= need2) {
                    okpair = true;
                    break;
                }
            }
            if (!okpair) {
                rep.geodesic_ok = false;
                rep.failing_pair = std::make_pair(fprime[i], fprime[j]);
                break;
            }
        }
    }

    rep.cond2_ok = false;
    for (size_t i = 0; i < gens_.size() && !rep.cond2_ok; ++i) {
        DensityWitness w = density_check(gens_[i].hyp.unit);
        if (w.dense) {
            rep.cond2_ok = true;
            rep.cond2_witness = Word{{int32_t(i + 1)}};
            rep.cond2_detail = w;
        }
    }
    if (!rep.cond2_ok && search_words) {
        for_each_word(word_len, [&](const Word& w, const Mat2& m) {
            if (rep.cond2_ok || w.length() < 2) return;
            if (w.letters.front() == -w.letters.back()) return; // conjugates share the unit
            auto h = classify(ProjMatrix::canonicalize(m));
            if (!h) return;
            DensityWitness dw = density_check(h->unit);
            if (dw.dense) {
                rep.cond2_ok = true;
                rep.cond2_witness = w;
                rep.cond2_detail = dw;
            }
        });
    }
    return rep;
}

// --- axis approximation -------------------------------------------------------------

Word SchottkyGroup::axis_approximate(const BoundaryPoint& alpha, const BoundaryPoint& beta,
                                     int64_t depth, int64_t witness_len) const {
    int64_t match_depth = std::min<int64_t>(ctx_->precision() / 2, depth + 8);
    std::optional<Word> tau1, tau2;
    std::optional<HyperbolicData> h1, h2;
    for_each_word(witness_len, [&](const Word& w, const Mat2& m) {
        if (tau1 && tau2) return;
        auto h = classify(ProjMatrix::canonicalize(m));
        if (!h) return;
        if (!tau1 && boundary_equal(h->fixed_plus, alpha, match_depth)) {
            tau1 = w;
            h1 = *h;
        }
        if (!tau2 && boundary_equal(h->fixed_plus, beta, match_depth)) {
            tau2 = w;
            h2 = *h;
        }
    });
    if (!tau1 || !tau2)
        throw NotLimitPoints("no witness words with the requested endpoints up to length " +
                             std::to_string(witness_len));

    // same axis: the witness itself already agrees everywhere
    if (boundary_equal(h1->fixed_minus, beta, match_depth)) return *tau1;

    // target window: the geodesic (alpha, beta) around the base projection
    Vertex base = base_vertex(ctx_.get());
    Vertex proj = project_to_geodesic(base, alpha, beta);
    std::vector<Vertex> window;
    {
        auto ra = ray_to_boundary(proj, alpha, depth);
        auto rb = ray_to_boundary(proj, beta, depth);
        window.insert(window.end(), ra.begin(), ra.end());
        window.insert(window.end(), rb.begin() + 1, rb.end());
    }

    for (int64_t n = 1; n <= depth + 16; ++n) {
        Word cand = Word::identity();
        for (int64_t k = 0; k < n; ++k) cand = cand.concat(*tau1);
        Word t2inv = tau2->inverse();
        for (int64_t k = 0; k < n; ++k) cand = cand.concat(t2inv);
        if (cand.empty()) continue;
        auto h = classify(word_matrix(cand));
        if (!h) continue;
        bool all_on = true;
        for (const Vertex& v : window) {
            Vertex sa = step_toward(v, h->fixed_plus);
            Vertex sb = step_toward(v, h->fixed_minus);
            if (sa == sb) {
                all_on = false;
                break;
            }
        }
        if (all_on) return cand;
    }
    throw NotLimitPoints("axis approximation did not reach the requested agreement depth");
}

} // namespace padictree
