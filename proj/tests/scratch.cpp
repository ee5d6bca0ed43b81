#include <cstdio>
#include "padictree/schottky.hpp"
#include "padictree/scalar_io.hpp"

using namespace padictree;

static ProjMatrix quad(const ExtContext* c, const char* a, const char* b, int64_t k, const char* u) {
    Ext A = parse_ext(c, a), B = parse_ext(c, b), U = parse_ext(c, u);
    Ext one = Ext::one(c), zero = Ext::zero(c);
    Mat2 g{A, B, one, one};
    Mat2 d{U.shifted(-k), zero, zero, one};
    Mat2 gi{one, -B, -one, A};
    return ProjMatrix::canonicalize(g.mul(d).mul(gi));
}

int main() {
    auto ctx = ExtContext::make(3, 2, 48);
    const ExtContext* c = ctx.get();
    std::vector<GenSpec> gens;
    const char* Q[8][4] = {
        {"1+w*3", "1+(1+2*w)*3", "1", "1"},
        {"1", "1+(1+w)*3", "1", "1"},
        {"1+(2+w)*3", "1+2*w*3", "1", "1"},
        {"2+2*w", "w", "1", "phi*(sqrt(1+2*3^2)+w*3)"},
        {"1+w", "1+2*w", "1", "1"},
        {"2+w", "2", "1", "1"},
        {"1+1*3", "0", "2", "1"},
        {"1+2*3", "2*w", "2", "1"},
    };
    for (auto& q : Q)
        gens.push_back(GenSpec{quad(c, q[0], q[1], atoll(q[2]), q[3]), std::nullopt});
    SchottkyGroup G = SchottkyGroup::verify(ctx, gens, 4);
    std::printf("offsets:");
    for (int64_t o : G.offsets()) std::printf(" %lld", (long long)o);
    std::printf("\nanchor_radius=%lld\n", (long long)G.anchor_radius());
    for (size_t i = 0; i < 8; ++i) {
        const GenData& g = G.gen(i);
        std::printf("g%zu: n=%lld w0=%s w1=%s wn=%s wn1=%s\n", i + 1, (long long)g.hyp.length,
                    g.w0.literal().c_str(), g.w1.literal().c_str(), g.wn.literal().c_str(),
                    g.wn1.literal().c_str());
    }
    const CoreGraph& core = G.ensure_core(6);
    std::printf("core: stabilized_at=%lld diameter=%lld\n", (long long)core.stabilized_at,
                (long long)core.diameter);
    for (size_t i = 0; i < core.vertices.size(); ++i)
        std::printf("  %s deg=%lld\n", core.vertices[i].literal().c_str(),
                    (long long)core.degrees[i]);
    for (auto& e : core.edges)
        std::printf("  edge %d--%d [%s]\n", e.from, e.to, e.label.name().c_str());
    auto hb = G.high_branched_check(2, false);
    std::printf("hb: deg_ok=%d geo_ok=%d cond2=%d witness=%s\n", int(hb.degree_ok),
                int(hb.geodesic_ok), int(hb.cond2_ok),
                hb.cond2_witness ? hb.cond2_witness->name().c_str() : "-");
    // reduce round trip
    Word w{{1, -4, 7}};
    Vertex v = base_vertex(c);
    Vertex moved = apply(G.word_matrix(w), v);
    auto red = G.reduce_to_F(moved);
    std::printf("tiling: rep=%s word=%s (expect (0;0), g1 g4^-1 g7)\n",
                red.rep.literal().c_str(), red.word.name().c_str());
    // limit points at L=1
    auto lp = G.limit_points(1);
    std::printf("limit points L=1: %zu (expect 16)\n", lp.size());
    return 0;
}
