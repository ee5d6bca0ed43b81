#include "padictree/pgl2.hpp"

#include <array>

namespace padictree {

std::string PPower::to_string() const {
    if (zero) return "0";
    if (exp == 0) return "1";
    return "p^" + std::to_string(exp);
}

PPower magnitude(const Ext& x) {
    if (x.is_zero()) return PPower::zero_value();
    return PPower::of(-x.valuation());
}

Mat2 Mat2::mul(const Mat2& o, int64_t cap) const {
    return Mat2{a.mul(o.a, cap) + b.mul(o.c, cap), a.mul(o.b, cap) + b.mul(o.d, cap),
                c.mul(o.a, cap) + d.mul(o.c, cap), c.mul(o.b, cap) + d.mul(o.d, cap)};
}

ProjMatrix ProjMatrix::canonicalize(const Mat2& raw) {
    const ExtContext* ctx = raw.a.ctx();
    if (raw.det().is_zero()) throw SingularMatrix("matrix is singular at working precision");
    if (!raw.d.is_zero()) {
        Mat2 m{raw.a / raw.d, raw.b / raw.d, raw.c / raw.d, Ext::one(ctx)};
        return ProjMatrix(std::move(m), Class::G1);
    }
    if (raw.b.is_zero())
        throw SingularMatrix("matrix with vanishing second column at working precision");
    Mat2 m{raw.a / raw.b, Ext::one(ctx), raw.c / raw.b, Ext::zero(ctx)};
    return ProjMatrix(std::move(m), Class::G2);
}

ProjMatrix ProjMatrix::identity(const ExtContext* ctx) {
    return ProjMatrix(Mat2{Ext::one(ctx), Ext::zero(ctx), Ext::zero(ctx), Ext::one(ctx)},
                      Class::G1);
}

ProjMatrix ProjMatrix::diag(const Ext& a11, const Ext& a22) {
    return canonicalize(Mat2{a11, Ext::zero(a11.ctx()), Ext::zero(a11.ctx()), a22});
}

ProjMatrix ProjMatrix::unipotent(const Ext& t) {
    const ExtContext* ctx = t.ctx();
    return ProjMatrix(Mat2{Ext::one(ctx), t, Ext::zero(ctx), Ext::one(ctx)}, Class::G1);
}

ProjMatrix ProjMatrix::inverse() const {
    return canonicalize(Mat2{m_.d, -m_.b, -m_.c, m_.a});
}

bool ProjMatrix::is_identity(int64_t depth) const {
    if (cls_ != Class::G1) return false;
    const ExtContext* ctx = this->ctx();
    return m_.a.same_mod(Ext::one(ctx), depth) && m_.b.is_zero_mod(depth) &&
           m_.c.is_zero_mod(depth);
}

bool ProjMatrix::same(const ProjMatrix& o, int64_t depth) const {
    if (cls_ != o.cls_) return false;
    return m_.a.same_mod(o.m_.a, depth) && m_.b.same_mod(o.m_.b, depth) &&
           m_.c.same_mod(o.m_.c, depth) && m_.d.same_mod(o.m_.d, depth);
}

bool ProjMatrix::in_H() const {
    return m_.a.in_base_field() && m_.b.in_base_field() && m_.c.in_base_field() &&
           m_.d.in_base_field();
}

std::string ProjMatrix::to_string() const {
    return "[[" + m_.a.to_literal() + "," + m_.b.to_literal() + "],[" + m_.c.to_literal() + "," +
           m_.d.to_literal() + "]]";
}

std::string BoundaryPoint::to_string() const { return inf ? "inf" : value.to_literal(); }

BoundaryPoint mobius(const ProjMatrix& g, const BoundaryPoint& x) {
    const ExtContext* ctx = g.ctx();
    if (x.inf) {
        if (g.e21().is_zero()) return BoundaryPoint::infinity(ctx);
        return BoundaryPoint::finite(g.e11() / g.e21());
    }
    Ext num = g.e11() * x.value + g.e12();
    Ext den = g.e21() * x.value + g.e22();
    if (den.is_zero()) {
        if (num.is_zero())
            throw PrecisionExhausted("Mobius image undetermined at working precision");
        return BoundaryPoint::infinity(ctx);
    }
    return BoundaryPoint::finite(num / den);
}

namespace {

// exponent of max(1, |x|)
int64_t log_max1(const Ext& x) {
    if (x.is_zero()) {
        if (x.abs_precision() < 0)
            throw PrecisionExhausted("boundary point magnitude unresolved");
        return 0;
    }
    return std::max<int64_t>(0, -x.valuation());
}

} // namespace

PPower chordal_distance(const BoundaryPoint& x, const BoundaryPoint& y) {
    if (x.inf && y.inf) return PPower::zero_value();
    if (x.inf || y.inf) {
        const BoundaryPoint& f = x.inf ? y : x;
        return PPower::of(-log_max1(f.value));
    }
    Ext diff = x.value - y.value;
    if (diff.is_zero()) return PPower::zero_value();
    return PPower::of(-diff.valuation() - log_max1(x.value) - log_max1(y.value));
}

bool boundary_equal(const BoundaryPoint& x, const BoundaryPoint& y, int64_t depth) {
    PPower d = chordal_distance(x, y);
    return d.zero || d.exp <= -depth;
}

ProjMatrix frame_to_matrix(const Frame& f) {
    const BoundaryPoint &x = f.x, &y = f.y, &z = f.z;
    const ExtContext* ctx = (x.inf ? (y.inf ? z.value : y.value) : x.value).ctx();
    int64_t guard = ctx->precision() - 6;
    if (boundary_equal(x, y, guard) || boundary_equal(x, z, guard) || boundary_equal(y, z, guard))
        throw DegenerateFrame("frame points must be mutually distinct");
    Ext one = Ext::one(ctx);
    if (y.inf) {
        // g = [[z-x, x],[0,1]]
        return ProjMatrix::canonicalize(Mat2{z.value - x.value, x.value, Ext::zero(ctx), one});
    }
    if (x.inf) {
        // g = [[y, z-y],[1,0]]
        return ProjMatrix::canonicalize(Mat2{y.value, z.value - y.value, one, Ext::zero(ctx)});
    }
    if (z.inf) {
        // g = [[y, -x],[1,-1]]
        return ProjMatrix::canonicalize(Mat2{y.value, -x.value, one, -one});
    }
    Ext zx = z.value - x.value;
    Ext yz = y.value - z.value;
    return ProjMatrix::canonicalize(Mat2{y.value * zx, x.value * yz, zx, yz});
}

std::optional<HyperbolicData> classify(const ProjMatrix& g) {
    const ExtContext* ctx = g.ctx();
    const Mat2& m = g.lift();
    Ext tr = m.a + m.d;
    Ext dt = m.det();
    if (dt.is_zero()) throw PrecisionExhausted("determinant vanishes at working precision");
    int64_t vdet = dt.valuation();
    if (tr.is_zero()) {
        if (2 * tr.abs_precision() >= vdet) return std::nullopt; // elliptic-like
        throw PrecisionExhausted("trace valuation unresolved");
    }
    int64_t vtr = tr.valuation();
    if (2 * vtr >= vdet) return std::nullopt;
    HyperbolicData h;
    h.length = vdet - 2 * vtr;

    BoundaryPoint fix_a = BoundaryPoint::infinity(ctx), fix_b = BoundaryPoint::infinity(ctx);
    Ext lam_a = Ext::one(ctx), lam_b = Ext::one(ctx);
    if (m.c.is_zero()) {
        // fixed points inf and b/(a-d); eigenvalues a and d
        fix_a = BoundaryPoint::infinity(ctx);
        lam_a = m.a;
        fix_b = BoundaryPoint::finite(m.b / (m.a - m.d));
        lam_b = m.d;
    } else {
        Ext disc = (m.a - m.d) * (m.a - m.d) + Ext::from_int(ctx, 4) * m.b * m.c;
        Ext s = sqrt_hensel(disc);
        Ext two_c = Ext::from_int(ctx, 2) * m.c;
        fix_a = BoundaryPoint::finite(((m.a - m.d) + s) / two_c);
        fix_b = BoundaryPoint::finite(((m.a - m.d) - s) / two_c);
        Ext half = Ext::from_int(ctx, 2).inverse();
        lam_a = (tr + s) * half;
        lam_b = (tr - s) * half;
    }
    // attracting fixed point carries the eigenvalue of smaller valuation
    if (lam_a.valuation() > lam_b.valuation()) {
        std::swap(fix_a, fix_b);
        std::swap(lam_a, lam_b);
    }
    h.fixed_plus = fix_a;
    h.fixed_minus = fix_b;
    h.unit = (lam_a / lam_b).shifted(h.length);

    // deterministic third frame point distinct from both fixed points
    std::array<BoundaryPoint, 5> cands = {
        BoundaryPoint::finite(Ext::one(ctx)), BoundaryPoint::finite(Ext::zero(ctx)),
        BoundaryPoint::infinity(ctx), BoundaryPoint::finite(Ext::omega(ctx)),
        BoundaryPoint::finite(Ext::one(ctx) + Ext::omega(ctx))};
    int64_t guard = ctx->precision() - 6;
    for (const BoundaryPoint& cand : cands) {
        if (!boundary_equal(cand, h.fixed_minus, guard) &&
            !boundary_equal(cand, h.fixed_plus, guard)) {
            h.conjugator = frame_to_matrix(Frame{h.fixed_minus, h.fixed_plus, cand});
            return h;
        }
    }
    throw InternalError("no admissible third frame point");
}

PPower dist(const ProjMatrix& g, const ProjMatrix& h) {
    PPower best = PPower::zero_value();
    const Mat2 &a = g.lift(), &b = h.lift();
    PPower cands[4] = {magnitude(a.a - b.a), magnitude(a.b - b.b), magnitude(a.c - b.c),
                       magnitude(a.d - b.d)};
    for (const PPower& c : cands)
        if (best < c) best = c;
    return best;
}

PPower norm_e(const ProjMatrix& g) { return dist(g, ProjMatrix::identity(g.ctx())); }

} // namespace padictree
