#pragma once

#include <optional>
#include <string>

#include "padictree/ext.hpp"

namespace padictree {

/// Magnitude that is zero or an exact power of p.
struct PPower {
    bool zero = true;
    int64_t exp = 0; // magnitude = p^exp when !zero

    static PPower of(int64_t e) { return PPower{false, e}; }
    static PPower zero_value() { return PPower{}; }

    bool operator==(const PPower&) const = default;
    bool operator<(const PPower& o) const {
        if (zero) return !o.zero;
        if (o.zero) return false;
        return exp < o.exp;
    }
    bool operator<=(const PPower& o) const { return *this < o || *this == o; }

    std::string to_string() const;
};

PPower magnitude(const Ext& x); // |x| as a power of p; zero marker stays zero

struct Mat2 {
    Ext a, b, c, d;

    Mat2 mul(const Mat2& o, int64_t cap = -1) const;
    Ext det() const { return a * d - b * c; }
};

/// Canonical representative of an element of PGL_2(K): either m22 = 1 (G1)
/// or m12 = 1, m22 = 0 (G2); exactly one per projective class.
class ProjMatrix {
public:
    enum class Class { G1, G2 };

    ProjMatrix() = default; // empty shell; only meaningful once assigned

    static ProjMatrix canonicalize(const Mat2& raw);
    static ProjMatrix identity(const ExtContext* ctx);
    static ProjMatrix diag(const Ext& a11, const Ext& a22);
    static ProjMatrix unipotent(const Ext& t); // [[1,t],[0,1]]

    Class cls() const { return cls_; }
    const Mat2& lift() const { return m_; }
    const Ext& e11() const { return m_.a; }
    const Ext& e12() const { return m_.b; }
    const Ext& e21() const { return m_.c; }
    const Ext& e22() const { return m_.d; }
    const ExtContext* ctx() const { return m_.a.ctx(); }

    ProjMatrix inverse() const;
    ProjMatrix operator*(const ProjMatrix& o) const { return canonicalize(m_.mul(o.m_)); }

    bool is_identity(int64_t depth) const;
    bool same(const ProjMatrix& o, int64_t depth) const;
    /// All entries of the canonical lift in Q_p (b-parts vanish at precision).
    bool in_H() const;

    std::string to_string() const;

private:
    ProjMatrix(Mat2 m, Class c) : m_(std::move(m)), cls_(c) {}
    Mat2 m_;
    Class cls_;
};

/// Point of P^1(K) = K + {inf}; equality is decided at truncation depth.
struct BoundaryPoint {
    bool inf = false;
    Ext value; // meaningful iff !inf

    static BoundaryPoint infinity(const ExtContext* ctx) { return {true, Ext::zero(ctx)}; }
    static BoundaryPoint finite(Ext v) { return {false, std::move(v)}; }

    std::string to_string() const;
};

/// Mobius action (a x + b) / (c x + d) with the usual conventions at inf.
BoundaryPoint mobius(const ProjMatrix& g, const BoundaryPoint& x);

/// |x - y| / (max(1,|x|) max(1,|y|)); distance to inf is 1/max(1,|x|).
PPower chordal_distance(const BoundaryPoint& x, const BoundaryPoint& y);

bool boundary_equal(const BoundaryPoint& x, const BoundaryPoint& y, int64_t depth);

struct Frame {
    BoundaryPoint x, y, z;
};

/// The unique g with g.(0, inf, 1) = (x, y, z).
ProjMatrix frame_to_matrix(const Frame& f);

struct HyperbolicData {
    int64_t length = 0;            // translation length
    Ext unit;                      // the unit in the diagonal form diag(p^-n u, 1)
    ProjMatrix conjugator;         // g with g.0 = fixed_minus, g.inf = fixed_plus
    BoundaryPoint fixed_minus, fixed_plus;
};

/// Hyperbolic iff 2 nu(trace) < nu(det) on the canonical lift; then the
/// translation length is nu(det) - 2 nu(trace) and the attracting fixed
/// point carries the eigenvalue of smaller valuation.
std::optional<HyperbolicData> classify(const ProjMatrix& g);

/// Max-norm metric on canonical representatives.
PPower dist(const ProjMatrix& g, const ProjMatrix& h);
PPower norm_e(const ProjMatrix& g); // distance to the identity

} // namespace padictree
