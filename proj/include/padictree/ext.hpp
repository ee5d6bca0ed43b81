#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "padictree/padic.hpp"

namespace padictree {

class Ext;

/// Ambient data for K = Q_p(w), w^2 = c with c a non-square unit.
///
/// Also fixes the constants the analytic layer needs: i = sqrt(-1) in K,
/// the flag telling whether w = alpha*i for some alpha in Q_p (then the
/// rotation parameter is lambda = i, otherwise lambda = w*i), and the
/// canonical generator phi of the (p^2-1)-th roots of unity.
class ExtContext {
public:
    static std::shared_ptr<const ExtContext> make(int64_t p, int64_t c,
                                                  int64_t precision = kDefaultPrecision);
    /// t^2 + b t + c0: normalized by completing the square to w^2 = b^2/4 - c0.
    static std::shared_ptr<const ExtContext> make_from_minpoly(int64_t p, int64_t b, int64_t c0,
                                                               int64_t precision = kDefaultPrecision);

    int64_t prime() const { return p_; }
    int64_t precision() const { return prec_; }
    const Padic& c() const { return c_; }
    int64_t c_residue() const { return c0_; }
    bool omega_p_is_one() const { return omega_p_is_one_; }
    const Ext& i_value() const;
    const Ext& lambda() const; // omega_p * i
    const Ext& phi() const;    // canonical generator of mu_{p^2-1}
    const std::vector<int64_t>& mu_order_prime_factors() const { return mu_factors_; }

    /// Fixed enumeration of O_K/p: index = x + p*y for the residue x + w y.
    int64_t residue_index(int64_t x, int64_t y) const { return x + p_ * y; }

    ~ExtContext();

private:
    ExtContext() = default;
    static std::shared_ptr<const ExtContext> build(int64_t p, Padic c, int64_t precision);

    int64_t p_ = 0;
    int64_t prec_ = 0;
    int64_t c0_ = 0; // c mod p
    Padic c_;
    bool omega_p_is_one_ = false;
    std::unique_ptr<Ext> i_, lambda_, phi_;
    std::vector<int64_t> mu_factors_;
};

/// Element a + w b of the unramified quadratic extension K = Q_p(w).
/// |a + w b| = max(|a|, |b|).
class Ext {
public:
    Ext() = default;
    Ext(const ExtContext* ctx, Padic a, Padic b);

    static Ext zero(const ExtContext* ctx);
    static Ext one(const ExtContext* ctx);
    static Ext omega(const ExtContext* ctx);
    static Ext from_int(const ExtContext* ctx, int64_t n);
    static Ext from_padic(const ExtContext* ctx, Padic a);
    static Ext p_power(const ExtContext* ctx, int64_t k);

    const ExtContext* ctx() const { return ctx_; }
    const Padic& a() const { return a_; }
    const Padic& b() const { return b_; }
    int64_t prime() const { return ctx_->prime(); }

    bool is_zero() const { return a_.is_zero() && b_.is_zero(); }
    bool in_base_field() const { return b_.is_zero(); }
    bool is_unit() const;
    bool is_exact() const { return a_.is_exact() && b_.is_exact(); }

    int64_t valuation() const;
    int64_t val_lower_bound() const;
    int64_t valuation_clamped(int64_t cap) const;
    int64_t abs_precision() const;

    bool is_zero_mod(int64_t k) const;
    bool same_mod(const Ext& o, int64_t k) const;

    Ext operator+(const Ext& o) const;
    Ext operator-(const Ext& o) const;
    Ext operator*(const Ext& o) const { return mul(o, -1); }
    Ext operator/(const Ext& o) const;
    Ext operator-() const;

    Ext mul(const Ext& o, int64_t digit_cap) const;
    Ext conj() const { return Ext(ctx_, a_, -b_); }
    Ext inverse() const;
    Ext shifted(int64_t k) const;
    Ext pow(uint64_t e) const;
    /// a^2 - c b^2 as a base-field value.
    Padic norm_to_qp() const;

    Ext mod_power(int64_t m) const;
    Ext with_sig_digits(int64_t n) const;

    /// Residue pair (a mod p, b mod p); requires valuation >= 0.
    std::pair<int64_t, int64_t> residue() const;

    std::string to_literal() const;

    bool identical(const Ext& o) const { return a_.identical(o.a_) && b_.identical(o.b_); }

private:
    const ExtContext* ctx_ = nullptr;
    Padic a_, b_;
};

// --- analytic operations -------------------------------------------------

/// Canonical square root: unit part residue is the smaller of the two root
/// residues in the fixed enumeration of F_{p^2}.
Ext sqrt_hensel(const Ext& x);

/// Teichmuller lift: the root of unity congruent to x mod p, as lim x^(p^(2n)).
Ext teichmuller(const Ext& x);

Ext exp_p(const Ext& x);    // |x| <= 1/p
Ext log_p(const Ext& x);    // x in 1 + p O_K
Ext sin_p(const Ext& x);    // |x| <= 1/p
Ext cos_p(const Ext& x);    // |x| <= 1/p
Ext arcsin_p(const Ext& x); // |x| <= 1/p

/// a = r * zeta * exp(i w_p theta) with r in 1+pZ_p, zeta in mu_{p^2-1},
/// theta in pZ_p.
struct UnitDecomposition {
    Padic r;
    Ext zeta;
    Padic theta;
};

UnitDecomposition polar_decompose(const Ext& a);

/// Multiplicative order of the Teichmuller part, read off in the residue field.
int64_t teichmuller_order(const Ext& zeta);

struct DensityWitness {
    bool dense = false;
    bool zeta_full_order = false;
    int64_t zeta_order = 0;
    bool theta_val_one = false;
    int64_t theta_valuation = -1; // -1 encodes "theta vanishes at precision"
};

/// True iff <a> is dense in mu_{p^2-1} x S^1_p: the Teichmuller part has full
/// order p^2-1 and theta has valuation exactly 1.
DensityWitness density_check(const Ext& a);

} // namespace padictree
