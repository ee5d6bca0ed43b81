#include "padictree/ext.hpp"

#include <algorithm>
#include <cassert>

namespace padictree {

namespace {

bool is_prime_i64(int64_t n) {
    if (n < 2) return false;
    for (int64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

int64_t pow_mod(int64_t b, int64_t e, int64_t m) {
    int64_t acc = 1;
    b %= m;
    if (b < 0) b += m;
    while (e) {
        if (e & 1) acc = acc * b % m;
        b = b * b % m;
        e >>= 1;
    }
    return acc;
}

bool is_square_residue(int64_t a, int64_t p) { // a a unit mod p
    return pow_mod(a, (p - 1) / 2, p) == 1;
}

// residue field F_{p^2} = F_p(wbar), wbar^2 = c0
struct Fq {
    int64_t x, y;
    bool operator==(const Fq&) const = default;
};

Fq fq_mul(Fq a, Fq b, int64_t p, int64_t c0) {
    return Fq{(a.x * b.x + c0 % p * (a.y * b.y % p)) % p, (a.x * b.y + a.y * b.x) % p};
}

Fq fq_pow(Fq a, int64_t e, int64_t p, int64_t c0) {
    Fq acc{1, 0};
    while (e) {
        if (e & 1) acc = fq_mul(acc, a, p, c0);
        a = fq_mul(a, a, p, c0);
        e >>= 1;
    }
    return acc;
}

int64_t fq_order(Fq a, int64_t p, int64_t c0, const std::vector<int64_t>& factors) {
    int64_t n = p * p - 1;
    for (int64_t q : factors) {
        while (n % q == 0 && fq_pow(a, n / q, p, c0) == Fq{1, 0}) n /= q;
    }
    return n;
}

std::vector<int64_t> distinct_prime_factors(int64_t n) {
    std::vector<int64_t> out;
    for (int64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            out.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) out.push_back(n);
    return out;
}

Padic residue_digit(int64_t p, int64_t v) {
    return v ? Padic::from_digits(p, 0, {uint32_t(v)}, true) : Padic::zero(p);
}

} // namespace

// --- ExtContext -----------------------------------------------------------

ExtContext::~ExtContext() = default;

const Ext& ExtContext::i_value() const { return *i_; }
const Ext& ExtContext::lambda() const { return *lambda_; }
const Ext& ExtContext::phi() const { return *phi_; }

std::shared_ptr<const ExtContext> ExtContext::make(int64_t p, int64_t c, int64_t precision) {
    if (precision < 8 || precision > 4096) throw ConfigError("precision out of range [8, 4096]");
    return build(p, Padic::from_int(p, c, precision + 8), precision);
}

std::shared_ptr<const ExtContext> ExtContext::make_from_minpoly(int64_t p, int64_t b, int64_t c0,
                                                                int64_t precision) {
    if (precision < 8 || precision > 4096) throw ConfigError("precision out of range [8, 4096]");
    // t^2 + b t + c0 -> (t + b/2)^2 = b^2/4 - c0
    return build(p, Padic::from_rational(p, b * b - 4 * c0, 4, precision + 8), precision);
}

std::shared_ptr<const ExtContext> ExtContext::build(int64_t p, Padic c, int64_t precision) {
    if (p < 3 || p > 1000000 || !is_prime_i64(p))
        throw ConfigError("p must be an odd prime between 3 and 10^6");
    std::shared_ptr<ExtContext> ctx(new ExtContext());
    ctx->p_ = p;
    ctx->prec_ = precision;
    if (c.is_zero() || c.valuation() != 0)
        throw ConfigError("extension constant must be a unit");
    ctx->c_ = std::move(c);
    ctx->c0_ = ctx->c_.digit(0);
    if (is_square_residue(ctx->c0_, p))
        throw ConfigError("extension constant must be a non-square unit modulo p");
    ctx->mu_factors_ = distinct_prime_factors(p * p - 1);
    ctx->omega_p_is_one_ = is_square_residue((p - ctx->c0_) % p, p);

    ctx->i_ = std::make_unique<Ext>(sqrt_hensel(Ext::from_int(ctx.get(), -1)));
    ctx->lambda_ = std::make_unique<Ext>(ctx->omega_p_is_one_ ? *ctx->i_
                                                              : Ext::omega(ctx.get()) * *ctx->i_);
    // canonical generator of mu_{p^2-1}: Teichmuller lift of the least-index
    // generator of the residue field's multiplicative group
    Fq g{0, 0};
    bool found = false;
    for (int64_t idx = 1; idx < p * p && !found; ++idx) {
        Fq cand{idx % p, idx / p};
        if (fq_order(cand, p, ctx->c0_, ctx->mu_factors_) == p * p - 1) {
            g = cand;
            found = true;
        }
    }
    if (!found) throw InternalError("no generator of the residue field found");
    Ext lift(ctx.get(), residue_digit(p, g.x), residue_digit(p, g.y));
    ctx->phi_ = std::make_unique<Ext>(teichmuller(lift));
    return ctx;
}

// --- Ext ------------------------------------------------------------------

Ext::Ext(const ExtContext* ctx, Padic a, Padic b) : ctx_(ctx), a_(std::move(a)), b_(std::move(b)) {}

Ext Ext::zero(const ExtContext* ctx) {
    return Ext(ctx, Padic::zero(ctx->prime()), Padic::zero(ctx->prime()));
}
Ext Ext::one(const ExtContext* ctx) {
    return Ext(ctx, Padic::one(ctx->prime()), Padic::zero(ctx->prime()));
}
Ext Ext::omega(const ExtContext* ctx) {
    return Ext(ctx, Padic::zero(ctx->prime()), Padic::one(ctx->prime()));
}
Ext Ext::from_int(const ExtContext* ctx, int64_t n) {
    return Ext(ctx, Padic::from_int(ctx->prime(), n, ctx->precision()), Padic::zero(ctx->prime()));
}
Ext Ext::from_padic(const ExtContext* ctx, Padic a) {
    return Ext(ctx, std::move(a), Padic::zero(ctx->prime()));
}
Ext Ext::p_power(const ExtContext* ctx, int64_t k) {
    return Ext(ctx, Padic::p_power(ctx->prime(), k), Padic::zero(ctx->prime()));
}

bool Ext::is_unit() const {
    if (is_zero()) return false;
    return valuation() == 0;
}

int64_t Ext::valuation() const {
    if (a_.is_zero() && b_.is_zero())
        throw PrecisionExhausted("valuation of a vanishing extension value");
    if (a_.is_zero()) {
        int64_t v = b_.valuation();
        if (a_.abs_precision() < v)
            throw PrecisionExhausted("a-part precision too low to pin the valuation");
        return v;
    }
    if (b_.is_zero()) {
        int64_t v = a_.valuation();
        if (b_.abs_precision() < v)
            throw PrecisionExhausted("b-part precision too low to pin the valuation");
        return v;
    }
    return std::min(a_.valuation(), b_.valuation());
}

int64_t Ext::val_lower_bound() const {
    return std::min(a_.val_lower_bound(), b_.val_lower_bound());
}

int64_t Ext::valuation_clamped(int64_t cap) const {
    int64_t lo = val_lower_bound();
    if (lo >= cap) return cap;
    const Padic& lead = a_.val_lower_bound() <= b_.val_lower_bound() ? a_ : b_;
    if (!lead.is_zero()) return std::min(lead.valuation(), cap);
    throw PrecisionExhausted("valuation not decidable at this precision");
}

int64_t Ext::abs_precision() const { return std::min(a_.abs_precision(), b_.abs_precision()); }

bool Ext::is_zero_mod(int64_t k) const { return a_.is_zero_mod(k) && b_.is_zero_mod(k); }

bool Ext::same_mod(const Ext& o, int64_t k) const {
    return a_.same_mod(o.a_, k) && b_.same_mod(o.b_, k);
}

Ext Ext::operator+(const Ext& o) const { return Ext(ctx_, a_ + o.a_, b_ + o.b_); }
Ext Ext::operator-(const Ext& o) const { return Ext(ctx_, a_ - o.a_, b_ - o.b_); }
Ext Ext::operator-() const { return Ext(ctx_, -a_, -b_); }

Ext Ext::mul(const Ext& o, int64_t cap) const {
    // (a + w b)(c + w d) = (ac + C bd) + w(ad + bc),  C = w^2
    const Padic& C = ctx_->c();
    Padic ac = a_.mul(o.a_, cap);
    Padic bd = b_.mul(o.b_, cap);
    Padic ad = a_.mul(o.b_, cap);
    Padic bc = b_.mul(o.a_, cap);
    return Ext(ctx_, ac + bd.mul(C, cap), ad + bc);
}

Padic Ext::norm_to_qp() const { return a_ * a_ - (b_ * b_) * ctx_->c(); }

Ext Ext::inverse() const {
    if (is_zero()) throw DivisionByZero("inverse of a vanishing extension value");
    if (in_base_field()) return Ext(ctx_, a_.inverse(), Padic::zero(prime()));
    Padic n = norm_to_qp();
    Ext cj = conj();
    return Ext(ctx_, cj.a_ / n, cj.b_ / n);
}

Ext Ext::operator/(const Ext& o) const {
    if (o.is_zero()) throw DivisionByZero("division by a vanishing extension value");
    if (o.in_base_field()) return Ext(ctx_, a_ / o.a_, b_ / o.a_);
    Padic n = o.norm_to_qp();
    Ext num = mul(o.conj(), -1);
    return Ext(ctx_, num.a_ / n, num.b_ / n);
}

Ext Ext::shifted(int64_t k) const { return Ext(ctx_, a_.shifted(k), b_.shifted(k)); }

Ext Ext::pow(uint64_t e) const {
    Ext acc = one(ctx_);
    Ext base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Ext Ext::mod_power(int64_t m) const { return Ext(ctx_, a_.mod_power(m), b_.mod_power(m)); }

Ext Ext::with_sig_digits(int64_t n) const {
    return Ext(ctx_, a_.with_sig_digits(n), b_.with_sig_digits(n));
}

std::pair<int64_t, int64_t> Ext::residue() const {
    if (val_lower_bound() < 0) throw Error("residue of a non-integral value");
    if (abs_precision() < 1) throw PrecisionExhausted("residue unknown at this precision");
    return {int64_t(a_.digit(0)), int64_t(b_.digit(0))};
}

std::string Ext::to_literal() const {
    if (b_.is_zero()) return a_.to_literal();
    if (a_.is_zero()) return "w*" + b_.to_literal();
    return a_.to_literal() + " + w*" + b_.to_literal();
}

// --- analytic layer -------------------------------------------------------

Ext sqrt_hensel(const Ext& x) {
    const ExtContext* ctx = x.ctx();
    int64_t p = ctx->prime();
    if (x.is_zero()) {
        if (x.is_exact()) return Ext::zero(ctx);
        throw PrecisionExhausted("square root of an unresolved zero");
    }
    int64_t v = x.valuation();
    if (v % 2 != 0) throw OddValuation("square root requires even valuation");
    Ext u = x.shifted(-v);
    auto [rx, ry] = u.residue();
    int64_t c0 = ctx->c_residue();
    bool found = false;
    Fq s{0, 0};
    for (int64_t yy = 0; yy < p && !found; ++yy)
        for (int64_t xx = 0; xx < p && !found; ++xx) {
            if (xx == 0 && yy == 0) continue;
            Fq cand{xx, yy};
            if (fq_mul(cand, cand, p, c0) == Fq{rx, ry}) {
                s = cand;
                found = true;
            }
        }
    if (!found) throw NotASquare("residue is not a square in the residue field");
    // canonical branch: smaller index in the fixed residue enumeration
    int64_t idx = ctx->residue_index(s.x, s.y);
    int64_t idx_neg = ctx->residue_index((p - s.x) % p, (p - s.y) % p);
    if (idx_neg < idx) s = Fq{(p - s.x) % p, (p - s.y) % p};

    Ext z(ctx, residue_digit(p, s.x), residue_digit(p, s.y));
    Ext half = Ext::from_int(ctx, 2).inverse();
    int64_t target = std::min<int64_t>(u.abs_precision(), ctx->precision()) - 1;
    for (int iter = 0;; ++iter) {
        Ext z2 = z * z;
        if (z2.abs_precision() >= target && u.abs_precision() >= target && z2.same_mod(u, target))
            break;
        if (iter >= 64) throw InternalError("square-root iteration failed to converge");
        z = (z + u / z) * half;
    }
    // certified modulo p^target only
    return z.with_sig_digits(target).shifted(v / 2);
}

Ext teichmuller(const Ext& x) {
    const ExtContext* ctx = x.ctx();
    if (!x.is_unit()) throw NotAUnit("Teichmuller lift requires a unit");
    int64_t target = std::min<int64_t>(x.abs_precision(), ctx->precision()) - 1;
    uint64_t q = uint64_t(ctx->prime()) * uint64_t(ctx->prime());
    Ext z = x;
    for (int64_t k = 0; k <= target + 2; ++k) {
        Ext nz = z.pow(q);
        if (nz.abs_precision() >= target && z.abs_precision() >= target && nz.same_mod(z, target))
            return nz.with_sig_digits(target); // certified modulo p^target only
        z = nz;
    }
    return z.with_sig_digits(target);
}

namespace {

Padic small_int(const ExtContext* ctx, int64_t n) {
    return Padic::from_int(ctx->prime(), n, ctx->precision());
}

Ext div_scalar(const Ext& x, const Padic& n) { return Ext(x.ctx(), x.a() / n, x.b() / n); }

Ext mul_scalar(const Ext& x, const Padic& n) { return Ext(x.ctx(), x.a() * n, x.b() * n); }

void require_small(const Ext& x, const char* who) {
    if (x.val_lower_bound() < 1)
        throw OutOfConvergenceDomain(std::string(who) + " requires |x| <= 1/p");
}

} // namespace

Ext exp_p(const Ext& x) {
    const ExtContext* ctx = x.ctx();
    require_small(x, "exp");
    Ext one = Ext::one(ctx);
    if (x.is_zero()) return one;
    Ext sum = one;
    Ext term = one;
    int64_t stop = ctx->precision() + 2;
    for (int64_t n = 1; n < 16 * ctx->precision() + 64; ++n) {
        term = div_scalar(term * x, small_int(ctx, n));
        if (term.is_zero() || term.val_lower_bound() > stop) return sum;
        sum = sum + term;
    }
    throw OutOfConvergenceDomain("exp series did not converge");
}

Ext log_p(const Ext& x) {
    const ExtContext* ctx = x.ctx();
    Ext z = x - Ext::one(ctx);
    if (z.is_zero()) return Ext::zero(ctx);
    require_small(z, "log");
    // log(1+z) = sum (-1)^(n+1) z^n / n
    Ext sum = z;
    Ext zn = z;
    int64_t stop = ctx->precision() + 2;
    for (int64_t n = 2; n < 16 * ctx->precision() + 64; ++n) {
        zn = zn * z;
        if (zn.is_zero() || zn.val_lower_bound() > stop + 8) return sum;
        Ext term = div_scalar(zn, small_int(ctx, n));
        if (n % 2 == 0) term = -term;
        if (term.val_lower_bound() <= stop) sum = sum + term;
    }
    throw OutOfConvergenceDomain("log series did not converge");
}

Ext sin_p(const Ext& x) {
    const ExtContext* ctx = x.ctx();
    require_small(x, "sin");
    if (x.is_zero()) return Ext::zero(ctx);
    Ext x2 = x * x;
    Ext sum = x;
    Ext term = x;
    int64_t stop = ctx->precision() + 2;
    for (int64_t n = 1; n < 8 * ctx->precision() + 64; ++n) {
        term = div_scalar(term * x2, small_int(ctx, 2 * n) * small_int(ctx, 2 * n + 1));
        term = -term;
        if (term.is_zero() || term.val_lower_bound() > stop) return sum;
        sum = sum + term;
    }
    throw OutOfConvergenceDomain("sin series did not converge");
}

Ext cos_p(const Ext& x) {
    const ExtContext* ctx = x.ctx();
    require_small(x, "cos");
    Ext one = Ext::one(ctx);
    if (x.is_zero()) return one;
    Ext x2 = x * x;
    Ext sum = one;
    Ext term = one;
    int64_t stop = ctx->precision() + 2;
    for (int64_t n = 1; n < 8 * ctx->precision() + 64; ++n) {
        term = div_scalar(term * x2, small_int(ctx, 2 * n - 1) * small_int(ctx, 2 * n));
        term = -term;
        if (term.is_zero() || term.val_lower_bound() > stop) return sum;
        sum = sum + term;
    }
    throw OutOfConvergenceDomain("cos series did not converge");
}

Ext arcsin_p(const Ext& x) {
    const ExtContext* ctx = x.ctx();
    require_small(x, "arcsin");
    if (x.is_zero()) return Ext::zero(ctx);
    // arcsin y = sum C(2n,n) / (4^n (2n+1)) y^(2n+1)
    Ext y2 = x * x;
    Ext sum = x;
    Ext term = x;
    int64_t stop = ctx->precision() + 2;
    for (int64_t n = 1; n < 8 * ctx->precision() + 64; ++n) {
        Padic num = small_int(ctx, (2 * n - 1) * (2 * n - 1));
        Padic den = small_int(ctx, 2 * n) * small_int(ctx, 2 * n + 1);
        term = div_scalar(mul_scalar(term * y2, num), den);
        if (term.is_zero() || term.val_lower_bound() > stop) return sum;
        sum = sum + term;
    }
    throw OutOfConvergenceDomain("arcsin series did not converge");
}

UnitDecomposition polar_decompose(const Ext& a) {
    const ExtContext* ctx = a.ctx();
    if (!a.is_unit()) throw NotAUnit("polar decomposition requires a unit");
    Ext zeta = teichmuller(a);
    Ext s = a / zeta; // in 1 + p O_K
    Padic ss = s.norm_to_qp();
    Ext r_ext = sqrt_hensel(Ext::from_padic(ctx, ss));
    if (!r_ext.in_base_field()) throw InternalError("radial part escaped the base field");
    Ext u = s / r_ext; // norm-one principal unit
    Ext l = log_p(u);
    Ext theta_ext = l / ctx->lambda();
    if (!theta_ext.b().is_zero()) throw InternalError("angular part escaped the base field");
    return UnitDecomposition{r_ext.a(), zeta, theta_ext.a()};
}

int64_t teichmuller_order(const Ext& zeta) {
    const ExtContext* ctx = zeta.ctx();
    auto [x, y] = zeta.residue();
    return fq_order(Fq{x, y}, ctx->prime(), ctx->c_residue(), ctx->mu_order_prime_factors());
}

DensityWitness density_check(const Ext& a) {
    const ExtContext* ctx = a.ctx();
    UnitDecomposition d = polar_decompose(a);
    DensityWitness w;
    w.zeta_order = teichmuller_order(d.zeta);
    w.zeta_full_order = (w.zeta_order == ctx->prime() * ctx->prime() - 1);
    if (d.theta.is_zero()) {
        w.theta_valuation = -1;
        w.theta_val_one = false;
    } else {
        w.theta_valuation = d.theta.valuation();
        w.theta_val_one = (w.theta_valuation == 1);
    }
    w.dense = w.zeta_full_order && w.theta_val_one;
    return w;
}

} // namespace padictree
