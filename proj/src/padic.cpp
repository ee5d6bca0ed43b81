#include "padictree/padic.hpp"

#include <algorithm>
#include <cassert>

namespace padictree {

namespace {

constexpr int64_t kExactMulCap = 192;  // exact*exact products demote past this
constexpr int64_t kExactSubPad = 64;   // digits kept when exact-exact goes negative

int64_t add_sat(int64_t a, int64_t b) {
    if (a >= kInfPrec || b >= kInfPrec) return kInfPrec;
    int64_t s = a + b;
    return s >= kInfPrec ? kInfPrec : s;
}

uint32_t inv_mod_prime(uint32_t a, int64_t p) {
    // Fermat: a^(p-2) mod p
    uint64_t base = a % uint64_t(p), acc = 1, e = uint64_t(p - 2);
    while (e) {
        if (e & 1) acc = acc * base % uint64_t(p);
        base = base * base % uint64_t(p);
        e >>= 1;
    }
    return uint32_t(acc);
}

} // namespace

void Padic::normalize() {
    size_t lead = 0;
    while (lead < digits_.size() && digits_[lead] == 0) ++lead;
    if (lead > 0) {
        digits_.erase(digits_.begin(), digits_.begin() + lead);
        val_ += int64_t(lead);
    }
    if (exact_) {
        while (!digits_.empty() && digits_.back() == 0) digits_.pop_back();
    }
    if (digits_.empty()) {
        zero_ = true;
        val_ = 0;
        if (exact_) abs_ = kInfPrec;
        return;
    }
    zero_ = false;
    if (exact_) {
        abs_ = kInfPrec;
        return;
    }
    abs_ = val_ + int64_t(digits_.size());
}

Padic Padic::zero(int64_t p) {
    Padic x;
    x.p_ = p;
    x.zero_ = true;
    x.exact_ = true;
    x.abs_ = kInfPrec;
    return x;
}

Padic Padic::zero_mod(int64_t p, int64_t abs_prec) {
    Padic x;
    x.p_ = p;
    x.zero_ = true;
    x.exact_ = false;
    x.abs_ = abs_prec;
    return x;
}

Padic Padic::one(int64_t p) { return p_power(p, 0); }

Padic Padic::p_power(int64_t p, int64_t k) {
    Padic x;
    x.p_ = p;
    x.zero_ = false;
    x.exact_ = true;
    x.val_ = k;
    x.abs_ = kInfPrec;
    x.digits_ = {1};
    return x;
}

Padic Padic::from_int(int64_t p, int64_t value, int64_t prec) {
    if (value == 0) return zero(p);
    if (value > 0) {
        Padic x;
        x.p_ = p;
        x.zero_ = false;
        x.exact_ = true;
        x.val_ = 0;
        uint64_t v = uint64_t(value);
        while (v) {
            x.digits_.push_back(uint32_t(v % uint64_t(p)));
            v /= uint64_t(p);
        }
        x.normalize();
        return x;
    }
    // negative: 0 - |value| with a finite tracked window
    Padic mag = from_int(p, -value, prec);
    Padic z = zero(p);
    z.exact_ = false;
    z.abs_ = mag.val_ + prec;
    return z - mag;
}

Padic Padic::from_rational(int64_t p, int64_t num, int64_t den, int64_t prec) {
    if (den == 0) throw DivisionByZero("rational literal with zero denominator");
    return from_int(p, num, prec) / from_int(p, den, prec);
}

Padic Padic::from_digits(int64_t p, int64_t val, std::vector<uint32_t> digits, bool exact) {
    Padic x;
    x.p_ = p;
    x.zero_ = false;
    x.exact_ = exact;
    x.val_ = val;
    x.digits_ = std::move(digits);
    for (uint32_t d : x.digits_)
        if (int64_t(d) >= p) throw Error("digit out of range for base p");
    x.abs_ = exact ? kInfPrec : val + int64_t(x.digits_.size());
    if (!exact && x.digits_.empty()) x.zero_ = true;
    if (!x.zero_) x.normalize();
    return x;
}

int64_t Padic::valuation() const {
    if (zero_) throw PrecisionExhausted("valuation of a value that vanishes at working precision");
    return val_;
}

int64_t Padic::valuation_clamped(int64_t cap) const {
    if (!zero_) return std::min(val_, cap);
    if (abs_precision() >= cap) return cap;
    throw PrecisionExhausted("not enough digits to bound a valuation");
}

uint32_t Padic::digit(int64_t i) const {
    if (zero_) {
        if (i < abs_precision()) return 0;
        throw PrecisionExhausted("digit past known window of zero");
    }
    if (i < val_) return 0;
    if (i < val_ + int64_t(digits_.size())) return digits_[size_t(i - val_)];
    if (exact_) return 0;
    throw PrecisionExhausted("digit past tracked precision");
}

bool Padic::is_zero_mod(int64_t k) const {
    if (zero_) {
        if (abs_precision() >= k) return true;
        throw PrecisionExhausted("cannot certify divisibility at this precision");
    }
    return val_ >= k;
}

bool Padic::same_mod(const Padic& o, int64_t k) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    if (abs_precision() < k || o.abs_precision() < k)
        throw PrecisionExhausted("cannot compare values modulo p^k at this precision");
    int64_t lo = std::min(val_lower_bound(), o.val_lower_bound());
    if (lo >= k) return true;
    int64_t borrow = 0;
    for (int64_t i = lo; i < k; ++i) {
        int64_t d = int64_t(digit(i)) - int64_t(o.digit(i)) - borrow;
        borrow = 0;
        if (d < 0) {
            d += p_;
            borrow = 1;
        }
        if (d != 0) return false;
    }
    return borrow == 0; // borrow out with all-zero digits cannot happen
}

bool Padic::identical(const Padic& o) const {
    return p_ == o.p_ && zero_ == o.zero_ && exact_ == o.exact_ &&
           (zero_ ? abs_ == o.abs_ : (val_ == o.val_ && abs_ == o.abs_ && digits_ == o.digits_));
}

Padic Padic::operator+(const Padic& o) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    if (zero_ && o.zero_) {
        int64_t a = std::min(abs_precision(), o.abs_precision());
        return a >= kInfPrec ? zero(p_) : zero_mod(p_, a);
    }
    if (zero_ || o.zero_) {
        const Padic& z = zero_ ? *this : o;
        const Padic& x = zero_ ? o : *this;
        if (z.abs_precision() >= x.abs_precision() && z.abs_precision() >= kInfPrec) return x;
        // truncate x to the zero's certainty window
        int64_t hi = std::min(x.abs_precision(), z.abs_precision());
        Padic r;
        r.p_ = p_;
        r.zero_ = false;
        r.exact_ = false;
        r.val_ = x.val_;
        if (x.val_ >= hi) return zero_mod(p_, hi);
        for (int64_t i = x.val_; i < hi; ++i) r.digits_.push_back(x.digit(i));
        r.normalize();
        return r;
    }
    int64_t lo = std::min(val_, o.val_);
    int64_t hi = std::min(abs_precision(), o.abs_precision());
    bool ex = exact_ && o.exact_;
    if (ex) hi = std::max(val_ + int64_t(digits_.size()), o.val_ + int64_t(o.digits_.size())) + 1;
    Padic r;
    r.p_ = p_;
    r.zero_ = false;
    r.exact_ = ex;
    r.val_ = lo;
    r.digits_.reserve(size_t(hi - lo));
    int64_t carry = 0;
    for (int64_t i = lo; i < hi; ++i) {
        int64_t d = int64_t(digit(i)) + int64_t(o.digit(i)) + carry;
        carry = d >= p_ ? 1 : 0;
        if (carry) d -= p_;
        r.digits_.push_back(uint32_t(d));
    }
    if (!ex) {
        r.abs_ = hi;
    } else if (carry) {
        r.digits_.push_back(1);
    }
    r.normalize();
    return r;
}

Padic Padic::operator-(const Padic& o) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    if (o.zero_) {
        Padic neg_zero = o; // symmetric precision handling via addition path
        return *this + neg_zero;
    }
    if (zero_ && !exact_) {
        // 0(mod p^a) - x: negate x then merge precision through addition path
        Padic nx = Padic::zero(p_) - o;
        return *this + nx;
    }
    // here: o is nonzero, *this is nonzero or the exact zero
    int64_t this_end = zero_ ? o.val_ : val_ + int64_t(digits_.size());
    int64_t o_end = o.val_ + int64_t(o.digits_.size());
    int64_t lo = zero_ ? o.val_ : std::min(val_, o.val_);
    bool ex = exact_ && o.exact_;
    int64_t window_end =
        ex ? std::max(this_end, o_end) + 1 : std::min(abs_precision(), o.abs_precision());
    Padic r;
    r.p_ = p_;
    r.zero_ = false;
    r.val_ = lo;
    int64_t borrow = 0;
    int64_t i = lo;
    for (; i < window_end; ++i) {
        int64_t d = int64_t(digit(i)) - int64_t(o.digit(i)) - borrow;
        borrow = 0;
        if (d < 0) {
            d += p_;
            borrow = 1;
        }
        r.digits_.push_back(uint32_t(d));
    }
    if (ex && borrow) {
        // negative exact difference: infinite (p-1)-tail, keep a padded window
        for (int64_t k = 0; k < kExactSubPad; ++k) {
            int64_t d = -borrow;
            borrow = 0;
            if (d < 0) {
                d += p_;
                borrow = 1;
            }
            r.digits_.push_back(uint32_t(d));
        }
        ex = false;
        window_end += kExactSubPad;
    }
    r.exact_ = ex;
    r.abs_ = window_end;
    r.normalize();
    return r;
}

Padic Padic::operator-() const { return zero(p_) - *this; }

Padic Padic::mul(const Padic& o, int64_t digit_cap) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    if (zero_ || o.zero_) {
        int64_t a = add_sat(zero_ ? abs_precision() : val_,
                            o.zero_ ? o.abs_precision() : o.val_);
        return a >= kInfPrec ? zero(p_) : zero_mod(p_, a);
    }
    int64_t na = int64_t(digits_.size()), nb = int64_t(o.digits_.size());
    bool ex = exact_ && o.exact_;
    int64_t n_out;
    if (ex) {
        n_out = na + nb;
        if (n_out > kExactMulCap) {
            n_out = kExactMulCap;
            ex = false;
        }
    } else {
        n_out = std::min(exact_ ? kInfPrec : na, o.exact_ ? kInfPrec : nb);
    }
    if (digit_cap >= 0 && digit_cap < n_out) {
        n_out = digit_cap;
        ex = false;
    }
    Padic r;
    r.p_ = p_;
    r.zero_ = false;
    r.exact_ = ex;
    r.val_ = val_ + o.val_;
    r.digits_.assign(size_t(n_out), 0);
    uint64_t carry = 0;
    for (int64_t k = 0; k < n_out; ++k) {
        uint64_t acc = carry;
        int64_t ilo = std::max<int64_t>(0, k - nb + 1);
        int64_t ihi = std::min(na - 1, k);
        for (int64_t i = ilo; i <= ihi; ++i)
            acc += uint64_t(digits_[size_t(i)]) * uint64_t(o.digits_[size_t(k - i)]);
        r.digits_[size_t(k)] = uint32_t(acc % uint64_t(p_));
        carry = acc / uint64_t(p_);
    }
    if (ex) {
        while (carry) {
            r.digits_.push_back(uint32_t(carry % uint64_t(p_)));
            carry /= uint64_t(p_);
        }
    }
    r.abs_ = ex ? kInfPrec : r.val_ + n_out;
    r.normalize();
    return r;
}

Padic Padic::operator/(const Padic& o) const {
    if (p_ != o.p_) throw Error("prime mismatch");
    if (o.zero_) throw DivisionByZero("division by a value that vanishes at working precision");
    if (zero_) {
        int64_t a = abs_precision() >= kInfPrec ? kInfPrec : abs_ - o.val_;
        return a >= kInfPrec ? zero(p_) : zero_mod(p_, a);
    }
    int64_t na = int64_t(digits_.size()), nb = int64_t(o.digits_.size());
    int64_t n_out = std::min(exact_ ? kInfPrec : na, o.exact_ ? kInfPrec : nb);
    if (n_out >= kInfPrec) // exact/exact: quotient digits go on forever, take a default window
        n_out = std::max({na, nb, kDefaultPrecision});
    if (n_out < kMinSigDigits) throw PrecisionExhausted("division with too few digits");
    // long division, least significant digit first
    std::vector<int64_t> rem(size_t(n_out), 0);
    for (int64_t i = 0; i < n_out; ++i) rem[size_t(i)] = digit(val_ + i);
    uint32_t lead_inv = inv_mod_prime(o.digits_[0], p_);
    Padic q;
    q.p_ = p_;
    q.zero_ = false;
    q.exact_ = false;
    q.val_ = val_ - o.val_;
    q.digits_.assign(size_t(n_out), 0);
    for (int64_t k = 0; k < n_out; ++k) {
        int64_t rk = rem[size_t(k)] % p_;
        if (rk < 0) rk += p_;
        uint32_t qk = uint32_t((uint64_t(rk) * lead_inv) % uint64_t(p_));
        q.digits_[size_t(k)] = qk;
        if (qk != 0) {
            for (int64_t j = 0; j < nb && k + j < n_out; ++j)
                rem[size_t(k + j)] -= int64_t(qk) * int64_t(o.digits_[size_t(j)]);
        }
        // push the (possibly negative) carry upward
        if (k + 1 < n_out) {
            int64_t cur = rem[size_t(k)];
            int64_t carry = (cur - (cur % p_ + p_) % p_) / p_;
            rem[size_t(k + 1)] += carry;
        }
    }
    q.abs_ = q.val_ + n_out;
    q.normalize();
    return q;
}

Padic Padic::inverse() const {
    Padic num = one(p_);
    if (!zero_ && !exact_) {
        // match our own window so the quotient is not artificially truncated
        num.exact_ = false;
        num.abs_ = int64_t(digits_.size());
        num.digits_.assign(digits_.size(), 0);
        num.digits_[0] = 1;
        num.zero_ = false;
        num.val_ = 0;
    }
    return num / *this;
}

Padic Padic::shifted(int64_t k) const {
    Padic r = *this;
    if (r.zero_) {
        if (!r.exact_) r.abs_ += k;
        return r;
    }
    r.val_ += k;
    if (!r.exact_) r.abs_ += k;
    return r;
}

Padic Padic::pow(uint64_t e) const {
    Padic acc = one(p_);
    if (e == 0) return acc;
    Padic base = *this;
    while (e) {
        if (e & 1) acc = acc * base;
        base = base * base;
        e >>= 1;
    }
    return acc;
}

Padic Padic::mod_power(int64_t m) const {
    if (abs_precision() < m)
        throw PrecisionExhausted("residue modulo p^m not determined at this precision");
    if (zero_ || val_ >= m) return zero(p_);
    Padic r;
    r.p_ = p_;
    r.zero_ = false;
    r.exact_ = true;
    r.val_ = val_;
    int64_t hi = std::min(m, val_ + int64_t(digits_.size()));
    r.digits_.assign(digits_.begin(), digits_.begin() + size_t(hi - val_));
    r.normalize();
    return r;
}

Padic Padic::with_sig_digits(int64_t n) const {
    if (zero_ || int64_t(digits_.size()) <= n) return *this;
    Padic r = *this;
    r.digits_.resize(size_t(n));
    r.exact_ = false;
    r.abs_ = r.val_ + n;
    r.normalize();
    return r;
}

std::string Padic::to_literal() const {
    if (zero_) return "0";
    std::string s = std::to_string(val_) + ":";
    if (p_ <= 10) {
        for (uint32_t d : digits_) s += char('0' + d);
    } else {
        for (size_t i = 0; i < digits_.size(); ++i) {
            if (i) s += '.';
            s += std::to_string(digits_[i]);
        }
    }
    return s;
}

uint64_t Padic::to_uint64() const {
    if (zero_) return 0;
    if (!exact_ || val_ < 0) throw Error("value is not an exact nonnegative integer");
    uint64_t acc = 0, scale = 1;
    for (int64_t i = 0; i < val_; ++i) scale *= uint64_t(p_);
    for (uint32_t d : digits_) {
        acc += scale * d;
        scale *= uint64_t(p_);
    }
    return acc;
}

} // namespace padictree
