#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "padictree/errors.hpp"

namespace padictree {

// Sentinel for "known exactly" / infinite absolute precision.
inline constexpr int64_t kInfPrec = int64_t(1) << 48;

// Operations that consume digits (division, residue reads) fail loudly when
// cancellation has left fewer significant digits than this.
inline constexpr int64_t kMinSigDigits = 4;

// Default number of tracked significant digits.
inline constexpr int64_t kDefaultPrecision = 48;

/// Element of Q_p as a truncated base-p expansion with explicit valuation.
///
/// A nonzero value is p^val * (d0 + d1 p + d2 p^2 + ...), d0 != 0, known
/// modulo p^(val + #digits).  Zero is a distinguished marker carrying only
/// the absolute precision to which the value is known to vanish; an exact
/// value (finite digit string, nothing hidden beyond it) has infinite
/// absolute precision.
class Padic {
public:
    Padic() = default;

    static Padic zero(int64_t p);                       // exact 0
    static Padic zero_mod(int64_t p, int64_t abs_prec); // O(p^abs_prec)
    static Padic one(int64_t p);
    static Padic p_power(int64_t p, int64_t k);         // exact p^k
    static Padic from_int(int64_t p, int64_t value, int64_t prec = kDefaultPrecision);
    static Padic from_rational(int64_t p, int64_t num, int64_t den,
                               int64_t prec = kDefaultPrecision);
    static Padic from_digits(int64_t p, int64_t val, std::vector<uint32_t> digits,
                             bool exact);

    int64_t prime() const { return p_; }
    bool is_zero() const { return zero_; }
    bool is_exact() const { return exact_; }

    /// Valuation of a nonzero value; throws on the zero marker.
    int64_t valuation() const;
    /// Lower bound on the valuation that is always available.
    int64_t val_lower_bound() const { return zero_ ? abs_ : val_; }
    /// min(valuation, cap); needs abs precision >= cap to decide for zeros.
    int64_t valuation_clamped(int64_t cap) const;

    /// Absolute precision: value is known modulo p^abs_precision().
    int64_t abs_precision() const { return exact_ ? kInfPrec : abs_; }
    int64_t sig_digits() const { return zero_ ? 0 : int64_t(digits_.size()); }

    /// Coefficient of p^i.  Throws PrecisionExhausted past the known window.
    uint32_t digit(int64_t i) const;

    bool is_unit() const { return !zero_ && val_ == 0; }
    /// Certainly divisible by p^k?  Throws if undecidable at this precision.
    bool is_zero_mod(int64_t k) const;
    bool same_mod(const Padic& o, int64_t k) const;

    Padic operator+(const Padic& o) const;
    Padic operator-(const Padic& o) const;
    Padic operator*(const Padic& o) const { return mul(o, -1); }
    Padic operator/(const Padic& o) const;
    Padic operator-() const;

    Padic mul(const Padic& o, int64_t digit_cap) const;
    Padic inverse() const;
    Padic shifted(int64_t k) const; // * p^k
    Padic pow(uint64_t e) const;

    /// Exact truncation: the residue of the value modulo p^m (digits below m).
    /// Requires abs precision >= m.  The result is exact by construction.
    Padic mod_power(int64_t m) const;
    /// Keep at most n significant digits.
    Padic with_sig_digits(int64_t n) const;

    /// "v:d0d1d2..." form; digits in one base-p character each for p <= 10,
    /// else '.'-separated decimal.  Zero prints as "0".
    std::string to_literal() const;
    /// Exact nonnegative values only: the plain integer it denotes.
    uint64_t to_uint64() const;

    bool identical(const Padic& o) const; // same stored representation

private:
    void normalize();
    void demand_sig() const; // enforce the loud-failure floor

    int64_t p_ = 0;
    bool zero_ = true;
    bool exact_ = true;
    int64_t val_ = 0;  // valuation of digits_[0] when !zero_
    int64_t abs_ = 0;  // absolute precision when !exact_ (or zero_prec for zero)
    std::vector<uint32_t> digits_;
};

} // namespace padictree
