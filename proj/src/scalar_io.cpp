#include "padictree/scalar_io.hpp"

#include <cctype>
#include <cstdlib>

namespace padictree {

namespace {

struct Cursor {
    std::string_view s;
    size_t i = 0;

    void skip_ws() {
        while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
    }
    bool eof() {
        skip_ws();
        return i >= s.size();
    }
    char peek() {
        skip_ws();
        return i < s.size() ? s[i] : '\0';
    }
    bool accept(char c) {
        skip_ws();
        if (i < s.size() && s[i] == c) {
            ++i;
            return true;
        }
        return false;
    }
    void expect(char c) {
        if (!accept(c))
            throw ConfigError("scalar literal: expected '" + std::string(1, c) + "' in \"" +
                              std::string(s) + "\"");
    }
    bool accept_word(std::string_view w) {
        skip_ws();
        if (s.substr(i, w.size()) == w) {
            size_t after = i + w.size();
            // keywords must not run into an identifier tail
            if (after < s.size() && (std::isalnum(static_cast<unsigned char>(s[after])) || s[after] == '_'))
                return false;
            i = after;
            return true;
        }
        return false;
    }
    int64_t read_uint() {
        skip_ws();
        if (i >= s.size() || !std::isdigit(static_cast<unsigned char>(s[i])))
            throw ConfigError("scalar literal: expected a number in \"" + std::string(s) + "\"");
        int64_t v = 0;
        while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) {
            v = v * 10 + (s[i] - '0');
            if (v > (int64_t(1) << 56)) throw ConfigError("scalar literal: integer too large");
            ++i;
        }
        return v;
    }
};

Padic parse_vliteral_digits(int64_t p, int64_t val, Cursor& c, int64_t prec) {
    // after the ':': base-p digit characters for p <= 10, else dot-separated
    std::vector<uint32_t> digits;
    if (p <= 10) {
        c.skip_ws();
        while (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            int64_t d = c.s[c.i] - '0';
            if (d >= p) throw ConfigError("digit out of range for base p");
            digits.push_back(uint32_t(d));
            ++c.i;
        }
    } else {
        for (;;) {
            int64_t d = c.read_uint();
            if (d >= p) throw ConfigError("digit out of range for base p");
            digits.push_back(uint32_t(d));
            if (!c.accept('.')) break;
        }
    }
    if (digits.empty()) throw ConfigError("empty digit string in scalar literal");
    (void)prec;
    return Padic::from_digits(p, val, std::move(digits), true);
}

struct ExtParser {
    const ExtContext* ctx;
    Cursor c;

    Ext expr() {
        Ext acc = term();
        for (;;) {
            if (c.accept('+')) acc = acc + term();
            else if (c.accept('-')) acc = acc - term();
            else return acc;
        }
    }

    Ext term() {
        Ext acc = factor();
        for (;;) {
            if (c.accept('*')) acc = acc * factor();
            else if (c.accept('/')) acc = acc / factor();
            else return acc;
        }
    }

    Ext factor() {
        if (c.accept('-')) return -factor();
        Ext base = primary();
        if (c.accept('^')) {
            int64_t e = c.read_uint();
            base = base.pow(uint64_t(e));
        }
        return base;
    }

    Ext primary() {
        if (c.accept_word("sqrt")) {
            c.expect('(');
            Ext inner = expr();
            c.expect(')');
            return sqrt_hensel(inner);
        }
        if (c.accept_word("teich")) {
            c.expect('(');
            Ext inner = expr();
            c.expect(')');
            return teichmuller(inner);
        }
        if (c.accept_word("phi")) return ctx->phi();
        if (c.accept_word("w")) return Ext::omega(ctx);
        if (c.accept_word("i")) return ctx->i_value();
        if (c.accept('(')) {
            Ext inner = expr();
            c.expect(')');
            return inner;
        }
        c.skip_ws();
        if (c.i < c.s.size() && std::isdigit(static_cast<unsigned char>(c.s[c.i]))) {
            size_t mark = c.i;
            int64_t n = c.read_uint();
            if (c.i < c.s.size() && c.s[c.i] == ':') {
                ++c.i;
                return Ext::from_padic(ctx, parse_vliteral_digits(ctx->prime(), n, c,
                                                                  ctx->precision()));
            }
            (void)mark;
            return Ext::from_int(ctx, n);
        }
        throw ConfigError("scalar literal: unexpected input in \"" + std::string(c.s) + "\"");
    }
};

} // namespace

Padic parse_padic(int64_t p, std::string_view text, int64_t prec) {
    Cursor c{text};
    bool neg = c.accept('-');
    int64_t head = c.read_uint();
    Padic out = Padic::from_int(p, head, prec);
    if (c.accept(':')) {
        out = parse_vliteral_digits(p, neg ? -head : head, c, prec);
        neg = false;
    } else if (c.accept('/')) {
        int64_t den = c.read_uint();
        out = Padic::from_rational(p, head, den, prec);
    }
    if (!c.eof()) throw ConfigError("trailing input in base-field literal \"" + std::string(text) + "\"");
    return neg ? -out : out;
}

Ext parse_ext(const ExtContext* ctx, std::string_view text) {
    // allow the sign of a leading v-literal's valuation: "-2:12" parses as a
    // whole literal, not negation
    Cursor probe{text};
    if (probe.accept('-')) {
        size_t num_start = probe.i;
        probe.skip_ws();
        if (probe.i < text.size() && std::isdigit(static_cast<unsigned char>(text[probe.i]))) {
            (void)probe.read_uint();
            if (probe.i < text.size() && text[probe.i] == ':') {
                Cursor c{text};
                c.accept('-');
                int64_t v = c.read_uint();
                c.expect(':');
                Padic val = parse_vliteral_digits(ctx->prime(), -v, c, ctx->precision());
                if (!c.eof()) throw ConfigError("trailing input in scalar literal");
                return Ext::from_padic(ctx, val);
            }
        }
        (void)num_start;
    }
    ExtParser parser{ctx, Cursor{text}};
    Ext out = parser.expr();
    if (!parser.c.eof())
        throw ConfigError("trailing input in scalar literal \"" + std::string(text) + "\"");
    return out;
}

std::array<Ext, 4> parse_matrix_entries(const ExtContext* ctx, std::string_view text) {
    Cursor c{text};
    std::array<Ext, 4> out{Ext::zero(ctx), Ext::zero(ctx), Ext::zero(ctx), Ext::zero(ctx)};
    c.expect('[');
    size_t k = 0;
    for (int row = 0; row < 2; ++row) {
        c.expect('[');
        for (int col = 0; col < 2; ++col) {
            // scan the entry up to the next top-level ',' or ']'
            c.skip_ws();
            size_t start = c.i;
            int depth = 0;
            while (c.i < c.s.size()) {
                char ch = c.s[c.i];
                if (ch == '(') ++depth;
                if (ch == ')') --depth;
                if (depth == 0 && (ch == ',' || ch == ']')) break;
                ++c.i;
            }
            out[k++] = parse_ext(ctx, c.s.substr(start, c.i - start));
            if (col == 0) c.expect(',');
        }
        c.expect(']');
        if (row == 0) c.expect(',');
    }
    c.expect(']');
    if (!c.eof()) throw ConfigError("trailing input in matrix literal");
    return out;
}

std::pair<bool, Ext> parse_boundary_literal(const ExtContext* ctx, std::string_view text) {
    Cursor c{text};
    if (c.accept_word("inf")) {
        if (!c.eof()) throw ConfigError("trailing input in boundary literal");
        return {true, Ext::zero(ctx)};
    }
    return {false, parse_ext(ctx, text)};
}

std::string ext_short_string(const Ext& x) {
    if (x.is_zero()) return "0";
    if (x.is_exact() && x.val_lower_bound() >= 0) {
        bool small = x.a().abs_precision() == kInfPrec && x.b().abs_precision() == kInfPrec;
        int64_t enda = x.a().is_zero() ? 0 : x.a().valuation() + x.a().sig_digits();
        int64_t endb = x.b().is_zero() ? 0 : x.b().valuation() + x.b().sig_digits();
        int64_t bits = 64 - __builtin_clzll(uint64_t(x.prime()));
        if (small && enda * bits <= 60 && endb * bits <= 60) {
            auto as_dec = [&](const Padic& part) -> uint64_t { return part.to_uint64(); };
            uint64_t xa = as_dec(x.a());
            uint64_t xb = as_dec(x.b());
            if (xb == 0) return std::to_string(xa);
            if (xa == 0) return "w*" + std::to_string(xb);
            return std::to_string(xa) + "+w*" + std::to_string(xb);
        }
    }
    return x.to_literal();
}

} // namespace padictree
