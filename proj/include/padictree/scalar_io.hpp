#pragma once

#include <array>
#include <string>
#include <string_view>

#include "padictree/ext.hpp"

namespace padictree {

/// Base-field literal: integer, fraction "n/m" (m coprime to p), or
/// "v:d0d1d2..." meaning p^v * (d0 + d1 p + ...).
Padic parse_padic(int64_t p, std::string_view text, int64_t prec = kDefaultPrecision);

/// Extension literal grammar (whitespace-insensitive):
///   expr    := term (('+'|'-') term)*
///   term    := factor (('*'|'/') factor)*
///   factor  := '-' factor | primary ('^' uint)?
///   primary := uint | vliteral | 'w' | 'i' | 'phi'
///            | 'sqrt(' expr ')' | 'teich(' expr ')' | '(' expr ')'
/// so "a + w*b", "2+2*w", "phi*(sqrt(1+2*3^2)+w*3)", "1/3" all parse.
Ext parse_ext(const ExtContext* ctx, std::string_view text);

/// "[[e11,e12],[e21,e22]]" with scalar-literal entries.
std::array<Ext, 4> parse_matrix_entries(const ExtContext* ctx, std::string_view text);

/// Boundary literal: "inf" or a scalar literal.  Returns (is_inf, value).
std::pair<bool, Ext> parse_boundary_literal(const ExtContext* ctx, std::string_view text);

/// Compact decimal rendering "x" or "x+w*y" for short exact integral values;
/// falls back to the digit-literal form otherwise.
std::string ext_short_string(const Ext& x);

} // namespace padictree
