#pragma once

#include <set>
#include <string>
#include <string_view>

#include "crossratio/ratfunc.hpp"

namespace crossratio {

/// Parse a rational expression over `ring`.
///
///   expr   := term (('+'|'-') term)*
///   term   := unary (('*'|'/') unary)*
///   unary  := ('-'|'+') unary | factor
///   factor := base ('^' nat)?
///   base   := number | 'i' | identifier | '(' expr ')'
///
/// Identifiers must be ring variables. `i` denotes a square root of -1 unless
/// the ring declares a variable named `i`.
RatFunc parse_expr(std::string_view text, const Ring& ring);

/// Identifiers occurring in `text` (excluding a bare `i`), in sorted order.
std::set<std::string> collect_identifiers(std::string_view text);

}  // namespace crossratio
