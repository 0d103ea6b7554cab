#ifndef DIRACRED_CORE_EXPR_PARSE_HPP
#define DIRACRED_CORE_EXPR_PARSE_HPP

#include "ratfn.hpp"

namespace diracred {

/// Parses an expression over the chart's coordinates into a reduced
/// rational function.
///
/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := base ('^' uint)?
///   base   := int | ident | '(' expr ')' | '-' factor
///
/// Errors: SyntaxError (position-annotated), UnknownCoordinate,
/// DivisionByZeroPolynomial.
RatFn parse_expr(const std::string& text, const ChartPtr& chart);

} // namespace diracred

#endif
