#pragma once

#include <string>
#include <string_view>

#include "logbal/recurrence.hpp"

namespace logbal {

/// Parses text such as
///
///   a[n] = ((2*n+1)/(n+2))*a[n-1] + ((3*(n-1))/(n+2))*a[n-2]; a[0]=1; a[1]=1
///
/// Each term of the rule is `coeff*a[n-k]`, `a[n-k]` or a bare coefficient
/// (the inhomogeneous part, at most one). Coefficients are expressions in n
/// built from integers, + - * /, `^` with a nonnegative integer exponent and
/// parentheses. `#` starts a comment that runs to the end of the line.
///
/// Throws ParseError with a source position on any malformed input.
Recurrence parse_recurrence(std::string_view text);

/// Text that parse_recurrence maps back to an equivalent recurrence.
std::string format_recurrence(const Recurrence& rec);

}  // namespace logbal
