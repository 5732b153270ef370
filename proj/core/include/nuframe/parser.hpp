#pragma once

#include <cstddef>
#include <string_view>

#include "nuframe/expr.hpp"

namespace nuframe {

struct ParseOptions {
  std::size_t max_nodes = 10000;
};

/// Parses the frequency-expression grammar:
///
///   expr     := term (('+'|'-') term)*
///   term     := factor ('*' factor)*
///   factor   := rational | 'i' | 'g' | ident '(' expr ')' | chi
///             | '(' expr ')' | '-' factor
///   ident    := 'sin' | 'cos' | 'sinc' | 'sqrt' | 'abs2' | 'conj'
///   chi      := 'chi' ('('|'[') rational ',' rational (')'|']')
///   rational := integer | integer '/' positive-integer | decimal
///
/// Whitespace is insignificant. A '-' directly in front of a numeric
/// literal folds into a negative Rational constant. Errors carry the byte
/// offset of the offending token.
FreqExpr parse_expr(std::string_view text, const ParseOptions& options = {});

}  // namespace nuframe
