#pragma once

#include "tbcalc/indexset.hpp"

#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace tbcalc {

// Result of evaluating an index-set expression: a set (possibly a truncated
// view), the three sets returned by c12, or the point list returned by trunc.
using DslValue = std::variant<IndexSet, Closure12, std::vector<IndexPoint>>;

// Grammar (whitespace is ignored everywhere):
//   expr   := atom ('.plus' | '.minus' | '.full')?
//   atom   := 'empty' | 'N0' | 'gen[' (point (',' point)*)? ']'
//           | 'add(' expr ',' expr ')' | 'eu(' expr ',' expr ')' | 'cup(' expr ',' expr ')'
//           | 'shift(' expr ',' exponent ')' | 'c0(' expr ',' real ')'
//           | 'px0(' expr ',' expr ',' real ')' | 'c12(' expr ',' expr ',' real ')'
//           | 'trunc(' expr ',' real ')'
//   point  := '(' exponent ',' int ')'
//   exponent := real (('+' | '-') '(' real ')i')? | '(' real ')i'
//   real   := term (('+' | '-') term)*
//   term   := rational ('*sqrt(' rational ')')? | 'sqrt(' rational ')'
// Projections apply to c12 only; trunc yields a point list that cannot be nested.
DslValue evaluate_dsl(std::string_view text);

// Parses a real surd such as "1/2", "-0.25" or "1+2*sqrt(3)". Throws ParseError.
Surd parse_real(std::string_view text);
Exponent parse_exponent(std::string_view text);

std::string render(const DslValue& v);

} // namespace tbcalc
