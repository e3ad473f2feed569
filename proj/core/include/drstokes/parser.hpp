#pragma once

#include <optional>
#include <string_view>

#include "drstokes/block_matrix.hpp"
#include "drstokes/expression.hpp"

namespace drstokes {

/// Parses the operator-word language:
///
///   expr   := sign? term (('+' | '-') term)*
///   term   := INT? factor* (an INT alone means INT * I)
///   factor := d<q> | ds<q> | Phi<q> | PhiMu<q> | M<q> | Mt<q> | I | I<q> | '(' expr ')'
///
/// Composition is juxtaposition, the rightmost factor acts first. Subscripts
/// may also be written in braces, as in d{1}. When no word fixes the degrees
/// (for instance "I" or "0") `degree_hint` is used for both ends.
/// Throws ParseError carrying the character offset, or DegreeMismatch.
Expression parse_expression(std::string_view text, int n, std::optional<int> degree_hint = std::nullopt);

/// Parses "[[e00, e01], [e10, e11]]"; the row count fixes q = rows - 1.
BlockMatrix parse_block_matrix(std::string_view text, int n);

}  // namespace drstokes
