#pragma once

#include <string>
#include <string_view>
#include <variant>

#include "heightlab/dynamics.hpp"
#include "heightlab/multipoly.hpp"
#include "heightlab/unipoly.hpp"

namespace heightlab {

/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := factor ('*' factor)*
/// factor := base ('^' uint)?
/// base   := rational | var | '(' expr ')'
/// rational := int ('/' uint)?
/// Whitespace is ignored; there is no implicit multiplication.
///
/// Variables t and z. Degree >= 2 in z gives a Family; otherwise a UniPoly
/// in z (constant coefficients) or in t. Anything else throws ParseError.
using ParsedPoly = std::variant<UniPoly, Family>;
ParsedPoly parse_poly(std::string_view text);

/// Same grammar; the result must be a UniPoly in t (z absent).
UniPoly parse_t_poly(std::string_view text);
/// Same grammar; the result must be a map (z present, constant or Family).
Family parse_map(std::string_view text);

/// Same grammar over a1..a_arity.
MultiPoly parse_multipoly(std::string_view text, unsigned arity);

inline constexpr unsigned max_parse_exponent = 1u << 16;

}  // namespace heightlab
