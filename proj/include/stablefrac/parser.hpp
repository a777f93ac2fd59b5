#ifndef STABLEFRAC_PARSER_HPP
#define STABLEFRAC_PARSER_HPP

#include <string>

#include "stablefrac/bipoly.hpp"

namespace stablefrac {

// Result of parsing one polynomial expression.  Variables come in two fixed
// pairs: (x, y) for the half-plane picture and (z, w) for the bidisk; an
// expression may use only one pair.
struct ParsedPoly {
    BiPoly poly;
    bool uses_disk_vars = false;  // z or w appeared
    bool uses_half_vars = false;  // x or y appeared
};

// Grammar: + - * ^, parentheses, integer and a/b rational literals, the
// imaginary unit `i`, identifiers x y z w.  Whitespace is insignificant.
ParsedPoly parse_expression(const std::string& text);

// Convenience wrappers that also enforce the variable pair.
BiPoly parse_halfplane(const std::string& text);  // x, y only
BiPoly parse_disk(const std::string& text);       // z, w only

} // namespace stablefrac

#endif
