#pragma once

// Text forms used on the command line.
//
//   rows      2,1            display order, largest first when canonical
//   J         d^2|3,1|       or |3,1| for weight 0
//   E         |(3,1),(1,0)|
//   poly      expr := [+-] term ([+-] term)*
//             term := factor (* factor)*
//             factor := atom [^ n]
//             atom := integer | x^k_{u,v} | d^n|u,...| | |u,...| | ( expr )
//
// All parsers throw std::invalid_argument on malformed input.

#include <string>
#include <string_view>
#include <vector>

#include "pfarc/order.hpp"
#include "pfarc/ring.hpp"

namespace pfarc {

std::vector<int> parse_int_list(std::string_view text);
JSeq parse_jseq(std::string_view text);
ESeq parse_eseq(std::string_view text);
/// Polynomial in the X ring on p rows; J literals evaluate to their Pfaffian
/// derivatives (sign of the row permutation included, zero on repeats).
Poly parse_expr(std::string_view text, int p);

}  // namespace pfarc
