#pragma once

#include <string_view>

#include "sip/homeo.hpp"

namespace sip {

/// Reads the s-expression forms
///   homeo := (identity) | (chart (piece src dst)*) | (lift perm)
///          | (blockmap perm (override i chart)*) | (compose homeo homeo)
///          | (inverse homeo)
///   perm  := (table (i j)*) | (zigzag) | (perm-compose perm perm) | (perm-inverse perm)
/// where src and dst are intervals "(lo,hi]".  ';' starts a comment.
/// Syntax errors raise ParseError; well-formed but invalid maps raise
/// DomainError.
Homeo parse_homeo(std::string_view text, const BlockSystem& bs);
Perm parse_perm(std::string_view text);

}  // namespace sip
