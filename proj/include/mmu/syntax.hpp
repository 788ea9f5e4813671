#pragma once

// Text syntax for formulas:
//
//   true  false  p  ~p  phi & phi  phi | phi  <a> phi  [a] phi
//   mu X. phi  nu X. phi  A phi  E phi  ( phi )
//
// Prefix operators bind tighter than `&`, which binds tighter than `|`;
// `mu`/`nu` bodies extend as far right as possible. Atoms start with a
// lower-case letter, fixpoint variables with an upper-case letter. `A` and
// `E` are reserved for the universal modalities. `~` may be applied to any
// closed formula and is resolved to its negation normal form.

#include <string>
#include <string_view>

#include "mmu/formula.hpp"

namespace mmu {

/// Parses a closed formula. Throws ParseError.
Formula parse_formula(std::string_view text);

/// Pretty-prints in the grammar accepted by parse_formula.
std::string to_string(Formula f);

}  // namespace mmu
