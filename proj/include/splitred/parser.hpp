#pragma once

#include <string>

#include "splitred/tower.hpp"

namespace splitred {

// Evaluates an element expression at the given tower level.
//
// Grammar: integer literals, `z` (Teichmueller lift of the residue generator),
// `pi_<level-name>` (including the base), `+ - * / ^`, unary minus and
// parentheses. `^` binds tightest and takes an integer exponent.
fe parse_element(const std::string& expr, const tower& tw, int lvl);

} // namespace splitred
