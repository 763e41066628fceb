#pragma once

#include "concretix/logic/program.hpp"

#include <string_view>

namespace concretix::logic {

/// Parses the logic language:
///
///     fact.                           head :- body.
///     :- body.                        L { h1 : c1; h2 : c2 } U :- body.
///     #minimize { W@L,T1,...,Tn : body; ... }.
///
/// Body literals are atoms, `not` atoms, comparisons (=, !=, <, <=, >, >=)
/// and conditional literals `atom : cond1, cond2` (terminated by `;`).
/// `%` starts a line comment. Every rule is safety checked.
///
/// Throws SyntaxError or SafetyError.
Program parse_program(std::string_view text);

}  // namespace concretix::logic
