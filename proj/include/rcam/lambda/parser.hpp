#pragma once

#include <string_view>

#include "rcam/lambda/term.hpp"

namespace rcam::lambda {

// term  := abs | app
// abs   := ("\" | "λ" | "lam") ident "." term
// app   := atom+                      (left-associative)
// atom  := ident | "(" term ")"
// ident := [a-z][a-zA-Z0-9_']*
//
// An abstraction may also close an application (`f \x. x`); its body extends as far right
// as possible. `#` starts a comment running to the end of the line. Throws ParseError carrying the byte offset and the offending token.
Term parse(std::string_view text);

}  // namespace rcam::lambda
