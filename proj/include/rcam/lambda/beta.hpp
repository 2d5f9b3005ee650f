#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "rcam/lambda/term.hpp"

namespace rcam::lambda {

enum class Dir { into_fun, into_arg };

/// Path from the root to a contracted redex.
struct RedexLocation {
    std::vector<Dir> path;
    friend bool operator==(const RedexLocation&, const RedexLocation&) = default;
};

struct BetaStep {
    Term reduct;
    RedexLocation location;
};

struct BetaNormal {
    Term term;
    std::size_t steps;
};

/// Capture-avoiding t{x <- v}.
Term substitute(const Term& t, const std::string& x, const Term& v);

/// One right-to-left weak call-by-value step. Absent iff t is a value.
/// Throws OpenTermError if t is not closed.
std::optional<BetaStep> step_beta_v(const Term& t);

/// Iterates step_beta_v at most `fuel` times; nullopt when fuel runs out first.
std::optional<BetaNormal> normalize_beta_v(const Term& t, std::size_t fuel);

/// True iff the path satisfies R ::= <.> | t R | R v against `t`.
bool is_right_v_context(const Term& t, const RedexLocation& at);

}  // namespace rcam::lambda
