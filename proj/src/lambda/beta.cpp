#include "rcam/lambda/beta.hpp"

#include "rcam/error.hpp"

namespace rcam::lambda {

namespace {

std::string fresh_name(const std::string& base, const std::set<std::string>& avoid) {
    for (std::size_t i = 1;; ++i) {
        std::string candidate = base + "_" + std::to_string(i);
        if (!avoid.contains(candidate)) return candidate;
    }
}

Term subst(const Term& t, const std::string& x, const Term& v, const std::set<std::string>& fv_v) {
    if (t.is_var()) return t.as_var().name == x ? v : t;
    if (t.is_app()) {
        return Term::app(subst(t.as_app().fun, x, v, fv_v), subst(t.as_app().arg, x, v, fv_v));
    }
    const auto& [param, body] = t.as_lam();
    if (param == x) return t;
    if (!fv_v.contains(param)) return Term::lam(param, subst(body, x, v, fv_v));
    auto avoid = free_vars(body);
    avoid.insert(fv_v.begin(), fv_v.end());
    avoid.insert(x);
    std::string renamed = fresh_name(param, avoid);
    Term body2 = subst(body, param, Term::var(renamed), {renamed});
    return Term::lam(renamed, subst(body2, x, v, fv_v));
}

std::optional<BetaStep> step_closed(const Term& t) {
    if (!t.is_app()) return std::nullopt;
    const auto& [fun, arg] = t.as_app();
    if (auto inner = step_closed(arg)) {
        inner->location.path.insert(inner->location.path.begin(), Dir::into_arg);
        return BetaStep{Term::app(fun, std::move(inner->reduct)), std::move(inner->location)};
    }
    if (auto inner = step_closed(fun)) {
        inner->location.path.insert(inner->location.path.begin(), Dir::into_fun);
        return BetaStep{Term::app(std::move(inner->reduct), arg), std::move(inner->location)};
    }
    if (fun.is_lam()) {
        return BetaStep{substitute(fun.as_lam().body, fun.as_lam().param, arg), RedexLocation{}};
    }
    // value applied to a variable head: only possible for open terms
    throw OpenTermError("stuck application with variable head: " + print(t));
}

}  // namespace

Term substitute(const Term& t, const std::string& x, const Term& v) {
    return subst(t, x, v, free_vars(v));
}

std::optional<BetaStep> step_beta_v(const Term& t) {
    if (auto fv = free_vars(t); !fv.empty())
        throw OpenTermError("term is not closed: free variable '" + *fv.begin() + "'");
    return step_closed(t);
}

std::optional<BetaNormal> normalize_beta_v(const Term& t, std::size_t fuel) {
    if (auto fv = free_vars(t); !fv.empty())
        throw OpenTermError("term is not closed: free variable '" + *fv.begin() + "'");
    Term cur = t;
    for (std::size_t steps = 0;; ++steps) {
        auto next = step_closed(cur);
        if (!next) return BetaNormal{cur, steps};
        if (steps == fuel) return std::nullopt;
        cur = std::move(next->reduct);
    }
}

bool is_right_v_context(const Term& t, const RedexLocation& at) {
    const Term* cur = &t;
    for (Dir d : at.path) {
        if (!cur->is_app()) return false;
        const auto& [fun, arg] = cur->as_app();
        if (d == Dir::into_fun) {
            if (!arg.is_value()) return false;
            cur = &fun;
        } else {
            cur = &arg;
        }
    }
    return true;
}

}  // namespace rcam::lambda
