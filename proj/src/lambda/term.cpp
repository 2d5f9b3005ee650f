#include "rcam/lambda/term.hpp"

#include <vector>

namespace rcam::lambda {

Term Term::var(std::string name) {
    return Term(std::make_shared<const Node>(Node{Var{std::move(name)}}));
}

Term Term::lam(std::string param, Term body) {
    return Term(std::make_shared<const Node>(Node{Lam{std::move(param), std::move(body)}}));
}

Term Term::app(Term fun, Term arg) {
    return Term(std::make_shared<const Node>(Node{App{std::move(fun), std::move(arg)}}));
}

bool Term::is_var() const { return std::holds_alternative<Var>(node_->data); }
bool Term::is_lam() const { return std::holds_alternative<Lam>(node_->data); }
bool Term::is_app() const { return std::holds_alternative<App>(node_->data); }

const Var& Term::as_var() const { return std::get<Var>(node_->data); }
const Lam& Term::as_lam() const { return std::get<Lam>(node_->data); }
const App& Term::as_app() const { return std::get<App>(node_->data); }

bool operator==(const Term& a, const Term& b) {
    if (a.node_ == b.node_) return true;
    if (a.is_var() && b.is_var()) return a.as_var().name == b.as_var().name;
    if (a.is_lam() && b.is_lam())
        return a.as_lam().param == b.as_lam().param && a.as_lam().body == b.as_lam().body;
    if (a.is_app() && b.is_app())
        return a.as_app().fun == b.as_app().fun && a.as_app().arg == b.as_app().arg;
    return false;
}

namespace {

void collect_free(const Term& t, std::multiset<std::string>& bound, std::set<std::string>& out) {
    if (t.is_var()) {
        if (!bound.contains(t.as_var().name)) out.insert(t.as_var().name);
    } else if (t.is_lam()) {
        auto it = bound.insert(t.as_lam().param);
        collect_free(t.as_lam().body, bound, out);
        bound.erase(it);
    } else {
        collect_free(t.as_app().fun, bound, out);
        collect_free(t.as_app().arg, bound, out);
    }
}

// Locally-nameless rendering: bound occurrences become their binder depth offset,
// free occurrences keep their name.
void canonical(const Term& t, std::vector<std::string>& scope, std::string& out) {
    if (t.is_var()) {
        const auto& name = t.as_var().name;
        for (std::size_t i = scope.size(); i-- > 0;) {
            if (scope[i] == name) {
                out += '#';
                out += std::to_string(scope.size() - 1 - i);
                out += ' ';
                return;
            }
        }
        out += '$';
        out += name;
        out += ' ';
    } else if (t.is_lam()) {
        out += "L ";
        scope.push_back(t.as_lam().param);
        canonical(t.as_lam().body, scope, out);
        scope.pop_back();
    } else {
        out += "A ";
        canonical(t.as_app().fun, scope, out);
        canonical(t.as_app().arg, scope, out);
    }
}

// `tail` is true when nothing is printed after t, so an abstraction may extend right.
void print_into(const Term& t, bool tail, std::string& out) {
    if (t.is_var()) {
        out += t.as_var().name;
    } else if (t.is_lam()) {
        if (!tail) out += '(';
        out += '\\';
        out += t.as_lam().param;
        out += ". ";
        print_into(t.as_lam().body, true, out);
        if (!tail) out += ')';
    } else {
        const auto& [fun, arg] = t.as_app();
        print_into(fun, false, out);
        out += ' ';
        if (arg.is_app()) {
            out += '(';
            print_into(arg, true, out);
            out += ')';
        } else {
            print_into(arg, tail, out);
        }
    }
}

}  // namespace

std::set<std::string> free_vars(const Term& t) {
    std::multiset<std::string> bound;
    std::set<std::string> out;
    collect_free(t, bound, out);
    return out;
}

std::size_t size_term(const Term& t) {
    if (t.is_var()) return 1;
    if (t.is_lam()) return size_term(t.as_lam().body) + 1;
    return size_term(t.as_app().fun) + size_term(t.as_app().arg) + 1;
}

bool alpha_eq(const Term& t, const Term& u) {
    std::vector<std::string> scope;
    std::string a, b;
    canonical(t, scope, a);
    canonical(u, scope, b);
    return a == b;
}

std::string print(const Term& t) {
    std::string out;
    print_into(t, true, out);
    return out;
}

}  // namespace rcam::lambda
