#pragma once

#include <cstddef>
#include <memory>
#include <set>
#include <string>
#include <variant>

namespace rcam::lambda {

class Term;

struct Var {
    std::string name;
};

struct Lam;
struct App;

/// Immutable Plotkin term. Copies share structure; all nodes are const once built.
class Term {
public:
    static Term var(std::string name);
    static Term lam(std::string param, Term body);
    static Term app(Term fun, Term arg);

    bool is_var() const;
    bool is_lam() const;
    bool is_app() const;
    bool is_value() const { return !is_app(); }

    const Var& as_var() const;
    const Lam& as_lam() const;
    const App& as_app() const;

    /// Structural identity: same shape, same names.
    friend bool operator==(const Term& a, const Term& b);

private:
    struct Node;
    explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
    std::shared_ptr<const Node> node_;
};

struct Lam {
    std::string param;
    Term body;
};

struct App {
    Term fun;
    Term arg;
};

struct Term::Node {
    std::variant<Var, Lam, App> data;
};

std::set<std::string> free_vars(const Term& t);
inline bool is_closed(const Term& t) { return free_vars(t).empty(); }

/// |x| = 1, |\x.t| = |t| + 1, |u u'| = |u| + |u'| + 1.
std::size_t size_term(const Term& t);

/// Equality up to consistent renaming of bound variables (de Bruijn canonical form).
bool alpha_eq(const Term& t, const Term& u);

/// Minimal-parenthesis rendering in the `\x. body` syntax accepted by `parse`.
std::string print(const Term& t);

}  // namespace rcam::lambda
