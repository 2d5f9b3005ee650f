#include <unordered_map>

#include "rcam/crumble/crumble.hpp"
#include "rcam/error.hpp"

namespace rcam::crumble {

namespace {

using lambda::Term;

// Substituting right-to-left is the same as resolving each EnvRef to the read-back of the
// entry it names, as long as references only point rightwards. Each entry is read once and
// its term shared by every occurrence.
class Reader {
public:
    explicit Reader(const Store& store) : store_(store) {}

    Term level(const Bite& head, std::span<const EntryId> tail) {
        std::vector<std::pair<EntryId, std::optional<Term>>> shadowed;
        shadowed.reserve(tail.size());
        for (std::size_t i = tail.size(); i-- > 0;) {
            Term t = bite(store_.bite(tail[i]));
            auto it = scope_.find(tail[i]);
            if (it != scope_.end()) {
                shadowed.emplace_back(tail[i], it->second);
                it->second = std::move(t);
            } else {
                shadowed.emplace_back(tail[i], std::nullopt);
                scope_.emplace(tail[i], std::move(t));
            }
        }
        Term out = bite(head);
        for (auto& [id, prev] : shadowed) {
            if (prev)
                scope_.insert_or_assign(id, std::move(*prev));
            else
                scope_.erase(id);
        }
        return out;
    }

private:
    Term name(const Name& n) {
        if (const auto* bv = std::get_if<BoundVar>(&n)) return Term::var(bv->name);
        EntryId id = std::get<EntryId>(n);
        auto it = scope_.find(id);
        if (it == scope_.end())
            throw DanglingReference("reference to " + id.str() + " does not resolve in the crumble");
        return it->second;
    }

    Term bite(const Bite& b) {
        if (const auto* app = std::get_if<VarApp>(&b)) return Term::app(name(app->left), name(app->right));
        if (const auto* id = std::get_if<LamId>(&b)) return Term::lam(id->param.name, name(id->ret));
        const auto& lam = std::get<LamGen>(b);
        auto body_ids = entries(store_, lam.body->tail);
        return Term::lam(lam.param.name, level(lam.body->head, body_ids));
    }

    const Store& store_;
    std::unordered_map<EntryId, Term, EntryIdHash> scope_;
};

}  // namespace

lambda::Term read_back(const Store& store, const Bite& head, std::span<const EntryId> tail) {
    return Reader(store).level(head, tail);
}

lambda::Term read_back(const Store& store, const Crumble& c) {
    auto ids = entries(store, c.tail);
    return read_back(store, c.head, ids);
}

}  // namespace rcam::crumble
