#include <algorithm>
#include <map>
#include <unordered_set>

#include "rcam/crumble/crumble.hpp"

namespace rcam::crumble {

namespace {

// fv(E[z<-b]) = fv(E) \ {z}  U  fv(b), folded left to right
std::set<Name> fv_level(const Store& store, const Bite* head, std::span<const EntryId> tail) {
    std::set<Name> acc;
    if (head) acc = fv_bite(store, *head);
    for (EntryId id : tail) {
        acc.erase(Name{id});
        auto more = fv_bite(store, store.bite(id));
        acc.insert(more.begin(), more.end());
    }
    return acc;
}

std::size_t body_length_max(const Store& store, const Bite& b);

std::size_t level_body_max(const Store& store, const Bite& head, std::span<const EntryId> tail) {
    std::size_t best = body_length_max(store, head);
    for (EntryId id : tail) best = std::max(best, body_length_max(store, store.bite(id)));
    return best;
}

std::size_t body_length_max(const Store& store, const Bite& b) {
    if (std::holds_alternative<LamId>(b)) return 1;
    if (const auto* lam = std::get_if<LamGen>(&b)) {
        auto ids = entries(store, lam->body->tail);
        return std::max(1 + lam->body->tail.length, level_body_max(store, lam->body->head, ids));
    }
    return 0;
}

class NamingCheck {
public:
    explicit NamingCheck(const Store& store) : store_(store) {}

    bool level(const Bite& head, std::span<const EntryId> tail) {
        std::map<EntryId, std::size_t> position;  // head sits at 0, tail entries from 1
        for (std::size_t i = 0; i < tail.size(); ++i) {
            if (!position.emplace(tail[i], i + 1).second) return false;
        }
        auto points_right = [&](const Bite& b, std::size_t at) {
            for (const Name& n : fv_bite(store_, b)) {
                const auto* id = std::get_if<EntryId>(&n);
                if (!id) continue;
                auto it = position.find(*id);
                if (it != position.end() && it->second <= at) return false;
            }
            return true;
        };
        if (!points_right(head, 0) || !inner(head)) return false;
        for (std::size_t i = 0; i < tail.size(); ++i) {
            const Bite& b = store_.bite(tail[i]);
            if (!points_right(b, i + 1) || !inner(b)) return false;
        }
        return true;
    }

private:
    bool inner(const Bite& b) {
        const auto* lam = std::get_if<LamGen>(&b);
        if (!lam || !checked_.insert(lam->body.get()).second) return true;
        auto ids = entries(store_, lam->body->tail);
        return level(lam->body->head, ids);
    }

    const Store& store_;
    std::unordered_set<const Body*> checked_;
};

}  // namespace

Measures env_measures(const Store& store, const Env& env) {
    Measures m;
    for (EntryId id : entries(store, env)) {
        m.size += bite_size(store.bite(id));
        ++m.length;
    }
    return m;
}

Measures env_measures(const Store& store, const Crumble& c) {
    Measures m = env_measures(store, c.tail);
    m.size += bite_size(c.head);
    m.length += 1;
    return m;
}

std::size_t max_body_length(const Store& store, const Crumble& c) {
    auto ids = entries(store, c.tail);
    return level_body_max(store, c.head, ids);
}

std::set<Name> fv_bite(const Store& store, const Bite& b) {
    if (const auto* app = std::get_if<VarApp>(&b)) return {app->left, app->right};
    if (const auto* id = std::get_if<LamId>(&b)) {
        std::set<Name> out{id->ret};
        out.erase(Name{id->param});
        return out;
    }
    const auto& lam = std::get<LamGen>(b);
    auto ids = entries(store, lam.body->tail);
    auto out = fv_level(store, &lam.body->head, ids);
    out.erase(Name{lam.param});
    return out;
}

std::set<Name> fv_env(const Store& store, const Env& env) {
    auto ids = entries(store, env);
    return fv_level(store, nullptr, ids);
}

std::set<Name> fv(const Store& store, const Bite& head, std::span<const EntryId> tail) {
    return fv_level(store, &head, tail);
}

std::set<Name> fv(const Store& store, const Crumble& c) {
    auto ids = entries(store, c.tail);
    return fv(store, c.head, ids);
}

bool check_well_named(const Store& store, const Bite& head, std::span<const EntryId> tail) {
    return NamingCheck(store).level(head, tail);
}

bool check_well_named(const Store& store, const Crumble& c) {
    auto ids = entries(store, c.tail);
    return check_well_named(store, c.head, ids);
}

}  // namespace rcam::crumble
