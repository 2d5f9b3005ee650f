#include <unordered_map>

#include "rcam/crumble/crumble.hpp"
#include "rcam/error.hpp"

namespace rcam::crumble {

namespace {

using lambda::Term;

std::size_t body_entries_total(const Store& store, const Bite& head, const Env& tail);

std::size_t nested_entries(const Bite& b) {
    if (const auto* lam = std::get_if<LamGen>(&b)) return lam->body->entries_total;
    return 0;
}

std::size_t body_entries_total(const Store& store, const Bite& head, const Env& tail) {
    std::size_t total = tail.length + nested_entries(head);
    for (EntryId id : entries(store, tail)) total += nested_entries(store.bite(id));
    return total;
}

class Translator {
public:
    explicit Translator(Store& store) : store_(store) {}

    Crumble crumble(const Term& t) {
        if (t.is_var()) throw Error("a bare variable '" + t.as_var().name + "' has no crumbled form");
        if (t.is_lam()) return Crumble{abstraction(t), Env{}};

        const auto& [u, u2] = t.as_app();
        if (u.is_var() && u2.is_var()) return Crumble{VarApp{name(u), name(u2)}, Env{}};

        // fresh names for the split positions are drawn before either side is crumbled
        EntryId x = u.is_var() ? EntryId{} : store_.allocate(VarApp{});
        EntryId y = u2.is_var() ? EntryId{} : store_.allocate(VarApp{});

        Env tail;
        Name left = x.valid() ? Name{x} : name(u);
        Name right = y.valid() ? Name{y} : name(u2);
        if (x.valid()) tail = concat(store_, tail, bind(x, crumble(u)));
        if (y.valid()) tail = concat(store_, tail, bind(y, crumble(u2)));
        return Crumble{VarApp{std::move(left), std::move(right)}, tail};
    }

private:
    // [x<-b]E from a sub-crumble [*<-b]E
    Env bind(EntryId x, Crumble sub) {
        store_.cell(x).bite = std::move(sub.head);
        return concat(store_, Env{x, x, 1}, sub.tail);
    }

    Bite abstraction(const Term& t) {
        const auto& [param, body] = t.as_lam();
        BoundVar bv = store_.fresh_binder(param);
        scope_[param].push_back(bv);
        Bite out;
        if (body.is_var()) {
            out = LamId{bv, name(body)};
        } else {
            std::uint32_t origin = store_.next_origin();
            Crumble inner = crumble(body);
            auto made = std::make_shared<Body>();
            made->size = bite_size(inner.head);
            for (EntryId id : entries(store_, inner.tail)) made->size += bite_size(store_.bite(id));
            made->entries_total = body_entries_total(store_, inner.head, inner.tail);
            made->head = std::move(inner.head);
            made->tail = inner.tail;
            made->origin = origin;
            out = LamGen{bv, std::move(made)};
        }
        scope_[param].pop_back();
        return out;
    }

    Name name(const Term& v) {
        const auto& n = v.as_var().name;
        auto it = scope_.find(n);
        if (it == scope_.end() || it->second.empty()) return BoundVar{n, 0};
        return it->second.back();
    }

    Store& store_;
    std::unordered_map<std::string, std::vector<BoundVar>> scope_;
};

}  // namespace

Crumble translate(Store& store, const lambda::Term& t) { return Translator(store).crumble(t); }

}  // namespace rcam::crumble
