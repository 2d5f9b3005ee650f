#include <unordered_set>

#include "rcam/crumble/crumble.hpp"
#include "rcam/error.hpp"

namespace rcam::crumble {

namespace {

class Copier {
public:
    Copier(Store& store, const BoundVar& param, const Name& arg)
        : store_(store), param_(param), arg_(arg) {}

    ~Copier() {
        for (EntryId old : forwarded_) store_.cell(old).copy = EntryId{};
    }

    Copier(const Copier&) = delete;
    Copier& operator=(const Copier&) = delete;

    // Ids of this level are drawn left to right before any nested body is entered.
    Crumble level(const Body& body, bool substituting) {
        auto old_ids = entries(store_, body.tail);
        std::vector<EntryId> fresh;
        fresh.reserve(old_ids.size());
        for (EntryId old : old_ids) {
            EntryId id = store_.allocate(VarApp{});
            store_.cell(old).copy = id;
            forwarded_.push_back(old);
            fresh.push_back(id);
        }
        Bite head = bite(body.head, substituting);
        Env tail;
        for (std::size_t i = 0; i < old_ids.size(); ++i) {
            Bite src = store_.bite(old_ids[i]);
            Bite b = bite(src, substituting);
            store_.cell(fresh[i]).bite = std::move(b);
            tail = concat(store_, tail, Env{fresh[i], fresh[i], 1});
        }
        return Crumble{std::move(head), tail};
    }

private:
    Name name(const Name& n, bool substituting) const {
        if (const auto* bv = std::get_if<BoundVar>(&n)) return (substituting && *bv == param_) ? arg_ : n;
        EntryId id = std::get<EntryId>(n);
        EntryId moved = store_.cell(id).copy;
        return moved.valid() ? Name{moved} : n;
    }

    Bite bite(const Bite& b, bool substituting) {
        if (const auto* app = std::get_if<VarApp>(&b))
            return VarApp{name(app->left, substituting), name(app->right, substituting)};
        if (const auto* id = std::get_if<LamId>(&b)) {
            bool still = substituting && id->param != param_;
            return LamId{id->param, name(id->ret, still)};
        }
        const auto& lam = std::get<LamGen>(b);
        bool still = substituting && lam.param != param_;
        Crumble inner = level(*lam.body, still);
        auto made = std::make_shared<Body>(*lam.body);
        made->head = std::move(inner.head);
        made->tail = inner.tail;
        return LamGen{lam.param, std::move(made)};
    }

    Store& store_;
    const BoundVar& param_;
    const Name& arg_;
    std::vector<EntryId> forwarded_;
};

const Bite& bite_at(const Store& store, const Crumble& c, std::span<const EntryId> ids, std::ptrdiff_t k) {
    return k < 0 ? c.head : store.bite(ids[static_cast<std::size_t>(k)]);
}

}  // namespace

Crumble copy_body(Store& store, const Body& body, const BoundVar& param, const Name& arg) {
    Copier copier(store, param, arg);
    return copier.level(body, true);
}

std::optional<CrStep> cr_step(Store& store, const Crumble& c) {
    auto ids = entries(store, c.tail);

    // E[z<-xy]E_v with E_v the longest suffix of values; k = -1 designates the head
    auto k = static_cast<std::ptrdiff_t>(ids.size()) - 1;
    while (k >= 0 && is_value(store.bite(ids[static_cast<std::size_t>(k)]))) --k;
    if (k < 0 && is_value(c.head)) return std::nullopt;

    std::unordered_set<EntryId, EntryIdHash> evaluated;
    for (auto i = static_cast<std::size_t>(k + 1); i < ids.size(); ++i) evaluated.insert(ids[i]);
    auto lookup = [&](const Name& n) -> const Bite& {
        const auto* id = std::get_if<EntryId>(&n);
        if (!id || !evaluated.contains(*id))
            throw InternalInvariant("lookup miss: " + render_name(n) + " is not in the evaluated suffix");
        return store.bite(*id);
    };

    const VarApp redex = std::get<VarApp>(bite_at(store, c, ids, k));
    const Bite fun = lookup(redex.left);
    lookup(redex.right);

    Crumble next{c.head, c.tail};
    auto replace = [&](Bite b) {
        if (k < 0)
            next.head = std::move(b);
        else
            store.cell(ids[static_cast<std::size_t>(k)]).bite = std::move(b);
    };

    if (const auto* lam = std::get_if<LamGen>(&fun)) {
        Crumble copy = copy_body(store, *lam->body, lam->param, redex.right);
        replace(std::move(copy.head));
        // splice E' between the rewritten entry and the evaluated suffix
        auto split = static_cast<std::size_t>(k + 1);
        Env left = split == 0 ? Env{} : Env{ids.front(), ids[split - 1], split};
        Env right = split == ids.size() ? Env{} : Env{ids[split], ids.back(), ids.size() - split};
        next.tail = concat(store, concat(store, left, copy.tail), right);
        return CrStep{std::move(next), CrRule::m1};
    }
    if (const auto* id = std::get_if<LamId>(&fun)) {
        Name target = id->ret == Name{id->param} ? redex.right : id->ret;
        replace(lookup(target));
        return CrStep{std::move(next), CrRule::m2};
    }
    throw InternalInvariant("function position " + render_name(redex.left) + " is bound to an application");
}

}  // namespace rcam::crumble
