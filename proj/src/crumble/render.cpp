#include "rcam/crumble/crumble.hpp"

namespace rcam::crumble {

namespace {

void entry(const Store& store, const std::string& id, const Bite& b, std::string& out) {
    out += '[';
    out += id;
    out += "<-";
    out += render_bite(store, b);
    out += ']';
}

}  // namespace

std::string render_name(const Name& n) {
    if (const auto* bv = std::get_if<BoundVar>(&n)) return bv->name;
    return std::get<EntryId>(n).str();
}

std::string render_bite(const Store& store, const Bite& b) {
    if (const auto* app = std::get_if<VarApp>(&b)) return render_name(app->left) + " " + render_name(app->right);
    if (const auto* id = std::get_if<LamId>(&b)) return "\\" + id->param.name + ". *<-" + render_name(id->ret);
    const auto& lam = std::get<LamGen>(b);
    auto ids = entries(store, lam.body->tail);
    return "\\" + lam.param.name + ". " + render(store, lam.body->head, ids);
}

std::string render(const Store& store, const Bite& head, std::span<const EntryId> tail) {
    std::string out;
    entry(store, "*", head, out);
    out += render_entries(store, tail);
    return out;
}

std::string render(const Store& store, const Crumble& c) {
    auto ids = entries(store, c.tail);
    return render(store, c.head, ids);
}

std::string render_entries(const Store& store, std::span<const EntryId> ids) {
    std::string out;
    for (EntryId id : ids) entry(store, id.str(), store.bite(id), out);
    return out;
}

}  // namespace rcam::crumble
