#include "rcam/crumble/image.hpp"

namespace rcam::crumble {

bool operator==(const BiteImage& a, const BiteImage& b) {
    return a.kind == b.kind && a.left == b.left && a.right == b.right && a.param == b.param &&
           a.head == b.head && a.tail == b.tail;
}

bool operator==(const EntryImage& a, const EntryImage& b) { return a.id == b.id && a.bite == b.bite; }

BiteImage image_of(const Store& store, const Bite& b) {
    BiteImage out;
    if (const auto* app = std::get_if<VarApp>(&b)) {
        out.kind = BiteImage::Kind::app;
        out.left = app->left;
        out.right = app->right;
    } else if (const auto* id = std::get_if<LamId>(&b)) {
        out.kind = BiteImage::Kind::lamid;
        out.param = id->param;
        out.right = id->ret;
    } else {
        const auto& lam = std::get<LamGen>(b);
        out.kind = BiteImage::Kind::lam;
        out.param = lam.param;
        out.head.push_back(image_of(store, lam.body->head));
        auto ids = entries(store, lam.body->tail);
        out.tail = image_of(store, ids);
    }
    return out;
}

std::vector<EntryImage> image_of(const Store& store, std::span<const EntryId> ids) {
    std::vector<EntryImage> out;
    out.reserve(ids.size());
    for (EntryId id : ids) out.push_back(EntryImage{id, image_of(store, store.bite(id))});
    return out;
}

}  // namespace rcam::crumble
