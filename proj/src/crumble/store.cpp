#include "rcam/crumble/store.hpp"

#include <algorithm>

#include "rcam/error.hpp"

namespace rcam::crumble {

std::string EntryId::str() const {
    if (is_star()) return "*";
    if (!valid()) return "<none>";
    return "z" + std::to_string(raw_);
}

EntryId Store::allocate(Bite bite) {
    EntryId id(next_ordinal());
    cells_.push_back(Cell{std::move(bite), EntryId{}, EntryId{}, false});
    return id;
}

void Store::release_last(std::size_t n) {
    if (n > cells_.size()) throw InternalInvariant("releasing more entries than were allocated");
    cells_.resize(cells_.size() - n);
}

bool Store::contains(EntryId id) const {
    if (id.is_star()) return star_.has_value();
    return id.valid() && id.ordinal() >= id_start_ && id.ordinal() < next_ordinal();
}

Cell& Store::cell(EntryId id) {
    return const_cast<Cell&>(static_cast<const Store&>(*this).cell(id));
}

const Cell& Store::cell(EntryId id) const {
    if (!contains(id)) throw DanglingReference("no entry " + id.str() + " in this session");
    if (id.is_star()) return *star_;
    return cells_[id.ordinal() - id_start_];
}

void Store::bind_star(Bite bite) {
    if (star_) throw InternalInvariant("the return entry is already bound in this session");
    star_ = Cell{std::move(bite), EntryId{}, EntryId{}, false};
}

std::vector<EntryId> entries(const Store& store, const Env& env) {
    std::vector<EntryId> out;
    out.reserve(env.length);
    EntryId cur = env.last;
    for (std::size_t i = 0; i < env.length; ++i) {
        out.push_back(cur);
        cur = store.cell(cur).link;
    }
    std::reverse(out.begin(), out.end());
    return out;
}

Env concat(Store& store, Env left, Env right) {
    if (left.empty()) return right;
    if (right.empty()) return left;
    store.cell(right.first).link = left.last;
    return Env{left.first, right.last, left.length + right.length};
}

std::size_t bite_size(const Bite& b) {
    if (const auto* lam = std::get_if<LamGen>(&b)) return lam->body->size + 1;
    return 2;
}

}  // namespace rcam::crumble
