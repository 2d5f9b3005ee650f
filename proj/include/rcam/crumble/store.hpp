#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace rcam::crumble {

/// Identity of an environment entry. Entries are cells of a Store; an id is an index into it.
/// Two reserved values: `none` (no entry) and `star` (the return entry `*` of a machine state).
class EntryId {
public:
    constexpr EntryId() = default;
    constexpr explicit EntryId(std::uint64_t ordinal) : raw_(ordinal) {}

    static constexpr EntryId star() { return EntryId(kStar); }

    constexpr bool valid() const { return raw_ != kNone; }
    constexpr bool is_star() const { return raw_ == kStar; }
    constexpr std::uint64_t ordinal() const { return raw_; }

    friend constexpr auto operator<=>(EntryId, EntryId) = default;

    /// "z<n>", or "*" for the return entry.
    std::string str() const;

private:
    static constexpr std::uint64_t kNone = std::numeric_limits<std::uint64_t>::max();
    static constexpr std::uint64_t kStar = kNone - 1;
    std::uint64_t raw_ = kNone;
};

struct EntryIdHash {
    std::size_t operator()(EntryId id) const noexcept { return std::hash<std::uint64_t>{}(id.ordinal()); }
};

/// A lambda-bound variable. `binder` is unique per abstraction of the source term;
/// 0 marks a variable that no abstraction binds.
struct BoundVar {
    std::string name;
    std::uint32_t binder = 0;

    friend auto operator<=>(const BoundVar&, const BoundVar&) = default;
};

using Name = std::variant<BoundVar, EntryId>;

struct Body;

/// x y
struct VarApp {
    Name left;
    Name right;
    friend bool operator==(const VarApp&, const VarApp&) = default;
};

/// \x. E   where E is not of the shape [*<-y]
struct LamGen {
    BoundVar param;
    std::shared_ptr<const Body> body;
};

/// \x. [*<-y]   identity or constant function
struct LamId {
    BoundVar param;
    Name ret;
    friend bool operator==(const LamId&, const LamId&) = default;
};

using Bite = std::variant<VarApp, LamGen, LamId>;

inline bool is_value(const Bite& b) { return !std::holds_alternative<VarApp>(b); }

/// Entries linked right-to-left through Store cells: `last` is the rightmost entry and each
/// cell's `link` names its left neighbour. `first`'s link is not part of the environment.
struct Env {
    EntryId first;
    EntryId last;
    std::size_t length = 0;

    bool empty() const { return length == 0; }
};

/// The body [*<-head]tail of an abstraction. Immutable once built, so bites may share it.
struct Body {
    Bite head;
    Env tail;
    std::size_t entries_total = 0;  // entries here and in every nested body
    std::size_t size = 0;           // size of [*<-head]tail
    std::uint32_t origin = 0;       // which body of the initial crumble this one derives from
};

/// [*<-head]tail
struct Crumble {
    Bite head;
    Env tail;
};

struct Cell {
    Bite bite;
    EntryId link;
    EntryId copy;            // forwarding slot used while alpha-copying a body
    bool evaluated = false;  // maintained by the machine's zipper
};

/// Session-scoped arena of entries. Ids are handed out by a monotone counter starting at
/// `id_start`; only the most recent allocations may be released, which restores the
/// counter exactly.
class Store {
public:
    explicit Store(std::uint64_t id_start = 1) : id_start_(id_start) {}

    EntryId allocate(Bite bite);
    void release_last(std::size_t n);

    bool contains(EntryId id) const;
    Cell& cell(EntryId id);
    const Cell& cell(EntryId id) const;
    const Bite& bite(EntryId id) const { return cell(id).bite; }

    void bind_star(Bite bite);
    bool has_star() const { return star_.has_value(); }

    BoundVar fresh_binder(std::string name) { return BoundVar{std::move(name), ++binders_}; }
    std::uint32_t next_origin() { return ++origins_; }

    std::uint64_t id_start() const { return id_start_; }
    std::uint64_t next_ordinal() const { return id_start_ + cells_.size(); }

private:
    std::uint64_t id_start_;
    std::deque<Cell> cells_;  // references stay valid across allocate()
    std::optional<Cell> star_;
    std::uint32_t binders_ = 0;
    std::uint32_t origins_ = 0;
};

/// Entries of `env` from left to right.
std::vector<EntryId> entries(const Store& store, const Env& env);

/// Links `right` after `left`; O(1).
Env concat(Store& store, Env left, Env right);

std::size_t bite_size(const Bite& b);

}  // namespace rcam::crumble
