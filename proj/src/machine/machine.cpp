#include "rcam/machine/machine.hpp"

#include <algorithm>
#include <cassert>

#include "rcam/error.hpp"

namespace rcam::machine {

using crumble::Bite;
using crumble::LamGen;
using crumble::LamId;
using crumble::Name;
using crumble::VarApp;

std::string_view rule_name(Rule r) {
    switch (r) {
        case Rule::sea: return "sea";
        case Rule::m1: return "m1";
        case Rule::m2: return "m2";
        case Rule::sea_b: return "sea_b";
        case Rule::m1_b: return "m1_b";
        case Rule::m2_b: return "m2_b";
    }
    return "?";
}

Machine::Machine(crumble::Store store, const crumble::Crumble& c) : store_(std::move(store)) {
    if (auto open = crumble::fv(store_, c); !open.empty())
        throw OpenTermError("term not closed: free name '" + crumble::render_name(*open.begin()) + "'");
    if (!crumble::check_well_named(store_, c)) throw Error("crumble is not well-named");

    store_.bind_star(c.head);
    if (c.tail.empty()) {
        active_top_ = EntryId::star();
    } else {
        store_.cell(c.tail.first).link = EntryId::star();
        active_top_ = c.tail.last;
    }
    active_length_ = c.tail.length + 1;
}

Machine Machine::from_term(const lambda::Term& t, std::uint64_t id_start) {
    crumble::Store store(id_start);
    auto c = crumble::translate(store, t);
    return Machine(std::move(store), c);
}

bool Machine::in_evaluated(const Name& n) const {
    const auto* id = std::get_if<EntryId>(&n);
    return id && store_.contains(*id) && store_.cell(*id).evaluated;
}

void Machine::shift_to_evaluated() {
    auto& cell = store_.cell(active_top_);
    EntryId moved = active_top_;
    active_top_ = moved.is_star() ? EntryId{} : cell.link;
    cell.link = evaluated_head_;
    cell.evaluated = true;
    evaluated_head_ = moved;
    --active_length_;
    ++evaluated_length_;
}

void Machine::shift_to_active() {
    auto& cell = store_.cell(evaluated_head_);
    EntryId moved = evaluated_head_;
    evaluated_head_ = cell.link;
    cell.link = active_top_;
    cell.evaluated = false;
    active_top_ = moved;
    ++active_length_;
    --evaluated_length_;
}

void Machine::push(HistoryEntry h) {
    history_.push_back(h);
    history_max_ = std::max(history_max_, history_.size());
}

std::optional<Rule> Machine::forward_rule() const {
    if (is_final()) return std::nullopt;
    const Bite& top = store_.bite(active_top_);
    if (crumble::is_value(top)) return Rule::sea;
    const auto& app = std::get<VarApp>(top);
    if (!in_evaluated(app.left) || !in_evaluated(app.right)) return std::nullopt;
    const Bite& fun = store_.bite(std::get<EntryId>(app.left));
    if (std::holds_alternative<LamGen>(fun)) return Rule::m1;
    if (const auto* id = std::get_if<LamId>(&fun)) {
        Name target = id->ret == Name{id->param} ? app.right : id->ret;
        return in_evaluated(target) ? std::optional(Rule::m2) : std::nullopt;
    }
    return std::nullopt;
}

std::optional<Rule> Machine::backward_rule() const {
    if (history_.empty()) return std::nullopt;
    const HistoryEntry& h = history_.back();
    if (h.kind == HistoryEntry::Kind::search)
        return evaluated_length_ > 0 ? std::optional(Rule::sea_b) : std::nullopt;
    if (!in_evaluated(h.x)) return std::nullopt;
    const Bite& fun = store_.bite(h.x);
    if (const auto* lam = std::get_if<LamGen>(&fun))
        return active_length_ > lam->body->tail.length ? std::optional(Rule::m1_b) : std::nullopt;
    if (std::holds_alternative<LamId>(fun))
        return evaluated_length_ > 0 ? std::optional(Rule::m2_b) : std::nullopt;
    return std::nullopt;
}

bool Machine::check_deterministic() const {
    // every side condition is evaluated on its own so that overlaps would show up
    int forward = 0;
    if (!is_final()) {
        const Bite& top = store_.bite(active_top_);
        if (crumble::is_value(top)) ++forward;
        if (const auto* app = std::get_if<VarApp>(&top); app && in_evaluated(app->left)) {
            const Bite& fun = store_.bite(std::get<EntryId>(app->left));
            if (std::holds_alternative<LamGen>(fun)) ++forward;
            if (std::holds_alternative<LamId>(fun)) ++forward;
        }
    }
    int backward = 0;
    if (!history_.empty()) {
        const HistoryEntry& h = history_.back();
        if (h.kind == HistoryEntry::Kind::search && evaluated_length_ > 0) ++backward;
        if (h.kind == HistoryEntry::Kind::principal && in_evaluated(h.x)) {
            const Bite& fun = store_.bite(h.x);
            if (std::holds_alternative<LamGen>(fun)) ++backward;
            if (std::holds_alternative<LamId>(fun)) ++backward;
        }
    }
    return forward <= 1 && backward <= 1;
}

std::optional<Rule> Machine::step_forward() {
    if (is_final()) return std::nullopt;
    assert(check_deterministic());

    const Bite top = store_.bite(active_top_);
    if (crumble::is_value(top)) {
        shift_to_evaluated();
        push(HistoryEntry::search());
        ++counters_.search;
        return Rule::sea;
    }

    const auto& app = std::get<VarApp>(top);
    if (!in_evaluated(app.left) || !in_evaluated(app.right))
        throw InternalInvariant("redex " + crumble::render_bite(store_, top) +
                                " does not refer to the evaluated environment");
    EntryId x = std::get<EntryId>(app.left);
    EntryId y = std::get<EntryId>(app.right);
    const Bite fun = store_.bite(x);

    if (const auto* lam = std::get_if<LamGen>(&fun)) {
        auto copy = crumble::copy_body(store_, *lam->body, lam->param, app.right);
        store_.cell(active_top_).bite = std::move(copy.head);
        if (!copy.tail.empty()) {
            store_.cell(copy.tail.first).link = active_top_;
            active_top_ = copy.tail.last;
            active_length_ += copy.tail.length;
        }
        push(HistoryEntry::principal(x, y));
        ++counters_.principal;
        counters_.copy_work += lam->body->size;
        return Rule::m1;
    }
    if (const auto* id = std::get_if<LamId>(&fun)) {
        Name target = id->ret == Name{id->param} ? app.right : id->ret;
        if (!in_evaluated(target))
            throw InternalInvariant("returned name " + crumble::render_name(target) + " is not evaluated");
        // shares the value's body; bodies are never mutated
        store_.cell(active_top_).bite = store_.bite(std::get<EntryId>(target));
        shift_to_evaluated();
        push(HistoryEntry::principal(x, y));
        ++counters_.principal;
        return Rule::m2;
    }
    throw InternalInvariant("function position " + x.str() + " is bound to an application");
}

std::optional<Rule> Machine::step_backward() {
    if (history_.empty()) return std::nullopt;
    assert(check_deterministic());

    const HistoryEntry h = history_.back();
    if (h.kind == HistoryEntry::Kind::search) {
        if (evaluated_length_ == 0) throw InternalInvariant("the input state is not reachable: nothing to unsearch");
        shift_to_active();
        history_.pop_back();
        ++counters_.backward;
        return Rule::sea_b;
    }

    if (!in_evaluated(h.x)) throw InternalInvariant("the input state is not reachable: " + h.x.str() + " not evaluated");
    const Bite fun = store_.bite(h.x);
    const Bite restored = VarApp{h.x, h.y};

    if (const auto* lam = std::get_if<LamGen>(&fun)) {
        const std::size_t n = lam->body->tail.length;
        const std::size_t allocated = lam->body->entries_total;
        if (active_length_ <= n) throw InternalInvariant("the input state is not reachable: active environment too short");
        const std::uint64_t floor = store_.next_ordinal() - allocated;
        EntryId m = active_top_;
        for (std::size_t i = 0; i < n; ++i) {
            if (m.is_star() || m.ordinal() < floor)
                throw InternalInvariant("the input state is not reachable: " + m.str() + " was not copied by m1");
            m = store_.cell(m).link;
        }
        store_.cell(m).bite = restored;
        active_top_ = m;
        active_length_ -= n;
        store_.release_last(allocated);
        history_.pop_back();
        ++counters_.backward;
        return Rule::m1_b;
    }
    if (std::holds_alternative<LamId>(fun)) {
        if (evaluated_length_ == 0) throw InternalInvariant("the input state is not reachable: evaluated is empty");
        shift_to_active();
        store_.cell(active_top_).bite = restored;
        history_.pop_back();
        ++counters_.backward;
        return Rule::m2_b;
    }
    throw InternalInvariant("the input state is not reachable: " + h.x.str() + " is bound to an application");
}

RunOutcome Machine::run_forward(std::size_t fuel) {
    for (std::size_t i = 0; i < fuel; ++i) {
        if (!step_forward()) return RunOutcome::final;
    }
    return is_final() ? RunOutcome::final : RunOutcome::fuel_exhausted;
}

std::size_t Machine::run_backward() {
    std::size_t steps = 0;
    while (step_backward()) ++steps;
    return steps;
}

std::vector<EntryId> Machine::active() const {
    std::vector<EntryId> out;
    out.reserve(active_length_);
    for (EntryId cur = active_top_; out.size() < active_length_; cur = store_.cell(cur).link) out.push_back(cur);
    std::reverse(out.begin(), out.end());
    return out;
}

std::vector<EntryId> Machine::evaluated() const {
    std::vector<EntryId> out;
    out.reserve(evaluated_length_);
    for (EntryId cur = evaluated_head_; out.size() < evaluated_length_; cur = store_.cell(cur).link)
        out.push_back(cur);
    return out;
}

std::vector<EntryId> Machine::entries() const {
    auto out = active();
    auto ev = evaluated();
    out.insert(out.end(), ev.begin(), ev.end());
    return out;
}

bool Machine::evaluated_is_v_env() const {
    return std::ranges::all_of(evaluated(), [&](EntryId id) { return crumble::is_value(store_.bite(id)); });
}

lambda::Term Machine::read_back() const {
    auto ids = entries();
    return crumble::read_back(store_, store_.bite(ids.front()), std::span(ids).subspan(1));
}

MachineImage Machine::image() const {
    auto a = active();
    auto e = evaluated();
    return MachineImage{crumble::image_of(store_, a), crumble::image_of(store_, e), history_,
                        store_.next_ordinal()};
}

}  // namespace rcam::machine
