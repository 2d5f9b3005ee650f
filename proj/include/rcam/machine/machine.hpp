#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string_view>
#include <vector>

#include "rcam/crumble/crumble.hpp"
#include "rcam/crumble/image.hpp"
#include "rcam/lambda/term.hpp"

namespace rcam::machine {

using crumble::EntryId;

enum class Rule { sea, m1, m2, sea_b, m1_b, m2_b };

std::string_view rule_name(Rule r);
inline bool is_principal(Rule r) { return r == Rule::m1 || r == Rule::m2; }
inline bool is_backward(Rule r) { return r == Rule::sea_b || r == Rule::m1_b || r == Rule::m2_b; }

/// <> for a search step, <x,y> for a principal one: two entry ids at most.
struct HistoryEntry {
    enum class Kind : std::uint8_t { search, principal };

    Kind kind = Kind::search;
    EntryId x;
    EntryId y;

    static HistoryEntry search() { return {}; }
    static HistoryEntry principal(EntryId x, EntryId y) { return {Kind::principal, x, y}; }

    friend bool operator==(const HistoryEntry&, const HistoryEntry&) = default;
};

struct StepCounters {
    std::uint64_t principal = 0;
    std::uint64_t search = 0;
    std::uint64_t backward = 0;
    std::uint64_t copy_work = 0;  // total size of every body alpha-copied by m1

    friend bool operator==(const StepCounters&, const StepCounters&) = default;
};

enum class RunOutcome { final, fuel_exhausted };

/// Everything a state is made of, counters excluded. Equal images mean identical states,
/// entry ids and the fresh-id counter included.
struct MachineImage {
    std::vector<crumble::EntryImage> active;
    std::vector<crumble::EntryImage> evaluated;
    std::vector<HistoryEntry> history;
    std::uint64_t next_ordinal = 0;

    friend bool operator==(const MachineImage&, const MachineImage&) = default;
};

/// The reversible crumbling machine. The active environment (rightmost entry exposed) and the
/// evaluated environment (leftmost entry exposed) form a zipper over the entries of one Store;
/// every cell points left while active and right once evaluated.
///
/// A Machine is a single session: stepping mutates it in place.
class Machine {
public:
    /// Throws OpenTermError if `c` has free names, rcam::Error if it is not well-named.
    Machine(crumble::Store store, const crumble::Crumble& c);

    static Machine from_term(const lambda::Term& t, std::uint64_t id_start = 1);

    /// sea, m1 or m2; nullopt on a final state.
    std::optional<Rule> step_forward();
    /// sea_b, m1_b or m2_b as dictated by the history; nullopt on an initial state.
    std::optional<Rule> step_backward();

    RunOutcome run_forward(std::size_t fuel);
    /// Undoes the whole history; returns the number of steps taken.
    std::size_t run_backward();

    std::optional<Rule> forward_rule() const;
    std::optional<Rule> backward_rule() const;
    /// At most one forward and at most one backward rule applies.
    bool check_deterministic() const;

    bool is_final() const { return !active_top_.valid(); }
    bool is_initial() const { return history_.empty(); }

    std::vector<EntryId> active() const;     // left to right
    std::vector<EntryId> evaluated() const;  // left to right
    /// active ++ evaluated; the first element is always `*`.
    std::vector<EntryId> entries() const;
    std::size_t active_length() const { return active_length_; }
    std::size_t evaluated_length() const { return evaluated_length_; }

    bool evaluated_is_v_env() const;
    lambda::Term read_back() const;

    const std::vector<HistoryEntry>& history() const { return history_; }
    std::size_t history_max() const { return history_max_; }
    const StepCounters& counters() const { return counters_; }
    void reset_counters() { counters_ = {}; }
    const crumble::Store& store() const { return store_; }

    MachineImage image() const;

private:
    bool in_evaluated(const crumble::Name& n) const;
    void shift_to_evaluated();
    void shift_to_active();
    void push(HistoryEntry h);

    crumble::Store store_;
    EntryId active_top_;
    EntryId evaluated_head_;
    std::size_t active_length_ = 0;
    std::size_t evaluated_length_ = 0;
    std::vector<HistoryEntry> history_;
    std::size_t history_max_ = 0;
    StepCounters counters_;
};

}  // namespace rcam::machine
