#pragma once

#include <cstddef>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <vector>

#include "rcam/crumble/store.hpp"
#include "rcam/lambda/term.hpp"

namespace rcam::crumble {

/// Finest crumbling. Fresh entries are allocated in `store`, outer applications before the
/// subterms they split. Free source variables become BoundVars with binder 0. Throws
/// rcam::Error for a bare variable, which has no crumbled form.
Crumble translate(Store& store, const lambda::Term& t);

/// Fires every explicit substitution. Throws DanglingReference for an unresolved EnvRef.
lambda::Term read_back(const Store& store, const Crumble& c);
lambda::Term read_back(const Store& store, const Bite& head, std::span<const EntryId> tail);

struct Measures {
    std::size_t size = 0;
    std::size_t length = 0;
    friend bool operator==(const Measures&, const Measures&) = default;
};

Measures env_measures(const Store& store, const Env& env);
/// The implicit * entry counts towards the length.
Measures env_measures(const Store& store, const Crumble& c);

/// Largest entry count of any abstraction body in `c` (a body [*<-b]E has 1 + |E| entries).
std::size_t max_body_length(const Store& store, const Crumble& c);

std::set<Name> fv_bite(const Store& store, const Bite& b);
std::set<Name> fv_env(const Store& store, const Env& env);
std::set<Name> fv(const Store& store, const Crumble& c);
std::set<Name> fv(const Store& store, const Bite& head, std::span<const EntryId> tail);

/// Domain ids pairwise distinct and every reference points strictly to the right,
/// checked in every body as well.
bool check_well_named(const Store& store, const Crumble& c);
bool check_well_named(const Store& store, const Bite& head, std::span<const EntryId> tail);

/// Alpha-copy of `body` with `param` replaced by `arg`: one pass, fresh ids for every entry
/// (nested bodies included), internal references forwarded to the copies.
Crumble copy_body(Store& store, const Body& body, const BoundVar& param, const Name& arg);

enum class CrRule { m1, m2 };

struct CrStep {
    Crumble crumble;
    CrRule rule;
};

/// One step of the finest crumbled calculus; absent iff `c` is a v-crumble. Entries of `c` are
/// updated in place, so `c` must not be used afterwards. Throws InternalInvariant when the
/// function position does not resolve to a value of the evaluated suffix.
std::optional<CrStep> cr_step(Store& store, const Crumble& c);

/// `[*<-b]` head then `[z<n><-b]` entries; bites as `x y`, `\x. <crumble>`, `\x. *<-y`.
std::string render(const Store& store, const Crumble& c);
std::string render(const Store& store, const Bite& head, std::span<const EntryId> tail);
std::string render_entries(const Store& store, std::span<const EntryId> ids);
std::string render_bite(const Store& store, const Bite& b);
std::string render_name(const Name& n);

}  // namespace rcam::crumble
