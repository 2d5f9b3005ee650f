#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <json.hpp>

#include "rcam/error.hpp"
#include "rcam/machine/machine.hpp"

namespace rcam::service {

using nlohmann::json;

/// A request or a serialized snapshot that does not follow the schema.
class ProtocolError : public Error {
public:
    using Error::Error;
};

struct SnapshotCounters {
    std::uint64_t p = 0;
    std::uint64_t sea = 0;
    std::uint64_t back = 0;
    friend bool operator==(const SnapshotCounters&, const SnapshotCounters&) = default;
};

struct SessionSnapshot {
    machine::MachineImage state;
    std::string readback;
    SnapshotCounters counters;
    bool final = false;
    bool initial = true;
    bool can_step_forward = false;
    bool can_step_backward = false;

    friend bool operator==(const SessionSnapshot&, const SessionSnapshot&) = default;
};

SessionSnapshot snapshot_of(const machine::Machine& m);

/// Equal up to the step counters, which only ever accumulate.
bool same_state(const SessionSnapshot& a, const SessionSnapshot& b);

// "z<n>" and "*"; BoundVars as "<name>#<binder>".
std::string id_to_string(crumble::EntryId id);
crumble::EntryId id_from_string(std::string_view s);
std::string var_to_string(const crumble::BoundVar& v);
crumble::BoundVar var_from_string(std::string_view s);

json to_json(const SessionSnapshot& s);
/// Throws ProtocolError on any schema violation.
SessionSnapshot snapshot_from_json(const json& j);

}  // namespace rcam::service
