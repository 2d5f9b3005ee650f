#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>

#include "rcam/service/snapshot.hpp"

namespace rcam::service {

/// The step-server protocol, independent of any transport. Requests and responses are JSON
/// objects; every response carries "ok". Operations:
///
///   {"op":"new-session"[,"term":T][,"id_start":N]}  -> {"ok":true,"session":S,"snapshot":...}
///   {"op":"step","session":S,"direction":"forward"|"backward"}
///                                                  -> {"ok":true,"rule":R|null,"at_boundary":B,"snapshot":...}
///   {"op":"reset","session":S}                     -> {"ok":true,"snapshot":...}
///   {"op":"snapshot","session":S}                  -> {"ok":true,"snapshot":...}
///   {"op":"close","session":S}                     -> {"ok":true}
///
/// Failures answer {"ok":false,"error":{"code":C,"message":M}} with C one of unknown-session,
/// parse-error (plus "position" and "token"), open-term, protocol-error, internal-error.
/// A request "id" is echoed back. new-session without a term uses the default term, if set.
///
/// handle() may be called from any thread. Requests on one session are serialized in arrival
/// order; distinct sessions do not block each other.
class SessionService {
public:
    explicit SessionService(std::uint64_t default_id_start = 1) : default_id_start_(default_id_start) {}

    json handle(const json& request);
    std::string handle_text(std::string_view body);

    std::size_t session_count() const;
    void set_default_term(lambda::Term t);

private:
    struct Session {
        Session(lambda::Term t, std::uint64_t start)
            : term(std::move(t)), id_start(start), machine(machine::Machine::from_term(term, start)) {}

        std::mutex lock;
        lambda::Term term;
        std::uint64_t id_start;
        machine::Machine machine;
    };

    json dispatch(const json& request);
    std::shared_ptr<Session> find(const json& request) const;

    std::uint64_t default_id_start_;
    std::optional<lambda::Term> default_term_;
    mutable std::mutex lock_;
    std::map<std::string, std::shared_ptr<Session>> sessions_;
    std::uint64_t next_session_ = 1;
};

}  // namespace rcam::service
