#include "rcam/service/session_service.hpp"

#include "rcam/lambda/parser.hpp"

namespace rcam::service {

namespace {

json failure(const char* code, const std::string& message) {
    return {{"ok", false}, {"error", {{"code", code}, {"message", message}}}};
}

const std::string& string_field(const json& request, const char* key) {
    auto it = request.find(key);
    if (it == request.end() || !it->is_string())
        throw ProtocolError(std::string("request needs a string field '") + key + "'");
    return it->get_ref<const std::string&>();
}

}  // namespace

json SessionService::handle(const json& request) {
    json response;
    try {
        if (!request.is_object()) throw ProtocolError("request must be a JSON object");
        response = dispatch(request);
    } catch (const ParseError& e) {
        response = failure("parse-error", e.what());
        response["error"]["position"] = e.position;
        response["error"]["token"] = e.token;
    } catch (const OpenTermError& e) {
        response = failure("open-term", e.what());
    } catch (const ProtocolError& e) {
        response = failure("protocol-error", e.what());
    } catch (const InternalInvariant& e) {
        response = failure("internal-error", e.what());
    } catch (const Error& e) {
        response = failure("protocol-error", e.what());
    }
    if (request.is_object() && request.contains("id")) response["id"] = request["id"];
    return response;
}

std::string SessionService::handle_text(std::string_view body) {
    json request = json::parse(body, nullptr, false);
    if (request.is_discarded()) return failure("protocol-error", "request body is not valid JSON").dump();
    return handle(request).dump();
}

std::size_t SessionService::session_count() const {
    std::lock_guard g(lock_);
    return sessions_.size();
}

void SessionService::set_default_term(lambda::Term t) {
    std::lock_guard g(lock_);
    default_term_ = std::move(t);
}

std::shared_ptr<SessionService::Session> SessionService::find(const json& request) const {
    const auto& id = string_field(request, "session");
    std::lock_guard g(lock_);
    auto it = sessions_.find(id);
    if (it == sessions_.end()) return nullptr;
    return it->second;
}

json SessionService::dispatch(const json& request) {
    const auto& op = string_field(request, "op");

    if (op == "new-session") {
        std::lock_guard g(lock_);
        if (!request.contains("term") && !default_term_) throw ProtocolError("new-session needs a 'term'");
        auto term = request.contains("term") ? lambda::parse(string_field(request, "term")) : *default_term_;
        std::uint64_t id_start = default_id_start_;
        if (auto it = request.find("id_start"); it != request.end()) {
            if (!it->is_number_integer() || it->get<std::int64_t>() <= 0)
                throw ProtocolError("id_start must be a positive integer");
            id_start = it->get<std::uint64_t>();
        }
        if (!lambda::is_closed(term))
            throw OpenTermError("term not closed: free variable '" + *lambda::free_vars(term).begin() + "'");
        auto session = std::make_shared<Session>(term, id_start);
        json snap = to_json(snapshot_of(session->machine));
        std::string id = "s" + std::to_string(next_session_++);
        sessions_.emplace(id, std::move(session));
        return {{"ok", true}, {"session", id}, {"snapshot", std::move(snap)}};
    }

    if (op != "step" && op != "reset" && op != "snapshot" && op != "close")
        throw ProtocolError("unknown op '" + op + "'");

    auto session = find(request);
    if (!session) return failure("unknown-session", "no session '" + request["session"].get<std::string>() + "'");

    if (op == "close") {
        std::lock_guard g(lock_);
        sessions_.erase(request["session"].get<std::string>());
        return {{"ok", true}};
    }

    std::lock_guard g(session->lock);
    auto& m = session->machine;
    if (op == "step") {
        const auto& dir = string_field(request, "direction");
        std::optional<machine::Rule> rule;
        if (dir == "forward")
            rule = m.step_forward();
        else if (dir == "backward")
            rule = m.step_backward();
        else
            throw ProtocolError("direction must be 'forward' or 'backward'");
        return {{"ok", true},
                {"rule", rule ? json(std::string(machine::rule_name(*rule))) : json(nullptr)},
                {"at_boundary", !rule},
                {"snapshot", to_json(snapshot_of(m))}};
    }
    if (op == "reset") m = machine::Machine::from_term(session->term, session->id_start);
    return {{"ok", true}, {"snapshot", to_json(snapshot_of(m))}};
}

}  // namespace rcam::service
