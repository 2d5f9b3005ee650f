#include "rcam/service/snapshot.hpp"

#include <charconv>

namespace rcam::service {

using crumble::BiteImage;
using crumble::BoundVar;
using crumble::EntryId;
using crumble::EntryImage;
using crumble::Name;
using machine::HistoryEntry;

SessionSnapshot snapshot_of(const machine::Machine& m) {
    SessionSnapshot s;
    s.state = m.image();
    s.readback = lambda::print(m.read_back());
    s.counters = {m.counters().principal, m.counters().search, m.counters().backward};
    s.final = m.is_final();
    s.initial = m.is_initial();
    s.can_step_forward = !s.final;
    s.can_step_backward = !s.initial;
    return s;
}

bool same_state(const SessionSnapshot& a, const SessionSnapshot& b) {
    auto strip = [](SessionSnapshot s) {
        s.counters = {};
        return s;
    };
    return strip(a) == strip(b);
}

std::string id_to_string(EntryId id) { return id.str(); }

namespace {

std::uint64_t parse_number(std::string_view digits, std::string_view whole) {
    std::uint64_t n = 0;
    auto [end, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), n);
    if (digits.empty() || ec != std::errc{} || end != digits.data() + digits.size())
        throw ProtocolError("malformed identifier '" + std::string(whole) + "'");
    return n;
}

}  // namespace

EntryId id_from_string(std::string_view s) {
    if (s == "*") return EntryId::star();
    if (s.size() < 2 || s[0] != 'z') throw ProtocolError("malformed entry id '" + std::string(s) + "'");
    EntryId id(parse_number(s.substr(1), s));
    if (!id.valid() || id.is_star()) throw ProtocolError("entry id out of range '" + std::string(s) + "'");
    return id;
}

std::string var_to_string(const BoundVar& v) { return v.name + "#" + std::to_string(v.binder); }

BoundVar var_from_string(std::string_view s) {
    auto hash = s.rfind('#');
    if (hash == std::string_view::npos || hash == 0)
        throw ProtocolError("malformed variable '" + std::string(s) + "'");
    auto binder = parse_number(s.substr(hash + 1), s);
    if (binder > UINT32_MAX) throw ProtocolError("binder out of range in '" + std::string(s) + "'");
    return BoundVar{std::string(s.substr(0, hash)), static_cast<std::uint32_t>(binder)};
}

namespace {

json name_json(const Name& n) {
    if (const auto* v = std::get_if<BoundVar>(&n)) return {{"kind", "bound"}, {"var", var_to_string(*v)}};
    return {{"kind", "env"}, {"id", id_to_string(std::get<EntryId>(n))}};
}

json entries_json(const std::vector<EntryImage>& es);

json bite_json(const BiteImage& b) {
    switch (b.kind) {
        case BiteImage::Kind::app:
            return {{"kind", "app"}, {"left", name_json(b.left)}, {"right", name_json(b.right)}};
        case BiteImage::Kind::lamid:
            return {{"kind", "lamid"}, {"param", var_to_string(b.param)}, {"ret", name_json(b.right)}};
        case BiteImage::Kind::lam:
            return {{"kind", "lam"},
                    {"param", var_to_string(b.param)},
                    {"headBite", bite_json(b.head.at(0))},
                    {"tail", entries_json(b.tail)}};
    }
    return {};
}

json entries_json(const std::vector<EntryImage>& es) {
    json out = json::array();
    for (const auto& e : es) out.push_back({{"id", id_to_string(e.id)}, {"bite", bite_json(e.bite)}});
    return out;
}

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw ProtocolError(std::string("expected an object holding '") + key + "'");
    auto it = j.find(key);
    if (it == j.end()) throw ProtocolError(std::string("missing field '") + key + "'");
    return *it;
}

std::string text(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_string()) throw ProtocolError(std::string("field '") + key + "' must be a string");
    return v.get<std::string>();
}

bool flag(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_boolean()) throw ProtocolError(std::string("field '") + key + "' must be a boolean");
    return v.get<bool>();
}

std::uint64_t count(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_number_unsigned() && !(v.is_number_integer() && v.get<std::int64_t>() >= 0)) throw ProtocolError(std::string("field '") + key + "' must be a natural number");
    return v.get<std::uint64_t>();
}

const json& array(const json& j, const char* key) {
    const json& v = field(j, key);
    if (!v.is_array()) throw ProtocolError(std::string("field '") + key + "' must be an array");
    return v;
}

Name name_from(const json& j) {
    auto kind = text(j, "kind");
    if (kind == "bound") return var_from_string(text(j, "var"));
    if (kind == "env") return id_from_string(text(j, "id"));
    throw ProtocolError("unknown name kind '" + kind + "'");
}

std::vector<EntryImage> entries_from(const json& arr);

BiteImage bite_from(const json& j) {
    BiteImage b;
    auto kind = text(j, "kind");
    if (kind == "app") {
        b.kind = BiteImage::Kind::app;
        b.left = name_from(field(j, "left"));
        b.right = name_from(field(j, "right"));
    } else if (kind == "lamid") {
        b.kind = BiteImage::Kind::lamid;
        b.param = var_from_string(text(j, "param"));
        b.right = name_from(field(j, "ret"));
    } else if (kind == "lam") {
        b.kind = BiteImage::Kind::lam;
        b.param = var_from_string(text(j, "param"));
        b.head.push_back(bite_from(field(j, "headBite")));
        b.tail = entries_from(array(j, "tail"));
    } else {
        throw ProtocolError("unknown bite kind '" + kind + "'");
    }
    return b;
}

std::vector<EntryImage> entries_from(const json& arr) {
    std::vector<EntryImage> out;
    for (const auto& e : arr) out.push_back({id_from_string(text(e, "id")), bite_from(field(e, "bite"))});
    return out;
}

}  // namespace

json to_json(const SessionSnapshot& s) {
    json history = json::array();
    for (const auto& h : s.state.history) {
        if (h.kind == HistoryEntry::Kind::search)
            history.push_back({{"kind", "search"}});
        else
            history.push_back({{"kind", "principal"}, {"x", id_to_string(h.x)}, {"y", id_to_string(h.y)}});
    }
    return {{"active", entries_json(s.state.active)},
            {"evaluated", entries_json(s.state.evaluated)},
            {"history", std::move(history)},
            {"readback", s.readback},
            {"counters", {{"p", s.counters.p}, {"sea", s.counters.sea}, {"back", s.counters.back}}},
            {"final", s.final},
            {"initial", s.initial},
            {"can_step_forward", s.can_step_forward},
            {"can_step_backward", s.can_step_backward},
            {"next_id", s.state.next_ordinal}};
}

SessionSnapshot snapshot_from_json(const json& j) {
    SessionSnapshot s;
    s.state.active = entries_from(array(j, "active"));
    s.state.evaluated = entries_from(array(j, "evaluated"));
    for (const auto& h : array(j, "history")) {
        auto kind = text(h, "kind");
        if (kind == "search")
            s.state.history.push_back(HistoryEntry::search());
        else if (kind == "principal")
            s.state.history.push_back(HistoryEntry::principal(id_from_string(text(h, "x")), id_from_string(text(h, "y"))));
        else
            throw ProtocolError("unknown history entry kind '" + kind + "'");
    }
    s.readback = text(j, "readback");
    const json& c = field(j, "counters");
    s.counters = {count(c, "p"), count(c, "sea"), count(c, "back")};
    s.final = flag(j, "final");
    s.initial = flag(j, "initial");
    s.can_step_forward = flag(j, "can_step_forward");
    s.can_step_backward = flag(j, "can_step_backward");
    s.state.next_ordinal = count(j, "next_id");
    return s;
}

}  // namespace rcam::service
