#include "rcam/service/commands.hpp"

#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "rcam/crumble/crumble.hpp"
#include "rcam/lambda/beta.hpp"
#include "rcam/lambda/parser.hpp"
#include "rcam/machine/machine.hpp"
#include "rcam/service/server.hpp"
#include "rcam/service/snapshot.hpp"

namespace rcam::service {

using lambda::Term;
using machine::Machine;

std::string validate(const RunConfig& cfg) {
    if (cfg.fuel == 0) return "fuel must be positive";
    if (cfg.id_start == 0) return "id-start must be positive";
    if (cfg.mode == Mode::serve && (cfg.port < 1024 || cfg.port > 65535)) return "port must lie in 1024..65535";
    if (cfg.mode != Mode::serve && cfg.input_path.empty()) return "an input file is required";
    return {};
}

namespace {

struct Loaded {
    std::optional<Term> term;
    int code = exit_code::ok;
};

std::optional<std::string> read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

Loaded load(const RunConfig& cfg, std::ostream& err) {
    auto text = read_file(cfg.input_path);
    if (!text) {
        err << "cannot read '" << cfg.input_path << "'\n";
        return {std::nullopt, exit_code::io};
    }
    try {
        Term t = lambda::parse(*text);
        if (!lambda::is_closed(t)) {
            err << "open term: free variable '" << *lambda::free_vars(t).begin() << "'\n";
            return {std::nullopt, exit_code::open_term};
        }
        return {t, exit_code::ok};
    } catch (const ParseError& e) {
        err << cfg.input_path << ": " << e.what() << "\n";
        return {std::nullopt, exit_code::parse};
    }
}

std::string render_part(const Machine& m, const std::vector<crumble::EntryId>& ids) {
    if (ids.empty()) return "ε";
    return crumble::render_entries(m.store(), ids);
}

std::string summary_line(const Machine& m) {
    const auto& c = m.counters();
    std::ostringstream s;
    s << "p=" << c.principal << " sea=" << c.search << " back=" << c.backward << " work=" << c.copy_work
      << " hist_max=" << m.history_max();
    return s.str();
}

json summary_json(const Machine& m) {
    const auto& c = m.counters();
    return {{"p", c.principal}, {"sea", c.search}, {"back", c.backward}, {"work", c.copy_work},
            {"hist_max", m.history_max()}};
}

using StepHook = std::function<void(std::size_t k, bool forward, machine::Rule rule, const Machine&)>;

struct Outcome {
    machine::RunOutcome run;
    std::size_t forward_steps = 0;
    std::optional<Term> result;
    bool reversed = false;
};

// Forward to final or fuel, then back to the initial state, checking structural identity.
Outcome run_and_reverse(Machine& m, std::size_t fuel, const StepHook& hook) {
    const auto initial = m.image();
    Outcome out;
    std::size_t k = 0;
    out.run = machine::RunOutcome::final;
    while (auto r = m.step_forward()) {
        ++k;
        if (hook) hook(k, true, *r, m);
        if (k == fuel && !m.is_final()) {
            out.run = machine::RunOutcome::fuel_exhausted;
            break;
        }
    }
    out.forward_steps = k;
    if (m.is_final()) out.result = m.read_back();
    while (auto r = m.step_backward()) {
        ++k;
        if (hook) hook(k, false, *r, m);
    }
    out.reversed = m.image() == initial && m.history().empty();
    return out;
}

int finish(const Outcome& o) {
    if (!o.reversed) return exit_code::assertion;
    return o.run == machine::RunOutcome::final ? exit_code::ok : exit_code::fuel;
}

void report(const Outcome& o, const Machine& m, const RunConfig& cfg, std::ostream& out) {
    if (cfg.emit_json) {
        json j = {{"outcome", o.run == machine::RunOutcome::final ? "final" : "fuel-exhausted"},
                  {"steps", o.forward_steps},
                  {"counters", summary_json(m)},
                  {"reversal", o.reversed ? "PASS" : "FAIL"}};
        if (o.result) j["result"] = lambda::print(*o.result);
        out << j.dump() << "\n";
        return;
    }
    if (o.result)
        out << "result: " << lambda::print(*o.result) << "\n";
    else
        out << "fuel exhausted after " << o.forward_steps << " steps\n";
    out << summary_line(m) << "\n";
    out << "reversal: " << (o.reversed ? "PASS" : "FAIL") << "\n";
}

}  // namespace

int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto loaded = load(cfg, err);
    if (!loaded.term) return loaded.code;
    Machine m = Machine::from_term(*loaded.term, cfg.id_start);
    auto o = run_and_reverse(m, cfg.fuel, {});
    report(o, m, cfg, out);
    if (o.run == machine::RunOutcome::fuel_exhausted) err << "fuel exhausted; the prefix was reversed\n";
    return finish(o);
}

int cmd_trace(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto loaded = load(cfg, err);
    if (!loaded.term) return loaded.code;
    Machine m = Machine::from_term(*loaded.term, cfg.id_start);
    auto hook = [&](std::size_t k, bool forward, machine::Rule rule, const Machine& s) {
        const char* dir = forward ? "fwd" : "bwd";
        if (cfg.emit_json) {
            out << json{{"k", k}, {"dir", dir}, {"rule", machine::rule_name(rule)}, {"snapshot", to_json(snapshot_of(s))}}
                       .dump()
                << "\n";
            return;
        }
        out << "#" << k << " " << dir << " " << machine::rule_name(rule) << "  | " << render_part(s, s.active())
            << " || " << render_part(s, s.evaluated()) << " | H=" << s.history().size() << "\n";
        out << "  ~> " << lambda::print(s.read_back()) << "\n";
    };
    auto o = run_and_reverse(m, cfg.fuel, hook);
    if (cfg.emit_json)
        out << json{{"summary", summary_json(m)}, {"reversal", o.reversed ? "PASS" : "FAIL"}}.dump() << "\n";
    else
        out << summary_line(m) << "\n";
    if (o.run == machine::RunOutcome::fuel_exhausted) err << "fuel exhausted; the prefix was reversed\n";
    if (!o.reversed) err << "reversal did not reach the initial state\n";
    return finish(o);
}

int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    auto loaded = load(cfg, err);
    if (!loaded.term) return loaded.code;
    const Term& t = *loaded.term;
    const std::size_t size = lambda::size_term(t);

    std::vector<std::pair<std::string, std::string>> failures;
    auto verdict = [&](const std::string& property, bool ok, const std::string& detail) {
        out << (ok ? "ok   " : "FAIL ") << property << ": " << detail << "\n";
        if (!ok) failures.emplace_back(property, detail);
    };

    {
        crumble::Store s(cfg.id_start);
        auto m = crumble::env_measures(s, crumble::translate(s, t));
        verdict("size bounds", m.size <= 2 * size && m.length <= size,
                "size " + std::to_string(m.size) + " <= " + std::to_string(2 * size) + ", length " +
                    std::to_string(m.length) + " <= " + std::to_string(size));
    }

    Machine m = Machine::from_term(t, cfg.id_start);
    bool deterministic = true;
    auto hook = [&](std::size_t, bool, machine::Rule, const Machine& s) {
        deterministic = deterministic && s.check_deterministic();
    };
    auto o = run_and_reverse(m, cfg.fuel, hook);
    const auto c = m.counters();

    if (o.result) {
        auto reference = lambda::normalize_beta_v(t, cfg.fuel);
        verdict("principal matching", reference && reference->steps == c.principal,
                std::to_string(c.principal) + " = " + (reference ? std::to_string(reference->steps) : "(no normal form)"));
        verdict("normal form", reference && lambda::alpha_eq(*o.result, reference->term),
                lambda::print(*o.result) + " = " + (reference ? lambda::print(reference->term) : "(none)"));
    }
    verdict("sea bound", c.search <= (c.principal + 1) * size,
            std::to_string(c.search) + " <= " + std::to_string((c.principal + 1) * size));
    verdict("work bound", c.copy_work <= c.principal * 2 * size,
            std::to_string(c.copy_work) + " <= " + std::to_string(c.principal * 2 * size));
    verdict("determinism", deterministic, "at every step");
    verdict("reversal identity", o.reversed, std::to_string(c.backward) + " backward steps");
    out << summary_line(m) << "\n";

    if (!failures.empty()) {
        err << "assertion failed: " << failures.front().first << " (" << failures.front().second << ")\n";
        return exit_code::assertion;
    }
    if (o.run == machine::RunOutcome::fuel_exhausted) {
        err << "fuel exhausted after " << o.forward_steps << " steps; the prefix was reversed\n";
        return exit_code::fuel;
    }
    return exit_code::ok;
}

int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err) {
    if (auto problem = validate(cfg); !problem.empty()) {
        err << problem << "\n";
        return exit_code::usage;
    }
    switch (cfg.mode) {
        case Mode::run: return cmd_run(cfg, out, err);
        case Mode::trace: return cmd_trace(cfg, out, err);
        case Mode::check: return cmd_check(cfg, out, err);
        case Mode::serve: break;
    }

    SessionService service(cfg.id_start);
    if (!cfg.input_path.empty()) {
        auto loaded = load(cfg, err);
        if (!loaded.term) return loaded.code;
        service.set_default_term(*loaded.term);
    }
    StepServer server(service);
    if (server.bind("127.0.0.1", cfg.port) < 0) {
        err << "cannot bind 127.0.0.1:" << cfg.port << "\n";
        return exit_code::io;
    }
    out << "listening on http://127.0.0.1:" << cfg.port << "/rpc" << std::endl;
    return server.listen() ? exit_code::ok : exit_code::io;
}

}  // namespace rcam::service
