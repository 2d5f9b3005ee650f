#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <string>

namespace rcam::service {

enum class Mode { run, trace, check, serve };

struct RunConfig {
    std::string input_path;
    Mode mode = Mode::run;
    std::size_t fuel = 1'000'000;
    std::uint64_t id_start = 1;
    int port = 8765;
    bool emit_json = false;
};

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int io = 1;
inline constexpr int parse = 2;
inline constexpr int open_term = 3;
inline constexpr int fuel = 4;
inline constexpr int assertion = 5;
inline constexpr int usage = 64;
}  // namespace exit_code

/// Empty when the configuration is usable, otherwise the reason it is not.
std::string validate(const RunConfig& cfg);

/// Forward to final (or fuel), print counters, reverse to the initial state and verify it.
int cmd_run(const RunConfig& cfg, std::ostream& out, std::ostream& err);
/// As cmd_run, printing every forward and backward step with its read-back.
int cmd_trace(const RunConfig& cfg, std::ostream& out, std::ostream& err);
/// Machine against the reference evaluator plus the cost bounds; exit 5 names the failed property.
int cmd_check(const RunConfig& cfg, std::ostream& out, std::ostream& err);

/// Dispatches on cfg.mode; serve blocks until the server stops.
int run_command(const RunConfig& cfg, std::ostream& out, std::ostream& err);

}  // namespace rcam::service
