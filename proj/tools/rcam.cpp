#include <iostream>

#include <CLI11.hpp>

#include "rcam/service/commands.hpp"

int main(int argc, char** argv) {
    using rcam::service::Mode;

    CLI::App app{"Reversible crumbling abstract machine for closed call-by-value lambda terms"};
    app.require_subcommand(1);

    rcam::service::RunConfig cfg;
    auto common = [&](CLI::App* sub, bool file_required) {
        auto* file = sub->add_option("file", cfg.input_path, "term file (`#` starts a comment)");
        if (file_required) file->required()->check(CLI::ExistingFile);
        sub->add_option("--fuel", cfg.fuel, "maximum number of forward steps")->check(CLI::PositiveNumber);
        sub->add_option("--id-start", cfg.id_start, "first entry id handed out")->check(CLI::PositiveNumber);
        sub->add_flag("--json", cfg.emit_json, "machine-readable output");
    };

    auto* run = app.add_subcommand("run", "run forward, print counters, reverse and verify");
    auto* trace = app.add_subcommand("trace", "print every forward and backward step");
    auto* check = app.add_subcommand("check", "compare against the reference evaluator and the cost bounds");
    auto* serve = app.add_subcommand("serve", "step-server: JSON requests on POST /rpc");
    common(run, true);
    common(trace, true);
    common(check, true);
    common(serve, false);
    serve->add_option("--port", cfg.port, "TCP port")->check(CLI::Range(1024, 65535));

    CLI11_PARSE(app, argc, argv);

    if (run->parsed()) cfg.mode = Mode::run;
    if (trace->parsed()) cfg.mode = Mode::trace;
    if (check->parsed()) cfg.mode = Mode::check;
    if (serve->parsed()) cfg.mode = Mode::serve;
    return rcam::service::run_command(cfg, std::cout, std::cerr);
}
