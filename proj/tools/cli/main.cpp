#include <iostream>
#include <map>
#include <string>

#include <CLI11.hpp>

#include "commands.hpp"
#include "config.hpp"
#include "report.hpp"
#include "wdl/error.hpp"
#include "wdl/version.hpp"

namespace {

int fail(const std::string& command, const std::string& type, const std::string& message, int code) {
    std::cerr << wdl::cli::error_record(command, type, message).dump() << "\n";
    return code;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Exact computation and checks for weighted divisor sums"};
    app.set_version_flag("--version", std::string(wdl::version));
    app.set_help_flag("--help", "Print this help message and exit");
    app.require_subcommand(1);

    std::map<std::string, std::string> values;
    std::map<std::string, CLI::Option*> options;
    std::map<std::string, CLI::App*> subs;
    for (const auto& name : wdl::cli::command_names()) {
        auto* sub = app.add_subcommand(name);
        sub->set_help_flag("--help", "Print this help message and exit");
        subs[name] = sub;
        for (const auto& key : wdl::cli::config_keys()) {
            options[name + "/" + key] = sub->add_option("--" + key, values[name + "/" + key]);
        }
        options[name + "/config"] = sub->add_option("--config", values[name + "/config"], "key=value config file");
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    std::string command;
    for (const auto& [name, sub] : subs) {
        if (sub->parsed()) command = name;
    }
    std::map<std::string, std::string> flags;
    for (const auto& [id, opt] : options) {
        const auto slash = id.find('/');
        if (id.substr(0, slash) == command && opt->count() > 0) flags[id.substr(slash + 1)] = values[id];
    }

    try {
        return wdl::cli::run_command(command, wdl::cli::resolve_config(flags), std::cerr);
    } catch (const wdl::DomainError& e) {
        return fail(command, "domain_error", e.what(), 2);
    } catch (const wdl::RangeError& e) {
        return fail(command, "range_error", e.what(), 3);
    } catch (const wdl::ResourceError& e) {
        return fail(command, "resource_error", e.what(), 4);
    } catch (const wdl::NumericalError& e) {
        return fail(command, "numerical_error", e.what(), 5);
    } catch (const std::exception& e) {
        return fail(command, "error", e.what(), 1);
    }
}
