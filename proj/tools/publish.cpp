// publish: build or lint the three artifacts (book, notebook, slides) from a
// single annotated markdown source tree.
//
//   publish build [--config publish.yml] [--target T]... [--out DIR] [--strict]
//   publish check [--config publish.yml] [--strict]
//
// Exit codes: 0 ok, 1 diagnostic errors (or warnings with --strict),
// 2 usage or configuration errors. Diagnostics go to stderr as
// file:line: severity[code]: message.
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "press/config.hpp"
#include "press/pipeline.hpp"

namespace {

void print_diagnostics(const std::vector<press::Diagnostic>& diagnostics) {
    for (const press::Diagnostic& d : diagnostics)
        std::cerr << press::format_diagnostic(d) << "\n";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"single-source publishing compiler: one markdown source, three artifacts"};
    app.require_subcommand(1);

    std::string config_path = "publish.yml";
    std::vector<std::string> target_names;
    std::string out_override;
    bool strict = false;

    CLI::App* build = app.add_subcommand("build", "build the configured targets");
    build->add_option("--config", config_path, "config file (default publish.yml)");
    build->add_option("--target", target_names, "build only this target (book|notebook|slides)")
        ->expected(-1);
    build->add_option("--out", out_override, "output directory override");
    build->add_flag("--strict", strict, "treat warnings as errors");

    CLI::App* check = app.add_subcommand("check", "run all diagnostics without writing output");
    check->add_option("--config", config_path, "config file (default publish.yml)");
    check->add_flag("--strict", strict, "treat warnings as errors");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    std::vector<press::Target> selection;
    for (const std::string& name : target_names) {
        const auto target = press::target_from_name(name);
        if (!target) {
            std::cerr << "publish: unknown target \"" << name
                      << "\" (expected book, notebook or slides)\n";
            return 2;
        }
        selection.push_back(*target);
    }

    press::LoadConfigResult loaded = press::load_config(config_path);
    print_diagnostics(loaded.diagnostics);
    if (press::has_errors(loaded.diagnostics)) return 2;
    if (strict) loaded.config.strict = true;
    if (!out_override.empty()) loaded.config.out_dir = out_override;

    press::BuildReport report;
    if (build->parsed()) {
        report = press::cmd_build(loaded.config, selection);
    } else {
        report = press::cmd_check(loaded.config);
    }
    print_diagnostics(report.diagnostics);
    return report.exit_status;
}
