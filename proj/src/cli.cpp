#include "aspt/cli.hpp"

#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "aspt/corelib.hpp"
#include "aspt/validation.hpp"

namespace aspt {

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUnsat = 1;
constexpr int kExitError = 2;

struct CommonOptions {
    std::string input = "-";
    std::string output;
    std::string uuid_mode = "random";
    std::uint64_t seed = 0;
    bool seed_given = false;
    std::string registry_path;
    bool registry_given = false;
    int max_atoms = 20;
    int max_ht_atoms = 15;
};

void add_common(CLI::App* cmd, CommonOptions& opts, bool with_limits) {
    cmd->add_option("input", opts.input, "input file, or - for standard input");
    cmd->add_option("-o,--output", opts.output, "output file instead of standard output");
    cmd->add_option("--uuid", opts.uuid_mode, "UUID mode for local predicate renaming")
        ->check(CLI::IsMember({"random", "deterministic"}));
    cmd->add_option("--seed", opts.seed, "counter start in deterministic UUID mode")
        ->check(CLI::NonNegativeNumber);
    cmd->add_option("--registry", opts.registry_path,
                    "load templates from this file instead of the built-in library");
    if (with_limits) {
        cmd->add_option("--max-atoms", opts.max_atoms, "classical search limit (atoms)");
        cmd->add_option("--max-ht-atoms", opts.max_ht_atoms, "here-and-there search limit (atoms)");
    }
}

std::string read_input(const CommonOptions& opts, std::istream& in) {
    if (opts.input == "-") {
        std::ostringstream buffer;
        buffer << in.rdbuf();
        return buffer.str();
    }
    std::ifstream file(opts.input);
    if (!file) throw Error("cannot open input file: " + opts.input);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    return buffer.str();
}

void write_output(const CommonOptions& opts, std::ostream& out, const std::string& text) {
    if (opts.output.empty()) {
        out << text;
        return;
    }
    std::ofstream file(opts.output);
    if (!file) throw Error("cannot open output file: " + opts.output);
    file << text;
}

UuidSource make_uuids(const CommonOptions& opts) {
    if (opts.uuid_mode == "deterministic") return UuidSource::deterministic(opts.seed);
    if (opts.seed_given) throw Error("--seed is only valid with --uuid deterministic");
    return UuidSource::random();
}

TemplateRegistry make_registry(const CommonOptions& opts, UuidSource& uuids, std::ostream& err) {
    if (!opts.registry_given) return builtin_registry(uuids);
    std::ifstream file(opts.registry_path);
    if (!file) throw Error("cannot open registry file: " + opts.registry_path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    TemplateRegistry registry;
    std::vector<std::string> warnings;
    const Program residue =
        expand(parse_program_with_templates(buffer.str()), registry, uuids, &warnings);
    for (const std::string& w : warnings) err << "warning: " << w << "\n";
    if (!residue.empty())
        err << "warning: registry file contains " << residue.statements.size()
            << " ordinary statement(s); ignored\n";
    return registry;
}

EngineOptions make_engine_options(const CommonOptions& opts) {
    EngineOptions engine;
    engine.limits.max_atoms = opts.max_atoms;
    engine.limits.max_ht_atoms = opts.max_ht_atoms;
    return engine;
}

Program expand_input(const std::string& text, const CommonOptions& opts, UuidSource& uuids,
                     std::ostream& err) {
    TemplateRegistry registry = make_registry(opts, uuids, err);
    std::vector<std::string> warnings;
    Program expanded = expand(parse_program_with_templates(text), registry, uuids, &warnings);
    for (const std::string& w : warnings) err << "warning: " << w << "\n";
    return expanded;
}

int cmd_expand(const CommonOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
    UuidSource uuids = make_uuids(opts);
    const Program expanded = expand_input(read_input(opts, in), opts, uuids, err);
    std::string text = render(expanded);
    if (!text.empty()) text += '\n';
    write_output(opts, out, text);
    return kExitOk;
}

int cmd_solve(const CommonOptions& opts, std::istream& in, std::ostream& out, std::ostream& err) {
    UuidSource uuids = make_uuids(opts);
    const Program expanded = expand_input(read_input(opts, in), opts, uuids, err);
    const auto models = stable_models(expanded, make_engine_options(opts));
    if (models.empty()) {
        write_output(opts, out, "UNSATISFIABLE\n");
        return kExitUnsat;
    }
    std::vector<std::string> lines;
    lines.reserve(models.size());
    for (const Interpretation& m : models) lines.push_back(render(m));
    std::sort(lines.begin(), lines.end());
    std::string text;
    for (const std::string& line : lines) text += line + "\n";
    write_output(opts, out, text);
    return kExitOk;
}

int cmd_validate(const CommonOptions& opts, std::istream& in, std::ostream& out,
                 std::ostream& err) {
    UuidSource uuids = make_uuids(opts);
    const std::string text = read_input(opts, in);
    const std::vector<ManifestDirective> manifest = parse_manifest(text);
    if (manifest.empty()) {
        err << "warning: no validation directives (%! lines) found\n";
        return kExitOk;
    }
    const Program expanded = expand_input(text, opts, uuids, err);
    const ManifestOutcome outcome = run_manifest(expanded, manifest, make_engine_options(opts));
    for (const std::string& w : outcome.warnings) err << "warning: " << w << "\n";
    std::string report_text;
    for (std::size_t i = 0; i < outcome.reports.size(); ++i) {
        const ValidationReport& report = outcome.reports[i];
        report_text += report.pass ? "PASS " : "FAIL ";
        report_text += manifest[i].text;
        if (!report.pass) {
            if (report.witness) report_text += "  witness: {" + render(*report.witness) + "}";
            if (!report.detail.empty()) report_text += "  (" + report.detail + ")";
        } else if (report.vacuous) {
            report_text += "  (vacuous: program is classically unsatisfiable)";
        }
        report_text += '\n';
    }
    write_output(opts, out, report_text);
    return outcome.all_passed ? kExitOk : kExitUnsat;
}

int cmd_list_templates(const CommonOptions& opts, bool long_names, std::ostream& out,
                       std::ostream& err) {
    UuidSource uuids = make_uuids(opts);
    TemplateRegistry registry = make_registry(opts, uuids, err);
    std::string text;
    for (const std::string& name : registry.names()) {
        if (!long_names && name.rfind("@dumbo/", 0) == 0) continue;
        text += name + "\n";
    }
    write_output(opts, out, text);
    return kExitOk;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out,
            std::ostream& err) {
    CLI::App app{"template expansion, solving and validation for answer set programs"};
    app.require_subcommand(1);

    CommonOptions expand_opts;
    CLI::App* expand_cmd =
        app.add_subcommand("expand", "expand template directives into an ordinary program");
    add_common(expand_cmd, expand_opts, false);

    CommonOptions solve_opts;
    CLI::App* solve_cmd = app.add_subcommand("solve", "print the stable models of the input");
    add_common(solve_cmd, solve_opts, true);

    CommonOptions validate_opts;
    CLI::App* validate_cmd =
        app.add_subcommand("validate", "run the %! validation directives of the input");
    add_common(validate_cmd, validate_opts, true);

    CommonOptions list_opts;
    bool long_names = false;
    CLI::App* list_cmd = app.add_subcommand("list-templates", "list the template registry");
    add_common(list_cmd, list_opts, false);
    list_cmd->add_flag("--long", long_names, "include long-form template names");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());  // CLI11 order
        app.parse(reversed);
    } catch (const CLI::ParseError& e) {
        return app.exit(e, out, err) == 0 ? kExitOk : kExitError;
    }

    auto finish_options = [&](CommonOptions& opts, CLI::App* cmd) {
        opts.seed_given = cmd->count("--seed") > 0;
        opts.registry_given = cmd->count("--registry") > 0;
    };

    try {
        if (expand_cmd->parsed()) {
            finish_options(expand_opts, expand_cmd);
            return cmd_expand(expand_opts, in, out, err);
        }
        if (solve_cmd->parsed()) {
            finish_options(solve_opts, solve_cmd);
            return cmd_solve(solve_opts, in, out, err);
        }
        if (validate_cmd->parsed()) {
            finish_options(validate_opts, validate_cmd);
            return cmd_validate(validate_opts, in, out, err);
        }
        finish_options(list_opts, list_cmd);
        return cmd_list_templates(list_opts, long_names, out, err);
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kExitError;
    }
}

}  // namespace aspt
