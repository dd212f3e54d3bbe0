#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "aspt/cli.hpp"
#include "aspt/syntax.hpp"
#include "corpus.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

using namespace aspt;

namespace {

struct CliResult {
    int code = 0;
    std::string out;
    std::string err;
};

CliResult run(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in{input};
    std::ostringstream out;
    std::ostringstream err;
    CliResult result;
    result.code = run_cli(args, in, out, err);
    result.out = out.str();
    result.err = err.str();
    return result;
}

std::filesystem::path write_temp(const std::string& name, const std::string& content) {
    const auto path = std::filesystem::temp_directory_path() / name;
    std::ofstream file(path);
    file << content;
    return path;
}

constexpr const char* kU0 = "00000000_0000_4000_8000_000000000000";

}  // namespace

TEST_CASE("expand writes the renamed program deterministically") {
    const auto path = write_temp("aspt_cli_closure.lp", testing::kClosureGuaranteeProgram);
    const std::vector<std::string> args{"expand", path.string(), "--uuid", "deterministic",
                                        "--seed", "0"};
    const CliResult first = run(args);
    CHECK(first.code == 0);
    const std::string u0 = kU0;
    CHECK(first.out == "link(a,b).\n"
                       "link(a,c).\n"
                       "__c_" + u0 + "(X,Y) :- link(X,Y).\n"
                       "__c_" + u0 + "(X,Z) :- __c_" + u0 + "(X,Y), link(Y,Z).\n"
                       "reach(X,Y) :- __c_" + u0 + "(X,Y).\n"
                       ":- reach(X,Y), not __c_" + u0 + "(X,Y).\n"
                       "reach(foo,bar).\n");
    CHECK(run(args).out == first.out);  // reproducible under the same seed
}

TEST_CASE("expand of a directive-free file is a normalized copy") {
    const CliResult result = run({"expand", "-"}, "b(1).   a :- b(1).\n");
    CHECK(result.code == 0);
    CHECK(result.out == "b(1).\na :- b(1).\n");
}

TEST_CASE("expand output is a fixpoint of expansion") {
    const auto path = write_temp("aspt_cli_fixpoint.lp", testing::kSpanningTreeTemplates);
    const CliResult first = run({"expand", path.string(), "--uuid", "deterministic"});
    REQUIRE(first.code == 0);
    const CliResult second = run({"expand", "-", "--uuid", "deterministic"}, first.out);
    CHECK(second.code == 0);
    CHECK(second.out == first.out);
}

TEST_CASE("expand reports parse errors with positions on the error stream") {
    const CliResult result = run({"expand", "-"}, "a :- b\nc.\n");
    CHECK(result.code == 2);
    CHECK(result.out.empty());
    CHECK(result.err.find("line") != std::string::npos);
}

TEST_CASE("solve prints one sorted model per line") {
    const CliResult result = run({"solve", "-"}, testing::kChoiceProgram);
    CHECK(result.code == 0);
    CHECK(result.out ==
          "a(1) a(2) e(1) e(2)\n"
          "a(2) b(1) e(1) e(2)\n"
          "b(1) b(2) e(1) e(2)\n");

    CHECK(run({"solve", "-"}, "b(1).").out == "b(1)\n");
}

TEST_CASE("solve reports unsatisfiable programs with exit code 1") {
    const auto path = write_temp("aspt_cli_unsat.lp", testing::kClosureGuaranteeProgram);
    const CliResult result = run({"solve", path.string()});
    CHECK(result.code == 1);
    CHECK(result.out == "UNSATISFIABLE\n");
}

TEST_CASE("solve rejects extended statements") {
    const CliResult result = run({"solve", "-"}, "{a(X) : b(X)}.");
    CHECK(result.code == 2);
    CHECK(result.err.find("extended") != std::string::npos);
}

TEST_CASE("validate runs the manifest directives of the input") {
    const std::string source = std::string(testing::kForcedAtomsProgram) +
                               "%! in_all_models true: b(1), g, d; false: a(1).\n";
    const CliResult result = run({"validate", "-"}, source);
    CHECK(result.code == 0);
    CHECK(result.out == "PASS in_all_models true: b(1), g, d; false: a(1)\n");
}

TEST_CASE("validate without directives warns and succeeds") {
    const CliResult result = run({"validate", "-"}, "b(1).\n");
    CHECK(result.code == 0);
    CHECK(result.out.empty());
    CHECK(result.err.find("no validation directives") != std::string::npos);
}

TEST_CASE("validate resolves deterministic local names") {
    const std::string source =
        "__template__(\"fail flag\").\n"
        "    __fail :- foo, not __fail.\n"
        "__end__.\n"
        "__apply_template__(\"fail flag\").\n"
        "%! cannot_be_extended true: __fail_00000000_0000_4000_8000_000000000000; false: .\n";
    const CliResult result = run({"validate", "-", "--uuid", "deterministic", "--seed", "0"},
                                 source);
    CHECK(result.code == 0);
    CHECK(result.out.rfind("PASS", 0) == 0);
}

TEST_CASE("failing directives print a witness and exit 1") {
    const std::string source = std::string(testing::kForcedAtomsProgram) +
                               "%! in_all_models true: e; false: .\n";
    const CliResult result = run({"validate", "-"}, source);
    CHECK(result.code == 1);
    CHECK(result.out.rfind("FAIL", 0) == 0);
    CHECK(result.out.find("witness") != std::string::npos);
}

TEST_CASE("malformed directives exit with code 2") {
    const CliResult result = run({"validate", "-"}, "b.\n%! in_all_models true: b\n");
    CHECK(result.code == 2);
    CHECK(result.err.find("directive") != std::string::npos);
}

TEST_CASE("list-templates hides long names unless asked") {
    const CliResult short_names = run({"list-templates"});
    CHECK(short_names.code == 0);
    CHECK(short_names.out.find("@d/tc\n") != std::string::npos);
    CHECK(short_names.out.find("@d/exact copy (arity 8)\n") != std::string::npos);
    CHECK(short_names.out.find("@dumbo/") == std::string::npos);

    const CliResult long_names = run({"list-templates", "--long"});
    CHECK(long_names.out.find("@dumbo/transitive closure\n") != std::string::npos);
    CHECK(long_names.out.find("@d/tc\n") != std::string::npos);
}

TEST_CASE("a custom registry file replaces the built-in library") {
    const auto empty = write_temp("aspt_cli_empty_registry.lp", "");
    CHECK(run({"list-templates", "--registry", empty.string()}).out.empty());

    const auto custom = write_temp("aspt_cli_custom_registry.lp",
                                   "__template__(\"mine\"). p :- q. __end__.\n");
    const CliResult listing = run({"list-templates", "--registry", custom.string()});
    CHECK(listing.out == "mine\n");
    const CliResult expanded = run({"expand", "-", "--registry", custom.string()},
                                   "q. __apply_template__(\"mine\").");
    CHECK(expanded.out == "q.\np :- q.\n");
    // built-ins are gone
    const CliResult missing = run({"expand", "-", "--registry", custom.string()},
                                  "__apply_template__(\"@d/tc\").");
    CHECK(missing.code == 2);
}

TEST_CASE("long template names expand like their short forms") {
    const CliResult via_long =
        run({"expand", "-"}, "__apply_template__(\"@dumbo/transitive closure\", (r, e), (c, t)).");
    CHECK(via_long.code == 0);
    CHECK(via_long.out == "t(X,Y) :- e(X,Y).\nt(X,Z) :- t(X,Y), e(Y,Z).\n");
    const CliResult via_short =
        run({"expand", "-"}, "__apply_template__(\"@d/tc\", (r, e), (c, t)).");
    CHECK(via_long.out == via_short.out);
}

TEST_CASE("seed requires deterministic mode") {
    const CliResult result = run({"expand", "-", "--seed", "3"}, "b.");
    CHECK(result.code == 2);
    CHECK(result.err.find("--seed") != std::string::npos);
}

TEST_CASE("output goes to a file with -o") {
    const auto out_path = std::filesystem::temp_directory_path() / "aspt_cli_out.lp";
    std::filesystem::remove(out_path);
    const CliResult result = run({"expand", "-", "-o", out_path.string()}, "b(1).");
    CHECK(result.code == 0);
    CHECK(result.out.empty());
    std::ifstream file(out_path);
    std::ostringstream buffer;
    buffer << file.rdbuf();
    CHECK(buffer.str() == "b(1).\n");
}

TEST_CASE("engine limits are adjustable from the command line") {
    std::string wide;
    for (int i = 1; i <= 22; ++i) wide += "p(" + std::to_string(i) + ").\n";
    wide += "q(X) :- p(X), not r(X).\nr(X) :- p(X), not q(X).\n";
    const CliResult tight = run({"solve", "-"}, wide);
    CHECK(tight.code == 2);
    CHECK(tight.err.find("limit") != std::string::npos);
}
