#include "aspt/corelib.hpp"

#include <optional>

namespace aspt {

namespace {

constexpr int kPregeneratedCopyArity = 8;

const char* kCoreTemplates = R"(% Built-in template library.

__template__("@d/tc").
    c(X,Y) :- r(X,Y).
    c(X,Z) :- c(X,Y), r(Y,Z).
__end__.

__template__("@d/tcc").
    :- __c(X,X).
    __apply_template__("@d/tc", (c, __c)).
__end__.

__template__("@d/tcg").
    __apply_template__("@d/tc", (c, __c)).
    c(X,Y) :- __c(X,Y).
    :- c(X,Y), not __c(X,Y).
__end__.

__template__("@d/symmetric closure").
    c(X,Y) :- r(X,Y).
    c(X,Y) :- r(Y,X).
__end__.

__template__("@d/reachable nodes").
    reach(X) :- start(X).
    reach(Y) :- reach(X), link(X,Y).
__end__.

__template__("@d/connected graph").
    __start(X) :- X = #min{Y : node(Y)}.
    __apply_template__("@d/reachable nodes", (start, __start), (reach, __reach)).
    :- node(X), not __reach(X).
__end__.

% Long-form names for the same templates. Declarations with local predicates
% repeat their content so that no UUID draw happens at load time.

__template__("@dumbo/transitive closure").
    __apply_template__("@d/tc").
__end__.

__template__("@dumbo/transitive closure check").
    :- __c(X,X).
    __apply_template__("@d/tc", (c, __c)).
__end__.

__template__("@dumbo/transitive closure guaranteed").
    __apply_template__("@d/tc", (c, __c)).
    c(X,Y) :- __c(X,Y).
    :- c(X,Y), not __c(X,Y).
__end__.

__template__("@dumbo/symmetric closure").
    __apply_template__("@d/symmetric closure").
__end__.

__template__("@dumbo/reachable nodes").
    __apply_template__("@d/reachable nodes").
__end__.

__template__("@dumbo/connected graph").
    __start(X) :- X = #min{Y : node(Y)}.
    __apply_template__("@d/reachable nodes", (start, __start), (reach, __reach)).
    :- node(X), not __reach(X).
__end__.
)";

std::string variable_list(int arity) {
    std::string out;
    for (int i = 1; i <= arity; ++i) {
        if (i > 1) out += ',';
        out += "X" + std::to_string(i);
    }
    return out;
}

std::string exact_copy_declaration(const std::string& name, int arity) {
    const std::string args = arity == 0 ? "" : "(" + variable_list(arity) + ")";
    std::string out;
    out += "__template__(\"" + name + "\").\n";
    out += "    output" + args + " :- input" + args + ".\n";
    out += "    :- output" + args + ", not input" + args + ".\n";
    out += "__end__.\n";
    return out;
}

std::string exact_copy_name(std::string_view prefix, int arity) {
    return std::string(prefix) + "/exact copy (arity " + std::to_string(arity) + ")";
}

// "@d/exact copy (arity N)" or "@dumbo/exact copy (arity N)" for N >= 0
std::optional<int> parse_exact_copy_arity(const std::string& name) {
    for (std::string_view prefix : {"@d/exact copy (arity ", "@dumbo/exact copy (arity "}) {
        if (name.size() <= prefix.size() + 1 || name.substr(0, prefix.size()) != prefix) continue;
        if (name.back() != ')') continue;
        const std::string digits = name.substr(prefix.size(), name.size() - prefix.size() - 1);
        if (digits.empty()) continue;
        int value = 0;
        for (char c : digits) {
            if (c < '0' || c > '9') return std::nullopt;
            value = value * 10 + (c - '0');
            if (value > 1024) return std::nullopt;
        }
        return value;
    }
    return std::nullopt;
}

}  // namespace

std::string corelib_source() {
    std::string out = kCoreTemplates;
    out += '\n';
    for (int n = 0; n <= kPregeneratedCopyArity; ++n)
        out += exact_copy_declaration(exact_copy_name("@d", n), n) + "\n";
    for (int n = 0; n <= kPregeneratedCopyArity; ++n) {
        out += "__template__(\"" + exact_copy_name("@dumbo", n) + "\").\n";
        out += "    __apply_template__(\"" + exact_copy_name("@d", n) + "\").\n";
        out += "__end__.\n\n";
    }
    return out;
}

Template exact_copy(int arity, UuidSource& uuids) {
    if (arity < 0) throw ExpandError("exact copy arity must be non-negative");
    const std::string name = exact_copy_name("@d", arity);
    TemplateRegistry registry;
    expand(parse_program_with_templates(exact_copy_declaration(name, arity)), registry, uuids);
    return registry.lookup(name);
}

TemplateRegistry builtin_registry(UuidSource& uuids) {
    TemplateRegistry registry;
    const Program residue = expand(parse_program_with_templates(corelib_source()), registry, uuids);
    if (!residue.empty())
        throw ExpandError("core template library must contain declarations only");
    registry.set_fallback([](const std::string& name) -> std::optional<Template> {
        const auto arity = parse_exact_copy_arity(name);
        if (!arity) return std::nullopt;
        UuidSource scratch = UuidSource::deterministic(0);  // copy templates draw nothing
        Template tpl = exact_copy(*arity, scratch);
        tpl.name = name;
        return tpl;
    });
    return registry;
}

}  // namespace aspt
