// Acceptance suite: reproduces the worked examples and property guarantees
// end to end, one PASS/FAIL line per criterion. Exit code is the number of
// failed criteria.

#include <chrono>
#include <cstdio>
#include <functional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "aspt/cli.hpp"
#include "aspt/corelib.hpp"
#include "aspt/validation.hpp"
#include "corpus.hpp"
#include "generators.hpp"

using namespace aspt;
using namespace aspt::testing;

namespace {

void require(bool condition, const std::string& message) {
    if (!condition) throw std::runtime_error(message);
}

std::set<Interpretation> as_set(const std::vector<Interpretation>& models) {
    return {models.begin(), models.end()};
}

std::set<Atom> atoms_of(const std::vector<std::string>& names) {
    std::set<Atom> out;
    for (const std::string& name : names) out.insert(atom_of(name));
    return out;
}

Program expand_text(const std::string& text, TemplateRegistry& registry, UuidSource& uuids) {
    return expand(parse_program_with_templates(text), registry, uuids);
}

// ---------------------------------------------------------------------------

void criterion_1_stable_models_of_the_worked_program() {
    const auto models = stable_models(parse_program(kChoiceProgram));
    const std::set<Interpretation> expected{interp_of({"e(1)", "e(2)", "a(1)", "a(2)"}),
                                            interp_of({"e(1)", "e(2)", "b(1)", "a(2)"}),
                                            interp_of({"e(1)", "e(2)", "b(1)", "b(2)"})};
    require(as_set(models) == expected, "stable model set differs from the published three");
}

void criterion_2_stable_equals_equilibrium() {
    std::mt19937 rng(1001);
    for (int round = 0; round < 200; ++round) {
        const Program p = random_ground_program(rng, ProgramShape{8, 9});
        EngineOptions direct;
        direct.ht_eval = HtEval::Direct;  // independent route: full base, formula evaluation
        if (as_set(stable_models(p)) != as_set(equilibrium_models(p, direct)))
            throw std::runtime_error("stable and equilibrium models diverge on:\n" + render(p));
    }
}

void criterion_3_ht_anti_monotonicity() {
    std::mt19937 rng(1003);
    for (int round = 0; round < 100; ++round) {
        const Program a = random_ground_program(rng, ProgramShape{7, 7});
        const Program b = random_ground_program(rng, ProgramShape{10, 5});
        const Program joint = concat(a, b);
        const auto base = model_base(joint, herbrand_universe(joint));
        std::set<std::pair<Interpretation, Interpretation>> of_a;
        for (const HTPair& p : ht_models(a, base)) of_a.emplace(p.here, p.there);
        for (const HTPair& p : ht_models(joint, base))
            require(of_a.contains({p.here, p.there}),
                    "HT model of the union is not an HT model of the part");
    }
}

void criterion_4_ht_models_of_the_worked_program() {
    const Program p = parse_program(kChoiceProgram);
    const auto pairs = ht_models(p, model_base(p, herbrand_universe(p)));
    const Interpretation x = interp_of({"e(1)", "e(2)", "a(1)", "b(2)"});
    Interpretation x_fail = x;
    x_fail.atoms.insert(prop("fail"));
    bool found = false;
    for (const HTPair& pair : pairs) {
        require(pair.there != x, "no pair may have the inconsistent there-world");
        if (pair.here == x && pair.there == x_fail) found = true;
    }
    require(found, "expected the pair <X, X u {fail}> among the HT models");
}

void criterion_5_t1_and_t2_verdicts() {
    const Program forced = parse_program(kForcedAtomsProgram);
    require(validate_in_all_models(forced, atoms_of({"b(1)", "g", "d"}), atoms_of({"a(1)"})).pass,
            "T1 must accept the forced assignment");
    const Interpretation model = interp_of({"b(1)", "d", "g", "e"});
    require(validate_in_all_models_of_the_reduct(forced, model, atoms_of({"b(1)", "g", "e"})).pass,
            "T2 must accept the reduct-guaranteed atoms");
    require(!validate_in_all_models_of_the_reduct(forced, model, atoms_of({"d"})).pass,
            "T2 must reject d, which is not reduct-guaranteed");
}

void criterion_6_t3_and_instability_under_contexts() {
    const Program unstable = parse_program(kUnstableRule);
    require(validate_cannot_be_extended_to_stable_model(unstable, atoms_of({"__fail"}), {}).pass,
            "T3 must accept the unstable flag atom");
    std::mt19937 rng(1006);
    for (int round = 0; round < 100; ++round) {
        Program context = random_ground_program(rng, ProgramShape{4, 5});
        if (round % 2 == 0) {  // half the contexts also speak about foo
            Rule foo_rule;
            foo_rule.head = prop("foo");
            foo_rule.negative_body.push_back(prop("p1"));
            context.statements.push_back(foo_rule);
        }
        for (const Interpretation& m : stable_models(concat(unstable, context)))
            require(!m.contains(prop("__fail")),
                    "a stable model of an ignorant extension contains __fail");
    }
}

void criterion_7_expansion_and_closure_guarantee() {
    UuidSource uuids = UuidSource::deterministic(0);
    TemplateRegistry registry = builtin_registry(uuids);
    const Program expanded = expand_text(kClosureGuaranteeProgram, registry, uuids);
    require(expanded.statements.size() == 7, "expected the seven-statement expansion");

    std::istringstream in{kClosureGuaranteeProgram};
    std::ostringstream out;
    std::ostringstream err;
    const int code = run_cli({"solve", "-"}, in, out, err);
    require(code == 1 && out.str() == "UNSATISFIABLE\n",
            "solve must report UNSATISFIABLE with exit code 1");

    Program trimmed = expanded;  // drop the offending reach(foo,bar) fact
    require(render(trimmed.statements.back()) == "reach(foo,bar).", "unexpected last statement");
    trimmed.statements.pop_back();
    const auto models = stable_models(trimmed);
    require(models.size() == 1, "the trimmed program must have exactly one stable model");

    std::set<Atom> reach_atoms;
    for (const Atom& a : models[0].atoms)
        if (a.predicate == "reach") reach_atoms.insert(a);
    require(reach_atoms == atoms_of({"reach(a,b)", "reach(a,c)"}),
            "reach/2 must equal the transitive closure of {(a,b),(a,c)}");
}

void criterion_8_local_name_freshness() {
    // deterministic mode: fifty applications, pairwise disjoint local names
    std::string text;
    for (int i = 0; i < 50; ++i) text += "__apply_template__(\"@d/tcc\", (r, link)).\n";
    UuidSource uuids = UuidSource::deterministic(0);
    TemplateRegistry registry = builtin_registry(uuids);
    const Program out = expand_text(text, registry, uuids);
    require(out.statements.size() == 150, "each application must contribute three statements");
    std::set<std::string> seen;
    for (int i = 0; i < 50; ++i) {
        std::set<std::string> locals;
        for (int k = 0; k < 3; ++k)
            for (const std::string& p : statement_predicates(out.statements[3 * i + k]))
                if (is_local(p)) locals.insert(p);
        require(locals.size() == 1, "each application introduces exactly one local predicate");
        for (const std::string& p : locals)
            require(seen.insert(p).second, "local name reused across applications: " + p);
    }

    // random mode: ten thousand draws without a duplicate
    UuidSource random_uuids = UuidSource::random();
    std::set<std::string> draws;
    for (int i = 0; i < 10'000; ++i) draws.insert(random_uuids.draw());
    require(draws.size() == 10'000, "duplicate UUID among 10^4 random draws");
}

void criterion_9_core_template_oracles() {
    UuidSource uuids = UuidSource::deterministic(0);
    TemplateRegistry registry = builtin_registry(uuids);
    UuidSource apply_uuids = UuidSource::deterministic(50'000);

    auto expand_with = [&](const Program& facts, const char* name) {
        ProgramWithTemplates program;
        for (const Statement& s : facts.statements) program.elements.push_back(std::get<Rule>(s));
        program.elements.push_back(TemplateApplication{name, {}});
        return expand(program, registry, apply_uuids);
    };
    auto check_graph = [&](const Digraph& g) {
        const Program tc = expand_with(edge_facts("r", g), "@d/tc");
        const auto tc_models = stable_models(tc);
        require(tc_models.size() == 1, "@d/tc must have a unique stable model");
        require(relation_of(tc_models[0], "c") == transitive_closure_oracle(g),
                "@d/tc disagrees with the transitive closure oracle");

        const Program tcc = expand_with(edge_facts("r", g), "@d/tcc");
        require(stable_models(tcc).empty() != is_acyclic_oracle(g),
                "@d/tcc disagrees with the acyclicity oracle");

        Digraph symmetric = g;
        for (const Edge& e : g.edges) symmetric.edges.emplace(e.second, e.first);
        Program facts = concat(node_facts("node", g.nodes), edge_facts("link", symmetric));
        const Program connected =
            materialize_min_start(expand_with(facts, "@d/connected graph"), 1);
        require(stable_models(connected).empty() != is_connected_oracle(symmetric),
                "@d/connected graph disagrees with the connectivity oracle");
    };

    for (int nodes = 1; nodes <= 4; ++nodes)
        for (std::uint64_t mask = 0; mask < (1ull << (nodes * nodes)); ++mask)
            check_graph(digraph_from_mask(nodes, mask));
    std::mt19937 rng(1009);
    for (int round = 0; round < 100; ++round) check_graph(random_digraph(rng, 6, 0.25));
}

void criterion_10_nested_expansion_shape() {
    UuidSource uuids = UuidSource::deterministic(0);
    TemplateRegistry registry = builtin_registry(uuids);
    std::vector<std::string> warnings;  // the source redeclares core templates
    const Program out = expand(parse_program_with_templates(kSpanningTreeTemplates), registry,
                               uuids, &warnings);
    int doubly = 0;
    int singly = 0;
    for (const std::string& name : predicates_of(out)) {
        if (!is_local(name)) continue;
        if (name.rfind("__start", 0) == 0 || name.rfind("__reach", 0) == 0) {
            require(uuid_suffix_count(name) == 2,
                    "nested reachable-nodes locals must carry two UUID suffixes: " + name);
            ++doubly;
        } else if (name.rfind("__tree", 0) == 0) {
            require(uuid_suffix_count(name) == 1,
                    "spanning-tree locals must carry one UUID suffix: " + name);
            ++singly;
        }
    }
    require(doubly == 2 && singly == 1, "expected __start/__reach doubly and __tree singly");
}

void criterion_11_round_trip_and_expansion_fixpoints() {
    const std::vector<const char*> corpus{
        kChoiceProgram, kForcedAtomsProgram, kUnstableRule,  kSpanningTreeNaive,
        kImpactNaive,   "b(1).",             "p(-3, \"s\").", "",
    };
    for (const char* text : corpus) {
        const Program once = parse_program(text);
        const std::string rendered = render(once);
        require(parse_program(rendered) == once, "render/parse round trip failed");
        require(render(parse_program(rendered)) == rendered, "render is not a fixpoint");
    }
    for (const char* text : {kClosureGuaranteeProgram, kSpanningTreeTemplates, kImpactTemplates}) {
        UuidSource uuids = UuidSource::deterministic(0);
        TemplateRegistry registry = builtin_registry(uuids);
        std::vector<std::string> warnings;
        const Program expanded =
            expand(parse_program_with_templates(text), registry, uuids, &warnings);
        for (const std::string& p : predicates_of(expanded))
            require(!is_reserved(p), "expansion output mentions a reserved predicate");
        const std::string rendered = render(expanded);
        const Program reparsed = parse_program(rendered);  // parses as an ordinary program
        TemplateRegistry registry2 = builtin_registry(uuids);
        const Program re_expanded = expand_text(rendered, registry2, uuids);
        require(re_expanded == reparsed, "expansion output must re-expand to itself");
    }
}

struct Criterion {
    int id;
    const char* title;
    long long budget_ms;  // 0: no stated bound
    std::function<void()> body;
};

}  // namespace

int main() {
    const std::vector<Criterion> criteria{
        {1, "worked-example stable models reproduced exactly", 1000,
         criterion_1_stable_models_of_the_worked_program},
        {2, "stable = equilibrium on 200 random programs (<= 8 atoms)", 60'000,
         criterion_2_stable_equals_equilibrium},
        {3, "HT anti-monotonicity on 100 random program pairs", 0,
         criterion_3_ht_anti_monotonicity},
        {4, "worked-example HT models reproduced", 0, criterion_4_ht_models_of_the_worked_program},
        {5, "T1/T2 verdicts on the forced-atoms program", 0, criterion_5_t1_and_t2_verdicts},
        {6, "T3 verdict and instability under 100 contexts", 0,
         criterion_6_t3_and_instability_under_contexts},
        {7, "closure-guarantee expansion: unsatisfiable, then exact closure", 0,
         criterion_7_expansion_and_closure_guarantee},
        {8, "local-name freshness: 50 deterministic applications, 10^4 random draws", 0,
         criterion_8_local_name_freshness},
        {9, "core templates match graph oracles (exhaustive <= 4 nodes + 100 random)", 120'000,
         criterion_9_core_template_oracles},
        {10, "nested template application doubles the UUID suffixes", 0,
         criterion_10_nested_expansion_shape},
        {11, "render/parse and expansion fixpoints over the corpus", 0,
         criterion_11_round_trip_and_expansion_fixpoints},
    };

    int failed = 0;
    for (const Criterion& criterion : criteria) {
        const auto start = std::chrono::steady_clock::now();
        std::string error;
        try {
            criterion.body();
        } catch (const std::exception& e) {
            error = e.what();
        }
        const auto elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                                 std::chrono::steady_clock::now() - start)
                                 .count();
        if (error.empty() && criterion.budget_ms > 0 && elapsed > criterion.budget_ms)
            error = "exceeded the stated time budget of " + std::to_string(criterion.budget_ms) +
                    " ms";
        const bool ok = error.empty();
        std::printf("%s  %2d  %s (%lld ms)\n", ok ? "PASS" : "FAIL", criterion.id,
                    criterion.title, static_cast<long long>(elapsed));
        if (!ok) {
            std::printf("          %s\n", error.c_str());
            ++failed;
        }
    }
    return failed;
}
