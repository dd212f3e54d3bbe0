#include "aspt/semantics.hpp"

#include <algorithm>
#include <map>

namespace aspt {

namespace {

const char* kExtendedUnsupported =
    "extended statements (aggregates, choice rules, arithmetic) are not supported by the "
    "semantics engine";

int term_rank(const Term& t) { return t.kind == TermKind::Integer ? 0 : 1; }

// integers order numerically and before symbolic constants
bool term_less(const Term& a, const Term& b) {
    if (term_rank(a) != term_rank(b)) return term_rank(a) < term_rank(b);
    if (a.kind == TermKind::Integer) return a.value < b.value;
    return a.text < b.text;
}

bool evaluate(const Comparison& cmp) {
    const Term& l = cmp.lhs;
    const Term& r = cmp.rhs;
    const bool eq = l == r;
    switch (cmp.op) {
        case CmpOp::Eq: return eq;
        case CmpOp::Ne: return !eq;
        case CmpOp::Lt: return term_less(l, r);
        case CmpOp::Le: return term_less(l, r) || eq;
        case CmpOp::Gt: return term_less(r, l);
        case CmpOp::Ge: return term_less(r, l) || eq;
    }
    return false;
}

void collect_constants(const Atom& atom, std::set<Term>& out) {
    for (const Term& t : atom.terms)
        if (t.is_constant()) out.insert(t);
}

}  // namespace

// ---------------------------------------------------------------------------
// Interpretations
// ---------------------------------------------------------------------------

bool Interpretation::subset_of(const Interpretation& other) const {
    return std::includes(other.atoms.begin(), other.atoms.end(), atoms.begin(), atoms.end());
}

std::string render(const Interpretation& interpretation) {
    std::vector<std::string> texts;
    texts.reserve(interpretation.atoms.size());
    for (const Atom& a : interpretation.atoms) texts.push_back(render(a));
    std::sort(texts.begin(), texts.end());
    std::string out;
    for (std::size_t i = 0; i < texts.size(); ++i) {
        if (i) out += ' ';
        out += texts[i];
    }
    return out;
}

HTPair::HTPair(Interpretation here_world, Interpretation there_world)
    : here(std::move(here_world)), there(std::move(there_world)) {
    if (!here.subset_of(there))
        throw EngineError("here-and-there pair violates here \xE2\x8A\x86 there");
}

// ---------------------------------------------------------------------------
// Grounding
// ---------------------------------------------------------------------------

std::set<Term> herbrand_universe(const Program& program, const std::set<Term>& extra) {
    std::set<Term> out = extra;
    for (const Statement& stmt : program.statements) {
        if (const Rule* rule = std::get_if<Rule>(&stmt)) {
            if (rule->head) collect_constants(*rule->head, out);
            for (const Atom& a : rule->positive_body) collect_constants(a, out);
            for (const Atom& a : rule->negative_body) collect_constants(a, out);
            for (const Comparison& c : rule->comparisons) {
                if (c.lhs.is_constant()) out.insert(c.lhs);
                if (c.rhs.is_constant()) out.insert(c.rhs);
            }
        } else {
            const auto& ext = std::get<ExtendedStatement>(stmt);
            std::set<std::size_t> atom_positions(ext.atom_occurrences.begin(),
                                                 ext.atom_occurrences.end());
            for (std::size_t i = 0; i < ext.tokens.size(); ++i) {
                const Token& t = ext.tokens[i];
                if (t.kind == TokenKind::Integer) out.insert(Term::integer(std::stoll(t.text)));
                if (t.kind == TokenKind::String) out.insert(Term::symbol(t.text));
                if (t.kind == TokenKind::Identifier && t.text != "not" &&
                    !atom_positions.contains(i))
                    out.insert(Term::symbol(t.text));
            }
        }
    }
    return out;
}

namespace {

void collect_variables(const Rule& rule, std::vector<std::string>& out) {
    std::set<std::string> seen;
    auto visit_term = [&](const Term& t) {
        if (t.kind == TermKind::Variable && seen.insert(t.text).second) out.push_back(t.text);
    };
    auto visit_atom = [&](const Atom& a) {
        for (const Term& t : a.terms) visit_term(t);
    };
    if (rule.head) visit_atom(*rule.head);
    for (const Atom& a : rule.positive_body) visit_atom(a);
    for (const Atom& a : rule.negative_body) visit_atom(a);
    for (const Comparison& c : rule.comparisons) {
        visit_term(c.lhs);
        visit_term(c.rhs);
    }
}

Atom substitute(const Atom& atom, const std::map<std::string, Term>& binding) {
    Atom out = atom;
    for (Term& t : out.terms) {
        if (t.kind != TermKind::Variable) continue;
        auto it = binding.find(t.text);
        if (it != binding.end()) t = it->second;
    }
    return out;
}

Term substitute(const Term& term, const std::map<std::string, Term>& binding) {
    if (term.kind != TermKind::Variable) return term;
    auto it = binding.find(term.text);
    return it != binding.end() ? it->second : term;
}

constexpr std::uint64_t kMaxGroundInstances = 1'000'000;

void check_safe(const Rule& rule) {
    std::set<std::string> bound;
    for (const Atom& a : rule.positive_body)
        for (const Term& t : a.terms)
            if (t.kind == TermKind::Variable) bound.insert(t.text);
    auto require_bound = [&](const Atom& a) {
        for (const Term& t : a.terms)
            if (t.kind == TermKind::Variable && !bound.contains(t.text))
                throw EngineError("unsafe rule: variable " + t.text +
                                  " does not occur in the positive body of '" + render(rule) +
                                  "'");
    };
    if (rule.head) require_bound(*rule.head);
    for (const Atom& a : rule.negative_body) require_bound(a);
}

}  // namespace

GroundProgram ground(const Program& program, const std::set<Term>& universe) {
    std::vector<Term> constants(universe.begin(), universe.end());
    GroundProgram out;
    std::set<std::string> seen;  // dedupe on rendered text

    auto emit = [&](Rule rule) {
        if (seen.insert(render(rule)).second) out.rules.push_back(std::move(rule));
    };

    for (const Statement& stmt : program.statements) {
        const Rule* rule = std::get_if<Rule>(&stmt);
        if (!rule) throw EngineError(kExtendedUnsupported);
        check_safe(*rule);
        std::vector<std::string> vars;
        collect_variables(*rule, vars);
        std::uint64_t instances = 1;
        for (std::size_t v = 0; v < vars.size(); ++v) {
            instances *= constants.size();
            if (instances > kMaxGroundInstances)
                throw EngineError("grounding too large: rule '" + render(*rule) + "' over " +
                                  std::to_string(constants.size()) + " constants");
        }
        if (!vars.empty() && constants.empty()) continue;  // no instances

        std::vector<std::size_t> choice(vars.size(), 0);
        while (true) {
            std::map<std::string, Term> binding;
            for (std::size_t v = 0; v < vars.size(); ++v) binding.emplace(vars[v], constants[choice[v]]);

            bool comparisons_hold = true;
            for (const Comparison& c : rule->comparisons) {
                Comparison grounded{substitute(c.lhs, binding), c.op, substitute(c.rhs, binding)};
                if (!evaluate(grounded)) {
                    comparisons_hold = false;
                    break;
                }
            }
            if (comparisons_hold) {
                Rule instance;
                if (rule->head) instance.head = substitute(*rule->head, binding);
                for (const Atom& a : rule->positive_body)
                    instance.positive_body.push_back(substitute(a, binding));
                for (const Atom& a : rule->negative_body)
                    instance.negative_body.push_back(substitute(a, binding));
                emit(std::move(instance));
            }

            std::size_t v = 0;
            for (; v < vars.size(); ++v) {
                if (++choice[v] < constants.size()) break;
                choice[v] = 0;
            }
            if (v == vars.size()) break;
        }
    }
    return out;
}

bool satisfies(const Interpretation& interpretation, const GroundProgram& program) {
    for (const Rule& r : program.rules) {
        bool body = true;
        for (const Atom& a : r.positive_body)
            if (!interpretation.contains(a)) {
                body = false;
                break;
            }
        if (body)
            for (const Atom& a : r.negative_body)
                if (interpretation.contains(a)) {
                    body = false;
                    break;
                }
        if (!body) continue;
        if (!r.head || !interpretation.contains(*r.head)) return false;
    }
    return true;
}

GroundProgram reduct(const GroundProgram& program, const Interpretation& interpretation) {
    GroundProgram out;
    for (const Rule& r : program.rules) {
        bool body = std::all_of(r.positive_body.begin(), r.positive_body.end(),
                                [&](const Atom& a) { return interpretation.contains(a); }) &&
                    std::none_of(r.negative_body.begin(), r.negative_body.end(),
                                 [&](const Atom& a) { return interpretation.contains(a); });
        if (!body) continue;
        Rule kept;
        kept.head = r.head;
        kept.positive_body = r.positive_body;
        out.rules.push_back(std::move(kept));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Atom bases and the bit bridge
// ---------------------------------------------------------------------------

std::vector<Atom> model_base(const Program& program, const std::set<Term>& universe,
                             const std::vector<Atom>& extra) {
    std::set<std::pair<std::string, std::size_t>> signatures;
    for (const Statement& stmt : program.statements) {
        const Rule* rule = std::get_if<Rule>(&stmt);
        if (!rule) throw EngineError(kExtendedUnsupported);
        auto note = [&](const Atom& a) { signatures.emplace(a.predicate, a.arity()); };
        if (rule->head) note(*rule->head);
        for (const Atom& a : rule->positive_body) note(a);
        for (const Atom& a : rule->negative_body) note(a);
    }
    std::vector<Term> constants(universe.begin(), universe.end());
    std::uint64_t total = extra.size();
    for (const auto& [predicate, arity] : signatures) {
        std::uint64_t count = 1;
        for (std::size_t i = 0; i < arity && count <= 100'000; ++i) count *= constants.size();
        total += count;
        if (total > 100'000)
            throw EngineError("atom base too large: " + predicate + "/" +
                              std::to_string(arity) + " over " +
                              std::to_string(constants.size()) + " constants");
    }
    std::set<Atom> base(extra.begin(), extra.end());
    for (const auto& [predicate, arity] : signatures) {
        std::vector<std::size_t> choice(arity, 0);
        if (arity > 0 && constants.empty()) continue;
        while (true) {
            Atom atom;
            atom.predicate = predicate;
            for (std::size_t i = 0; i < arity; ++i) atom.terms.push_back(constants[choice[i]]);
            base.insert(std::move(atom));
            std::size_t i = 0;
            for (; i < arity; ++i) {
                if (++choice[i] < constants.size()) break;
                choice[i] = 0;
            }
            if (i == arity) break;
        }
    }
    return {base.begin(), base.end()};
}

std::vector<Atom> derivable_base(const GroundProgram& program) {
    std::set<Atom> possible;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& r : program.rules) {
            if (!r.head || possible.contains(*r.head)) continue;
            const bool supported =
                std::all_of(r.positive_body.begin(), r.positive_body.end(),
                            [&](const Atom& a) { return possible.contains(a); });
            if (supported) {
                possible.insert(*r.head);
                changed = true;
            }
        }
    }
    return {possible.begin(), possible.end()};
}

BitProgram to_bit_program(const GroundProgram& program, const std::vector<Atom>& base) {
    if (base.size() > static_cast<std::size_t>(kMaxSearchAtoms))
        throw EngineError("atom base exceeds the search kernel width");
    std::map<Atom, int> index;
    for (std::size_t i = 0; i < base.size(); ++i) index.emplace(base[i], static_cast<int>(i));

    BitProgram bits;
    bits.atom_count = static_cast<int>(base.size());
    for (const Rule& r : program.rules) {
        BitRule br;
        bool dropped = false;
        for (const Atom& a : r.positive_body) {
            auto it = index.find(a);
            if (it == index.end()) {  // atom is false everywhere: body never holds
                dropped = true;
                break;
            }
            br.pos |= 1u << it->second;
        }
        if (dropped) continue;
        for (const Atom& a : r.negative_body) {
            auto it = index.find(a);
            if (it == index.end()) continue;  // negative literal trivially true
            br.neg |= 1u << it->second;
        }
        if (r.head) {
            auto it = index.find(*r.head);
            br.head = it == index.end() ? -1 : it->second;  // underivable head: constraint
        }
        bits.rules.push_back(br);
    }
    return bits;
}

Interpretation interpretation_from_mask(std::uint32_t mask, const std::vector<Atom>& base) {
    Interpretation out;
    for (std::size_t i = 0; i < base.size(); ++i)
        if ((mask >> i) & 1u) out.atoms.insert(base[i]);
    return out;
}

// ---------------------------------------------------------------------------
// Enumeration
// ---------------------------------------------------------------------------

namespace {

void check_limit(std::size_t base_size, int limit, const char* what) {
    if (base_size > static_cast<std::size_t>(limit))
        throw EngineError(std::string(what) + " base has " + std::to_string(base_size) +
                          " atoms, limit is " + std::to_string(limit));
}

std::vector<Interpretation> masks_to_interpretations(const std::vector<std::uint32_t>& masks,
                                                     const std::vector<Atom>& base) {
    std::vector<Interpretation> out;
    out.reserve(masks.size());
    for (std::uint32_t m : masks) out.push_back(interpretation_from_mask(m, base));
    std::sort(out.begin(), out.end());
    return out;
}

bool definite_with_constraints(const GroundProgram& program) {
    return std::all_of(program.rules.begin(), program.rules.end(), [](const Rule& r) {
        return !r.head || r.negative_body.empty();
    });
}

// unique stable model of a definite program filtered by its constraints
std::vector<Interpretation> least_model_route(const GroundProgram& program) {
    Interpretation model;
    bool changed = true;
    while (changed) {
        changed = false;
        for (const Rule& r : program.rules) {
            if (!r.head || model.contains(*r.head)) continue;
            const bool fires = std::all_of(r.positive_body.begin(), r.positive_body.end(),
                                           [&](const Atom& a) { return model.contains(a); });
            if (fires) {
                model.atoms.insert(*r.head);
                changed = true;
            }
        }
    }
    if (!satisfies(model, program)) return {};
    return {std::move(model)};
}

}  // namespace

namespace {

std::vector<Atom> normalized(std::vector<Atom> base) {
    std::sort(base.begin(), base.end());
    base.erase(std::unique(base.begin(), base.end()), base.end());
    return base;
}

}  // namespace

std::vector<Interpretation> classical_models(const GroundProgram& program,
                                             const std::vector<Atom>& base,
                                             const EngineOptions& options) {
    const std::vector<Atom> atoms = normalized(base);
    check_limit(atoms.size(), options.limits.max_atoms, "classical model search");
    const BitProgram bits = to_bit_program(program, atoms);
    return masks_to_interpretations(enumerate_models(bits, options.exec), atoms);
}

std::vector<Interpretation> stable_models(const Program& program, const EngineOptions& options) {
    const GroundProgram gp = ground(program, herbrand_universe(program));
    if (!options.force_enumeration && definite_with_constraints(gp)) return least_model_route(gp);
    const std::vector<Atom> base = derivable_base(gp);
    check_limit(base.size(), options.limits.max_atoms, "stable model search");
    const BitProgram bits = to_bit_program(gp, base);
    return masks_to_interpretations(enumerate_stable_models(bits, options.exec), base);
}

bool ht_satisfies(const HTPair& pair, const GroundProgram& program) {
    for (const Rule& r : program.rules) {
        const bool neg_ok = std::none_of(r.negative_body.begin(), r.negative_body.end(),
                                         [&](const Atom& a) { return pair.there.contains(a); });
        auto pos_in = [&](const Interpretation& world) {
            return std::all_of(r.positive_body.begin(), r.positive_body.end(),
                               [&](const Atom& a) { return world.contains(a); });
        };
        const bool body_at_t = neg_ok && pos_in(pair.there);
        const bool body_at_h = neg_ok && pos_in(pair.here);
        if (body_at_t && !(r.head && pair.there.contains(*r.head))) return false;
        if (body_at_h && !(r.head && pair.here.contains(*r.head))) return false;
    }
    return true;
}

std::vector<HTPair> ht_models(const Program& program, const std::vector<Atom>& base,
                              const EngineOptions& options) {
    const std::vector<Atom> atoms = normalized(base);
    check_limit(atoms.size(), options.limits.max_ht_atoms, "here-and-there model search");
    const GroundProgram gp = ground(program, herbrand_universe(program));
    const BitProgram bits = to_bit_program(gp, atoms);
    std::vector<HTPair> out;
    for (const BitHtPair& p : enumerate_ht_models(bits, options.ht_eval, options.exec))
        out.emplace_back(interpretation_from_mask(p.here, atoms),
                         interpretation_from_mask(p.there, atoms));
    return out;
}

std::vector<Interpretation> equilibrium_models(const Program& program,
                                               const EngineOptions& options) {
    const std::vector<Atom> base = model_base(program, herbrand_universe(program));
    check_limit(base.size(), options.limits.max_ht_atoms, "equilibrium model search");
    const GroundProgram gp = ground(program, herbrand_universe(program));
    const BitProgram bits = to_bit_program(gp, base);
    const auto pairs = enumerate_ht_models(bits, options.ht_eval, options.exec);

    std::set<std::uint32_t> total;        // there-worlds with <T,T> in HT
    std::set<std::uint32_t> undermined;   // there-worlds with some <H,T>, H proper
    for (const BitHtPair& p : pairs) {
        if (p.here == p.there)
            total.insert(p.there);
        else
            undermined.insert(p.there);
    }
    std::vector<std::uint32_t> masks;
    for (std::uint32_t t : total)
        if (!undermined.contains(t)) masks.push_back(t);
    return masks_to_interpretations(masks, base);
}

}  // namespace aspt
