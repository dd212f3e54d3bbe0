#include "aspt/validation.hpp"

#include <algorithm>
#include <sstream>

#include "aspt/templates.hpp"

namespace aspt {

namespace {

struct SearchSpace {
    GroundProgram gp;
    std::vector<Atom> base;
    BitProgram bits;
};

SearchSpace build_space(const Program& program, const std::vector<Atom>& extra,
                        const EngineOptions& options) {
    std::set<Term> constants;
    for (const Atom& a : extra)
        for (const Term& t : a.terms) constants.insert(t);
    const std::set<Term> universe = herbrand_universe(program, constants);
    SearchSpace space;
    space.base = model_base(program, universe, extra);
    if (space.base.size() > static_cast<std::size_t>(options.limits.max_atoms))
        throw EngineError("validation base has " + std::to_string(space.base.size()) +
                          " atoms, limit is " + std::to_string(options.limits.max_atoms));
    space.gp = ground(program, universe);
    space.bits = to_bit_program(space.gp, space.base);
    return space;
}

std::uint32_t mask_of(const std::set<Atom>& atoms, const std::vector<Atom>& base) {
    std::uint32_t mask = 0;
    for (std::size_t i = 0; i < base.size(); ++i)
        if (atoms.contains(base[i])) mask |= 1u << i;
    return mask;
}

void check_disjoint(const std::set<Atom>& true_atoms, const std::set<Atom>& false_atoms) {
    for (const Atom& a : true_atoms)
        if (false_atoms.contains(a))
            throw ValidationError("true and false atom sets overlap on " + render(a));
}

void check_ground(const std::set<Atom>& atoms, const char* what) {
    for (const Atom& a : atoms)
        if (!a.ground()) throw ValidationError(std::string(what) + " atom is not ground: " + render(a));
}

std::vector<Atom> merged_extras(const std::set<Atom>& a, const std::set<Atom>& b) {
    std::vector<Atom> out(a.begin(), a.end());
    out.insert(out.end(), b.begin(), b.end());
    return out;
}

}  // namespace

std::string_view check_kind_name(CheckKind kind) {
    switch (kind) {
        case CheckKind::T1: return "in_all_models";
        case CheckKind::T2: return "in_all_models_of_reduct";
        case CheckKind::T3: return "cannot_be_extended";
    }
    return "in_all_models";
}

// ---------------------------------------------------------------------------
// Cautious and brave consequences
// ---------------------------------------------------------------------------

ConsequenceSet cautious_atoms(const Program& program, const std::vector<Atom>& extra,
                              const EngineOptions& options) {
    const SearchSpace space = build_space(program, extra, options);
    const auto models = enumerate_models(space.bits, options.exec);
    ConsequenceSet out;
    if (models.empty()) {
        out.unsatisfiable = true;
        out.atoms.insert(space.base.begin(), space.base.end());
        return out;
    }
    std::uint32_t common = ~std::uint32_t{0};
    for (std::uint32_t m : models) common &= m;
    out.atoms = interpretation_from_mask(common, space.base).atoms;
    return out;
}

ConsequenceSet brave_atoms(const Program& program, const std::vector<Atom>& extra,
                           const EngineOptions& options) {
    const SearchSpace space = build_space(program, extra, options);
    const auto models = enumerate_models(space.bits, options.exec);
    ConsequenceSet out;
    if (models.empty()) {
        out.unsatisfiable = true;
        return out;
    }
    std::uint32_t any = 0;
    for (std::uint32_t m : models) any |= m;
    out.atoms = interpretation_from_mask(any, space.base).atoms;
    return out;
}

std::set<Atom> reduct_cautious_atoms(const Program& program, const Interpretation& model,
                                     const EngineOptions& options) {
    check_ground(model.atoms, "model");
    if (model.atoms.size() > static_cast<std::size_t>(options.limits.max_atoms))
        throw EngineError("model has more atoms than the search limit");
    std::set<Term> constants;
    for (const Atom& a : model.atoms)
        for (const Term& t : a.terms) constants.insert(t);
    const GroundProgram gp = ground(program, herbrand_universe(program, constants));
    if (!satisfies(model, gp))
        throw ValidationError("interpretation is not a classical model of the program");

    const GroundProgram red = reduct(gp, model);
    const std::vector<Atom> base(model.atoms.begin(), model.atoms.end());
    const BitProgram bits = to_bit_program(red, base);
    std::uint32_t common = ~std::uint32_t{0};
    for (std::uint32_t m : enumerate_models(bits, options.exec)) common &= m;
    return interpretation_from_mask(common, base).atoms;
}

// ---------------------------------------------------------------------------
// T1 / T2 / T3
// ---------------------------------------------------------------------------

ValidationReport validate_in_all_models(const Program& program, const std::set<Atom>& true_atoms,
                                        const std::set<Atom>& false_atoms,
                                        const EngineOptions& options) {
    check_disjoint(true_atoms, false_atoms);
    check_ground(true_atoms, "true");
    check_ground(false_atoms, "false");
    ValidationReport report;
    report.check = CheckKind::T1;

    const SearchSpace space = build_space(program, merged_extras(true_atoms, false_atoms), options);
    const auto models = enumerate_models(space.bits, options.exec);
    if (models.empty()) {
        report.pass = true;
        report.vacuous = true;
        report.detail = "program is classically unsatisfiable; the check passes vacuously";
        return report;
    }
    const std::uint32_t want = mask_of(true_atoms, space.base);
    const std::uint32_t avoid = mask_of(false_atoms, space.base);
    for (std::uint32_t m : models) {
        if ((m & want) != want || (m & avoid) != 0) {
            report.pass = false;
            report.witness = interpretation_from_mask(m, space.base);
            report.detail = "countermodel violates the declared assignment";
            return report;
        }
    }
    report.pass = true;
    return report;
}

ValidationReport validate_in_all_models_of_the_reduct(const Program& program,
                                                      const Interpretation& model,
                                                      const std::set<Atom>& true_atoms,
                                                      const EngineOptions& options) {
    check_ground(true_atoms, "true");
    for (const Atom& a : true_atoms)
        if (!model.contains(a))
            throw ValidationError("true atom " + render(a) + " is not part of the model");
    ValidationReport report;
    report.check = CheckKind::T2;

    // enumerate the subsets directly so a failing check can carry its witness
    std::set<Term> constants;
    for (const Atom& a : model.atoms)
        for (const Term& t : a.terms) constants.insert(t);
    if (model.atoms.size() > static_cast<std::size_t>(options.limits.max_atoms))
        throw EngineError("model has more atoms than the search limit");
    const GroundProgram gp = ground(program, herbrand_universe(program, constants));
    if (!satisfies(model, gp))
        throw ValidationError("interpretation is not a classical model of the program");
    const GroundProgram red = reduct(gp, model);
    const std::vector<Atom> base(model.atoms.begin(), model.atoms.end());
    const BitProgram bits = to_bit_program(red, base);
    const std::uint32_t want = mask_of(true_atoms, base);
    for (std::uint32_t h : enumerate_models(bits, options.exec)) {
        if ((h & want) != want) {
            report.pass = false;
            report.witness = interpretation_from_mask(h, base);
            report.detail = "reduct model misses a declared true atom";
            return report;
        }
    }
    report.pass = true;
    return report;
}

ValidationReport validate_cannot_be_extended_to_stable_model(const Program& program,
                                                             const std::set<Atom>& true_atoms,
                                                             const std::set<Atom>& false_atoms,
                                                             bool strict_local_suffix,
                                                             const EngineOptions& options) {
    check_disjoint(true_atoms, false_atoms);
    check_ground(true_atoms, "true");
    check_ground(false_atoms, "false");
    ValidationReport report;
    report.check = CheckKind::T3;

    const SearchSpace space = build_space(program, merged_extras(true_atoms, false_atoms), options);
    std::uint32_t droppable = 0;  // atoms whose truth no outside program can observe
    for (std::size_t i = 0; i < space.base.size(); ++i) {
        const std::string& p = space.base[i].predicate;
        const bool local = strict_local_suffix ? is_local(p) && has_uuid_shaped_suffix(p)
                                               : is_local(p);
        if (local) droppable |= 1u << i;
    }
    const std::uint32_t want = mask_of(true_atoms, space.base);
    const std::uint32_t avoid = mask_of(false_atoms, space.base);

    std::size_t candidates = 0;
    for (std::uint32_t t : enumerate_models(space.bits, options.exec)) {
        if ((t & want) != want || (t & avoid) != 0) continue;
        ++candidates;
        // look for a proper here-world dropping only local atoms
        const std::uint32_t keep = t & ~droppable;
        const std::uint32_t local_part = t & droppable;
        std::vector<std::pair<int, std::uint32_t>> red;  // reduct w.r.t. t
        for (const BitRule& r : space.bits.rules)
            if (body_holds(r, t)) red.emplace_back(r.head, r.pos);
        auto models_reduct = [&](std::uint32_t h) {
            for (const auto& [head, pos] : red)
                if ((h & pos) == pos && (head < 0 || !((h >> head) & 1u))) return false;
            return true;
        };
        bool witnessed = false;
        std::uint32_t s = 0;
        while (true) {  // submasks of local_part
            if (s != local_part && models_reduct(keep | s)) {
                witnessed = true;
                break;
            }
            if (s == local_part) break;
            s = (s - local_part) & local_part;
        }
        if (!witnessed) {
            report.pass = false;
            report.witness = interpretation_from_mask(t, space.base);
            report.detail = "model admits no smaller here-world over local atoms";
            return report;
        }
    }
    report.pass = true;
    if (candidates == 0)
        report.detail = "no classical model satisfies the atom constraints";
    return report;
}

// ---------------------------------------------------------------------------
// Manifests
// ---------------------------------------------------------------------------

namespace {

std::vector<Atom> parse_atom_list(const std::string& fragment, int line) {
    std::vector<Atom> atoms;
    std::vector<Token> tokens;
    try {
        tokens = lex(fragment);
    } catch (const ParseError& e) {
        throw ValidationError("manifest line " + std::to_string(line) + ": " + e.what());
    }
    std::size_t i = 0;
    auto fail = [&](const std::string& msg) -> void {
        throw ValidationError("manifest line " + std::to_string(line) + ": " + msg);
    };
    while (i < tokens.size()) {
        if (tokens[i].kind != TokenKind::Identifier) fail("expected atom");
        Atom atom;
        atom.predicate = tokens[i].text;
        ++i;
        if (i < tokens.size() && tokens[i].kind == TokenKind::Punct && tokens[i].text == "(") {
            ++i;
            while (true) {
                if (i >= tokens.size()) fail("unterminated term list");
                const Token& t = tokens[i];
                if (t.kind == TokenKind::Integer) {
                    atom.terms.push_back(Term::integer(std::stoll(t.text)));
                } else if (t.kind == TokenKind::Identifier || t.kind == TokenKind::String) {
                    atom.terms.push_back(Term::symbol(t.text));
                } else if (t.kind == TokenKind::Punct && t.text == "-" && i + 1 < tokens.size() &&
                           tokens[i + 1].kind == TokenKind::Integer) {
                    ++i;
                    atom.terms.push_back(Term::integer(-std::stoll(tokens[i].text)));
                } else {
                    fail("manifest atoms must be ground");
                }
                ++i;
                if (i >= tokens.size()) fail("unterminated term list");
                if (tokens[i].kind == TokenKind::Punct && tokens[i].text == ")") {
                    ++i;
                    break;
                }
                if (!(tokens[i].kind == TokenKind::Punct && tokens[i].text == ","))
                    fail("expected ',' or ')' in term list");
                ++i;
            }
        }
        atoms.push_back(std::move(atom));
        if (i == tokens.size()) break;
        if (!(tokens[i].kind == TokenKind::Punct && tokens[i].text == ","))
            fail("expected ',' between atoms");
        ++i;
        if (i == tokens.size()) fail("trailing ',' in atom list");
    }
    return atoms;
}

std::string trim(std::string_view s) {
    std::size_t b = s.find_first_not_of(" \t\r");
    std::size_t e = s.find_last_not_of(" \t\r");
    if (b == std::string_view::npos) return "";
    return std::string(s.substr(b, e - b + 1));
}

}  // namespace

std::vector<ManifestDirective> parse_manifest(std::string_view source) {
    std::vector<ManifestDirective> out;
    std::istringstream stream{std::string(source)};
    std::string raw;
    int line_no = 0;
    while (std::getline(stream, raw)) {
        ++line_no;
        std::string text = trim(raw);
        if (text.substr(0, 2) != "%!") continue;
        std::string body = trim(text.substr(2));
        if (body.empty() || body.back() != '.')
            throw ValidationError("manifest line " + std::to_string(line_no) +
                                  ": directive must end with '.'");
        body.pop_back();
        body = trim(body);

        ManifestDirective directive;
        directive.line = line_no;
        const std::size_t name_end = body.find_first_of(" \t");
        const std::string name = trim(body.substr(0, name_end));
        std::string rest = name_end == std::string::npos ? "" : trim(body.substr(name_end));

        std::vector<std::pair<std::string, std::string>> sections;
        std::size_t start = 0;
        while (start <= rest.size()) {
            std::size_t semi = rest.find(';', start);
            std::string part =
                trim(rest.substr(start, semi == std::string::npos ? std::string::npos
                                                                  : semi - start));
            if (!part.empty()) {
                std::size_t colon = part.find(':');
                if (colon == std::string::npos)
                    throw ValidationError("manifest line " + std::to_string(line_no) +
                                          ": expected 'label: atoms' section");
                sections.emplace_back(trim(part.substr(0, colon)), trim(part.substr(colon + 1)));
            }
            if (semi == std::string::npos) break;
            start = semi + 1;
        }

        auto section = [&](std::string_view label, bool required) -> std::vector<Atom> {
            for (const auto& [key, value] : sections)
                if (key == label) return parse_atom_list(value, line_no);
            if (required)
                throw ValidationError("manifest line " + std::to_string(line_no) +
                                      ": missing '" + std::string(label) + ":' section");
            return {};
        };

        if (name == "in_all_models") {
            directive.kind = CheckKind::T1;
            directive.true_atoms = section("true", true);
            directive.false_atoms = section("false", true);
        } else if (name == "in_all_models_of_reduct") {
            directive.kind = CheckKind::T2;
            directive.model_atoms = section("model", true);
            directive.true_atoms = section("true", true);
        } else if (name == "cannot_be_extended") {
            directive.kind = CheckKind::T3;
            directive.true_atoms = section("true", true);
            directive.false_atoms = section("false", true);
        } else {
            throw ValidationError("manifest line " + std::to_string(line_no) +
                                  ": unknown directive '" + name + "'");
        }
        for (const auto& [key, value] : sections) {
            (void)value;
            bool known = key == "true" || key == "false" || key == "model";
            if (!known)
                throw ValidationError("manifest line " + std::to_string(line_no) +
                                      ": unknown section '" + key + "'");
        }
        directive.text = body;
        out.push_back(std::move(directive));
    }
    return out;
}

ManifestOutcome run_manifest(const Program& expanded,
                             const std::vector<ManifestDirective>& manifest,
                             const EngineOptions& options) {
    ManifestOutcome outcome;
    const std::set<std::string> known = predicates_of(expanded);
    for (const ManifestDirective& directive : manifest) {
        auto warn_unknown = [&](const std::vector<Atom>& atoms) {
            for (const Atom& a : atoms)
                if (!known.contains(a.predicate))
                    outcome.warnings.push_back("line " + std::to_string(directive.line) +
                                               ": atom " + render(a) +
                                               " uses a predicate not occurring in the program");
        };
        warn_unknown(directive.true_atoms);
        warn_unknown(directive.false_atoms);
        warn_unknown(directive.model_atoms);

        const std::set<Atom> true_set(directive.true_atoms.begin(), directive.true_atoms.end());
        const std::set<Atom> false_set(directive.false_atoms.begin(), directive.false_atoms.end());
        try {
            switch (directive.kind) {
                case CheckKind::T1:
                    outcome.reports.push_back(
                        validate_in_all_models(expanded, true_set, false_set, options));
                    break;
                case CheckKind::T2: {
                    Interpretation model;
                    model.atoms.insert(directive.model_atoms.begin(), directive.model_atoms.end());
                    outcome.reports.push_back(validate_in_all_models_of_the_reduct(
                        expanded, model, true_set, options));
                    break;
                }
                case CheckKind::T3:
                    outcome.reports.push_back(validate_cannot_be_extended_to_stable_model(
                        expanded, true_set, false_set, false, options));
                    break;
            }
        } catch (const ValidationError& e) {
            ValidationReport report;
            report.check = directive.kind;
            report.pass = false;
            report.detail = e.what();
            outcome.reports.push_back(std::move(report));
        }
        if (!outcome.reports.back().pass) outcome.all_passed = false;
    }
    return outcome;
}

}  // namespace aspt
