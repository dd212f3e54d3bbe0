#include "aspt/templates.hpp"

#include <algorithm>
#include <cstdio>

namespace aspt {

namespace {

bool is_punct(const Token& t, std::string_view text) {
    return t.kind == TokenKind::Punct && t.text == text;
}

std::string strip_quotes(const std::string& raw) {
    // lexer guarantees surrounding quotes
    return raw.substr(1, raw.size() - 2);
}

}  // namespace

// ---------------------------------------------------------------------------
// Renaming
// ---------------------------------------------------------------------------

Renaming Renaming::global(std::map<std::string, std::string> mapping) {
    for (const auto& [from, to] : mapping) {
        if (is_local(from))
            throw ExpandError("global renaming maps local predicate " + from);
        (void)to;
    }
    return Renaming(Kind::Global, std::move(mapping));
}

Renaming Renaming::local(std::map<std::string, std::string> mapping) {
    std::set<std::string> values;
    for (const auto& [from, to] : mapping) {
        if (!is_local(from) || !is_local(to))
            throw ExpandError("local renaming must map local predicates to local predicates: " +
                              from + " -> " + to);
        if (!values.insert(to).second)
            throw ExpandError("local renaming is not injective on " + to);
    }
    return Renaming(Kind::Local, std::move(mapping));
}

const std::string& Renaming::apply(const std::string& predicate) const {
    auto it = mapping_.find(predicate);
    return it == mapping_.end() ? predicate : it->second;
}

Program rename(const Program& program, const Renaming& renaming) {
    Program out = program;
    for (Statement& stmt : out.statements) {
        if (Rule* rule = std::get_if<Rule>(&stmt)) {
            if (rule->head) rule->head->predicate = renaming.apply(rule->head->predicate);
            for (Atom& a : rule->positive_body) a.predicate = renaming.apply(a.predicate);
            for (Atom& a : rule->negative_body) a.predicate = renaming.apply(a.predicate);
        } else {
            auto& ext = std::get<ExtendedStatement>(stmt);
            for (std::size_t idx : ext.atom_occurrences)
                ext.tokens[idx].text = renaming.apply(ext.tokens[idx].text);
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// UuidSource
// ---------------------------------------------------------------------------

UuidSource::UuidSource(Mode mode) : mode_(mode), mutex_(std::make_unique<std::mutex>()) {}

UuidSource UuidSource::random() {
    UuidSource source(Mode::Random);
    std::random_device rd;
    std::seed_seq seq{rd(), rd(), rd(), rd()};
    source.rng_.seed(seq);
    return source;
}

UuidSource UuidSource::deterministic(std::uint64_t seed) {
    UuidSource source(Mode::Deterministic);
    source.counter_ = seed;
    return source;
}

std::string UuidSource::draw() {
    std::lock_guard<std::mutex> lock(*mutex_);
    if (mode_ == Mode::Deterministic) {
        char buf[13];
        std::snprintf(buf, sizeof(buf), "%012llu",
                      static_cast<unsigned long long>(counter_++));
        return std::string("00000000-0000-4000-8000-") + buf;
    }
    const std::uint64_t hi = rng_();
    const std::uint64_t lo = rng_();
    char buf[37];
    std::snprintf(buf, sizeof(buf), "%08x-%04x-4%03x-%c%03x-%012llx",
                  static_cast<unsigned>(hi >> 32), static_cast<unsigned>((hi >> 16) & 0xffff),
                  static_cast<unsigned>(hi & 0xfff), "89ab"[(lo >> 62) & 0x3],
                  static_cast<unsigned>((lo >> 48) & 0xfff),
                  static_cast<unsigned long long>(lo & 0xffffffffffffULL));
    return std::string(buf);
}

namespace {

bool is_hex(char c) { return (c >= '0' && c <= '9') || (c >= 'a' && c <= 'f'); }

// matches _xxxxxxxx_xxxx_xxxx_xxxx_xxxxxxxxxxxx at the end of the view
bool strip_one_uuid_suffix(std::string_view& name) {
    static constexpr int groups[5] = {8, 4, 4, 4, 12};
    std::size_t len = 0;
    for (int g : groups) len += 1 + static_cast<std::size_t>(g);
    if (name.size() < len + 2) return false;  // keep at least "__"
    std::size_t pos = name.size() - len;
    std::string_view tail = name.substr(pos);
    std::size_t i = 0;
    for (int g : groups) {
        if (tail[i] != '_') return false;
        ++i;
        for (int k = 0; k < g; ++k, ++i)
            if (!is_hex(tail[i])) return false;
    }
    name.remove_suffix(len);
    return true;
}

}  // namespace

int uuid_suffix_count(std::string_view name) {
    int count = 0;
    while (strip_one_uuid_suffix(name)) ++count;
    return count;
}

bool has_uuid_shaped_suffix(std::string_view name) { return uuid_suffix_count(name) > 0; }

// ---------------------------------------------------------------------------
// TemplateRegistry
// ---------------------------------------------------------------------------

bool TemplateRegistry::contains(const std::string& name) const {
    return templates_.contains(name);
}

const Template& TemplateRegistry::lookup(const std::string& name) {
    auto it = templates_.find(name);
    if (it != templates_.end()) return it->second;
    if (fallback_) {
        if (auto synthesized = fallback_(name)) {
            auto [pos, inserted] = templates_.emplace(name, std::move(*synthesized));
            (void)inserted;
            return pos->second;
        }
    }
    throw ExpandError("unknown template \"" + name + "\"");
}

bool TemplateRegistry::declare(Template tpl) {
    const std::string name = tpl.name;
    const bool overwrote = templates_.contains(name);
    templates_.insert_or_assign(name, std::move(tpl));
    return overwrote;
}

std::vector<std::string> TemplateRegistry::names() const {
    std::vector<std::string> out;
    out.reserve(templates_.size());
    for (const auto& [name, tpl] : templates_) out.push_back(name);
    return out;
}

// ---------------------------------------------------------------------------
// Directive parsing
// ---------------------------------------------------------------------------

namespace {

[[noreturn]] void directive_error(const std::vector<Token>& run, const std::string& msg) {
    throw ParseError(msg, run.front().line, run.front().col);
}

std::string parse_template_directive(const std::vector<Token>& run) {
    // __template__("name")
    if (run.size() != 4 || !is_punct(run[1], "(") || run[2].kind != TokenKind::String ||
        !is_punct(run[3], ")"))
        directive_error(run, "malformed __template__ directive; expected __template__(\"name\").");
    return strip_quotes(run[2].text);
}

TemplateApplication parse_apply_directive(const std::vector<Token>& run) {
    // __apply_template__("name", (old, new), ...)
    TemplateApplication app;
    std::size_t i = 1;
    auto need = [&](std::string_view what) -> const Token& {
        if (i >= run.size())
            directive_error(run, "malformed __apply_template__ directive; expected " +
                                     std::string(what));
        return run[i];
    };
    if (!is_punct(need("'('"), "(")) directive_error(run, "expected '(' after __apply_template__");
    ++i;
    const Token& name = need("template name");
    if (name.kind != TokenKind::String)
        directive_error(run, "expected quoted template name in __apply_template__");
    app.name = strip_quotes(name.text);
    ++i;
    while (true) {
        const Token& t = need("')'");
        if (is_punct(t, ")")) {
            ++i;
            break;
        }
        if (!is_punct(t, ",")) directive_error(run, "expected ',' or ')' in __apply_template__");
        ++i;
        if (!is_punct(need("'('"), "(")) directive_error(run, "expected '(' to open renaming pair");
        ++i;
        auto member = [&]() -> std::string {
            const Token& m = need("predicate name");
            if (m.kind != TokenKind::Identifier)
                directive_error(run, "malformed pair: expected predicate name, got '" + m.text +
                                         "'");
            if (is_reserved(m.text))
                directive_error(run, "reserved predicate " + m.text + " in renaming pair");
            ++i;
            return m.text;
        };
        std::string old_name = member();
        if (!is_punct(need("','"), ",")) directive_error(run, "expected ',' inside renaming pair");
        ++i;
        std::string new_name = member();
        if (!is_punct(need("')'"), ")")) directive_error(run, "expected ')' to close renaming pair");
        ++i;
        app.pairs.emplace_back(std::move(old_name), std::move(new_name));
    }
    if (i != run.size()) directive_error(run, "trailing tokens after __apply_template__ directive");
    return app;
}

void check_no_reserved(const Statement& stmt, const std::vector<Token>& run) {
    for (const std::string& p : statement_predicates(stmt)) {
        if (is_reserved(p))
            directive_error(run, "reserved predicate " + p + " used in an ordinary rule");
    }
}

}  // namespace

ProgramWithTemplates parse_program_with_templates(std::string_view text) {
    ProgramWithTemplates out;
    std::optional<TemplateDeclaration> open;
    int open_line = 0;

    for (const auto& run : split_statements(lex(text))) {
        const Token& first = run.front();
        if (first.kind == TokenKind::Identifier && is_reserved(first.text)) {
            if (first.text == "__template__") {
                if (open)
                    throw ParseError("template declaration inside template declaration",
                                     first.line, first.col);
                open = TemplateDeclaration{parse_template_directive(run), {}};
                open_line = first.line;
                continue;
            }
            if (first.text == "__end__") {
                if (run.size() != 1)
                    directive_error(run, "malformed __end__ directive; expected __end__.");
                if (!open)
                    throw ParseError("__end__ without an open template declaration", first.line,
                                     first.col);
                out.elements.push_back(std::move(*open));
                open.reset();
                continue;
            }
            TemplateApplication app = parse_apply_directive(run);
            if (open)
                open->content.push_back(std::move(app));
            else
                out.elements.push_back(std::move(app));
            continue;
        }
        Statement stmt = parse_statement_tokens(run);
        check_no_reserved(stmt, run);
        if (open) {
            if (Rule* rule = std::get_if<Rule>(&stmt))
                open->content.push_back(std::move(*rule));
            else
                open->content.push_back(std::move(std::get<ExtendedStatement>(stmt)));
        } else {
            if (Rule* rule = std::get_if<Rule>(&stmt))
                out.elements.push_back(std::move(*rule));
            else
                out.elements.push_back(std::move(std::get<ExtendedStatement>(stmt)));
        }
    }
    if (open)
        throw ParseError("unterminated template declaration \"" + open->name + "\"", open_line, 1);
    return out;
}

// ---------------------------------------------------------------------------
// Application and expansion
// ---------------------------------------------------------------------------

Renaming make_local_renaming(const Program& template_body, UuidSource& uuids) {
    std::set<std::string> locals;
    for (const std::string& p : predicates_of(template_body))
        if (is_local(p)) locals.insert(p);
    if (locals.empty()) return Renaming::local({});
    std::string suffix = uuids.draw();
    std::replace(suffix.begin(), suffix.end(), '-', '_');
    std::map<std::string, std::string> mapping;
    for (const std::string& p : locals) mapping.emplace(p, p + "_" + suffix);
    return Renaming::local(std::move(mapping));
}

Program apply_template(const Template& tpl, const Renaming& global_renaming, UuidSource& uuids) {
    if (global_renaming.kind() != Renaming::Kind::Global)
        throw ExpandError("apply_template requires a global renaming");
    const Renaming local = make_local_renaming(tpl.body, uuids);
    return rename(rename(tpl.body, local), global_renaming);
}

Renaming renaming_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs) {
    std::map<std::string, std::string> mapping;
    for (const auto& [from, to] : pairs) {
        if (is_local(from))
            throw ExpandError("renaming pair (" + from + ", " + to +
                              ") maps a local predicate; only global predicates can be renamed");
        auto [it, inserted] = mapping.emplace(from, to);
        if (!inserted && it->second != to)
            throw ExpandError("conflicting renaming pairs for predicate " + from);
    }
    return Renaming::global(std::move(mapping));
}

namespace {

void append_program(Program& out, Program&& chunk) {
    for (Statement& s : chunk.statements) out.statements.push_back(std::move(s));
}

Program expand_elements(const std::vector<TemplateElement>& elements, TemplateRegistry& registry,
                        UuidSource& uuids, std::vector<std::string>* warnings) {
    Program out;
    for (const TemplateElement& element : elements) {
        if (const auto* decl = std::get_if<TemplateDeclaration>(&element)) {
            std::vector<TemplateElement> content;
            content.reserve(decl->content.size());
            for (const TemplateContentElement& c : decl->content)
                std::visit([&](const auto& e) { content.push_back(e); }, c);
            Program body = expand_elements(content, registry, uuids, warnings);
            if (registry.declare(Template{decl->name, std::move(body)}) && warnings)
                warnings->push_back("template \"" + decl->name +
                                    "\" redeclared; previous definition overwritten");
        } else if (const auto* app = std::get_if<TemplateApplication>(&element)) {
            const Template& tpl = registry.lookup(app->name);
            append_program(out, apply_template(tpl, renaming_from_pairs(app->pairs), uuids));
        } else if (const auto* rule = std::get_if<Rule>(&element)) {
            out.statements.push_back(*rule);
        } else {
            out.statements.push_back(std::get<ExtendedStatement>(element));
        }
    }
    return out;
}

}  // namespace

Program expand(const ProgramWithTemplates& program, TemplateRegistry& registry, UuidSource& uuids,
               std::vector<std::string>* warnings) {
    return expand_elements(program.elements, registry, uuids, warnings);
}

}  // namespace aspt
