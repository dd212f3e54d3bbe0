#include "aspt/syntax.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace aspt {

namespace {

bool is_ident_start(char c) { return (c >= 'a' && c <= 'z') || c == '_'; }
bool is_var_start(char c) { return c >= 'A' && c <= 'Z'; }
bool is_ident_char(char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
}
bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_punct_text(const Token& t, std::string_view text) {
    return t.kind == TokenKind::Punct && t.text == text;
}

}  // namespace

ParseError::ParseError(const std::string& msg, int line, int col)
    : Error("line " + std::to_string(line) + ", col " + std::to_string(col) + ": " + msg),
      line(line),
      col(col) {}

// ---------------------------------------------------------------------------
// Lexer
// ---------------------------------------------------------------------------

std::vector<Token> lex(std::string_view text) {
    std::vector<Token> out;
    std::size_t i = 0;
    const std::size_t n = text.size();
    int line = 1;
    int col = 1;

    auto bump = [&](std::size_t k) {
        for (std::size_t j = 0; j < k; ++j) {
            if (text[i + j] == '\n') {
                ++line;
                col = 1;
            } else {
                ++col;
            }
        }
        i += k;
    };
    auto push = [&](TokenKind kind, std::string tok_text, int tok_line, int tok_col) {
        out.push_back(Token{kind, std::move(tok_text), tok_line, tok_col});
    };

    while (i < n) {
        const char c = text[i];
        if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
            bump(1);
            continue;
        }
        if (c == '%') {  // comment to end of line (covers %! manifest lines)
            while (i < n && text[i] != '\n') bump(1);
            continue;
        }
        const int tl = line;
        const int tc = col;
        // typographic arrow, normalized to ":-"
        if (static_cast<unsigned char>(c) == 0xE2 && i + 2 < n &&
            static_cast<unsigned char>(text[i + 1]) == 0x86 &&
            static_cast<unsigned char>(text[i + 2]) == 0x90) {
            bump(3);
            push(TokenKind::Punct, ":-", tl, tc);
            continue;
        }
        if (c == '"') {
            std::size_t j = i + 1;
            while (j < n && text[j] != '"' && text[j] != '\n') {
                if (text[j] == '\\' && j + 1 < n) ++j;
                ++j;
            }
            if (j >= n || text[j] != '"') throw ParseError("unterminated string", tl, tc);
            std::string raw(text.substr(i, j - i + 1));
            bump(j - i + 1);
            push(TokenKind::String, std::move(raw), tl, tc);
            continue;
        }
        if (is_digit(c)) {
            std::size_t j = i;
            while (j < n && is_digit(text[j])) ++j;
            std::string digits(text.substr(i, j - i));
            try {
                (void)std::stoll(digits);
            } catch (const std::out_of_range&) {
                throw ParseError("integer out of range: " + digits, tl, tc);
            }
            bump(j - i);
            push(TokenKind::Integer, std::move(digits), tl, tc);
            continue;
        }
        if (is_ident_start(c) || is_var_start(c)) {
            std::size_t j = i;
            while (j < n && is_ident_char(text[j])) ++j;
            std::string name(text.substr(i, j - i));
            bump(j - i);
            push(is_var_start(c) ? TokenKind::Variable : TokenKind::Identifier, std::move(name),
                 tl, tc);
            continue;
        }
        if (c == '#') {
            std::size_t j = i + 1;
            while (j < n && is_ident_char(text[j])) ++j;
            if (j == i + 1) throw ParseError("expected aggregate name after '#'", tl, tc);
            std::string name(text.substr(i, j - i));
            bump(j - i);
            push(TokenKind::Aggregate, std::move(name), tl, tc);
            continue;
        }
        // two-character punctuation first
        static constexpr std::array<std::string_view, 5> two{":-", "!=", "<=", ">=", ".."};
        std::string_view rest = text.substr(i);
        bool matched = false;
        for (auto p : two) {
            if (rest.substr(0, 2) == p) {
                bump(2);
                push(TokenKind::Punct, std::string(p), tl, tc);
                matched = true;
                break;
            }
        }
        if (matched) continue;
        if (c == '!') throw ParseError("expected '=' after '!'", tl, tc);
        static constexpr std::string_view singles = ".,;:(){}[]=<>+-*/|";
        if (singles.find(c) != std::string_view::npos) {
            bump(1);
            push(TokenKind::Punct, std::string(1, c), tl, tc);
            continue;
        }
        throw ParseError(std::string("illegal character '") + c + "'", tl, tc);
    }
    return out;
}

std::vector<std::vector<Token>> split_statements(std::vector<Token> tokens) {
    std::vector<std::vector<Token>> runs;
    std::vector<Token> current;
    for (auto& t : tokens) {
        if (is_punct_text(t, ".")) {
            if (current.empty()) throw ParseError("empty statement", t.line, t.col);
            runs.push_back(std::move(current));
            current.clear();
        } else {
            current.push_back(std::move(t));
        }
    }
    if (!current.empty()) {
        const Token& t = current.front();
        throw ParseError("missing '.' at end of statement", t.line, t.col);
    }
    return runs;
}

// ---------------------------------------------------------------------------
// Core rule parser
// ---------------------------------------------------------------------------

namespace {

struct Cursor {
    const std::vector<Token>& toks;
    std::size_t i = 0;

    bool at_end() const { return i >= toks.size(); }
    const Token& peek() const {
        if (at_end()) fail("unexpected end of statement");
        return toks[i];
    }
    const Token* peek_opt(std::size_t ahead = 0) const {
        return i + ahead < toks.size() ? &toks[i + ahead] : nullptr;
    }
    const Token& take() {
        const Token& t = peek();
        ++i;
        return t;
    }
    void expect_punct(std::string_view text) {
        const Token& t = peek();
        if (!is_punct_text(t, text)) fail("expected '" + std::string(text) + "'");
        ++i;
    }
    [[noreturn]] void fail(const std::string& msg) const {
        if (!toks.empty()) {
            const Token& t = i < toks.size() ? toks[i] : toks.back();
            throw ParseError(msg, t.line, t.col);
        }
        throw ParseError(msg, 0, 0);
    }
};

std::optional<CmpOp> cmp_op_of(const Token& t) {
    if (t.kind != TokenKind::Punct) return std::nullopt;
    if (t.text == "=") return CmpOp::Eq;
    if (t.text == "!=") return CmpOp::Ne;
    if (t.text == "<") return CmpOp::Lt;
    if (t.text == "<=") return CmpOp::Le;
    if (t.text == ">") return CmpOp::Gt;
    if (t.text == ">=") return CmpOp::Ge;
    return std::nullopt;
}

Term parse_term(Cursor& cur) {
    const Token& t = cur.take();
    switch (t.kind) {
        case TokenKind::Integer:
            return Term::integer(std::stoll(t.text));
        case TokenKind::Identifier:
            return Term::symbol(t.text);
        case TokenKind::String:
            return Term::symbol(t.text);
        case TokenKind::Variable:
            return Term::variable(t.text);
        case TokenKind::Punct:
            if (t.text == "-") {
                const Token& v = cur.take();
                if (v.kind != TokenKind::Integer)
                    throw ParseError("expected integer after '-'", v.line, v.col);
                return Term::integer(-std::stoll(v.text));
            }
            break;
        default:
            break;
    }
    throw ParseError("expected term", t.line, t.col);
}

Atom parse_atom(Cursor& cur) {
    const Token& name = cur.take();
    if (name.kind != TokenKind::Identifier)
        throw ParseError("expected predicate name", name.line, name.col);
    Atom atom;
    atom.predicate = name.text;
    if (!cur.at_end() && is_punct_text(cur.peek(), "(")) {
        cur.take();
        while (true) {
            atom.terms.push_back(parse_term(cur));
            const Token& t = cur.take();
            if (is_punct_text(t, ")")) break;
            if (!is_punct_text(t, ","))
                throw ParseError("expected ',' or ')' in term list", t.line, t.col);
        }
    }
    return atom;
}

void parse_literal(Cursor& cur, Rule& rule) {
    const Token& first = cur.peek();
    if (first.kind == TokenKind::Identifier && first.text == "not") {
        cur.take();
        rule.negative_body.push_back(parse_atom(cur));
        return;
    }
    const bool atom_start = first.kind == TokenKind::Identifier;
    if (atom_start) {
        const Token* next = cur.peek_opt(1);
        const bool has_args = next && is_punct_text(*next, "(");
        const bool is_cmp = next && cmp_op_of(*next).has_value();
        if (has_args || !is_cmp) {
            rule.positive_body.push_back(parse_atom(cur));
            return;
        }
    }
    Comparison cmp;
    cmp.lhs = parse_term(cur);
    const Token& op = cur.take();
    auto parsed = cmp_op_of(op);
    if (!parsed) throw ParseError("expected comparison operator", op.line, op.col);
    cmp.op = *parsed;
    cmp.rhs = parse_term(cur);
    rule.comparisons.push_back(std::move(cmp));
}

void collect_vars(const Atom& atom, std::set<std::string>& vars) {
    for (const Term& t : atom.terms)
        if (t.kind == TermKind::Variable) vars.insert(t.text);
}

void check_safety(const Rule& rule, int line, int col) {
    std::set<std::string> bound;
    for (const Atom& a : rule.positive_body) collect_vars(a, bound);
    std::set<std::string> used;
    if (rule.head) collect_vars(*rule.head, used);
    for (const Atom& a : rule.negative_body) collect_vars(a, used);
    for (const std::string& v : used)
        if (!bound.contains(v))
            throw ParseError("unsafe rule: variable " + v + " does not occur in the positive body",
                             line, col);
}

Rule parse_core_rule(const std::vector<Token>& run) {
    Cursor cur{run};
    Rule rule;
    const bool constraint = is_punct_text(cur.peek(), ":-");
    if (!constraint) rule.head = parse_atom(cur);
    if (!cur.at_end()) {
        cur.expect_punct(":-");
        if (!cur.at_end()) {
            while (true) {
                parse_literal(cur, rule);
                if (cur.at_end()) break;
                cur.expect_punct(",");
            }
        }
    } else if (constraint) {
        cur.fail("expected ':-'");  // unreachable: constraint implies ':-' present
    }
    check_safety(rule, run.front().line, run.front().col);
    return rule;
}

// ---------------------------------------------------------------------------
// Extended statements
// ---------------------------------------------------------------------------

// A '-' token reads as an integer sign (rather than arithmetic) when it
// directly precedes an integer and follows a delimiter or comparison.
bool is_sign_position(const std::vector<Token>& run, std::size_t i) {
    if (i + 1 >= run.size() || run[i + 1].kind != TokenKind::Integer) return false;
    if (i == 0) return false;
    const Token& prev = run[i - 1];
    if (prev.kind != TokenKind::Punct) return false;
    static constexpr std::array<std::string_view, 8> allowed{"(", ",", "=", "!=",
                                                             "<", "<=", ">", ">="};
    return std::find(allowed.begin(), allowed.end(), prev.text) != allowed.end();
}

bool has_extended_trigger(const std::vector<Token>& run) {
    for (std::size_t i = 0; i < run.size(); ++i) {
        const Token& t = run[i];
        if (t.kind == TokenKind::Aggregate) return true;
        if (t.kind != TokenKind::Punct) continue;
        static constexpr std::array<std::string_view, 9> triggers{"{", "}", "[", "]", "|",
                                                                  "..", ";", "*", "/"};
        if (std::find(triggers.begin(), triggers.end(), t.text) != triggers.end()) return true;
        if (t.text == "+") return true;
        if (t.text == "-" && !is_sign_position(run, i)) return true;
    }
    return false;
}

void check_balanced(const std::vector<Token>& run) {
    std::vector<const Token*> stack;
    auto matches = [](std::string_view open, std::string_view close) {
        return (open == "(" && close == ")") || (open == "{" && close == "}") ||
               (open == "[" && close == "]");
    };
    for (const Token& t : run) {
        if (t.kind != TokenKind::Punct) continue;
        if (t.text == "(" || t.text == "{" || t.text == "[") {
            stack.push_back(&t);
        } else if (t.text == ")" || t.text == "}" || t.text == "]") {
            if (stack.empty() || !matches(stack.back()->text, t.text))
                throw ParseError("unbalanced '" + t.text + "'", t.line, t.col);
            stack.pop_back();
        }
    }
    if (!stack.empty())
        throw ParseError("unbalanced '" + stack.back()->text + "'", stack.back()->line,
                         stack.back()->col);
}

// An identifier followed by '(' always names a predicate. A bare identifier
// names a 0-ary predicate when it stands where a literal is expected:
// statement head, after ':-' / 'not' / top-level ',' or ';', inside a choice
// element, or in the condition part of an aggregate or choice element.
std::vector<std::size_t> find_atom_occurrences(const std::vector<Token>& run) {
    struct Frame {
        bool aggregate = false;
        bool seen_colon = false;
    };
    std::vector<std::size_t> occurrences;
    std::vector<Frame> braces;
    int paren_depth = 0;

    auto literal_next = [&](std::size_t i) {
        if (i + 1 >= run.size()) return true;
        const Token& next = run[i + 1];
        if (next.kind != TokenKind::Punct) return false;
        static constexpr std::array<std::string_view, 6> ok{",", ";", ":", ":-", "}", ")"};
        return std::find(ok.begin(), ok.end(), next.text) != ok.end();
    };
    auto literal_prev = [&](std::size_t i) {
        if (i == 0) return true;
        const Token& prev = run[i - 1];
        if (prev.kind == TokenKind::Identifier && prev.text == "not") return true;
        if (prev.kind != TokenKind::Punct) return false;
        if (!braces.empty()) {
            const Frame& f = braces.back();
            if (f.aggregate) return f.seen_colon && (prev.text == ":" || prev.text == ",");
            return prev.text == "{" || prev.text == ";" || prev.text == ":" || prev.text == ",";
        }
        return prev.text == ":-" || prev.text == "," || prev.text == ";";
    };

    for (std::size_t i = 0; i < run.size(); ++i) {
        const Token& t = run[i];
        if (t.kind == TokenKind::Punct) {
            if (t.text == "(") {
                ++paren_depth;
            } else if (t.text == ")") {
                --paren_depth;
            } else if (t.text == "{") {
                const bool agg = i > 0 && run[i - 1].kind == TokenKind::Aggregate;
                braces.push_back(Frame{agg, false});
            } else if (t.text == "}") {
                if (!braces.empty()) braces.pop_back();
            } else if (t.text == ":" && !braces.empty()) {
                braces.back().seen_colon = true;
            } else if (t.text == ";" && !braces.empty()) {
                braces.back().seen_colon = false;
            }
            continue;
        }
        if (t.kind != TokenKind::Identifier || t.text == "not") continue;
        const Token* next = i + 1 < run.size() ? &run[i + 1] : nullptr;
        if (next && is_punct_text(*next, "(")) {
            occurrences.push_back(i);
            continue;
        }
        if (paren_depth == 0 && literal_prev(i) && literal_next(i)) occurrences.push_back(i);
    }
    return occurrences;
}

}  // namespace

Statement parse_statement_tokens(const std::vector<Token>& run) {
    if (run.empty()) throw ParseError("empty statement", 0, 0);
    if (has_extended_trigger(run)) {
        check_balanced(run);
        ExtendedStatement stmt;
        stmt.tokens = run;
        stmt.atom_occurrences = find_atom_occurrences(run);
        return stmt;
    }
    return parse_core_rule(run);
}

Program parse_program(std::string_view text) {
    Program program;
    for (const auto& run : split_statements(lex(text))) {
        Statement stmt = parse_statement_tokens(run);
        for (const std::string& p : statement_predicates(stmt)) {
            if (is_reserved(p))
                throw ParseError("reserved predicate " + p + " used in an ordinary statement",
                                 run.front().line, run.front().col);
        }
        program.statements.push_back(std::move(stmt));
    }
    return program;
}

// ---------------------------------------------------------------------------
// Rendering
// ---------------------------------------------------------------------------

std::string render(const Term& term) {
    if (term.kind == TermKind::Integer) return std::to_string(term.value);
    return term.text;
}

std::string render(const Atom& atom) {
    std::string out = atom.predicate;
    if (!atom.terms.empty()) {
        out += '(';
        for (std::size_t i = 0; i < atom.terms.size(); ++i) {
            if (i) out += ',';
            out += render(atom.terms[i]);
        }
        out += ')';
    }
    return out;
}

std::string_view cmp_op_text(CmpOp op) {
    switch (op) {
        case CmpOp::Eq: return "=";
        case CmpOp::Ne: return "!=";
        case CmpOp::Lt: return "<";
        case CmpOp::Le: return "<=";
        case CmpOp::Gt: return ">";
        case CmpOp::Ge: return ">=";
    }
    return "=";
}

std::string render(const Comparison& cmp) {
    std::string out = render(cmp.lhs);
    out += ' ';
    out += cmp_op_text(cmp.op);
    out += ' ';
    out += render(cmp.rhs);
    return out;
}

std::string render(const Rule& rule) {
    std::string out;
    if (rule.head) out += render(*rule.head);
    const bool has_body =
        !rule.positive_body.empty() || !rule.negative_body.empty() || !rule.comparisons.empty();
    if (!rule.head || has_body) {
        if (rule.head) out += ' ';
        out += ":-";
        bool first = true;
        auto sep = [&] {
            out += first ? " " : ", ";
            first = false;
        };
        for (const Atom& a : rule.positive_body) {
            sep();
            out += render(a);
        }
        for (const Comparison& c : rule.comparisons) {
            sep();
            out += render(c);
        }
        for (const Atom& a : rule.negative_body) {
            sep();
            out += "not " + render(a);
        }
    }
    out += '.';
    return out;
}

// Spacing for re-emitted token streams. The only hard requirement is that
// re-lexing yields the identical token sequence; the rest imitates the usual
// typography: tight term tuples, spaced literal lists and operators.
std::string render(const ExtendedStatement& stmt) {
    std::string out;
    int paren_depth = 0;
    std::vector<bool> brace_colons;  // per open brace: has ':' been seen

    auto sign_minus = [&](std::size_t i) {  // '-' at i reads as an integer sign
        if (i == 0) return true;
        const Token& before = stmt.tokens[i - 1];
        if (before.kind != TokenKind::Punct) return false;
        static constexpr std::array<std::string_view, 11> lead{
            "(", "{", ",", ";", ":", ":-", "=", "!=", "<", "<=", ">"};
        return std::find(lead.begin(), lead.end(), before.text) != lead.end() ||
               before.text == ">=";
    };
    auto needs_space = [&](std::size_t i) {
        const Token& prev = stmt.tokens[i - 1];
        const Token& next = stmt.tokens[i];
        if (next.kind == TokenKind::Punct) {
            const std::string& t = next.text;
            if (t == ")" || t == "}" || t == "]" || t == ";" || t == "." || t == ",") return false;
            if (t == "(")
                return !(prev.kind == TokenKind::Identifier || prev.kind == TokenKind::Variable);
            if (t == "{") return prev.kind != TokenKind::Aggregate;
            if (t == "|") return false;
        }
        if (prev.kind == TokenKind::Punct) {
            const std::string& t = prev.text;
            if (t == "(" || t == "{" || t == "[" || t == "|") return false;
            if (t == ",")  // tight inside term tuples, spaced between literals
                return paren_depth == 0 && (brace_colons.empty() || brace_colons.back());
            if (t == "-") return !sign_minus(i - 1);
        }
        return true;
    };

    for (std::size_t i = 0; i < stmt.tokens.size(); ++i) {
        const Token& t = stmt.tokens[i];
        if (t.kind == TokenKind::Punct) {
            if (t.text == "(") ++paren_depth;
            if (t.text == ")") --paren_depth;
            if (t.text == "{") brace_colons.push_back(false);
            if (t.text == "}" && !brace_colons.empty()) brace_colons.pop_back();
            if (t.text == ":" && !brace_colons.empty()) brace_colons.back() = true;
            if (t.text == ";" && !brace_colons.empty()) brace_colons.back() = false;
        }
        if (i > 0 && needs_space(i)) out += ' ';
        out += t.text;
    }
    out += '.';
    return out;
}

std::string render(const Statement& stmt) {
    return std::visit([](const auto& s) { return render(s); }, stmt);
}

std::string render(const Program& program) {
    std::string out;
    for (std::size_t i = 0; i < program.statements.size(); ++i) {
        if (i) out += '\n';
        out += render(program.statements[i]);
    }
    return out;
}

// ---------------------------------------------------------------------------
// Queries
// ---------------------------------------------------------------------------

bool Atom::ground() const {
    return std::all_of(terms.begin(), terms.end(), [](const Term& t) { return t.is_constant(); });
}

std::set<std::string> statement_predicates(const Statement& stmt) {
    std::set<std::string> out;
    if (const Rule* rule = std::get_if<Rule>(&stmt)) {
        if (rule->head) out.insert(rule->head->predicate);
        for (const Atom& a : rule->positive_body) out.insert(a.predicate);
        for (const Atom& a : rule->negative_body) out.insert(a.predicate);
    } else {
        const auto& ext = std::get<ExtendedStatement>(stmt);
        for (std::size_t idx : ext.atom_occurrences) out.insert(ext.tokens[idx].text);
    }
    return out;
}

std::set<std::string> predicates_of(const Program& program) {
    std::set<std::string> out;
    for (const Statement& s : program.statements) {
        auto preds = statement_predicates(s);
        out.insert(preds.begin(), preds.end());
    }
    return out;
}

bool is_local(std::string_view predicate) { return predicate.substr(0, 2) == "__"; }

bool is_reserved(std::string_view predicate) {
    return predicate == "__apply_template__" || predicate == "__template__" ||
           predicate == "__end__";
}

}  // namespace aspt
