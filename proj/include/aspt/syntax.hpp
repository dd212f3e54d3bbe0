#pragma once

#include <compare>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace aspt {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : Error {
    ParseError(const std::string& msg, int line, int col);
    int line;
    int col;
};

// ---------------------------------------------------------------------------
// Terms and atoms
// ---------------------------------------------------------------------------

enum class TermKind { Integer, Symbol, Variable };

/// A term is an integer constant, a symbolic constant (lowercase identifier
/// or quoted string, stored verbatim including quotes), or a variable.
struct Term {
    TermKind kind = TermKind::Symbol;
    long long value = 0;   // Integer terms only
    std::string text;      // Symbol / Variable terms only

    static Term integer(long long v) { return Term{TermKind::Integer, v, {}}; }
    static Term symbol(std::string s) { return Term{TermKind::Symbol, 0, std::move(s)}; }
    static Term variable(std::string s) { return Term{TermKind::Variable, 0, std::move(s)}; }

    bool is_constant() const { return kind != TermKind::Variable; }
    auto operator<=>(const Term&) const = default;
};

std::string render(const Term& term);

struct Atom {
    std::string predicate;
    std::vector<Term> terms;

    std::size_t arity() const { return terms.size(); }
    bool ground() const;
    auto operator<=>(const Atom&) const = default;
};

std::string render(const Atom& atom);

enum class CmpOp { Eq, Ne, Lt, Le, Gt, Ge };

std::string_view cmp_op_text(CmpOp op);

/// Comparison built-ins are allowed in core rule bodies and evaluated away
/// during grounding.
struct Comparison {
    Term lhs;
    CmpOp op = CmpOp::Eq;
    Term rhs;
    auto operator<=>(const Comparison&) const = default;
};

std::string render(const Comparison& cmp);

// ---------------------------------------------------------------------------
// Statements
// ---------------------------------------------------------------------------

/// A normal rule `head :- body.`; an absent head encodes a constraint
/// `:- body.` directly.
struct Rule {
    std::optional<Atom> head;
    std::vector<Atom> positive_body;
    std::vector<Atom> negative_body;
    std::vector<Comparison> comparisons;

    bool is_constraint() const { return !head.has_value(); }
    bool is_fact() const {
        return head.has_value() && positive_body.empty() && negative_body.empty() &&
               comparisons.empty();
    }
    friend bool operator==(const Rule&, const Rule&) = default;
};

std::string render(const Rule& rule);

enum class TokenKind { Identifier, Variable, Integer, String, Aggregate, Punct };

struct Token {
    TokenKind kind = TokenKind::Punct;
    std::string text;
    int line = 0;
    int col = 0;

    // positions are carried for diagnostics only
    friend bool operator==(const Token& a, const Token& b) {
        return a.kind == b.kind && a.text == b.text;
    }
};

/// Carrier for statements using constructs outside the core rule fragment
/// (choice rules, aggregates, intervals, arithmetic). The token sequence
/// re-emits to the source text up to whitespace normalization;
/// atom_occurrences indexes the tokens that stand in predicate position.
struct ExtendedStatement {
    std::vector<Token> tokens;   // statement terminator '.' excluded
    std::vector<std::size_t> atom_occurrences;

    friend bool operator==(const ExtendedStatement& a, const ExtendedStatement& b) {
        return a.tokens == b.tokens && a.atom_occurrences == b.atom_occurrences;
    }
};

std::string render(const ExtendedStatement& stmt);

using Statement = std::variant<Rule, ExtendedStatement>;

inline bool is_core(const Statement& s) { return std::holds_alternative<Rule>(s); }
inline bool is_extended(const Statement& s) { return std::holds_alternative<ExtendedStatement>(s); }

std::string render(const Statement& stmt);

struct Program {
    std::vector<Statement> statements;

    bool empty() const { return statements.empty(); }
    friend bool operator==(const Program&, const Program&) = default;
};

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

/// Tokenizes source text. `%` comments and whitespace are skipped; the
/// typographic arrow is normalized to `:-`.
std::vector<Token> lex(std::string_view text);

/// Splits a token stream into statements; each run excludes its final `.`.
std::vector<std::vector<Token>> split_statements(std::vector<Token> tokens);

/// Parses one statement, classifying it as a core Rule or an
/// ExtendedStatement. Core rules are checked for safety.
Statement parse_statement_tokens(const std::vector<Token>& run);

/// Parses a full program of ordinary statements. Reserved template directive
/// predicates are rejected here; use parse_program_with_templates for
/// directive-bearing sources.
Program parse_program(std::string_view text);

/// Emits canonical text, one statement per line. render(parse_program(t))
/// reparses to an equal Program.
std::string render(const Program& program);

std::set<std::string> statement_predicates(const Statement& stmt);

/// The set of predicate names occurring anywhere in the program, extended
/// statements included.
std::set<std::string> predicates_of(const Program& program);

/// True iff the predicate name starts with a double underscore.
bool is_local(std::string_view predicate);

/// Reserved directive predicates of the template serialization format.
bool is_reserved(std::string_view predicate);

}  // namespace aspt
