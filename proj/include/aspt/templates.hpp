#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include "aspt/syntax.hpp"

namespace aspt {

struct ExpandError : Error {
    using Error::Error;
};

// ---------------------------------------------------------------------------
// Renamings
// ---------------------------------------------------------------------------

/// A finite predicate-name map, the identity outside its domain. Global
/// renamings may not touch local names; local renamings are injective maps
/// between local names.
class Renaming {
public:
    enum class Kind { Global, Local };

    static Renaming global(std::map<std::string, std::string> mapping);
    static Renaming local(std::map<std::string, std::string> mapping);

    Kind kind() const { return kind_; }
    const std::map<std::string, std::string>& mapping() const { return mapping_; }
    const std::string& apply(const std::string& predicate) const;

private:
    Renaming(Kind kind, std::map<std::string, std::string> mapping)
        : kind_(kind), mapping_(std::move(mapping)) {}
    Kind kind_;
    std::map<std::string, std::string> mapping_;
};

/// Returns the program with every predicate occurrence mapped through the
/// renaming; structure and arities are untouched.
Program rename(const Program& program, const Renaming& renaming);

// ---------------------------------------------------------------------------
// UUID source
// ---------------------------------------------------------------------------

/// Draws UUIDs in canonical hyphenated form. Random mode produces RFC 4122
/// version-4 identifiers and is safe for concurrent draws; deterministic mode
/// counts up from the seed, yielding 00000000-0000-4000-8000-<counter>.
class UuidSource {
public:
    enum class Mode { Random, Deterministic };

    static UuidSource random();
    static UuidSource deterministic(std::uint64_t seed = 0);

    UuidSource(const UuidSource&) = delete;
    UuidSource& operator=(const UuidSource&) = delete;
    UuidSource(UuidSource&&) = default;
    UuidSource& operator=(UuidSource&&) = default;

    Mode mode() const { return mode_; }
    std::string draw();

private:
    explicit UuidSource(Mode mode);
    Mode mode_;
    std::uint64_t counter_ = 0;
    std::unique_ptr<std::mutex> mutex_;
    std::mt19937_64 rng_;
};

/// Number of trailing UUID-shaped suffixes (_xxxxxxxx_xxxx_xxxx_xxxx_x{12})
/// in a predicate name.
int uuid_suffix_count(std::string_view name);
bool has_uuid_shaped_suffix(std::string_view name);

// ---------------------------------------------------------------------------
// Templates
// ---------------------------------------------------------------------------

struct Template {
    std::string name;
    Program body;  // fully expanded, free of directives and reserved predicates
};

/// Name -> template map mutated in place by expansion. Lookup of an unknown
/// name throws; an optional fallback may synthesize templates on demand.
class TemplateRegistry {
public:
    using Fallback = std::function<std::optional<Template>(const std::string&)>;

    bool contains(const std::string& name) const;
    const Template& lookup(const std::string& name);
    /// Returns true when an existing entry was overwritten.
    bool declare(Template tpl);
    void set_fallback(Fallback fallback) { fallback_ = std::move(fallback); }
    std::vector<std::string> names() const;
    std::size_t size() const { return templates_.size(); }

private:
    std::map<std::string, Template> templates_;
    Fallback fallback_;
};

struct TemplateApplication {
    std::string name;
    std::vector<std::pair<std::string, std::string>> pairs;  // (old, new)
};

using TemplateContentElement = std::variant<Rule, ExtendedStatement, TemplateApplication>;

struct TemplateDeclaration {
    std::string name;
    std::vector<TemplateContentElement> content;  // declarations cannot nest
};

using TemplateElement =
    std::variant<Rule, ExtendedStatement, TemplateApplication, TemplateDeclaration>;

struct ProgramWithTemplates {
    std::vector<TemplateElement> elements;
};

/// Parses the directive-bearing serialization format. Directive facts over
/// the reserved predicates are recognized structurally and removed from the
/// ordinary statement stream.
ProgramWithTemplates parse_program_with_templates(std::string_view text);

/// Builds the local renaming for one application: every local predicate of
/// the body is mapped to itself plus one freshly drawn UUID (hyphens replaced
/// by underscores, the same UUID for all local names of the application).
/// No draw is consumed when the body has no local predicates.
Renaming make_local_renaming(const Program& template_body, UuidSource& uuids);

/// rename(rename(body, local), global): the application of a template.
Program apply_template(const Template& tpl, const Renaming& global_renaming, UuidSource& uuids);

/// Builds the global renaming of an application directive; throws when a
/// pair's old name is local.
Renaming renaming_from_pairs(const std::vector<std::pair<std::string, std::string>>& pairs);

/// Expands a program with templates in element order: declarations expand
/// their content against the current registry and are stored; applications
/// append the renamed body; ordinary statements pass through. The registry
/// is updated in place. Redeclarations overwrite and emit a warning.
Program expand(const ProgramWithTemplates& program, TemplateRegistry& registry, UuidSource& uuids,
               std::vector<std::string>* warnings = nullptr);

}  // namespace aspt
