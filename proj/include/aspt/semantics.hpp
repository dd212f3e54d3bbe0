#pragma once

#include <set>
#include <string>
#include <vector>

#include "aspt/model_search.hpp"
#include "aspt/syntax.hpp"

namespace aspt {

struct EngineError : Error {
    using Error::Error;
};

/// A set of ground atoms; member atoms are variable-free.
struct Interpretation {
    std::set<Atom> atoms;

    bool contains(const Atom& a) const { return atoms.contains(a); }
    bool subset_of(const Interpretation& other) const;
    bool empty() const { return atoms.empty(); }
    std::size_t size() const { return atoms.size(); }
    auto operator<=>(const Interpretation&) const = default;
};

/// One model line: atoms space-separated, sorted lexicographically by their
/// rendered text.
std::string render(const Interpretation& interpretation);

struct HTPair {
    HTPair(Interpretation here_world, Interpretation there_world);
    Interpretation here;
    Interpretation there;  // invariant: here is a subset of there
    auto operator<=>(const HTPair&) const = default;
};

/// Variable-free rules; comparison built-ins already evaluated away.
struct GroundProgram {
    std::vector<Rule> rules;
    friend bool operator==(const GroundProgram&, const GroundProgram&) = default;
};

struct EngineLimits {
    int max_atoms = 20;     // classical model search
    int max_ht_atoms = 15;  // here-and-there pair search (3^n pairs)
};

struct EngineOptions {
    EngineLimits limits{};
    ExecMode exec = ExecMode::Parallel;
    HtEval ht_eval = HtEval::Reduct;
    bool force_enumeration = false;  // testing hook: skip the least-model fast path
};

// ---------------------------------------------------------------------------
// Grounding
// ---------------------------------------------------------------------------

/// Constants occurring in the program plus the supplied extras.
std::set<Term> herbrand_universe(const Program& program, const std::set<Term>& extra = {});

/// All substitutions of rule variables over the universe. Rules whose
/// comparisons evaluate false are dropped; satisfied comparisons are removed.
/// Rejects extended statements and unsafe rules.
GroundProgram ground(const Program& program, const std::set<Term>& universe);

/// Classical satisfaction; a constraint is satisfied iff its body is not.
bool satisfies(const Interpretation& interpretation, const GroundProgram& program);

/// Rules whose full body the interpretation satisfies, stripped of negative
/// literals.
GroundProgram reduct(const GroundProgram& program, const Interpretation& interpretation);

/// Ground atoms over every predicate/arity of the program and the universe,
/// plus the extras; sorted and deduplicated.
std::vector<Atom> model_base(const Program& program, const std::set<Term>& universe,
                             const std::vector<Atom>& extra = {});

/// Atoms derivable through the positive hull of the ground program; stable
/// models are always subsets of this set.
std::vector<Atom> derivable_base(const GroundProgram& program);

/// Bridges a ground program onto a fixed atom base; atoms outside the base
/// are folded as false.
BitProgram to_bit_program(const GroundProgram& program, const std::vector<Atom>& base);

Interpretation interpretation_from_mask(std::uint32_t mask, const std::vector<Atom>& base);

// ---------------------------------------------------------------------------
// Model enumeration
// ---------------------------------------------------------------------------

/// All subsets of `base` satisfying the program.
std::vector<Interpretation> classical_models(const GroundProgram& program,
                                             const std::vector<Atom>& base,
                                             const EngineOptions& options = {});

/// Exact stable-model computation. Programs whose negation occurs only in
/// constraints go through a least-model fixpoint; everything else is searched
/// exhaustively over the derivable base with a reduct-minimality check.
std::vector<Interpretation> stable_models(const Program& program,
                                          const EngineOptions& options = {});

/// Direct evaluation of the here-and-there translation of the program for
/// one pair.
bool ht_satisfies(const HTPair& pair, const GroundProgram& program);

/// All pairs here <= there over subsets of `base` that are here-and-there
/// models of the program.
std::vector<HTPair> ht_models(const Program& program, const std::vector<Atom>& base,
                              const EngineOptions& options = {});

/// There-worlds T with <T,T> a here-and-there model and no <H,T> for a proper
/// subset H; coincides with the stable models.
std::vector<Interpretation> equilibrium_models(const Program& program,
                                               const EngineOptions& options = {});

}  // namespace aspt
