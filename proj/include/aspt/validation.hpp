#pragma once

#include <optional>
#include <string>
#include <vector>

#include "aspt/semantics.hpp"

namespace aspt {

struct ValidationError : Error {
    using Error::Error;
};

enum class CheckKind { T1, T2, T3 };

std::string_view check_kind_name(CheckKind kind);

struct ValidationReport {
    CheckKind check = CheckKind::T1;
    bool pass = false;
    bool vacuous = false;  // T1 over a classically unsatisfiable program
    std::optional<Interpretation> witness;
    std::string detail;
};

struct ConsequenceSet {
    std::set<Atom> atoms;
    bool unsatisfiable = false;  // no classical model: every atom is vacuously cautious
};

/// Intersection of all classical models over the program's atom base plus
/// `extra` atoms.
ConsequenceSet cautious_atoms(const Program& program, const std::vector<Atom>& extra = {},
                              const EngineOptions& options = {});

/// Union of all classical models over the same base.
ConsequenceSet brave_atoms(const Program& program, const std::vector<Atom>& extra = {},
                           const EngineOptions& options = {});

/// Intersection of all subsets of `model` satisfying the program's reduct
/// w.r.t. `model`. Throws if `model` is not a classical model.
std::set<Atom> reduct_cautious_atoms(const Program& program, const Interpretation& model,
                                     const EngineOptions& options = {});

/// T1: the true atoms hold and the false atoms fail in every classical model
/// of the program joined with any other program.
ValidationReport validate_in_all_models(const Program& program, const std::set<Atom>& true_atoms,
                                        const std::set<Atom>& false_atoms,
                                        const EngineOptions& options = {});

/// T2: the true atoms hold in every model of the reduct w.r.t. `model`, for
/// the program joined with any other program.
ValidationReport validate_in_all_models_of_the_reduct(const Program& program,
                                                      const Interpretation& model,
                                                      const std::set<Atom>& true_atoms,
                                                      const EngineOptions& options = {});

/// T3: no interpretation containing the true atoms and avoiding the false
/// atoms is a stable model of the program joined with any program that has no
/// knowledge of its local predicates. `strict_local_suffix` additionally
/// requires dropped atoms to carry a UUID-shaped suffix.
ValidationReport validate_cannot_be_extended_to_stable_model(const Program& program,
                                                             const std::set<Atom>& true_atoms,
                                                             const std::set<Atom>& false_atoms,
                                                             bool strict_local_suffix = false,
                                                             const EngineOptions& options = {});

// ---------------------------------------------------------------------------
// Validation manifests
// ---------------------------------------------------------------------------

// Manifest lines start with `%!` and end with `.`:
//   %! in_all_models true: <atoms>; false: <atoms>.
//   %! in_all_models_of_reduct model: <atoms>; true: <atoms>.
//   %! cannot_be_extended true: <atoms>; false: <atoms>.

struct ManifestDirective {
    CheckKind kind = CheckKind::T1;
    std::vector<Atom> true_atoms;
    std::vector<Atom> false_atoms;
    std::vector<Atom> model_atoms;  // T2 only
    int line = 0;
    std::string text;  // canonical directive text for reporting
};

/// Scans raw source text for `%!` directive lines. Throws ValidationError on
/// malformed directives.
std::vector<ManifestDirective> parse_manifest(std::string_view source);

struct ManifestOutcome {
    std::vector<ValidationReport> reports;
    std::vector<std::string> warnings;
    bool all_passed = true;
};

/// Runs each directive against the expanded program, in order. Atoms over
/// predicates absent from the program produce a warning, not an error; a
/// directive whose precondition fails (for example a T2 model that is not a
/// model) is reported as a failure.
ManifestOutcome run_manifest(const Program& expanded,
                             const std::vector<ManifestDirective>& manifest,
                             const EngineOptions& options = {});

}  // namespace aspt
