#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace aspt {

// Bit-level search kernels over ground programs with at most 30 atoms.
// Interpretations are bitmasks; rules carry the head index (negative for a
// constraint) and positive/negative body masks. Each kernel exists in an
// OpenMP-parallel and a serial flavor; both produce identical, sorted output
// and the serial one doubles as the reference in tests and benchmarks.

inline constexpr int kMaxSearchAtoms = 30;

struct BitRule {
    int head = -1;  // atom index, or -1 for a constraint
    std::uint32_t pos = 0;
    std::uint32_t neg = 0;
};

struct BitProgram {
    int atom_count = 0;
    std::vector<BitRule> rules;
};

enum class ExecMode { Parallel, Serial };
enum class HtEval { Reduct, Direct };

inline bool body_holds(const BitRule& r, std::uint32_t m) {
    return (m & r.pos) == r.pos && (m & r.neg) == 0;
}

inline bool rule_satisfied(const BitRule& r, std::uint32_t m) {
    return !body_holds(r, m) || (r.head >= 0 && ((m >> r.head) & 1u));
}

bool is_model(const BitProgram& program, std::uint32_t m);

/// All subsets of the atom space satisfying the program, ascending.
std::vector<std::uint32_t> enumerate_models(const BitProgram& program, ExecMode mode);

struct BitHtPair {
    std::uint32_t here = 0;
    std::uint32_t there = 0;
    friend bool operator==(const BitHtPair&, const BitHtPair&) = default;
};

/// Direct evaluation of the here-and-there translation of one rule pair.
bool ht_satisfies_direct(const BitProgram& program, std::uint32_t here, std::uint32_t there);

/// All pairs here <= there satisfying the program in here-and-there logic,
/// ordered by (there, here). Reduct mode precomputes the reduct per
/// there-world; Direct mode evaluates the translated formula per pair.
std::vector<BitHtPair> enumerate_ht_models(const BitProgram& program, HtEval eval, ExecMode mode);

/// Exhaustive stable-model search: classical models whose reduct admits no
/// smaller model among their subsets.
std::vector<std::uint32_t> enumerate_stable_models(const BitProgram& program, ExecMode mode);

}  // namespace aspt
