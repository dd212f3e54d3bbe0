#include "aspt/model_search.hpp"

#include <cassert>

#ifdef _OPENMP
#define ASPT_OMP(directive) _Pragma(#directive)
#else
#define ASPT_OMP(directive)
#endif

namespace aspt {

bool is_model(const BitProgram& program, std::uint32_t m) {
    for (const BitRule& r : program.rules)
        if (!rule_satisfied(r, m)) return false;
    return true;
}

std::vector<std::uint32_t> enumerate_models(const BitProgram& program, ExecMode mode) {
    assert(program.atom_count <= kMaxSearchAtoms);
    const std::int64_t count = std::int64_t{1} << program.atom_count;
    std::vector<std::uint8_t> sat(static_cast<std::size_t>(count), 0);
    if (mode == ExecMode::Parallel) {
        ASPT_OMP(omp parallel for schedule(static))
        for (std::int64_t m = 0; m < count; ++m)
            sat[static_cast<std::size_t>(m)] = is_model(program, static_cast<std::uint32_t>(m));
    } else {
        for (std::int64_t m = 0; m < count; ++m)
            sat[static_cast<std::size_t>(m)] = is_model(program, static_cast<std::uint32_t>(m));
    }
    std::vector<std::uint32_t> out;
    for (std::int64_t m = 0; m < count; ++m)
        if (sat[static_cast<std::size_t>(m)]) out.push_back(static_cast<std::uint32_t>(m));
    return out;
}

bool ht_satisfies_direct(const BitProgram& program, std::uint32_t here, std::uint32_t there) {
    assert((here & ~there) == 0);
    for (const BitRule& r : program.rules) {
        // negative literals translate to p -> falsum, which holds at a world
        // iff p is false at that world and every later one
        const bool neg_ok = (there & r.neg) == 0;
        const bool body_at_t = ((there & r.pos) == r.pos) && neg_ok;
        const bool body_at_h = ((here & r.pos) == r.pos) && neg_ok;
        const bool head_at_t = r.head >= 0 && ((there >> r.head) & 1u);
        const bool head_at_h = r.head >= 0 && ((here >> r.head) & 1u);
        if (body_at_t && !head_at_t) return false;
        if (body_at_h && !head_at_h) return false;
    }
    return true;
}

namespace {

struct ReductRule {
    int head;
    std::uint32_t pos;
};

// rules whose full body `there` satisfies, stripped of negative literals;
// constraints never survive when `there` is a classical model
std::vector<ReductRule> reduct_of(const BitProgram& program, std::uint32_t there) {
    std::vector<ReductRule> out;
    for (const BitRule& r : program.rules)
        if (body_holds(r, there)) out.push_back(ReductRule{r.head, r.pos});
    return out;
}

bool satisfies_reduct(const std::vector<ReductRule>& reduct, std::uint32_t m) {
    for (const ReductRule& r : reduct) {
        if ((m & r.pos) != r.pos) continue;
        if (r.head < 0 || !((m >> r.head) & 1u)) return false;
    }
    return true;
}

template <typename PerThere>
void for_each_there(int atom_count, ExecMode mode, PerThere&& body) {
    const std::int64_t count = std::int64_t{1} << atom_count;
    if (mode == ExecMode::Parallel) {
        ASPT_OMP(omp parallel for schedule(dynamic, 64))
        for (std::int64_t t = 0; t < count; ++t) body(static_cast<std::uint32_t>(t));
    } else {
        for (std::int64_t t = 0; t < count; ++t) body(static_cast<std::uint32_t>(t));
    }
}

}  // namespace

std::vector<BitHtPair> enumerate_ht_models(const BitProgram& program, HtEval eval, ExecMode mode) {
    assert(program.atom_count <= kMaxSearchAtoms);
    const std::size_t count = std::size_t{1} << program.atom_count;
    // buckets indexed by the there-world keep the merge deterministic
    std::vector<std::vector<std::uint32_t>> heres(count);

    for_each_there(program.atom_count, mode, [&](std::uint32_t t) {
        std::vector<std::uint32_t>& bucket = heres[t];
        if (eval == HtEval::Reduct) {
            if (!is_model(program, t)) return;
            const auto reduct = reduct_of(program, t);
            std::uint32_t h = 0;
            while (true) {  // submasks of t, ascending
                if (satisfies_reduct(reduct, h)) bucket.push_back(h);
                if (h == t) break;
                h = (h - t) & t;
            }
        } else {
            std::uint32_t h = 0;
            while (true) {
                if (ht_satisfies_direct(program, h, t)) bucket.push_back(h);
                if (h == t) break;
                h = (h - t) & t;
            }
        }
    });

    std::vector<BitHtPair> out;
    for (std::size_t t = 0; t < count; ++t)
        for (std::uint32_t h : heres[t]) out.push_back(BitHtPair{h, static_cast<std::uint32_t>(t)});
    return out;
}

std::vector<std::uint32_t> enumerate_stable_models(const BitProgram& program, ExecMode mode) {
    assert(program.atom_count <= kMaxSearchAtoms);
    const std::size_t count = std::size_t{1} << program.atom_count;
    std::vector<std::uint8_t> stable(count, 0);

    for_each_there(program.atom_count, mode, [&](std::uint32_t m) {
        if (!is_model(program, m)) return;
        const auto reduct = reduct_of(program, m);
        if (m != 0) {
            for (std::uint32_t j = (m - 1) & m;; j = (j - 1) & m) {
                if (satisfies_reduct(reduct, j)) return;  // smaller model of the reduct
                if (j == 0) break;
            }
        }
        stable[m] = 1;
    });

    std::vector<std::uint32_t> out;
    for (std::size_t m = 0; m < count; ++m)
        if (stable[m]) out.push_back(static_cast<std::uint32_t>(m));
    return out;
}

}  // namespace aspt
