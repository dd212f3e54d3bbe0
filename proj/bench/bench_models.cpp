// Compares the OpenMP model-search kernels against the serial reference on
// random ground programs. Sizes are adjustable: bench_models [atoms] [rules].

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <random>

#include "aspt/model_search.hpp"

using namespace aspt;

namespace {

BitProgram random_bit_program(std::mt19937& rng, int atoms, int rules) {
    std::uniform_int_distribution<int> atom_pick(0, atoms - 1);
    std::uniform_int_distribution<int> body_len(0, 3);
    std::uniform_int_distribution<int> percent(0, 99);
    BitProgram out;
    out.atom_count = atoms;
    for (int i = 0; i < rules; ++i) {
        BitRule rule;
        rule.head = percent(rng) < 15 ? -1 : atom_pick(rng);
        for (int k = body_len(rng); k > 0; --k) rule.pos |= 1u << atom_pick(rng);
        for (int k = body_len(rng); k > 0; --k) rule.neg |= 1u << atom_pick(rng);
        rule.neg &= ~rule.pos;
        out.rules.push_back(rule);
    }
    return out;
}

template <typename F>
double time_ms(F&& work) {
    const auto start = std::chrono::steady_clock::now();
    work();
    return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
        .count();
}

void report(const char* kernel, double serial_ms, double parallel_ms, std::size_t results) {
    std::printf("%-18s %10.1f ms %10.1f ms %8.2fx   %zu results\n", kernel, serial_ms,
                parallel_ms, serial_ms / parallel_ms, results);
}

}  // namespace

int main(int argc, char** argv) {
    const int atoms = argc > 1 ? std::atoi(argv[1]) : 20;
    const int rules = argc > 2 ? std::atoi(argv[2]) : 40;
    if (atoms < 1 || atoms > kMaxSearchAtoms) {
        std::fprintf(stderr, "atoms must be in 1..%d\n", kMaxSearchAtoms);
        return 2;
    }
    std::mt19937 rng(12345);
    const BitProgram classical = random_bit_program(rng, atoms, rules);
    // lighter rule sets keep plenty of candidate models in the pair search
    const int ht_atoms = atoms > 14 ? 14 : atoms;
    const BitProgram ht = random_bit_program(rng, ht_atoms, rules / 5 + 1);
    const int stable_atoms = atoms > 16 ? 16 : atoms;
    const BitProgram stable = random_bit_program(rng, stable_atoms, rules / 4 + 1);

    std::printf("kernel                  serial     parallel   speedup\n");

    std::vector<std::uint32_t> models_serial, models_parallel;
    const double cs = time_ms([&] { models_serial = enumerate_models(classical, ExecMode::Serial); });
    const double cp =
        time_ms([&] { models_parallel = enumerate_models(classical, ExecMode::Parallel); });
    if (models_serial != models_parallel) {
        std::fprintf(stderr, "classical kernels disagree\n");
        return 1;
    }
    report("classical models", cs, cp, models_serial.size());

    std::vector<BitHtPair> ht_serial, ht_parallel;
    const double hs =
        time_ms([&] { ht_serial = enumerate_ht_models(ht, HtEval::Reduct, ExecMode::Serial); });
    const double hp =
        time_ms([&] { ht_parallel = enumerate_ht_models(ht, HtEval::Reduct, ExecMode::Parallel); });
    if (ht_serial != ht_parallel) {
        std::fprintf(stderr, "ht kernels disagree\n");
        return 1;
    }
    report("ht models", hs, hp, ht_serial.size());

    const double hd =
        time_ms([&] { ht_parallel = enumerate_ht_models(ht, HtEval::Direct, ExecMode::Parallel); });
    if (ht_serial != ht_parallel) {
        std::fprintf(stderr, "direct ht evaluation disagrees with the reduct route\n");
        return 1;
    }
    std::printf("%-18s %10s    %10.1f ms            (reduct route: %.1f ms)\n",
                "ht models, direct", "-", hd, hp);

    std::vector<std::uint32_t> stable_serial, stable_parallel;
    const double ss =
        time_ms([&] { stable_serial = enumerate_stable_models(stable, ExecMode::Serial); });
    const double sp =
        time_ms([&] { stable_parallel = enumerate_stable_models(stable, ExecMode::Parallel); });
    if (stable_serial != stable_parallel) {
        std::fprintf(stderr, "stable kernels disagree\n");
        return 1;
    }
    report("stable models", ss, sp, stable_serial.size());
    return 0;
}
