#pragma once

#include <atomic>
#include <cstdint>
#include <thread>
#include <vector>

#include "theonlab/rng.hpp"

namespace theonlab {

// Fixed chunk size; part of the reproducibility contract together with the
// seed-splitting rule in rng.hpp.
inline constexpr std::uint64_t kMcChunk = 1u << 16;

// Deterministic sharded Monte Carlo. Chunk c draws from Rng(split_seed(seed,
// c)); per-chunk states are merged in chunk order, so the result is
// bit-identical for any thread count.
template <class State, class MakeState, class PerSample, class Merge>
State mc_run(std::uint64_t n_samples, std::uint64_t seed, int threads, MakeState make, PerSample per_sample, Merge merge) {
    const std::uint64_t chunks = n_samples == 0 ? 0 : (n_samples + kMcChunk - 1) / kMcChunk;
    std::vector<State> parts;
    parts.reserve(chunks);
    for (std::uint64_t c = 0; c < chunks; ++c) parts.push_back(make());

    auto run_chunk = [&](std::uint64_t c) {
        Rng rng(split_seed(seed, c));
        const std::uint64_t count = std::min<std::uint64_t>(kMcChunk, n_samples - c * kMcChunk);
        State& st = parts[c];
        for (std::uint64_t i = 0; i < count; ++i) per_sample(st, rng);
    };

    if (threads <= 1 || chunks <= 1) {
        for (std::uint64_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        std::atomic<std::uint64_t> next{0};
        auto worker = [&] {
            for (;;) {
                const std::uint64_t c = next.fetch_add(1);
                if (c >= chunks) return;
                run_chunk(c);
            }
        };
        std::vector<std::thread> pool;
        const int nt = std::min<std::uint64_t>((std::uint64_t)threads, chunks);
        pool.reserve(nt);
        for (int t = 0; t < nt; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }

    State acc = make();
    for (auto& p : parts) merge(acc, p);
    return acc;
}

} // namespace theonlab
