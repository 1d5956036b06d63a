#pragma once

#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace povmlab::detail {

/// Worker count from POVMLAB_WORKERS; unset or invalid means auto.
int worker_count();

/// Runs fn(i) for i in [0, n) across the worker pool. Each index is handled
/// exactly once; callers must make fn(i) independent of execution order so
/// results stay identical for any worker count.
void parallel_for(int n, const std::function<void(int)> &fn);

/// splitmix64 step, used to derive independent sub-seeds.
inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

} // namespace povmlab::detail
