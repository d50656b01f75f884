#pragma once

#include <algorithm>
#include <cstdint>
#include <cstdlib>
#include <functional>
#include <random>
#include <string>
#include <thread>
#include <vector>

namespace anglesum {

struct SamplingConfig {
    long long samples = 100000;
    std::uint64_t seed = 0xC0FFEE;
    long long chunk = 4096;
    double target_se = 0;  // 0 disables the early stop
    bool force_monte_carlo = false;
};

inline std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t a, std::uint64_t b, std::uint64_t c = 0)
{
    return splitmix64(splitmix64(splitmix64(a) ^ b) ^ c);
}

inline std::uint64_t hash_ints(const std::vector<int>& v, std::uint64_t salt = 0)
{
    std::uint64_t h = splitmix64(salt ^ v.size());
    for (int x : v) h = splitmix64(h ^ static_cast<std::uint64_t>(x));
    return h;
}

inline int worker_count()
{
    int hw = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    if (const char* e = std::getenv("ANGLESUM_THREADS")) {
        int cap = std::atoi(e);
        if (cap >= 1) hw = std::min(hw, cap);
    }
    return hw;
}

// runs body(i) for i in [0, n); results must be written to per-index slots
inline void parallel_for(long long n, const std::function<void(long long)>& body)
{
    int w = static_cast<int>(std::min<long long>(worker_count(), n));
    if (w <= 1) {
        for (long long i = 0; i < n; ++i) body(i);
        return;
    }
    std::vector<std::thread> ts;
    for (int t = 0; t < w; ++t)
        ts.emplace_back([&, t] {
            for (long long i = t; i < n; i += w) body(i);
        });
    for (auto& t : ts) t.join();
}

} // namespace anglesum
