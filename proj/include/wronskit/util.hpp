#pragma once

// Deterministic seeding and a minimal parallel_for. Per-task seeds come from
// counter hashing so results do not depend on thread scheduling.

#include <atomic>
#include <cmath>
#include <cstdlib>
#include <cstdint>
#include <functional>
#include <thread>
#include <vector>

namespace wronskit {

inline std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline std::uint64_t derive_seed(std::uint64_t master, std::uint64_t index) {
    return splitmix64(master ^ splitmix64(index + 0x51ed2701u));
}

// xoshiro-free tiny generator: a splitmix64 stream
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}
    std::uint64_t next_u64() { return splitmix64(state_ += 0x9e3779b97f4a7c15ULL); }
    // uniform in [0,1)
    double uniform() { return double(next_u64() >> 11) * 0x1.0p-53; }
    double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
    // standard normal via Box-Muller
    double normal() {
        double u1 = uniform(), u2 = uniform();
        if (u1 <= 0) u1 = 0x1.0p-53;
        return std::sqrt(-2.0 * std::log(u1)) * std::cos(6.283185307179586 * u2);
    }
    int uniform_int(int lo, int hi) {  // inclusive bounds
        return lo + int(next_u64() % std::uint64_t(hi - lo + 1));
    }

  private:
    std::uint64_t state_;
};

inline unsigned worker_count() {
    if (const char* env = std::getenv("WRONSKIT_THREADS")) {
        int v = std::atoi(env);
        if (v > 0) return unsigned(v);
    }
    unsigned hw = std::thread::hardware_concurrency();
    return hw ? hw : 4;
}

// run fn(i) for i in [0, count); blocks until done
inline void parallel_for(std::size_t count, const std::function<void(std::size_t)>& fn,
                         unsigned workers = 0) {
    if (workers == 0) workers = worker_count();
    if (workers <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::thread> pool;
    unsigned n = std::min<std::size_t>(workers, count);
    pool.reserve(n);
    for (unsigned w = 0; w < n; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next.fetch_add(1); i < count; i = next.fetch_add(1)) fn(i);
        });
    for (auto& th : pool) th.join();
}

}  // namespace wronskit
