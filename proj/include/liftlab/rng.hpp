#pragma once

#include <cstdint>
#include <random>
#include <vector>

namespace liftlab {

/// Seeded RNG with reproducible primitive draws. std::mt19937_64's output
/// sequence is pinned by the standard; the helpers below avoid
/// std::uniform_int_distribution, whose mapping is implementation-defined.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }

    /// Uniform in [0, n) by rejection.
    std::uint64_t below(std::uint64_t n) {
        if (n == 0) return 0;
        std::uint64_t limit = std::uint64_t(-1) - std::uint64_t(-1) % n;
        std::uint64_t v;
        do {
            v = engine_();
        } while (v >= limit);
        return v % n;
    }

    int bit() { return static_cast<int>(engine_() >> 63); }

    double unit() {  // [0,1)
        return static_cast<double>(engine_() >> 11) * 0x1.0p-53;
    }

    /// k distinct values from [0, n), sorted.
    std::vector<std::uint64_t> sample_without_replacement(std::uint64_t n, std::uint64_t k) {
        std::vector<std::uint64_t> pool(n);
        for (std::uint64_t i = 0; i < n; ++i) pool[i] = i;
        for (std::uint64_t i = 0; i < k; ++i) {
            std::uint64_t j = i + below(n - i);
            std::swap(pool[i], pool[j]);
        }
        pool.resize(k);
        std::sort(pool.begin(), pool.end());
        return pool;
    }

    /// Deterministic per-cell seed for sweep fan-out.
    static std::uint64_t cell_seed(std::uint64_t base, std::uint64_t cell) {
        // splitmix64 step on (base, cell)
        std::uint64_t z = base + 0x9e3779b97f4a7c15ULL * (cell + 1);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

  private:
    std::mt19937_64 engine_;
};

}  // namespace liftlab
