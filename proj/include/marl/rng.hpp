#pragma once

#include <cstdint>
#include <random>
#include <string_view>

namespace marl {

// Every random stream in a run is derived from (master seed, tag, index) so
// that sessions are reproducible and streams never alias across purposes.
inline uint64_t splitmix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ULL;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
    return x ^ (x >> 31);
}

inline uint64_t fnv1a(std::string_view s, uint64_t h = 0xcbf29ce484222325ULL) {
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    return h;
}

inline uint64_t derive_seed(uint64_t master, std::string_view tag, uint64_t index = 0) {
    uint64_t h = fnv1a(tag);
    h = splitmix64(h ^ splitmix64(master));
    return splitmix64(h ^ splitmix64(index));
}

class Rng {
public:
    Rng() : gen_(0) {}
    explicit Rng(uint64_t seed) : gen_(seed) {}
    Rng(uint64_t master, std::string_view tag, uint64_t index = 0)
        : gen_(derive_seed(master, tag, index)) {}

    std::mt19937_64& gen() { return gen_; }

    // Uniform integer in [0, n).
    int uniform_int(int n) {
        return static_cast<int>(std::uniform_int_distribution<int>(0, n - 1)(gen_));
    }

    double uniform01() { return std::uniform_real_distribution<double>(0.0, 1.0)(gen_); }

    double normal() { return normal_(gen_); }

private:
    std::mt19937_64 gen_;
    std::normal_distribution<double> normal_{0.0, 1.0};
};

}  // namespace marl
