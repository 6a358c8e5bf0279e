#pragma once

#include <cstdint>
#include <string_view>

namespace triramsey {

// splitmix64-v1: the generator named in the file format docs. All artifact
// randomness flows through this; std:: distributions are avoided because
// their output is not pinned by the standard.
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
        z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
        z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
        return z ^ (z >> 31);
    }

    // Unbiased draw in [0, n), n >= 1. Rejection on the biased tail.
    std::uint64_t next_below(std::uint64_t n) {
        const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % n);
        for (;;) {
            std::uint64_t x = next();
            if (x < limit || limit == 0) return x % n;
        }
    }

private:
    std::uint64_t state_;
};

// FNV-1a over the label, folded into the root seed. Each module draws from
// its own labeled substream so adding draws in one builder never perturbs
// another.
inline std::uint64_t substream_seed(std::uint64_t root_seed, std::string_view label) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : label) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    h ^= root_seed + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    return h;
}

inline SplitMix64 substream(std::uint64_t root_seed, std::string_view label) {
    return SplitMix64(substream_seed(root_seed, label));
}

} // namespace triramsey
