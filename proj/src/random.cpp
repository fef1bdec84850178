#include "bbkit/random.hpp"

#include <algorithm>
#include <limits>

namespace bbkit {

std::uint64_t Rng::below(std::uint64_t n) {
    if (n <= 1) return 0;
    const std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() - std::numeric_limits<std::uint64_t>::max() % n;
    for (;;) {
        const std::uint64_t x = engine_();
        if (x < limit) return x % n;
    }
}

Vec Rng::vector(const FieldTower& F, std::size_t n, Level level) {
    Vec v(n);
    for (auto& x : v) x = element(F, level);
    return v;
}

Vec Rng::nonzero_vector(const FieldTower& F, std::size_t n, Level level) {
    for (;;) {
        Vec v = vector(F, n, level);
        if (std::any_of(v.begin(), v.end(), [](Fe x) { return x.code != 0; })) return v;
    }
}

Matrix Rng::invertible(const FieldTower& F, std::size_t n, Level level) {
    for (;;) {
        Matrix m(n, n);
        for (std::size_t r = 0; r < n; ++r)
            for (std::size_t c = 0; c < n; ++c) m.at(r, c) = element(F, level);
        if (rank(F, m) == n) return m;
    }
}

std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard) {
    // splitmix64 finalizer over the pair
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (shard + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

}  // namespace bbkit
