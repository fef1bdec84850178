#pragma once

#include <cstdint>
#include <random>

#include "bbkit/linalg.hpp"

namespace bbkit {

// Seeded generator with portable uniform draws (std distributions are
// implementation defined, which would break byte-identical reports).
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Uniform in [0, n).
    std::uint64_t below(std::uint64_t n);
    bool coin() { return below(2) == 1; }

    Fe element(const FieldTower& F, Level level) { return Fe{static_cast<std::uint32_t>(below(F.size(level)))}; }
    Fe nonzero(const FieldTower& F, Level level) {
        return Fe{static_cast<std::uint32_t>(1 + below(F.size(level) - 1))};
    }
    Vec vector(const FieldTower& F, std::size_t n, Level level);
    Vec nonzero_vector(const FieldTower& F, std::size_t n, Level level);
    Matrix invertible(const FieldTower& F, std::size_t n, Level level);

    std::mt19937_64& engine() { return engine_; }

private:
    std::mt19937_64 engine_;
};

// Seed for shard i of a run seeded with `seed`.
std::uint64_t shard_seed(std::uint64_t seed, std::uint64_t shard);

}  // namespace bbkit
