#pragma once

#include <cstdint>

#include "rieszdec/matrix.hpp"

namespace rieszdec {

/// Counter-based pseudorandom stream (splitmix64 mixing). Substreams derived
/// with split() do not depend on how much the parent stream was consumed, so
/// parallel test shards reproduce bit-for-bit from the same root seed.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    /// Uniform on [0, 1).
    double next_double();
    /// Standard normal (Box-Muller, pair-cached).
    double next_gauss();
    /// Complex standard normal, E|z|^2 = 1.
    Complex next_cgauss();

    Rng split(std::uint64_t stream) const;

private:
    std::uint64_t state_;
    bool have_spare_ = false;
    double spare_ = 0.0;
};

/// Matrix with i.i.d. complex standard normal entries.
Matrix random_gaussian(Rng& rng, std::size_t rows, std::size_t cols);

} // namespace rieszdec
