#pragma once

#include <cstdint>
#include <initializer_list>
#include <string_view>

namespace regnet {

/// xoshiro256** seeded through splitmix64.
///
/// All samplers in this library draw through this generator and the helpers
/// below rather than <random> distributions, whose output is
/// implementation-defined. A given seed therefore yields the same stream on
/// every platform.
class Rng {
public:
    explicit Rng(std::uint64_t seed);

    std::uint64_t next();

    // Uniform on [0,1) with 53 random bits.
    double uniform();
    double uniform(double lo, double hi);
    bool bernoulli(double p);
    // Uniform integer on [0,n); n > 0.
    std::uint64_t below(std::uint64_t n);

private:
    std::uint64_t s_[4];
};

std::uint64_t splitmix64(std::uint64_t& state);

/// Root seed plus a derivation path naming one substream, e.g.
/// ("graph", {cell, g}) or ("orbit", {cell, g, j}). Identical (root, tag,
/// path) always produces the identical substream, independent of the order
/// in which substreams are requested.
struct EnsembleSeed {
    std::uint64_t root = 0;

    std::uint64_t derive(std::string_view tag, std::initializer_list<std::uint64_t> path) const;
    Rng stream(std::string_view tag, std::initializer_list<std::uint64_t> path) const {
        return Rng(derive(tag, path));
    }
};

}  // namespace regnet
