#pragma once

#include <cstdint>

#include "twostudy/normal.hpp"

namespace twostudy {

// Counter-based random numbers: every draw is a pure hash of
// (seed, replicate, study, slot), so parallel and serial simulation runs
// produce identical streams with no shared state.

inline std::uint64_t mix64(std::uint64_t z) {
    z ^= z >> 33;
    z *= 0xff51afd7ed558ccdULL;
    z ^= z >> 33;
    z *= 0xc4ceb9fe1a85ec53ULL;
    z ^= z >> 33;
    return z;
}

inline std::uint64_t counter_hash(std::uint64_t seed, std::uint64_t replicate,
                                  std::uint64_t study, std::uint64_t slot) {
    std::uint64_t h = mix64(seed + 0x9e3779b97f4a7c15ULL);
    h = mix64(h ^ (replicate + 0xbf58476d1ce4e5b9ULL));
    h = mix64(h ^ (study + 0x94d049bb133111ebULL));
    h = mix64(h ^ (slot + 0x2545f4914f6cdd1dULL));
    return h;
}

// Uniform draw in the open interval (0,1).
inline double counter_uniform(std::uint64_t seed, std::uint64_t replicate,
                              std::uint64_t study, std::uint64_t slot) {
    const std::uint64_t bits = counter_hash(seed, replicate, study, slot);
    return (static_cast<double>(bits >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

// Standard normal draw via the inverse CDF.
inline double counter_normal(std::uint64_t seed, std::uint64_t replicate,
                             std::uint64_t study, std::uint64_t slot) {
    return norm_quantile(counter_uniform(seed, replicate, study, slot));
}

}  // namespace twostudy
