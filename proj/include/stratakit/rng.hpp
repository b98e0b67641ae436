#pragma once

namespace stratakit {

/// Deterministic xorshift64* uniforms.  The standard engines are portable but
/// the distributions are implementation-defined; this keeps seeded output
/// byte-stable across toolchains.
struct Rng {
    unsigned long long state;
    explicit Rng(unsigned long long seed) : state(seed * 2685821657736338717ull + 1) {}
    unsigned long long next() {
        state ^= state << 13;
        state ^= state >> 7;
        state ^= state << 17;
        return state;
    }
    double uniform(double lo = 0.0, double hi = 1.0) {
        return lo + (hi - lo) * (static_cast<double>(next() >> 11) * 0x1.0p-53);
    }
};

} // namespace stratakit
