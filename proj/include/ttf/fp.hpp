#pragma once

#include <cstdint>

#include "ttf/error.hpp"

namespace ttf {

// Arithmetic in F_p for prime p < 2^31.  Values are stored reduced, 0 <= v < p.
// Matrices share one modulus; Scalar is the boundary type when a lone value
// needs to carry its field.
struct Scalar {
    uint32_t value = 0;
    uint32_t modulus = 2;
};

namespace fp {

inline uint32_t add(uint32_t a, uint32_t b, uint32_t p) {
    uint64_t s = uint64_t(a) + b;
    return uint32_t(s >= p ? s - p : s);
}

inline uint32_t sub(uint32_t a, uint32_t b, uint32_t p) {
    return a >= b ? a - b : uint32_t(uint64_t(a) + p - b);
}

inline uint32_t neg(uint32_t a, uint32_t p) { return a == 0 ? 0 : p - a; }

inline uint32_t mul(uint32_t a, uint32_t b, uint32_t p) {
    return uint32_t(uint64_t(a) * b % p);
}

// Reduce an arbitrary signed 64-bit integer into [0, p).
inline uint32_t reduce(int64_t a, uint32_t p) {
    int64_t r = a % int64_t(p);
    if (r < 0) r += p;
    return uint32_t(r);
}

uint32_t inv(uint32_t a, uint32_t p);
uint32_t pow(uint32_t a, uint64_t e, uint32_t p);
bool is_prime(uint32_t p);
void require_prime(uint32_t p);

} // namespace fp
} // namespace ttf
