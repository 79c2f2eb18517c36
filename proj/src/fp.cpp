#include "ttf/fp.hpp"

namespace ttf {
namespace fp {

uint32_t pow(uint32_t a, uint64_t e, uint32_t p) {
    uint64_t base = a % p, acc = 1 % p;
    while (e) {
        if (e & 1) acc = acc * base % p;
        base = base * base % p;
        e >>= 1;
    }
    return uint32_t(acc);
}

uint32_t inv(uint32_t a, uint32_t p) {
    if (a % p == 0) throw Error(ErrorKind::Internal, "division by zero in F_p");
    // extended Euclid
    int64_t t = 0, new_t = 1;
    int64_t r = p, new_r = a % p;
    while (new_r != 0) {
        int64_t q = r / new_r;
        int64_t tmp = t - q * new_t;
        t = new_t;
        new_t = tmp;
        tmp = r - q * new_r;
        r = new_r;
        new_r = tmp;
    }
    if (r != 1) throw Error(ErrorKind::NotPrime, "modulus is not prime");
    return reduce(t, p);
}

bool is_prime(uint32_t p) {
    if (p < 2) return false;
    for (uint64_t d = 2; d * d <= p; ++d)
        if (p % d == 0) return false;
    return true;
}

void require_prime(uint32_t p) {
    if (!is_prime(p)) throw Error(ErrorKind::NotPrime, "field modulus must be prime, got " + std::to_string(p));
    if (p > 0x7fffffffu) throw Error(ErrorKind::NotPrime, "modulus exceeds 2^31-1");
}

} // namespace fp

const char* error_kind_name(ErrorKind k) {
    switch (k) {
        case ErrorKind::ShapeMismatch: return "ShapeMismatch";
        case ErrorKind::ModulusMismatch: return "ModulusMismatch";
        case ErrorKind::AmbientMismatch: return "AmbientMismatch";
        case ErrorKind::NotPrime: return "NotPrime";
        case ErrorKind::AssociativityViolation: return "AssociativityViolation";
        case ErrorKind::UnitViolation: return "UnitViolation";
        case ErrorKind::ActionIncompatible: return "ActionIncompatible";
        case ErrorKind::InfiniteDimensional: return "InfiniteDimensional";
        case ErrorKind::NotIdempotent: return "NotIdempotent";
        case ErrorKind::NotIdempotentIdeal: return "NotIdempotentIdeal";
        case ErrorKind::NotTwoSided: return "NotTwoSided";
        case ErrorKind::NotInvariant: return "NotInvariant";
        case ErrorKind::NotRightSplit: return "NotRightSplit";
        case ErrorKind::SubmoduleLatticeTooLarge: return "SubmoduleLatticeTooLarge";
        case ErrorKind::LatticeTooLarge: return "LatticeTooLarge";
        case ErrorKind::BoundExceeded: return "BoundExceeded";
        case ErrorKind::ParseError: return "ParseError";
        case ErrorKind::Internal: return "Internal";
    }
    return "Unknown";
}

} // namespace ttf
