#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace tau {

// All exact arithmetic in this project runs over GMP integers.
using Int = mpz_class;

// Exact number of base-10 digits of |v| (0 has one digit).
inline std::size_t digit_count(const Int& v) {
    if (sgn(v) == 0) return 1;
    // mpz_sizeinbase may overestimate by one for non-power-of-2 bases.
    std::size_t est = mpz_sizeinbase(v.get_mpz_t(), 10);
    if (est == 1) return 1;
    Int pow10;
    mpz_ui_pow_ui(pow10.get_mpz_t(), 10, static_cast<unsigned long>(est - 1));
    return mpz_cmpabs(v.get_mpz_t(), pow10.get_mpz_t()) >= 0 ? est : est - 1;
}

inline Int pow_ui(unsigned long base, unsigned long exp) {
    Int r;
    mpz_ui_pow_ui(r.get_mpz_t(), base, exp);
    return r;
}

inline Int pow_z(const Int& base, unsigned long exp) {
    Int r;
    mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
    return r;
}

// sign(v) * log10(|v|); 0 maps to 0. Accurate to double rounding.
double signed_log10(const Int& v);

// FNV-1a 64-bit digest, used for scan-record dedup and checkpoint config guards.
inline std::uint64_t fnv1a64(std::string_view s) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (unsigned char c : s) {
        h ^= c;
        h *= 0x100000001b3ull;
    }
    return h;
}

std::string fnv1a64_hex(std::string_view s);

}  // namespace tau
