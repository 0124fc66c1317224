#include "tau/primality.hpp"

#include <array>

namespace tau {

const char* to_string(Primality p) {
    switch (p) {
        case Primality::composite: return "composite";
        case Primality::probable_prime: return "probable_prime";
        case Primality::proven_prime: return "proven_prime";
    }
    return "?";
}

namespace {

std::uint64_t mulmod_u64(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
    return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t powmod_u64(std::uint64_t a, std::uint64_t e, std::uint64_t m) {
    std::uint64_t r = 1 % m;
    a %= m;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, m);
        a = mulmod_u64(a, a, m);
        e >>= 1;
    }
    return r;
}

bool mr_witness_u64(std::uint64_t n, std::uint64_t a) {
    if (a % n == 0) return true;
    std::uint64_t d = n - 1;
    unsigned s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    std::uint64_t x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (unsigned i = 1; i < s; ++i) {
        x = mulmod_u64(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

// Strong pseudoprime test to base a; n odd, n > 3.
bool mr_strong_mpz(const Int& n, unsigned long a) {
    Int d = n - 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);
    Int x, base(a);
    mpz_powm(x.get_mpz_t(), base.get_mpz_t(), d.get_mpz_t(), n.get_mpz_t());
    Int nm1 = n - 1;
    if (x == 1 || x == nm1) return true;
    for (unsigned long i = 1; i < s; ++i) {
        x = (x * x) % n;
        if (x == nm1) return true;
    }
    return false;
}

// Halve x modulo odd n, keeping the result in [0, n).
void half_mod(Int& x, const Int& n) {
    if (mpz_odd_p(x.get_mpz_t())) x += n;
    mpz_tdiv_q_2exp(x.get_mpz_t(), x.get_mpz_t(), 1);
    if (x >= n) x %= n;
}

// Strong Lucas probable prime test with Selfridge parameter selection.
// Precondition: n odd, n > 1, no factor below the trial-division bound,
// and n is not a perfect square.
bool lucas_strong_mpz(const Int& n) {
    long d_abs = 5;
    int sign = 1;
    Int D;
    for (;;) {
        D = sign > 0 ? Int(d_abs) : Int(-d_abs);
        int j = mpz_jacobi(D.get_mpz_t(), n.get_mpz_t());
        if (j == -1) break;
        if (j == 0) return false;  // shares a factor with n (n exceeds |D| here)
        d_abs += 2;
        sign = -sign;
        if (d_abs > 1000000) return false;  // unreachable for non-squares
    }
    // P = 1, Q = (1 - D) / 4
    Int Q = (1 - D) / 4;
    Q %= n;
    if (Q < 0) Q += n;

    Int d = n + 1;
    unsigned long s = mpz_scan1(d.get_mpz_t(), 0);
    mpz_tdiv_q_2exp(d.get_mpz_t(), d.get_mpz_t(), s);

    // Ladder for U_d, V_d, Q^d (mod n), MSB first; starts at k = 1.
    Int U(1), V(1), qk = Q, t;
    long bits = static_cast<long>(mpz_sizeinbase(d.get_mpz_t(), 2));
    Int Dmod = D % n;
    if (Dmod < 0) Dmod += n;
    for (long i = bits - 2; i >= 0; --i) {
        // k -> 2k
        U = (U * V) % n;
        V = (V * V - 2 * qk) % n;
        if (V < 0) V += n;
        qk = (qk * qk) % n;
        if (mpz_tstbit(d.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) {
            // k -> k + 1 (P = 1)
            t = U + V;
            V = Dmod * U + V;
            U = t;
            half_mod(U, n);
            half_mod(V, n);
            qk = (qk * Q) % n;
        }
    }
    if (sgn(U) == 0 || sgn(V) == 0) return true;
    for (unsigned long r = 1; r < s; ++r) {
        V = (V * V - 2 * qk) % n;
        if (V < 0) V += n;
        if (sgn(V) == 0) return true;
        qk = (qk * qk) % n;
    }
    return false;
}

constexpr std::array<unsigned, 168> kSmallPrimes = {
    2,   3,   5,   7,   11,  13,  17,  19,  23,  29,  31,  37,  41,  43,  47,  53,  59,
    61,  67,  71,  73,  79,  83,  89,  97,  101, 103, 107, 109, 113, 127, 131, 137, 139,
    149, 151, 157, 163, 167, 173, 179, 181, 191, 193, 197, 199, 211, 223, 227, 229, 233,
    239, 241, 251, 257, 263, 269, 271, 277, 281, 283, 293, 307, 311, 313, 317, 331, 337,
    347, 349, 353, 359, 367, 373, 379, 383, 389, 397, 401, 409, 419, 421, 431, 433, 439,
    443, 449, 457, 461, 463, 467, 479, 487, 491, 499, 503, 509, 521, 523, 541, 547, 557,
    563, 569, 571, 577, 587, 593, 599, 601, 607, 613, 617, 619, 631, 641, 643, 647, 653,
    659, 661, 673, 677, 683, 691, 701, 709, 719, 727, 733, 739, 743, 751, 757, 761, 769,
    773, 787, 797, 809, 811, 821, 823, 827, 829, 839, 853, 857, 859, 863, 877, 881, 883,
    887, 907, 911, 919, 929, 937, 941, 947, 953, 967, 971, 977, 983, 991, 997};

}  // namespace

bool is_prime_u64(std::uint64_t n) {
    if (n < 2) return false;
    for (unsigned p : kSmallPrimes) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    if (n < 1000 * 1000) return true;  // below the square of the sieve bound
    // Deterministic for all 64-bit integers with the first twelve prime bases.
    for (std::uint64_t a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37})
        if (!mr_witness_u64(n, a)) return false;
    return true;
}

Primality is_probable_prime(const Int& n) {
    if (n < 2) return Primality::composite;
    if (mpz_fits_ulong_p(n.get_mpz_t()) && sizeof(unsigned long) == 8)
        return is_prime_u64(n.get_ui()) ? Primality::proven_prime : Primality::composite;

    for (unsigned p : kSmallPrimes)
        if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return Primality::composite;

    if (!mr_strong_mpz(n, 2)) return Primality::composite;
    if (mpz_perfect_square_p(n.get_mpz_t())) return Primality::composite;
    if (!lucas_strong_mpz(n)) return Primality::composite;
    return Primality::probable_prime;
}

}  // namespace tau
