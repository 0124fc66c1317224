#include "tau/factor.hpp"

#include <algorithm>
#include <map>

#include "tau/primality.hpp"

namespace tau {

namespace {

// Brent's cycle-finding rho with batched gcds. Returns a nontrivial factor of
// n (composite, odd, not a perfect power of a small prime) or 0 on budget
// exhaustion. Fully deterministic: x0 = 2 and c stepping 1, 2, 3, ...
Int rho_brent(const Int& n, unsigned long& budget) {
    for (unsigned long c = 1; budget > 0; ++c) {
        Int y(2), ys, q(1), g(1), x;
        unsigned long r = 1;
        const unsigned long batch = 128;
        while (g == 1 && budget > 0) {
            x = y;
            for (unsigned long i = 0; i < r && budget > 0; ++i) {
                y = (y * y + c) % n;
                --budget;
            }
            unsigned long k = 0;
            while (k < r && g == 1 && budget > 0) {
                ys = y;
                unsigned long lim = std::min(batch, r - k);
                for (unsigned long i = 0; i < lim && budget > 0; ++i) {
                    y = (y * y + c) % n;
                    q = (q * abs(x - y)) % n;
                    --budget;
                }
                g = gcd(q, n);
                k += lim;
            }
            r *= 2;
        }
        if (g == n) {
            // Backtrack one step at a time to recover the factor.
            do {
                ys = (ys * ys + c) % n;
                g = gcd(abs(x - ys), n);
            } while (g == 1);
        }
        if (g != n && g != 1) return g;
        // g == n: cycle degenerated for this c; try the next constant.
    }
    return 0;
}

void factor_rec(const Int& n, std::map<Int, unsigned>& out, unsigned long& budget) {
    if (n == 1) return;
    if (is_probable_prime(n) != Primality::composite) {
        out[n] += 1;
        return;
    }
    // Perfect powers split for free.
    if (mpz_perfect_power_p(n.get_mpz_t())) {
        for (unsigned long k = 2; k <= mpz_sizeinbase(n.get_mpz_t(), 2); ++k) {
            Int root;
            if (mpz_root(root.get_mpz_t(), n.get_mpz_t(), k) != 0) {
                std::map<Int, unsigned> sub;
                factor_rec(root, sub, budget);
                for (auto& [p, e] : sub) out[p] += e * static_cast<unsigned>(k);
                return;
            }
        }
    }
    Int d = rho_brent(n, budget);
    if (d == 0)
        throw FactorizationError("factorization budget exhausted; unfactored cofactor " +
                                     n.get_str(),
                                 n);
    factor_rec(d, out, budget);
    factor_rec(n / d, out, budget);
}

}  // namespace

Factorization factorize(const Int& m, unsigned long trial_bound, unsigned long rho_budget) {
    if (m < 1) throw std::invalid_argument("factorize: argument must be >= 1");
    Factorization f;
    if (m == 1) return f;

    std::map<Int, unsigned> found;
    Int n = m;
    unsigned long e2 = mpz_scan1(n.get_mpz_t(), 0);
    if (e2 > 0) {
        found[2] = static_cast<unsigned>(e2);
        mpz_tdiv_q_2exp(n.get_mpz_t(), n.get_mpz_t(), e2);
    }
    for (unsigned long d = 3; d <= trial_bound && n > 1; d += 2) {
        Int dd(static_cast<unsigned long>(d));
        if (dd * dd > n) break;
        while (mpz_divisible_ui_p(n.get_mpz_t(), d)) {
            found[dd] += 1;
            mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), d);
        }
    }
    if (n > 1) {
        Int bound(trial_bound);
        if (n <= bound * bound) {
            found[n] += 1;  // below the trial square, so necessarily prime
        } else {
            factor_rec(n, found, rho_budget);
        }
    }
    for (auto& [p, e] : found) f.prime_powers.emplace_back(p, e);
    return f;
}

}  // namespace tau
