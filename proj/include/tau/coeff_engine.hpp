#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <vector>

#include "tau/bigint.hpp"
#include "tau/report.hpp"

namespace tau {

// Prime power p^n. The prime is checked deterministically on construction.
struct PrimePower {
    unsigned long p;
    unsigned long n;

    PrimePower(unsigned long p_, unsigned long n_);
};

// Even weight k >= 4; the q-series method exists for k = 12 only, the
// prime-power recurrence works for any admissible weight.
struct Weight {
    unsigned k = 12;

    explicit Weight(unsigned k_ = 12);
};

// Dense table of tau(1..limit); index 0 unused so entries line up with n.
class CoeffTable {
  public:
    CoeffTable() = default;
    explicit CoeffTable(std::vector<Int> entries_one_based);

    long limit() const { return static_cast<long>(entries_.size()) - 1; }
    const Int& at(long n) const {
        if (n < 1 || n > limit()) throw std::out_of_range("CoeffTable::at: index out of range");
        return entries_[static_cast<std::size_t>(n)];
    }

    // Line format: one header "# tau table weight=12 limit=N", then
    // "n<TAB>tau(n)" per line in ascending n.
    void save(std::ostream& os) const;
    static CoeffTable load(std::istream& is);

  private:
    std::vector<Int> entries_;  // [0] unused
};

// tau(1..N) from the q-expansion of q * prod (1-q^m)^24, expanded as the
// Jacobi cube series squared three times. Exact; throws on N = 0.
CoeffTable delta_series(long N);

// lambda(p^n) from lambda(p) via the two-term Hecke recurrence with
// multiplier p^(k-1); lambda(p^0) = 1, lambda(p^1) = tau_p.
Int coeff_prime_power(const Int& tau_p, const PrimePower& pp, Weight k = Weight(12));

// Closed-form expansion sum_j (-1)^j C(n-j, n-2j) p^(11j) tau_p^(n-2j);
// weight 12 only.
Int coeff_prime_power_poly(const Int& tau_p, const PrimePower& pp);

// tau(m) for arbitrary m >= 1 by factoring m and multiplying the prime-power
// values. Prime coefficients come from `table` when it covers them, else from
// an on-demand series expansion (cached per call).
Int coeff_at(const Int& m, const CoeffTable* table = nullptr);

// Checks lambda(m)lambda(n) = sum_{d | gcd(m,n)} d^(k-1) lambda(mn/d^2)
// exactly over the given table. Requires m*n <= table.limit().
BoundReport mordell_check(long m, long n, const CoeffTable& table, Weight k = Weight(12));

// Exact truncated product of two integer polynomials (c[i] = sum a[j]b[i-j],
// i < trunc) via Kronecker substitution; exposed for cross-checking.
std::vector<Int> poly_mul_trunc(const std::vector<Int>& a, const std::vector<Int>& b,
                                std::size_t trunc);

}  // namespace tau
