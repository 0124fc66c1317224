#pragma once

#include <stdexcept>
#include <utility>
#include <vector>

#include "tau/bigint.hpp"

namespace tau {

// Thrown when the rho splitter exhausts its iteration budget; carries the
// composite cofactor that resisted splitting.
class FactorizationError : public std::runtime_error {
  public:
    FactorizationError(std::string msg, Int cofactor)
        : std::runtime_error(std::move(msg)), cofactor_(std::move(cofactor)) {}
    const Int& cofactor() const { return cofactor_; }

  private:
    Int cofactor_;
};

struct Factorization {
    // (prime, exponent) pairs, primes strictly ascending.
    std::vector<std::pair<Int, unsigned>> prime_powers;
};

// Trial division up to `trial_bound`, then Brent's rho with a deterministic
// parameter sequence (no randomness). `rho_budget` caps the total number of
// rho iterations before giving up with a FactorizationError.
Factorization factorize(const Int& m, unsigned long trial_bound = 1000000,
                        unsigned long rho_budget = 50000000);

}  // namespace tau
