#pragma once

#include "tau/bigint.hpp"

namespace tau {

enum class Primality { composite, probable_prime, proven_prime };

const char* to_string(Primality p);

// Deterministic Miller-Rabin proof below 2^64; strong base-2 pseudoprime test
// combined with a strong Lucas (Selfridge) test above. Composite verdicts are
// always correct; no randomness anywhere, so results are reproducible.
Primality is_probable_prime(const Int& n);

// Deterministic check for machine-word candidates (exact for all inputs).
bool is_prime_u64(std::uint64_t n);

}  // namespace tau
