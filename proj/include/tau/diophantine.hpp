#pragma once

#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "tau/analytic.hpp"
#include "tau/real.hpp"
#include "tau/report.hpp"

namespace tau {

// Re-evaluates the expanded real at a requested precision; expansions retry
// at higher precision through this instead of guessing at boundaries.
using RealEvaluator = std::function<Real(mpfr_prec_t)>;

struct ContinuedFraction {
    std::string x_description;
    std::vector<Int> quotients;                   // a0, a1, ...
    std::vector<std::pair<Int, Int>> convergents;  // exact (p_m, q_m)
    bool truncated = false;         // precision exhausted before `count` quotients
    bool terminated_exact = false;  // rational input, expansion complete

    std::string to_json() const;  // decimal strings throughout
};

// A built-in real algebraic number with a closed form: description, degree,
// and an arbitrary-precision evaluator.
struct AlgebraicSample {
    std::string description;
    unsigned degree;
    RealEvaluator eval;
};

AlgebraicSample sample_sqrt(unsigned long k);            // degree 2, k not a square
AlgebraicSample sample_golden_ratio();                   // (1+sqrt 5)/2
AlgebraicSample sample_beta_near_one(unsigned shift);    // 1 + (sqrt 2 - 1)/2^shift

// Expansion with floor-at-working-precision quotient extraction. A quotient
// landing within 2^(-precision_bits/2) of an integer boundary triggers a
// retry at doubled precision (evaluator form) or a truncated result with the
// flag set (fixed-value form). The finished expansion is validated by
// comparing its final convergent back against x.
ContinuedFraction continued_fraction_expand(const RealEvaluator& eval, std::string description,
                                            std::size_t count, mpfr_prec_t precision_bits);
ContinuedFraction continued_fraction_expand(const Real& x, std::string description,
                                            std::size_t count);

// Exact Euclid expansion of num/den (terminates).
ContinuedFraction continued_fraction_expand_rational(const Int& num, const Int& den);

// Per-convergent audit of the two Liouville-style claims for an algebraic
// beta of degree n: (i) |beta - p/q| > 1/(n^3 2^n q^n), asserted, and
// (ii) |beta - p/q| <= 1/(n^3 2^n q^{n+1}), report-only (it fails for
// generic convergents).
std::vector<BoundReport> liouville_gap_audit(const AlgebraicSample& beta,
                                             std::size_t convergent_count,
                                             mpfr_prec_t precision_bits);

// Degenerate rational case: the expansion ends and the last convergent
// equals the number exactly.
std::vector<BoundReport> liouville_gap_audit_rational(const Int& num, const Int& den);

// |beta - 1| with beta = e^{2i(n+1)theta_p}, i.e. 2|sin((n+1)theta_p)|,
// at the same working precision binet_eval mandates.
Real beta_gap(const SatoTateAngle& angle, unsigned long n);

// Compares beta_gap against the claimed lower bound
// 1/((n+1)^3 2^{n+1} p^{2(n+1)}); report-only (the convergent-subsequence
// premise behind the claim is only audited empirically).
BoundReport beta_gap_audit(const SatoTateAngle& angle, unsigned long n);

// Checks |x q_m - p_m| >= 1/(2 q_{m+1}) on the sample's expansion; returns a
// not-applicable verdict when the expansion ends at or before m+1.
BoundReport basic_gap_inequality(const AlgebraicSample& x, std::size_t m,
                                 mpfr_prec_t precision_bits);

}  // namespace tau
