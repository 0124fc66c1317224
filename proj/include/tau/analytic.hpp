#pragma once

#include <stdexcept>
#include <vector>

#include "tau/coeff_engine.hpp"
#include "tau/real.hpp"
#include "tau/report.hpp"

namespace tau {

// Signals tau_p with |tau_p| > 2 p^{11/2}; inputs like that are corrupt and
// are never clamped.
class DeligneViolation : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Raised when the adaptive guard-bit check cannot be satisfied.
class PrecisionError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

// theta in (0, pi) with tau_p = 2 p^{11/2} cos(theta), carried together with
// its defining data so it can be re-evaluated at any precision.
struct SatoTateAngle {
    unsigned long p;
    Int tau_p;
    Real theta;
    mpfr_prec_t precision_bits;
};

// arccos(tau_p / (2 p^{11/2})) at the requested precision (>= 64 bits).
// Throws DeligneViolation when tau_p^2 > 4 p^11 (checked exactly).
SatoTateAngle sato_tate_angle(unsigned long p, const Int& tau_p, mpfr_prec_t precision_bits);

// Bare angle recomputation used internally and by the diophantine module.
Real sato_theta(unsigned long p, const Int& tau_p, mpfr_prec_t prec);

// Working precision mandated for tau(p^n) evaluations through the angle:
// ceil((11n/2) log2 p) + 64 guard bits.
mpfr_prec_t binet_required_prec(unsigned long p, unsigned long n);

// p^{11n/2} sin((n+1)theta) / sin(theta), evaluated at the mandated working
// precision (or the angle's, if higher). The result is checked against the
// nearest integer; precision is raised until the check passes. Throws
// PrecisionError if six raises do not suffice.
Real binet_eval(const SatoTateAngle& angle, unsigned long n);

// 2 p^{11n/2 + eps}; n = 0 gives the empty power.
Real deligne_bound(unsigned long p, unsigned long n, double epsilon, mpfr_prec_t prec = 256);
inline Real deligne_bound(const PrimePower& pp, double epsilon, mpfr_prec_t prec = 256) {
    return deligne_bound(pp.p, pp.n, epsilon, prec);
}

// Divisor-sharp variant (n+1) p^{11n/2} as a real, plus the exact comparison
// tau^2 <= (n+1)^2 p^{11n} for the audit.
Real deligne_bound_sharp(const PrimePower& pp, mpfr_prec_t prec = 256);
bool deligne_sharp_holds(const Int& tau_pn, const PrimePower& pp);

// p^{9n/2 - eps}; conjectural, report-only everywhere.
Real atkin_serre_bound(const PrimePower& pp, double epsilon, mpfr_prec_t prec = 256);

// (ln x)^10 at full working precision.
Real explicit_lower_bound(const Real& x);
Real explicit_lower_bound(unsigned long p, unsigned long two_n, mpfr_prec_t prec = 256);

// Conservative integer evaluation floor(ln X)^10 <= (ln X)^10. Rounding the
// logarithm down keeps the result a valid lower bound while making it an
// exact integer; this is the constant the case-II comparison quotes.
Int explicit_lower_bound_conservative(const Int& X);

// True when p^{2n} >= 10^600 (exact integer comparison).
bool explicit_lower_bound_in_regime(unsigned long p, unsigned long two_n);

// log10 of p^{7n-2-eps} / ((2n+1)^3 2^{2n+1}) with n = two_n/2, the
// substituted lower bound for arguments p^{2n}.
double liouville_lower_bound(unsigned long p, unsigned long two_n, double epsilon);

// General-exponent form: log10 of p^{7n/2-2-eps} / ((n+1)^3 2^{n+1}).
double liouville_lower_bound_general(unsigned long p, unsigned long n, double epsilon);

struct ChainCheck {
    double ratio;          // lhs of the proof display divided by n log p
    double threshold;      // 7 - (2+eps)/n
    bool ratio_below_six;
    bool contradiction_holds;  // ratio < threshold, so the assumed chain breaks
    BoundReport report(unsigned long p, unsigned long two_n) const;
};
ChainCheck inequality_chain_check(unsigned long p, unsigned long two_n, double epsilon);

// (ln m)^c; report-only since c is not effective. Requires m >= 2.
Real murty_saradha_bound(const Int& m, double c, mpfr_prec_t prec = 128);

struct MatveevParams {
    unsigned d;                   // number of algebraic numbers
    unsigned k_field;             // field degree
    double B;                     // max |b_i|
    std::vector<double> heights;  // A_i values, natural-log scale

    MatveevParams(unsigned d_, unsigned k_, double B_, std::vector<double> heights_);
};

// C = 1.4 * 30^{d+3} d^{4.5} k^2 (1+ln d)(1+ln B) A_1...A_d; the guaranteed
// lower bound is e^{-C}.
double matveev_bound(const MatveevParams& params);

// The d- and k-dependent prefactor 1.4 * 30^{d+3} d^{4.5} k^2 (1+ln d).
double matveev_base_factor(unsigned d, unsigned k_field);

// Height of the root of X^2 - tau(p) X + p^11: (11/2) ln p.
double height_quadratic(unsigned long p, const Int& tau_p);

// Degenerate degree-1 case: height of a rational integer a >= 1 is ln a.
double height_integer(const Int& a);

// Claimed log lower bound -c0 (ln n)(ln p) for ln|Lambda_p(n)|; report-only.
double lambda_gap_lower(unsigned long p, unsigned long n, double c0 = 6.8e10);

// One report per link of the lower/upper sandwich around |tau(p^n)|, plus
// the explicit and Liouville-type lower bounds. Exact tau comes from the
// table when it covers p, otherwise from an on-demand series.
std::vector<BoundReport> bound_audit(const PrimePower& pp, double epsilon, double c,
                                     const CoeffTable* table = nullptr);

}  // namespace tau
