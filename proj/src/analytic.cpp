#include "tau/analytic.hpp"

#include <cmath>

namespace tau {

Real sato_theta(unsigned long p, const Int& tau_p, mpfr_prec_t prec) {
    Real num = Real::of(tau_p, prec);
    Real den = sqrt(Real::of(pow_ui(p, 11), prec)) * Real::of(2L, prec);
    return acos(num / den);
}

SatoTateAngle sato_tate_angle(unsigned long p, const Int& tau_p, mpfr_prec_t precision_bits) {
    if (precision_bits < 64)
        throw std::invalid_argument("sato_tate_angle: precision_bits must be >= 64");
    if (tau_p * tau_p > 4 * pow_ui(p, 11))
        throw DeligneViolation("sato_tate_angle: |tau_p| > 2 p^{11/2} for p = " +
                               std::to_string(p) + ", tau_p = " + tau_p.get_str());
    // Recovering tau_p from theta divides by cos(theta); when |tau_p| is far
    // below 2p^{11/2} that costs log2(2p^{11/2}/|tau_p|) bits, so theta is
    // carried at a precision that absorbs the loss.
    const double tau_bits =
        sgn(tau_p) == 0 ? 0.0 : static_cast<double>(mpz_sizeinbase(tau_p.get_mpz_t(), 2));
    const double scale_bits = 5.5 * std::log2(static_cast<double>(p)) + 1.0;
    const mpfr_prec_t extra =
        static_cast<mpfr_prec_t>(std::max(0.0, std::ceil(scale_bits - tau_bits))) + 16;
    return SatoTateAngle{p, tau_p, sato_theta(p, tau_p, precision_bits + extra),
                         precision_bits};
}

mpfr_prec_t binet_required_prec(unsigned long p, unsigned long n) {
    double bits = 5.5 * static_cast<double>(n) * std::log2(static_cast<double>(p));
    return static_cast<mpfr_prec_t>(std::ceil(bits)) + 64;
}

Real binet_eval(const SatoTateAngle& angle, unsigned long n) {
    if (n < 1) throw std::invalid_argument("binet_eval: n must be >= 1");
    const mpfr_prec_t base = std::max(binet_required_prec(angle.p, n), angle.precision_bits);
    const Int p11n = pow_ui(angle.p, 11 * n);
    for (int attempt = 0; attempt <= 6; ++attempt) {
        const mpfr_prec_t prec = base + attempt * 64;
        Real theta = sato_theta(angle.p, angle.tau_p, prec);
        Real scale = sqrt(Real::of(p11n, prec));
        Real value = scale * sin(Real::of(static_cast<long>(n + 1), prec) * theta) / sin(theta);
        // tau(p^n) is an integer; accept once we are within 2^-72 of one,
        // relative to the value's size.
        Real tol = (abs(value) + Real::of(1L, prec)) * pow2(-72, prec);
        if (value.dist_to_int() <= tol) return value;
    }
    throw PrecisionError("binet_eval: guard check failed after precision raises (p = " +
                         std::to_string(angle.p) + ", n = " + std::to_string(n) + ")");
}

Real deligne_bound(unsigned long p, unsigned long n, double epsilon, mpfr_prec_t prec) {
    if (epsilon < 0) throw std::invalid_argument("deligne_bound: epsilon must be >= 0");
    Real expo = Real::of(5.5 * static_cast<double>(n), prec) + Real::of(epsilon, prec);
    return Real::of(2L, prec) * pow(Real::of(static_cast<long>(p), prec), expo);
}

Real deligne_bound_sharp(const PrimePower& pp, mpfr_prec_t prec) {
    return Real::of(static_cast<long>(pp.n + 1), prec) *
           sqrt(Real::of(pow_ui(pp.p, 11 * pp.n), prec));
}

bool deligne_sharp_holds(const Int& tau_pn, const PrimePower& pp) {
    Int bound = pow_ui(pp.p, 11 * pp.n) * (pp.n + 1) * (pp.n + 1);
    return tau_pn * tau_pn <= bound;
}

Real atkin_serre_bound(const PrimePower& pp, double epsilon, mpfr_prec_t prec) {
    if (epsilon <= 0) throw std::invalid_argument("atkin_serre_bound: epsilon must be > 0");
    Real expo = Real::of(4.5 * static_cast<double>(pp.n), prec) - Real::of(epsilon, prec);
    return pow(Real::of(static_cast<long>(pp.p), prec), expo);
}

Real explicit_lower_bound(const Real& x) {
    return pow(log(x), Real::of(10L, x.prec()));
}

Real explicit_lower_bound(unsigned long p, unsigned long two_n, mpfr_prec_t prec) {
    Real lnx = Real::of(static_cast<long>(two_n), prec) *
               log(Real::of(static_cast<long>(p), prec));
    return pow(lnx, Real::of(10L, prec));
}

Int explicit_lower_bound_conservative(const Int& X) {
    if (X < 2) throw std::invalid_argument("explicit_lower_bound_conservative: X must be >= 2");
    Real lnx = log_abs(X, 320);
    Int fl = lnx.to_int_floor();
    if (fl < 1) return Int(0);
    return pow_z(fl, 10);
}

bool explicit_lower_bound_in_regime(unsigned long p, unsigned long two_n) {
    // Exact comparison p^{2n} >= 10^600 without building p^{2n} when its
    // bit length already decides.
    double bits = static_cast<double>(two_n) * std::log2(static_cast<double>(p));
    if (bits > 2200.0) return true;   // far above 10^600 (~1993.6 bits)
    if (bits < 1800.0) return false;  // far below
    return pow_ui(p, two_n) >= pow_ui(10, 600);
}

double liouville_lower_bound(unsigned long p, unsigned long two_n, double epsilon) {
    if (two_n < 2 || two_n % 2 != 0)
        throw std::invalid_argument("liouville_lower_bound: two_n must be even and >= 2");
    const double n = static_cast<double>(two_n) / 2.0;
    return (7.0 * n - 2.0 - epsilon) * std::log10(static_cast<double>(p)) -
           3.0 * std::log10(2.0 * n + 1.0) - (2.0 * n + 1.0) * std::log10(2.0);
}

double liouville_lower_bound_general(unsigned long p, unsigned long n, double epsilon) {
    const double nd = static_cast<double>(n);
    return (3.5 * nd - 2.0 - epsilon) * std::log10(static_cast<double>(p)) -
           3.0 * std::log10(nd + 1.0) - (nd + 1.0) * std::log10(2.0);
}

BoundReport ChainCheck::report(unsigned long p, unsigned long two_n) const {
    BoundReport r = BoundReport::make(
        "proof-chain ratio p=" + std::to_string(p) + " 2n=" + std::to_string(two_n) +
            " (plain ratio scale; contradiction iff ratio < 7-(2+eps)/n)",
        ratio, threshold, contradiction_holds);
    return r;
}

ChainCheck inequality_chain_check(unsigned long p, unsigned long two_n, double epsilon) {
    if (two_n < 2 || two_n % 2 != 0)
        throw std::invalid_argument("inequality_chain_check: two_n must be even and >= 2");
    if (p < 2) throw std::invalid_argument("inequality_chain_check: p must be >= 2");
    const double n = static_cast<double>(two_n) / 2.0;
    const double lp = std::log(static_cast<double>(p));
    const double lhs = 3.0 * std::log(2.0 * n + 1.0) + (2.0 * n + 1.0) * std::log(2.0) +
                       10.0 * (std::log(n) + std::log(lp) + std::log(2.0));
    ChainCheck c;
    c.ratio = lhs / (n * lp);
    c.threshold = 7.0 - (2.0 + epsilon) / n;
    c.ratio_below_six = c.ratio < 6.0;
    c.contradiction_holds = c.ratio < c.threshold;
    return c;
}

Real murty_saradha_bound(const Int& m, double c, mpfr_prec_t prec) {
    if (m < 2) throw std::invalid_argument("murty_saradha_bound: m must be >= 2");
    if (c <= 0) throw std::invalid_argument("murty_saradha_bound: c must be > 0");
    return pow(log_abs(m, prec), Real::of(c, prec));
}

MatveevParams::MatveevParams(unsigned d_, unsigned k_, double B_, std::vector<double> heights_)
    : d(d_), k_field(k_), B(B_), heights(std::move(heights_)) {
    if (d < 1 || k_field < 1 || B < 1.0)
        throw std::invalid_argument("MatveevParams: need d >= 1, k >= 1, B >= 1");
    if (heights.size() != d)
        throw std::invalid_argument("MatveevParams: need exactly d height values");
    for (double a : heights)
        if (a < 0.16) throw std::invalid_argument("MatveevParams: each A_i must be >= 0.16");
}

double matveev_base_factor(unsigned d, unsigned k_field) {
    return 1.4 * std::pow(30.0, d + 3.0) * std::pow(static_cast<double>(d), 4.5) *
           static_cast<double>(k_field) * k_field * (1.0 + std::log(static_cast<double>(d)));
}

double matveev_bound(const MatveevParams& params) {
    double c = matveev_base_factor(params.d, params.k_field) * (1.0 + std::log(params.B));
    for (double a : params.heights) c *= a;
    return c;
}

double height_quadratic(unsigned long p, const Int& tau_p) {
    if (tau_p * tau_p > 4 * pow_ui(p, 11))
        throw DeligneViolation("height_quadratic: tau_p violates the Deligne bound");
    return 5.5 * std::log(static_cast<double>(p));
}

double height_integer(const Int& a) {
    if (a < 1) throw std::invalid_argument("height_integer: a must be >= 1");
    return log_abs(a, 64).to_double();
}

double lambda_gap_lower(unsigned long p, unsigned long n, double c0) {
    if (n < 2) throw std::invalid_argument("lambda_gap_lower: n must be >= 2");
    return -c0 * std::log(static_cast<double>(n)) * std::log(static_cast<double>(p));
}

std::vector<BoundReport> bound_audit(const PrimePower& pp, double epsilon, double c,
                                     const CoeffTable* table) {
    const long p_long = static_cast<long>(pp.p);
    CoeffTable local;
    const Int* tau_p = nullptr;
    if (table != nullptr && table->limit() >= p_long) {
        tau_p = &table->at(p_long);
    } else {
        local = delta_series(p_long);
        tau_p = &local.at(p_long);
    }
    const Int tau_pn = coeff_prime_power(*tau_p, pp);
    const double log_tau = signed_log10(abs(tau_pn));
    const std::string arg = "p=" + std::to_string(pp.p) + " n=" + std::to_string(pp.n);

    std::vector<BoundReport> out;

    {
        Real b = murty_saradha_bound(pow_ui(pp.p, pp.n), c);
        double rb = log10(b).to_double();
        const bool odd = mpz_odd_p(tau_pn.get_mpz_t()) != 0;
        out.push_back(BoundReport::make(
            "murty-saradha (ln p^n)^c <= |tau(p^n)|, c=" + std::to_string(c) + " " + arg +
                (odd ? "" : " (tau even: outside the bound's hypothesis)"),
            rb, log_tau, rb <= log_tau, /*report_only=*/true));
    }
    if (sgn(*tau_p) != 0) {
        // The lower-bound route rewrites |tau(p^n)| as
        // p^{11n/2} / (2 sin theta) * |beta - 1| and then drops the prefactor
        // to 1; that step is only sound when sin theta <= 1/2. Report the
        // true prefactor instead of assuming it.
        Real theta = sato_theta(pp.p, *tau_p, 256);
        Real factor = Real::of(1L, 256) / (Real::of(2L, 256) * sin(theta));
        double lf = log10(factor).to_double();
        out.push_back(BoundReport::make("binet prefactor 1/(2 sin theta) >= 1 " + arg, lf, 0.0,
                                        lf >= 0.0, /*report_only=*/true));
    }
    if (epsilon > 0) {  // the conjectural link is only defined for eps > 0
        double rb = log10(atkin_serre_bound(pp, epsilon)).to_double();
        out.push_back(BoundReport::make(
            "atkin-serre p^{9n/2-eps} <= |tau(p^n)| (conjectural) " + arg, rb, log_tau,
            rb <= log_tau, /*report_only=*/true));
    }
    {
        double rb = log10(deligne_bound(pp, epsilon)).to_double();
        out.push_back(BoundReport::make("deligne |tau(p^n)| <= 2p^{11n/2+eps} " + arg, log_tau,
                                        rb, log_tau <= rb));
    }
    {
        bool ok = deligne_sharp_holds(tau_pn, pp);
        double rb = log10(deligne_bound_sharp(pp)).to_double();
        out.push_back(
            BoundReport::make("deligne-sharp |tau(p^n)| <= (n+1)p^{11n/2} " + arg + " (exact)",
                              log_tau, rb, ok));
    }
    if (pp.n % 2 == 0) {
        const bool in_regime = explicit_lower_bound_in_regime(pp.p, pp.n);
        double rb = log10(explicit_lower_bound(pp.p, pp.n)).to_double();
        out.push_back(BoundReport::make(
            std::string("explicit lower (ln p^{2n})^10 <= |tau(p^{2n})| ") +
                (in_regime ? "" : "[out-of-regime] ") + arg,
            rb, log_tau, rb <= log_tau, /*report_only=*/!in_regime));
    }
    {
        double rb = liouville_lower_bound_general(pp.p, pp.n, epsilon);
        out.push_back(BoundReport::make(
            "liouville-type p^{7n/2-2-eps}/((n+1)^3 2^{n+1}) <= |tau(p^n)| (empirical premise) " +
                arg,
            rb, log_tau, rb <= log_tau, /*report_only=*/true));
    }
    return out;
}

}  // namespace tau
