#include "tau/diophantine.hpp"

#include <cmath>

#include <json.hpp>

namespace tau {

std::string ContinuedFraction::to_json() const {
    nlohmann::json j;
    j["x"] = x_description;
    j["quotients"] = nlohmann::json::array();
    for (const Int& a : quotients) j["quotients"].push_back(a.get_str());
    j["convergents"] = nlohmann::json::array();
    for (const auto& [p, q] : convergents)
        j["convergents"].push_back({p.get_str(), q.get_str()});
    j["truncated"] = truncated;
    j["exact"] = terminated_exact;
    return j.dump();
}

AlgebraicSample sample_sqrt(unsigned long k) {
    Int root;
    if (mpz_root(root.get_mpz_t(), Int(static_cast<long>(k)).get_mpz_t(), 2) != 0)
        throw std::invalid_argument("sample_sqrt: k must not be a perfect square");
    return AlgebraicSample{"sqrt(" + std::to_string(k) + ")", 2,
                           [k](mpfr_prec_t prec) {
                               return sqrt(Real::of(static_cast<long>(k), prec));
                           }};
}

AlgebraicSample sample_golden_ratio() {
    return AlgebraicSample{"(1+sqrt(5))/2", 2, [](mpfr_prec_t prec) {
                               return (Real::of(1L, prec) + sqrt(Real::of(5L, prec))) /
                                      Real::of(2L, prec);
                           }};
}

AlgebraicSample sample_beta_near_one(unsigned shift) {
    return AlgebraicSample{"1+(sqrt(2)-1)/2^" + std::to_string(shift), 2,
                           [shift](mpfr_prec_t prec) {
                               Real d = sqrt(Real::of(2L, prec)) - Real::of(1L, prec);
                               return Real::of(1L, prec) + d * pow2(-static_cast<long>(shift), prec);
                           }};
}

namespace {

void push_convergent(ContinuedFraction& cf, const Int& a) {
    const std::size_t m = cf.convergents.size();
    Int p, q;
    if (m == 0) {
        p = a;
        q = 1;
    } else if (m == 1) {
        p = a * cf.convergents[0].first + 1;
        q = a;
    } else {
        p = a * cf.convergents[m - 1].first + cf.convergents[m - 2].first;
        q = a * cf.convergents[m - 1].second + cf.convergents[m - 2].second;
    }
    cf.quotients.push_back(a);
    cf.convergents.emplace_back(std::move(p), std::move(q));
}

// Next convergent denominator for quotient a, without committing it.
Int peek_denominator(const ContinuedFraction& cf, const Int& a) {
    const std::size_t m = cf.convergents.size();
    if (m == 0) return Int(1);
    if (m == 1) return a;
    return a * cf.convergents[m - 1].second + cf.convergents[m - 2].second;
}

// One pass at fixed precision. Returns true when `count` quotients were
// extracted and the expansion validates; false on a guard trip (cf holds the
// partial result with `truncated` set).
bool expand_once(const Real& x, std::size_t count, mpfr_prec_t prec, ContinuedFraction& cf) {
    cf.quotients.clear();
    cf.convergents.clear();
    cf.truncated = false;

    const Real eps = pow2(-static_cast<long>(prec / 2), prec);
    const Real one = Real::of(1L, prec);
    Real cur = x;
    for (std::size_t i = 0; i < count; ++i) {
        Int a = cur.to_int_floor();
        Real frac = cur - Real::of(a, prec);
        if (frac < eps) {
            // x is an integer at this precision: the quotient is reliable
            // but nothing beyond it is.
            push_convergent(cf, a);
            cf.truncated = true;
            return false;
        }
        if (one - frac < eps) {
            // floor may be off by one; never guess
            cf.truncated = true;
            return false;
        }
        // Quotients are determined only while q_m^2 stays inside the
        // precision budget.
        Int q_next = peek_denominator(cf, a);
        if (2 * mpz_sizeinbase(q_next.get_mpz_t(), 2) + 16 >
            static_cast<std::size_t>(prec)) {
            cf.truncated = true;
            return false;
        }
        push_convergent(cf, a);
        cur = one / frac;
    }
    // A-posteriori validation: the final convergent must reproduce x as well
    // as continued-fraction theory promises, |x - p/q| <= 2/q^2.
    const auto& [pm, qm] = cf.convergents.back();
    Real resid = abs(x * Real::of(qm, prec) - Real::of(pm, prec)) * Real::of(qm, prec);
    if (resid > Real::of(2L, prec)) {
        cf.truncated = true;
        return false;
    }
    return true;
}

}  // namespace

ContinuedFraction continued_fraction_expand(const RealEvaluator& eval, std::string description,
                                            std::size_t count, mpfr_prec_t precision_bits) {
    if (count < 1) throw std::invalid_argument("continued_fraction_expand: count must be >= 1");
    ContinuedFraction cf;
    cf.x_description = std::move(description);
    mpfr_prec_t prec = std::max<mpfr_prec_t>(precision_bits, 64);
    for (int attempt = 0; attempt < 6; ++attempt) {
        if (expand_once(eval(prec), count, prec, cf)) return cf;
        prec *= 2;
    }
    cf.truncated = true;
    return cf;
}

ContinuedFraction continued_fraction_expand(const Real& x, std::string description,
                                            std::size_t count) {
    if (count < 1) throw std::invalid_argument("continued_fraction_expand: count must be >= 1");
    ContinuedFraction cf;
    cf.x_description = std::move(description);
    expand_once(x, count, x.prec(), cf);
    return cf;
}

ContinuedFraction continued_fraction_expand_rational(const Int& num, const Int& den) {
    if (sgn(den) <= 0) throw std::invalid_argument("expand_rational: denominator must be > 0");
    ContinuedFraction cf;
    cf.x_description = num.get_str() + "/" + den.get_str();
    Int a, r, n = num, d = den;
    for (;;) {
        mpz_fdiv_qr(a.get_mpz_t(), r.get_mpz_t(), n.get_mpz_t(), d.get_mpz_t());
        push_convergent(cf, a);
        if (sgn(r) == 0) break;
        n = d;
        d = r;
    }
    cf.terminated_exact = true;
    return cf;
}

std::vector<BoundReport> liouville_gap_audit(const AlgebraicSample& beta,
                                             std::size_t convergent_count,
                                             mpfr_prec_t precision_bits) {
    ContinuedFraction cf =
        continued_fraction_expand(beta.eval, beta.description, convergent_count, precision_bits);
    if (cf.convergents.empty())
        return {BoundReport::not_applicable("liouville audit " + beta.description +
                                            " (no convergents at this precision)")};
    // Difference magnitudes shrink like q^-2; make room for the smallest.
    const auto& q_last = cf.convergents.back().second;
    const mpfr_prec_t prec =
        std::max<mpfr_prec_t>(precision_bits,
                              static_cast<mpfr_prec_t>(
                                  (beta.degree + 2) * mpz_sizeinbase(q_last.get_mpz_t(), 2)) +
                                  64);
    const Real b = beta.eval(prec);
    const unsigned n = beta.degree;
    const double logA = 3.0 * std::log10(static_cast<double>(n)) +
                        static_cast<double>(n) * std::log10(2.0);

    std::vector<BoundReport> out;
    for (std::size_t m = 0; m < cf.convergents.size(); ++m) {
        const auto& [pm, qm] = cf.convergents[m];
        Real diff = abs(b - Real::of(pm, prec) / Real::of(qm, prec));
        const double log_diff = log10(diff).to_double();
        const double log_q = signed_log10(qm);
        const std::string at = beta.description + " m=" + std::to_string(m);

        const double lower = -(logA + n * log_q);
        out.push_back(BoundReport::make("liouville lower 1/(n^3 2^n q^n) < |b-p/q| " + at,
                                        log_diff, lower, log_diff > lower));
        const double upper = -(logA + (n + 1.0) * log_q);
        out.push_back(BoundReport::make(
            "order-(n+1) upper |b-p/q| <= 1/(n^3 2^n q^{n+1}) " + at, log_diff, upper,
            log_diff <= upper, /*report_only=*/true));
    }
    return out;
}

std::vector<BoundReport> liouville_gap_audit_rational(const Int& num, const Int& den) {
    ContinuedFraction cf = continued_fraction_expand_rational(num, den);
    const auto& [pm, qm] = cf.convergents.back();
    const bool exact = pm * den == qm * num;
    return {BoundReport::make("rational expansion ends exactly at final convergent " +
                                  cf.x_description,
                              0.0, 0.0, exact)};
}

Real beta_gap(const SatoTateAngle& angle, unsigned long n) {
    const mpfr_prec_t prec =
        std::max(binet_required_prec(angle.p, n), angle.precision_bits);
    Real theta = sato_theta(angle.p, angle.tau_p, prec);
    return abs(sin(Real::of(static_cast<long>(n + 1), prec) * theta)) * Real::of(2L, prec);
}

BoundReport beta_gap_audit(const SatoTateAngle& angle, unsigned long n) {
    Real gap = beta_gap(angle, n);
    const double nd = static_cast<double>(n);
    const double rhs = -(3.0 * std::log10(nd + 1.0) + (nd + 1.0) * std::log10(2.0) +
                         2.0 * (nd + 1.0) * std::log10(static_cast<double>(angle.p)));
    const double lhs = gap.sign() == 0 ? -1e300 : log10(gap).to_double();
    return BoundReport::make("unit-circle gap |b-1| > 1/((n+1)^3 2^{n+1} p^{2(n+1)}) p=" +
                                 std::to_string(angle.p) + " n=" + std::to_string(n),
                             lhs, rhs, lhs > rhs, /*report_only=*/true);
}

BoundReport basic_gap_inequality(const AlgebraicSample& x, std::size_t m,
                                 mpfr_prec_t precision_bits) {
    ContinuedFraction cf =
        continued_fraction_expand(x.eval, x.description, m + 2, precision_bits);
    const std::string label =
        "best-approximation gap |x q_m - p_m| >= 1/(2 q_{m+1}) " + x.description +
        " m=" + std::to_string(m);
    if (cf.convergents.size() < m + 2) return BoundReport::not_applicable(label);

    const auto& [pm, qm] = cf.convergents[m];
    const auto& q_next = cf.convergents[m + 1].second;
    const mpfr_prec_t prec = std::max<mpfr_prec_t>(
        precision_bits,
        static_cast<mpfr_prec_t>(3 * mpz_sizeinbase(q_next.get_mpz_t(), 2)) + 64);
    Real xb = x.eval(prec);
    Real lhs = abs(xb * Real::of(qm, prec) - Real::of(pm, prec));
    const double lhs_l = log10(lhs).to_double();
    const double rhs_l = -std::log10(2.0) - signed_log10(q_next);
    return BoundReport::make(label, lhs_l, rhs_l, lhs_l >= rhs_l);
}

}  // namespace tau
