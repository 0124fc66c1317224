#include "tau/real.hpp"

#include <cstdio>
#include <vector>

namespace tau {

std::string Real::str(std::size_t digits) const {
    char fmt[32];
    std::snprintf(fmt, sizeof fmt, "%%.%zuRg", digits);
    char* s = nullptr;
    mpfr_asprintf(&s, fmt, v_);
    std::string out(s);
    mpfr_free_str(s);
    return out;
}

Real log_abs(const Int& z, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_z(r.raw(), z.get_mpz_t(), MPFR_RNDN);
    mpfr_abs(r.raw(), r.raw(), MPFR_RNDN);
    mpfr_log(r.raw(), r.raw(), MPFR_RNDN);
    return r;
}

Real pow2(long e, mpfr_prec_t prec) {
    Real r(prec);
    mpfr_set_ui_2exp(r.raw(), 1, e, MPFR_RNDN);
    return r;
}

double signed_log10(const Int& v) {
    int s = sgn(v);
    if (s == 0) return 0.0;
    Real r = log_abs(v, 64) / log(Real::of(10L, 64));
    return s * r.to_double();
}

std::string fnv1a64_hex(std::string_view s) {
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx",
                  static_cast<unsigned long long>(fnv1a64(s)));
    return std::string(buf);
}

}  // namespace tau
