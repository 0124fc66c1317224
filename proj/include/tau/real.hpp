#pragma once

#include <string>

#include <mpfr.h>

#include "tau/bigint.hpp"

namespace tau {

// Thin RAII wrapper over MPFR with explicit per-value precision.
// Binary operations round to the larger precision of the two operands;
// nothing here touches MPFR's global default, so concurrent use is safe.
class Real {
  public:
    explicit Real(mpfr_prec_t prec = 128) {
        mpfr_init2(v_, prec);
        mpfr_set_nan(v_);
    }
    Real(const Real& o) {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    Real(Real&& o) noexcept {
        mpfr_init2(v_, mpfr_get_prec(o.v_));
        mpfr_swap(v_, o.v_);
    }
    Real& operator=(const Real& o) {
        if (this != &o) {
            mpfr_set_prec(v_, mpfr_get_prec(o.v_));
            mpfr_set(v_, o.v_, MPFR_RNDN);
        }
        return *this;
    }
    Real& operator=(Real&& o) noexcept {
        if (this != &o) mpfr_swap(v_, o.v_);
        return *this;
    }
    ~Real() { mpfr_clear(v_); }

    static Real of(long x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_si(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(double x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_d(r.v_, x, MPFR_RNDN);
        return r;
    }
    static Real of(const Int& x, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_z(r.v_, x.get_mpz_t(), MPFR_RNDN);
        return r;
    }
    static Real of_str(const std::string& s, mpfr_prec_t prec) {
        Real r(prec);
        mpfr_set_str(r.v_, s.c_str(), 10, MPFR_RNDN);
        return r;
    }
    static Real pi(mpfr_prec_t prec) {
        Real r(prec);
        mpfr_const_pi(r.v_, MPFR_RNDN);
        return r;
    }

    mpfr_prec_t prec() const { return mpfr_get_prec(v_); }
    int sign() const { return mpfr_sgn(v_); }
    bool is_nan() const { return mpfr_nan_p(v_) != 0; }

    double to_double() const { return mpfr_get_d(v_, MPFR_RNDN); }
    Int to_int_floor() const {
        Int z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDD);
        return z;
    }
    Int to_int_round() const {
        Int z;
        mpfr_get_z(z.get_mpz_t(), v_, MPFR_RNDN);
        return z;
    }
    std::string str(std::size_t digits = 20) const;

    friend Real operator+(const Real& a, const Real& b) { return binop(a, b, mpfr_add); }
    friend Real operator-(const Real& a, const Real& b) { return binop(a, b, mpfr_sub); }
    friend Real operator*(const Real& a, const Real& b) { return binop(a, b, mpfr_mul); }
    friend Real operator/(const Real& a, const Real& b) { return binop(a, b, mpfr_div); }
    Real operator-() const {
        Real r(prec());
        mpfr_neg(r.v_, v_, MPFR_RNDN);
        return r;
    }

    friend bool operator<(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) < 0; }
    friend bool operator>(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) > 0; }
    friend bool operator<=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) <= 0; }
    friend bool operator>=(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) >= 0; }
    friend bool operator==(const Real& a, const Real& b) { return mpfr_cmp(a.v_, b.v_) == 0; }

    friend Real sqrt(const Real& a) { return unop(a, mpfr_sqrt); }
    friend Real log(const Real& a) { return unop(a, mpfr_log); }
    friend Real log2(const Real& a) { return unop(a, mpfr_log2); }
    friend Real log10(const Real& a) { return unop(a, mpfr_log10); }
    friend Real exp(const Real& a) { return unop(a, mpfr_exp); }
    friend Real sin(const Real& a) { return unop(a, mpfr_sin); }
    friend Real cos(const Real& a) { return unop(a, mpfr_cos); }
    friend Real acos(const Real& a) { return unop(a, mpfr_acos); }
    friend Real abs(const Real& a) { return unop(a, mpfr_abs); }
    friend Real floor(const Real& a) {
        Real r(a.prec());
        mpfr_floor(r.v_, a.v_);
        return r;
    }
    friend Real pow(const Real& a, const Real& b) { return binop(a, b, mpfr_pow); }

    // Distance to the nearest integer (nonnegative).
    Real dist_to_int() const {
        Real n(prec());
        mpfr_rint(n.v_, v_, MPFR_RNDN);
        Real d = *this - n;
        mpfr_abs(d.v_, d.v_, MPFR_RNDN);
        return d;
    }

    mpfr_ptr raw() { return v_; }
    mpfr_srcptr raw() const { return v_; }

  private:
    using BinFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_srcptr, mpfr_rnd_t);
    using UnFn = int (*)(mpfr_ptr, mpfr_srcptr, mpfr_rnd_t);
    static Real binop(const Real& a, const Real& b, BinFn fn) {
        Real r(std::max(a.prec(), b.prec()));
        fn(r.v_, a.v_, b.v_, MPFR_RNDN);
        return r;
    }
    static Real unop(const Real& a, UnFn fn) {
        Real r(a.prec());
        fn(r.v_, a.v_, MPFR_RNDN);
        return r;
    }

    mpfr_t v_;
};

// log(|z|) of an exact integer, evaluated at the given precision.
Real log_abs(const Int& z, mpfr_prec_t prec);

// 2^e as a Real (e may be negative), handy for tolerance thresholds.
Real pow2(long e, mpfr_prec_t prec);

}  // namespace tau
