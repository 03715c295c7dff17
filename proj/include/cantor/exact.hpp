#pragma once
// exact.hpp - exact integer/rational aliases and certified real brackets.
//
// Every quantity the library reports is either an exact rational (GMP) or a
// pair of MPFR values rounded outward, so that a reported bracket always
// contains the true value.

#include <gmpxx.h>
#include <mpfr.h>

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>

namespace cantor {

using Int = mpz_class;
using Rat = mpq_class;
using Index = std::uint64_t;

inline constexpr mpfr_prec_t kDefaultPrecision = 160;

inline Rat make_rat(const Int& num, const Int& den) {
  if (den == 0) throw std::domain_error("make_rat: zero denominator");
  Rat r(num, den);
  r.canonicalize();
  return r;
}

inline Int floor_of(const Rat& x) {
  Int q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

inline Rat frac_of(const Rat& x) { return x - Rat(floor_of(x)); }

inline Int pow_int(const Int& base, unsigned long exp) {
  Int r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), exp);
  return r;
}

inline Int pow2(unsigned long exp) {
  Int r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, exp);
  return r;
}

inline Int int_min(const Int& a, const Int& b) { return a < b ? a : b; }
inline Int int_max(const Int& a, const Int& b) { return a < b ? b : a; }

inline std::string to_string(const Int& v) { return v.get_str(); }
inline std::string to_string(const Rat& v) {
  Rat c = v;
  c.canonicalize();
  if (c.get_den() == 1) return c.get_num().get_str();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

inline Rat rat_from_string(const std::string& s) {
  Rat r;
  if (r.set_str(s, 10) != 0) throw std::invalid_argument("not a rational: " + s);
  if (r.get_den() == 0) throw std::invalid_argument("zero denominator: " + s);
  r.canonicalize();
  return r;
}

inline std::uint64_t to_u64(const Int& v) {
  if (v < 0 || mpz_sizeinbase(v.get_mpz_t(), 2) > 64) {
    throw std::overflow_error("value does not fit in 64 bits: " + v.get_str());
  }
  std::uint64_t out = 0;
  mpz_export(&out, nullptr, -1, sizeof(out), 0, 0, v.get_mpz_t());
  return out;
}

inline Int from_u64(std::uint64_t v) {
  Int out;
  mpz_import(out.get_mpz_t(), 1, -1, sizeof(v), 0, 0, &v);
  return out;
}

// RAII wrapper around mpfr_t.
class BigFloat {
 public:
  explicit BigFloat(mpfr_prec_t prec = kDefaultPrecision) {
    mpfr_init2(v_, prec);
    mpfr_set_zero(v_, 1);
  }
  BigFloat(const BigFloat& o) {
    mpfr_init2(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  BigFloat(BigFloat&& o) noexcept : BigFloat(mpfr_get_prec(o.v_)) { mpfr_swap(v_, o.v_); }
  BigFloat& operator=(const BigFloat& o) {
    if (this != &o) {
      mpfr_set_prec(v_, mpfr_get_prec(o.v_));
      mpfr_set(v_, o.v_, MPFR_RNDN);
    }
    return *this;
  }
  BigFloat& operator=(BigFloat&& o) noexcept {
    mpfr_swap(v_, o.v_);
    return *this;
  }
  ~BigFloat() { mpfr_clear(v_); }

  mpfr_ptr get() { return v_; }
  mpfr_srcptr get() const { return v_; }

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const { return mpfr_get_d(v_, rnd); }

  static BigFloat from_int(const Int& v, mpfr_rnd_t rnd) {
    BigFloat r;
    mpfr_set_z(r.v_, v.get_mpz_t(), rnd);
    return r;
  }
  static BigFloat from_rat(const Rat& v, mpfr_rnd_t rnd) {
    BigFloat r;
    mpfr_set_q(r.v_, v.get_mpq_t(), rnd);
    return r;
  }

 private:
  mpfr_t v_;
};

// Closed interval [lo, hi] of reals with MPFR endpoints rounded outward.
struct Bracket {
  BigFloat lo;
  BigFloat hi;

  static Bracket point(const Rat& v) {
    return {BigFloat::from_rat(v, MPFR_RNDD), BigFloat::from_rat(v, MPFR_RNDU)};
  }
  static Bracket zero() { return {BigFloat(), BigFloat()}; }

  // Natural logarithm of a positive integer.
  static Bracket log_of(const Int& v) {
    if (v <= 0) throw std::domain_error("log of non-positive integer");
    Bracket b{BigFloat(), BigFloat()};
    BigFloat lo = BigFloat::from_int(v, MPFR_RNDD);
    BigFloat hi = BigFloat::from_int(v, MPFR_RNDU);
    mpfr_log(b.lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(b.hi.get(), hi.get(), MPFR_RNDU);
    return b;
  }

  static Bracket log_of(const Rat& v) {
    if (v <= 0) throw std::domain_error("log of non-positive rational");
    Bracket b{BigFloat(), BigFloat()};
    BigFloat lo = BigFloat::from_rat(v, MPFR_RNDD);
    BigFloat hi = BigFloat::from_rat(v, MPFR_RNDU);
    mpfr_log(b.lo.get(), lo.get(), MPFR_RNDD);
    mpfr_log(b.hi.get(), hi.get(), MPFR_RNDU);
    return b;
  }

  Bracket& operator+=(const Bracket& o) {
    mpfr_add(lo.get(), lo.get(), o.lo.get(), MPFR_RNDD);
    mpfr_add(hi.get(), hi.get(), o.hi.get(), MPFR_RNDU);
    return *this;
  }
  Bracket& operator-=(const Bracket& o) {
    mpfr_sub(lo.get(), lo.get(), o.hi.get(), MPFR_RNDD);
    mpfr_sub(hi.get(), hi.get(), o.lo.get(), MPFR_RNDU);
    return *this;
  }
  friend Bracket operator+(Bracket a, const Bracket& b) { return a += b; }
  friend Bracket operator-(Bracket a, const Bracket& b) { return a -= b; }

  // Multiplication by a non-negative rational scalar.
  Bracket scaled(const Rat& s) const {
    if (s < 0) throw std::domain_error("Bracket::scaled expects a non-negative scalar");
    Bracket r{BigFloat(), BigFloat()};
    BigFloat slo = BigFloat::from_rat(s, MPFR_RNDD);
    BigFloat shi = BigFloat::from_rat(s, MPFR_RNDU);
    // sign of lo/hi decides which scalar endpoint is extreme
    mpfr_mul(r.lo.get(), lo.get(), mpfr_sgn(lo.get()) >= 0 ? slo.get() : shi.get(), MPFR_RNDD);
    mpfr_mul(r.hi.get(), hi.get(), mpfr_sgn(hi.get()) >= 0 ? shi.get() : slo.get(), MPFR_RNDU);
    return r;
  }

  // Quotient of two brackets; requires both to be non-negative with den > 0.
  static Bracket ratio(const Bracket& num, const Bracket& den) {
    if (mpfr_sgn(den.lo.get()) <= 0) throw std::domain_error("Bracket::ratio: denominator not positive");
    if (mpfr_sgn(num.lo.get()) < 0) throw std::domain_error("Bracket::ratio: negative numerator");
    Bracket r{BigFloat(), BigFloat()};
    mpfr_div(r.lo.get(), num.lo.get(), den.hi.get(), MPFR_RNDD);
    mpfr_div(r.hi.get(), num.hi.get(), den.lo.get(), MPFR_RNDU);
    return r;
  }

  bool is_exact_zero() const { return mpfr_zero_p(lo.get()) && mpfr_zero_p(hi.get()); }
  bool contains(double v) const {
    return mpfr_cmp_d(lo.get(), v) <= 0 && mpfr_cmp_d(hi.get(), v) >= 0;
  }
  bool certainly_less(const Bracket& o) const { return mpfr_cmp(hi.get(), o.lo.get()) < 0; }

  double lo_d() const { return lo.to_double(MPFR_RNDD); }
  double hi_d() const { return hi.to_double(MPFR_RNDU); }
  double mid() const {
    BigFloat m;
    mpfr_add(m.get(), lo.get(), hi.get(), MPFR_RNDN);
    mpfr_div_2ui(m.get(), m.get(), 1, MPFR_RNDN);
    return m.to_double();
  }
  double width() const {
    BigFloat w;
    mpfr_sub(w.get(), hi.get(), lo.get(), MPFR_RNDU);
    return w.to_double(MPFR_RNDU);
  }
};

// Natural log of a positive integer as a double (for diagnostics only).
inline double log_approx(const Int& v) {
  if (v <= 0) throw std::domain_error("log_approx of non-positive integer");
  long exp = 0;
  double m = mpz_get_d_2exp(&exp, v.get_mpz_t());
  return std::log(m) + static_cast<double>(exp) * 0.69314718055994530942;
}

inline double to_double(const Rat& v) { return v.get_d(); }

}  // namespace cantor
