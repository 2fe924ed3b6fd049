#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>

#include "ptv/errors.hpp"

namespace ptv {

using Int = mpz_class;

// Exact rational, kept in lowest terms with positive denominator at all
// times. mpq_class does not canonicalize on construction, so every entry
// point that could produce a non-reduced value normalizes explicitly.
class Rat {
public:
  Rat() : q_(0) {}
  Rat(int n) : q_(n) {}
  Rat(long n) : q_(n) {}
  Rat(const Int& n) : q_(n) {}
  Rat(const Int& num, const Int& den) : q_(num, den) {
    if (den == 0) throw ValidationError("DivisionByZero", "rational with zero denominator");
    q_.canonicalize();
  }
  Rat(long num, long den) : Rat(Int(num), Int(den)) {}

  // Accepts "p" or "p/q" with optional leading '-', base 10 only.
  static Rat parse(const std::string& s);

  Int num() const { return q_.get_num(); }
  Int den() const { return q_.get_den(); }

  bool is_zero() const { return sgn(q_) == 0; }
  bool is_integer() const { return q_.get_den() == 1; }
  int sign() const { return sgn(q_); }

  // "p" when integral, "p/q" otherwise.
  std::string str() const;

  Int to_integer() const {
    if (!is_integer()) throw ValidationError("NonIntegerValue", "expected integer, got " + str());
    return q_.get_num();
  }
  long to_long() const {
    Int n = to_integer();
    if (!n.fits_slong_p()) throw ValidationError("Overflow", "integer out of range: " + str());
    return n.get_si();
  }

  Rat operator-() const { return Rat(mpq_class(-q_)); }
  Rat& operator+=(const Rat& o) { q_ += o.q_; return *this; }
  Rat& operator-=(const Rat& o) { q_ -= o.q_; return *this; }
  Rat& operator*=(const Rat& o) { q_ *= o.q_; return *this; }
  Rat& operator/=(const Rat& o) {
    if (o.is_zero()) throw ValidationError("DivisionByZero", "division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rat operator+(Rat a, const Rat& b) { a += b; return a; }
  friend Rat operator-(Rat a, const Rat& b) { a -= b; return a; }
  friend Rat operator*(Rat a, const Rat& b) { a *= b; return a; }
  friend Rat operator/(Rat a, const Rat& b) { a /= b; return a; }

  friend bool operator==(const Rat& a, const Rat& b) { return mpq_equal(a.q_.get_mpq_t(), b.q_.get_mpq_t()) != 0; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
  friend bool operator<(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) < 0; }
  friend bool operator<=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) <= 0; }
  friend bool operator>(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) > 0; }
  friend bool operator>=(const Rat& a, const Rat& b) { return cmp(a.q_, b.q_) >= 0; }

  friend std::ostream& operator<<(std::ostream& os, const Rat& r);

private:
  explicit Rat(mpq_class q) : q_(std::move(q)) {}
  mpq_class q_;
};

Rat abs(const Rat& r);

}  // namespace ptv
