#pragma once

#include <gmpxx.h>

#include <concepts>
#include <cstdint>
#include <ostream>
#include <string>
#include <type_traits>
#include <utility>

#include "multwalk/errors.hpp"

namespace multwalk {

// Arbitrary-precision rational, kept in lowest terms with positive
// denominator at all times.  Thin wrapper over GMP's mpq_class that makes the
// canonical-form invariant impossible to skip (mpq_class leaves it to the
// caller when constructed from num/den).
class Rational {
 public:
  Rational() : q_(0) {}

  template <std::integral T>
  Rational(T v) {  // NOLINT(google-explicit-constructor) -- arithmetic glue
    if constexpr (std::is_signed_v<T>) {
      q_ = static_cast<long>(v);
    } else {
      q_ = static_cast<unsigned long>(v);
    }
  }

  template <std::integral N, std::integral D>
  Rational(N num, D den) : Rational(Rational(num) / Rational(den)) {}

  Rational(mpz_class num, mpz_class den) {
    if (den == 0) throw DomainError("Rational: zero denominator");
    q_ = mpq_class(std::move(num), std::move(den));
    q_.canonicalize();
  }

  const mpz_class& num() const { return q_.get_num(); }
  const mpz_class& den() const { return q_.get_den(); }

  bool is_integer() const { return q_.get_den() == 1; }
  double to_double() const { return q_.get_d(); }

  // "7/2" for proper fractions, "7" for integers.
  std::string str() const { return q_.get_str(); }

  mpz_class floor() const {
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), q_.get_num_mpz_t(), q_.get_den_mpz_t());
    return f;
  }

  Rational& operator+=(const Rational& o) { q_ += o.q_; return *this; }
  Rational& operator-=(const Rational& o) { q_ -= o.q_; return *this; }
  Rational& operator*=(const Rational& o) { q_ *= o.q_; return *this; }
  Rational& operator/=(const Rational& o) {
    if (o.q_ == 0) throw DomainError("Rational: division by zero");
    q_ /= o.q_;
    return *this;
  }

  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  friend Rational operator-(const Rational& a) { Rational r; r.q_ = -a.q_; return r; }

  friend bool operator==(const Rational& a, const Rational& b) { return a.q_ == b.q_; }
  friend bool operator!=(const Rational& a, const Rational& b) { return a.q_ != b.q_; }
  friend bool operator<(const Rational& a, const Rational& b) { return a.q_ < b.q_; }
  friend bool operator<=(const Rational& a, const Rational& b) { return a.q_ <= b.q_; }
  friend bool operator>(const Rational& a, const Rational& b) { return a.q_ > b.q_; }
  friend bool operator>=(const Rational& a, const Rational& b) { return a.q_ >= b.q_; }

  friend std::ostream& operator<<(std::ostream& os, const Rational& r) {
    return os << r.q_;
  }

 private:
  mpq_class q_;
};

inline Rational abs(const Rational& r) { return r < Rational(0) ? -r : r; }

// Distance from r to the closest integer, as an exact rational in [0, 1/2].
inline Rational distance_to_nearest_integer(const Rational& r) {
  Rational frac = r - Rational(r.floor(), mpz_class(1));
  Rational comp = Rational(1) - frac;
  return frac < comp ? frac : comp;
}

}  // namespace multwalk
