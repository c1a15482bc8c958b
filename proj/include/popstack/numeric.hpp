#pragma once

#include <cstdint>
#include <limits>
#include <numeric>

#include "popstack/errors.hpp"

namespace popstack {

// Exact integer helpers. Everything here throws instead of wrapping around.

inline long long checked_add(long long a, long long b) {
  long long r;
  if (__builtin_add_overflow(a, b, &r)) throw resource_limit("integer overflow in addition");
  return r;
}

inline long long checked_mul(long long a, long long b) {
  long long r;
  if (__builtin_mul_overflow(a, b, &r)) throw resource_limit("integer overflow in multiplication");
  return r;
}

inline long long factorial(int n) {
  if (n < 0) throw invalid_input("factorial of negative number");
  long long r = 1;
  for (int i = 2; i <= n; ++i) r = checked_mul(r, i);
  return r;
}

// Binomial coefficient; 0 outside the Pascal triangle.
inline long long binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  if (k > n - k) k = n - k;
  long long r = 1;
  for (int i = 1; i <= k; ++i) {
    r = checked_mul(r, n - k + i);
    r /= i;  // exact: prefix products of binomials are integral
  }
  return r;
}

// Small exact fraction on 128-bit intermediates, always gcd-reduced,
// denominator kept positive.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long n) : num_(n), den_(1) {}
  Rational(long long n, long long d) : num_(n), den_(d) {
    if (den_ == 0) throw invalid_input("zero denominator");
    normalize();
  }

  Rational& operator+=(const Rational& o) {
    num_ = num_ * o.den_ + o.num_ * den_;
    den_ = den_ * o.den_;
    normalize();
    return *this;
  }
  Rational& operator*=(const Rational& o) {
    num_ *= o.num_;
    den_ *= o.den_;
    normalize();
    return *this;
  }
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  bool is_integer() const { return den_ == 1; }

  // Throws consistency_error unless the value is an integer fitting long long.
  long long as_integer() const {
    if (den_ != 1) throw consistency_error("expected integral rational");
    if (num_ > std::numeric_limits<long long>::max() ||
        num_ < std::numeric_limits<long long>::min())
      throw resource_limit("rational exceeds 64-bit range");
    return static_cast<long long>(num_);
  }

 private:
  __int128 num_, den_;

  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  void normalize() {
    if (den_ < 0) {
      num_ = -num_;
      den_ = -den_;
    }
    __int128 g = gcd128(num_, den_);
    if (g > 1) {
      num_ /= g;
      den_ /= g;
    }
    if (den_ == 0) throw invalid_input("zero denominator");
  }
};

}  // namespace popstack
