#ifndef SUPERHP_RATIONAL_HPP
#define SUPERHP_RATIONAL_HPP

#include <cstdint>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace superhp {

/// Exact rational arithmetic for the bundle-degree bookkeeping.
/// Denominators stay tiny (divisors of 12*N*n_i), so int64 never overflows
/// at desk scale.
struct Rational {
  std::int64_t num = 0;
  std::int64_t den = 1;

  Rational() = default;
  Rational(std::int64_t n) : num(n), den(1) {}
  Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { reduce(); }

  void reduce() {
    if (den == 0) throw std::domain_error("Rational: zero denominator");
    if (den < 0) { num = -num; den = -den; }
    std::int64_t g = std::gcd(num < 0 ? -num : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  double value() const { return double(num) / double(den); }
  bool is_integer() const { return den == 1; }

  Rational operator-() const { return Rational(-num, den); }
  friend Rational operator+(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return Rational(a.num * b.num, a.den * b.den);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    return Rational(a.num * b.den, a.den * b.num);
  }
  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return a.num * b.den < b.num * a.den;
  }

  /// Floor and fractional part with the paper's convention x = floor(x) + {x},
  /// {x} in [0,1).
  std::int64_t floor() const {
    std::int64_t q = num / den, r = num % den;
    if (r < 0) --q;
    return q;
  }
  Rational frac() const { return *this - Rational(floor()); }

  std::string str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }
};

/// Snap a float to a rational with denominator <= max_den; throws if nothing
/// is within tol.  Used to recover the exact sigma/delta exponents from
/// unitary eigenvalues.
inline Rational snap_rational(double x, std::int64_t max_den, double tol = 1e-7) {
  std::int64_t best_num = 0, best_den = 1;
  double best_err = 1e300;
  for (std::int64_t d = 1; d <= max_den; ++d) {
    std::int64_t n = std::llround(x * double(d));
    double err = std::fabs(x - double(n) / double(d));
    if (err < best_err) { best_err = err; best_num = n; best_den = d; }
    if (best_err < 1e-13) break;
  }
  if (best_err > tol)
    throw std::domain_error("snap_rational: " + std::to_string(x) +
                            " is not close to a rational with denominator <= " +
                            std::to_string(max_den));
  return Rational(best_num, best_den);
}

}  // namespace superhp

#endif
