#ifndef HODGEKIT_BESSEL_HPP
#define HODGEKIT_BESSEL_HPP

// The integers b_0 = 1, sum_{l=0}^{p} (-1)^l C(p,l)^2 b_l = 0 for p >= 1
// (OEIS A000275), in exact arithmetic. They are the Taylor coefficients, up to
// the (l!)^2 normalisation, of the reciprocal of J_0(2 sqrt z).

#include <cstddef>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace hodgekit {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

class BesselCoefficients {
 public:
  explicit BesselCoefficients(std::vector<BigInt> values);

  std::size_t size() const noexcept { return values_.size(); }
  const BigInt& operator[](std::size_t l) const { return values_.at(l); }
  const std::vector<BigInt>& values() const noexcept { return values_; }
  /// b_l as a double (exact while b_l < 2^53).
  double as_double(std::size_t l) const;

 private:
  std::vector<BigInt> values_;
};

BigInt binomial_exact(unsigned n, unsigned k);

/// b_0 ... b_{count-1}.
BesselCoefficients generate(std::size_t count);

/// sum_{l=0}^{p} (-1)^l C(p,l)^2 b_l; 1 for p = 0 and 0 for p >= 1.
BigInt recurrence_residual(std::size_t p, const BesselCoefficients& coeffs);

/// Coefficients g_0..g_order of 1/f(z), f(z) = sum_m (-1)^m z^m / (m!)^2,
/// by the triangular recurrence g_l = -sum_{m=1}^{l} f_m g_{l-m}.
std::vector<Rational> reciprocal_bessel_series(std::size_t order);

/// Per l = 0..order: g_l - b_l / (l!)^2, every entry exactly zero.
std::vector<Rational> reciprocal_series_check(std::size_t order);

/// Per l = 0..order: g_l - (-1)^l b_l / (l!)^2. Nonzero at odd l; the
/// alternating signs belong to the reciprocal of f(-z) instead.
std::vector<Rational> reciprocal_series_signed_residuals(std::size_t order);

}  // namespace hodgekit

#endif
