#include "hodgekit/bessel.hpp"

#include <stdexcept>

namespace hodgekit {

namespace {

BigInt factorial(unsigned n) {
  BigInt f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

Rational inverse_square_factorial(unsigned n) {
  const BigInt f = factorial(n);
  return Rational(BigInt(1), f * f);
}

}  // namespace

BesselCoefficients::BesselCoefficients(std::vector<BigInt> values) : values_(std::move(values)) {
  if (values_.empty() || values_.front() != 1) {
    throw std::invalid_argument("BesselCoefficients: sequence must start with b_0 = 1");
  }
}

double BesselCoefficients::as_double(std::size_t l) const {
  return values_.at(l).convert_to<double>();
}

BigInt binomial_exact(unsigned n, unsigned k) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  BigInt r = 1;
  for (unsigned i = 1; i <= k; ++i) {
    r *= n - k + i;
    r /= i;
  }
  return r;
}

BesselCoefficients generate(std::size_t count) {
  if (count < 1) throw std::invalid_argument("generate: count must be at least 1");
  std::vector<BigInt> b;
  b.reserve(count);
  b.emplace_back(1);
  for (std::size_t p = 1; p < count; ++p) {
    BigInt acc = 0;
    for (std::size_t l = 0; l < p; ++l) {
      const BigInt c = binomial_exact(static_cast<unsigned>(p), static_cast<unsigned>(l));
      // (-1)^{p+l+1}
      if ((p + l + 1) % 2 == 0) {
        acc += c * c * b[l];
      } else {
        acc -= c * c * b[l];
      }
    }
    b.push_back(std::move(acc));
  }
  return BesselCoefficients(std::move(b));
}

BigInt recurrence_residual(std::size_t p, const BesselCoefficients& coeffs) {
  if (p >= coeffs.size()) throw std::out_of_range("recurrence_residual: p beyond the sequence");
  BigInt acc = 0;
  for (std::size_t l = 0; l <= p; ++l) {
    const BigInt c = binomial_exact(static_cast<unsigned>(p), static_cast<unsigned>(l));
    if (l % 2 == 0) {
      acc += c * c * coeffs[l];
    } else {
      acc -= c * c * coeffs[l];
    }
  }
  return acc;
}

std::vector<Rational> reciprocal_bessel_series(std::size_t order) {
  std::vector<Rational> f(order + 1);
  for (std::size_t m = 0; m <= order; ++m) {
    f[m] = inverse_square_factorial(static_cast<unsigned>(m));
    if (m % 2 == 1) f[m] = -f[m];
  }
  std::vector<Rational> g(order + 1);
  g[0] = 1 / f[0];
  for (std::size_t l = 1; l <= order; ++l) {
    Rational acc = 0;
    for (std::size_t m = 1; m <= l; ++m) acc += f[m] * g[l - m];
    g[l] = -acc / f[0];
  }
  return g;
}

std::vector<Rational> reciprocal_series_check(std::size_t order) {
  if (order < 1) throw std::invalid_argument("reciprocal_series_check: order must be at least 1");
  const auto g = reciprocal_bessel_series(order);
  const auto b = generate(order + 1);
  std::vector<Rational> out(order + 1);
  for (std::size_t l = 0; l <= order; ++l) {
    out[l] = g[l] - Rational(b[l]) * inverse_square_factorial(static_cast<unsigned>(l));
  }
  return out;
}

std::vector<Rational> reciprocal_series_signed_residuals(std::size_t order) {
  const auto g = reciprocal_bessel_series(order);
  const auto b = generate(order + 1);
  std::vector<Rational> out(order + 1);
  for (std::size_t l = 0; l <= order; ++l) {
    Rational term = Rational(b[l]) * inverse_square_factorial(static_cast<unsigned>(l));
    if (l % 2 == 1) term = -term;
    out[l] = g[l] - term;
  }
  return out;
}

}  // namespace hodgekit
