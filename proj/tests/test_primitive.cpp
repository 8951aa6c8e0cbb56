#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hodgekit/primitive.hpp"

using namespace hodgekit;

TEST_CASE("SplitMix64 reference stream") {
  SplitMix64 rng(0);
  CHECK(rng.next() == 0xe220a8397b1dcdafULL);
  CHECK(rng.next() == 0x6e789e6aa1b965f4ULL);
  SplitMix64 other(0);
  other.next();
  for (int i = 0; i < 1000; ++i) {
    const double x = other.symmetric_unit();
    CHECK(x >= -1.0);
    CHECK(x < 1.0);
  }
}

TEST_CASE("random forms are deterministic in the seed") {
  const HermitianSpace s(3);
  CHECK(residual(random_form(s, 1, 2, 5), random_form(s, 1, 2, 5)) == 0.0);
  CHECK(residual(random_form(s, 1, 2, 5), random_form(s, 1, 2, 6)) > 0.1);
  CHECK(random_form(s, 4, 0, 1).empty());
  const Form re = random_real_form(s, 1, 3);
  CHECK(residual(conjugate(re), re) <= 1e-15);
}

TEST_CASE("primitive subspace dimensions") {
  for (int n = 1; n <= 4; ++n) {
    const HermitianSpace s(n);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        const auto expected = [&]() -> long {
          if (p + q > n) return 0;
          return static_cast<long>(binomial(n, p) * binomial(n, q) - binomial(n, p - 1) * binomial(n, q - 1));
        }();
        CHECK(primitive_basis(s, p, q).cols() == expected);
        CHECK(has_primitive(n, p, q) == (expected > 0));
      }
  }
}

TEST_CASE("primitive decomposition reassembles and is orthogonal") {
  for (int n = 1; n <= 4; ++n) {
    const HermitianSpace s(n);
    for (int p = 0; p <= n; ++p)
      for (int q = 0; q <= n; ++q) {
        const Form u = random_form(s, p, q, 40 + p + 10 * q);
        const PrimitiveDecomposition dec = primitive_decompose(u);
        CHECK(residual(dec.reassemble(s), u) <= 1e-10);
        for (const auto& c : dec.components) {
          CHECK(is_primitive(c.v));
          CHECK(c.v.pure_degree() == p + q - 2 * c.m);
        }
        for (std::size_t a = 0; a < dec.components.size(); ++a)
          for (std::size_t b = a + 1; b < dec.components.size(); ++b) {
            const Form x = l_pow(dec.components[a].v, dec.components[a].m);
            const Form y = l_pow(dec.components[b].v, dec.components[b].m);
            CHECK(std::abs(inner(x, y)) <= 1e-10 * (1 + norm_sq(u)));
          }
      }
  }
}

TEST_CASE("decomposition of known forms") {
  const HermitianSpace s(3);
  const PrimitiveDecomposition dec = primitive_decompose(omega(s));
  REQUIRE(dec.components.size() == 1);
  CHECK(dec.components[0].m == 1);
  CHECK(residual(dec.components[0].v, Form::scalar(s, 1.0)) <= 1e-12);
  const Form prim = random_primitive(s, 1, 1, 2);
  const PrimitiveDecomposition d2 = primitive_decompose(prim);
  REQUIRE(d2.components.size() == 1);
  CHECK(d2.components[0].m == 0);
  CHECK(primitive_decompose(Form(s)).components.empty());
}

TEST_CASE("primitive projection") {
  const HermitianSpace s(4);
  const Form u = random_form(s, 2, 1, 8);
  const Form pu = primitive_part(u);
  CHECK(is_primitive(pu));
  CHECK(residual(primitive_part(pu), pu) <= 1e-12);
  CHECK(std::abs(inner(u - pu, pu)) <= 1e-10);
}

TEST_CASE("random_primitive rejects empty primitive spaces") {
  CHECK_THROWS_AS(random_primitive(HermitianSpace(2), 2, 1, 0), std::invalid_argument);
  const Form v = random_primitive(HermitianSpace(2), 2, 0, 0);
  CHECK(is_primitive(v));
}

TEST_CASE("coefficient vectors round-trip") {
  const HermitianSpace s(3);
  const Form u = random_form(s, 1, 2, 3);
  CHECK(residual(from_coefficients(s, 1, 2, coefficients(u, 1, 2)), u) == 0.0);
  CHECK_THROWS(from_coefficients(s, 1, 0, coefficients(u, 1, 2)));
}
