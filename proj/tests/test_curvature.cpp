#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "hodgekit/curvature.hpp"

using namespace hodgekit;

namespace {

CurvatureTensor delta_delta(int n, int r, double c) { return he_model(n, r, c * n); }

}  // namespace

TEST_CASE("embedding normalisation") {
  const ProductSpace ps(2, 3);
  const Form F = embed_as_form(delta_delta(2, 3, 1.0));
  CHECK(residual(F, wedge(ps.omega(), ps.h())) <= 1e-15);
  CHECK(embed_as_form(CurvatureTensor(2, 3)).empty());
  CHECK(residual(ps.omega() + ps.h(), omega(ps.space())) == 0.0);
}

TEST_CASE("embedded random Hermitian tensors are real forms") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const CurvatureTensor R = random_hermitian(2, 3, seed);
    CHECK(R.hermitian_defect() <= 1e-15);
    const Form F = embed_as_form(R);
    CHECK(residual(conjugate(F), F) <= 1e-15);
    const CurvatureTensor back = tensor_from_form(F, 2, 3);
    CHECK((back - R).max_abs() <= 1e-14);
  }
  CurvatureTensor bad(1, 1);
  bad.at(0, 0, 0, 0) = Complex(0, 1);
  CHECK_THROWS_AS(embed_as_form(bad), std::invalid_argument);
}

TEST_CASE("Chern forms of the model tensor") {
  const int n = 3;
  const int r = 2;
  const double lambda = 1.5;
  const CurvatureTensor R = he_model(n, r, lambda);
  const HermitianSpace v(n);
  const double c = lambda / n;
  CHECK(residual(chern_form(R, 0), Form::scalar(v, 1.0)) == 0.0);
  CHECK(residual(chern_form(R, 1), scale(r * c, omega(v))) <= 1e-14);
  CHECK(residual(chern_form(R, 2), scale(binomial(r, 2) * c * c, wedge(omega(v), omega(v)))) <= 1e-14);
  CHECK(chern_form(R, 3).empty());
  CHECK(residual(lambda_h_of(R), chern_form(R, 1)) <= 1e-15);
  CHECK(residual(lambda_omega_of(R), scale(lambda, omega(HermitianSpace(r)))) <= 1e-14);
}

TEST_CASE("Lambda_omega and Lambda_h commute") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) CHECK(commutator_defect(random_hermitian(3, 2, seed)) <= 1e-10);
}

TEST_CASE("Lambda_omega of a real multiple of omega ^ h is real") {
  const Form S = lambda_omega_of(delta_delta(2, 2, 0.7));
  CHECK(residual(conjugate(S), S) == 0.0);
}

TEST_CASE("Hermite-Einstein diagnosis and projection") {
  const auto model = he_diagnose(he_model(2, 3, 2.0));
  CHECK(model.is_he);
  CHECK(model.lambda == doctest::Approx(2.0));
  for (int n = 2; n <= 3; ++n)
    for (int r = 2; r <= 3; ++r)
      for (std::uint64_t seed = 0; seed < 5; ++seed) {
        const CurvatureTensor R = random_hermitian(n, r, seed);
        CHECK_FALSE(he_diagnose(R).is_he);
        const CurvatureTensor P = he_project(R);
        const auto d = he_diagnose(P);
        CHECK(d.is_he);
        // r lambda = trace of c_1
        const Complex tr = lambda_op(chern_form(P, 1)).coefficient(Monomial{});
        CHECK(std::abs(r * d.lambda - tr) <= 1e-12 * (1 + std::abs(tr)));
        // projection keeps lambda and is idempotent
        CHECK(d.lambda == doctest::Approx(he_diagnose(R).lambda));
        CHECK((he_project(P) - P).max_abs() <= 1e-14);
      }
}

TEST_CASE("curvature norm identity") {
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r) {
      for (std::uint64_t seed = 0; seed < 3; ++seed) {
        const CurvatureTensor R = random_hermitian(n, r, seed);
        CHECK(norm_identity_residual(R, Tolerance(1e-8)).pass);
        CHECK(one_one_norm_residual(R, Tolerance(1e-10)).pass);
      }
      CHECK(norm_identity_residual(he_model(n, r, 1.3), Tolerance(1e-9)).pass);
      const auto zero = norm_identity_residual(CurvatureTensor(n, r));
      CHECK(zero.pass);
      CHECK(zero.lhs == 0.0);
    }
  // Closed form for the model: |R|^2 = (lambda/n)^2 n r.
  const auto m = norm_identity_residual(he_model(3, 2, 3.0));
  CHECK(m.lhs == doctest::Approx(6.0));
}

TEST_CASE("Kobayashi-Lubke inequality") {
  for (int n = 2; n <= 3; ++n)
    for (int r = 2; r <= 3; ++r) {
      const auto model = kl_check(he_model(n, r, 1.0));
      CHECK(std::abs(model.value) <= 1e-12);
      CHECK(model.equality_case);
      CHECK(model.equality_consistent);
      CHECK(model.report.pass);
      for (std::uint64_t seed = 0; seed < 10; ++seed) {
        const CurvatureTensor R = random_he(n, r, seed);
        const auto k = kl_check(R);
        CHECK(k.value >= -1e-9);
        CHECK(std::abs(k.imag) <= 1e-10);
        CHECK(k.report.pass);
        CHECK(kl_chain_residual(R, Tolerance(1e-8)).pass);
      }
      const CurvatureTensor perturbed = he_project(he_model(n, r, 1.0) + Complex(0.05) * random_hermitian(n, r, 77));
      const auto kp = kl_check(perturbed);
      CHECK(kp.value > 1e-6);
      CHECK_FALSE(kp.equality_case);
    }
  CHECK_THROWS_AS(kl_check(random_hermitian(2, 2, 1)), std::invalid_argument);
  CHECK(kl_value(he_model(1, 2, 1.0)) == 0.0);
}

TEST_CASE("Cauchy-Schwarz proposition") {
  for (int n = 1; n <= 3; ++n)
    for (int r = 1; r <= 3; ++r) {
      const auto eq_omega = cs_check(random_omega_pullback(n, r, 4));
      CHECK(eq_omega.equality_omega);
      CHECK(std::abs(eq_omega.margin_omega) <= 1e-9 * (1 + eq_omega.omega_report.rhs));
      const auto eq_h = cs_check(random_h_pullback(n, r, 4));
      CHECK(eq_h.equality_h);
      CHECK(std::abs(eq_h.margin_h) <= 1e-9 * (1 + eq_h.h_report.rhs));
      const auto zero = cs_check(CurvatureTensor(n, r));
      CHECK(zero.equality_omega);
      CHECK(zero.margin_omega == 0.0);
      if (n >= 2 && r >= 2) {
        const auto g = cs_check(random_hermitian(n, r, 5));
        CHECK(g.margin_omega > 1e-6);
        CHECK(g.margin_h > 1e-6);
        CHECK_FALSE(g.equality_omega);
        CHECK_FALSE(g.equality_h);
        CHECK(g.omega_report.pass);
        CHECK(g.h_report.pass);
      }
    }
}

TEST_CASE("Kahler symmetrisation") {
  const CurvatureTensor R = kahler_symmetrize(random_hermitian(3, 3, 2));
  CHECK(R.hermitian_defect() <= 1e-15);
  for (int j = 0; j < 3; ++j)
    for (int k = 0; k < 3; ++k)
      for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
          CHECK(std::abs(R(j, k, a, b) - R(a, k, j, b)) <= 1e-15);
          CHECK(std::abs(R(j, k, a, b) - R(j, b, a, k)) <= 1e-15);
        }
  CHECK((kahler_symmetrize(R) - R).max_abs() <= 1e-15);
  CHECK(norm_identity_residual(R, Tolerance(1e-8)).pass);
  CHECK(norm_identity_residual(he_project(R), Tolerance(1e-8)).pass);
  CHECK_THROWS(kahler_symmetrize(random_hermitian(2, 3, 0)));
}

TEST_CASE("constant curvature tensor") {
  for (int n = 2; n <= 4; ++n) {
    const CurvatureTensor R = constant_curvature(n, 0.5);
    CHECK(R.hermitian_defect() == 0.0);
    CHECK((kahler_symmetrize(R) - R).max_abs() <= 1e-15);
    CHECK(residual(lambda_omega_of(R), scale((n - 1) * 0.5, omega(HermitianSpace(n)))) <= 1e-14);
    CHECK(norm_identity_residual(R, Tolerance(1e-10)).pass);
  }
}

TEST_CASE("constant curvature values cannot share one constant") {
  for (int n = 3; n <= 4; ++n) {
    const auto rep = constant_curvature_report(n, 1.0);
    REQUIRE(rep.values.size() == 3);
    CHECK(rep.values[0].pass);
    CHECK_FALSE(rep.consistent);
    CHECK_FALSE(rep.discrepancy.empty());
    // |R|^2 for the calibrated tensor: kappa^2 * 2n(n+1).
    const double kappa = rep.kappa;
    CHECK(rep.values[1].computed == doctest::Approx(kappa * kappa * 2.0 * n * (n + 1)));
  }
}

TEST_CASE("Kahler-Einstein diagnostic is reported, not asserted") {
  const auto d = kahler_einstein_diagnostic(constant_curvature(3, 1.0), 1.0);
  CHECK(d.note == "diagnostic");
  CHECK(d.residual >= 0.0);
}

TEST_CASE("product-space splitting") {
  CHECK(star_splitting_defect(ProductSpace(1, 1)) <= 1e-12);
  CHECK(star_splitting_defect(ProductSpace(2, 1)) <= 1e-12);
  CHECK(star_splitting_defect(ProductSpace(1, 2)) <= 1e-12);
  for (int l = 0; l <= 5; ++l) CHECK(binomial_splitting_defect(ProductSpace(2, 3), l) == 0.0);
}

TEST_CASE("full analysis") {
  const auto rep = analyze(he_model(2, 2, 1.0));
  CHECK(rep.all_pass());
  CHECK(rep.equality_case);
  REQUIRE(rep.he_constant.has_value());
  CHECK(*rep.he_constant == doctest::Approx(1.0));
  const auto generic = analyze(random_hermitian(3, 3, 8));
  CHECK(generic.all_pass());
  CHECK_FALSE(generic.he_constant.has_value());
  CHECK(generic.norm_identity_residual <= 1e-8);
}

TEST_CASE("shape validation") {
  CHECK_THROWS(ProductSpace(0, 1));
  CHECK_THROWS(CurvatureTensor(2, 2, std::vector<Complex>(3)));
  CHECK_THROWS(CurvatureTensor(2, 2) + CurvatureTensor(2, 3));
  CurvatureTensor R(2, 2);
  CHECK_THROWS(R.at(2, 0, 0, 0));
}
