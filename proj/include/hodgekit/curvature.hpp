#ifndef HODGEKIT_CURVATURE_HPP
#define HODGEKIT_CURVATURE_HPP

// Curvature-type tensors R in Lambda^{1,1}V* (x) Lambda^{1,1}E*, handled as real
// (2,2)-forms on V + E with metric alpha = omega + h. Coordinates 1..n of the
// combined space belong to V, n+1..n+r to E.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hodgekit/identities.hpp"

namespace hodgekit {

struct ProductSpace {
  int n;
  int r;

  ProductSpace(int n, int r);
  HermitianSpace space() const { return HermitianSpace(n + r); }
  HermitianSpace v_space() const { return HermitianSpace(n); }
  HermitianSpace e_space() const { return HermitianSpace(r); }
  IndexMask v_mask() const { return (IndexMask{1} << n) - 1; }
  IndexMask e_mask() const { return ((IndexMask{1} << r) - 1) << n; }
  Form omega() const;  // V part only
  Form h() const;      // E part only
};

class CurvatureTensor {
 public:
  CurvatureTensor(int n, int r);  // zero tensor
  CurvatureTensor(int n, int r, std::vector<Complex> entries);

  int n() const noexcept { return n_; }
  int r() const noexcept { return r_; }
  ProductSpace product() const { return ProductSpace(n_, r_); }

  // 0-based indices j,k < n and a,b < r.
  Complex operator()(int j, int k, int a, int b) const { return entries_[index(j, k, a, b)]; }
  Complex& at(int j, int k, int a, int b) { return entries_[index(j, k, a, b)]; }
  const std::vector<Complex>& entries() const noexcept { return entries_; }

  /// max |R[j][k][a][b] - conj(R[k][j][b][a])|.
  double hermitian_defect() const;
  double max_abs() const;

  CurvatureTensor operator+(const CurvatureTensor& o) const;
  CurvatureTensor operator-(const CurvatureTensor& o) const;
  friend CurvatureTensor operator*(Complex c, const CurvatureTensor& t);

 private:
  std::size_t index(int j, int k, int a, int b) const;
  int n_;
  int r_;
  std::vector<Complex> entries_;
};

/// Sum R[j][k][a][b] ((i/2) dz_j ^ dzb_k) ^ ((i/2) e_a ^ eb_b). Throws on
/// Hermitian defect above 1e-12 (relative to the largest entry).
Form embed_as_form(const CurvatureTensor& R);

/// Inverse of embed_as_form on forms of the right shape.
CurvatureTensor tensor_from_form(const Form& F, int n, int r);

/// c_k = Lambda_h^[k](R^k) / k!, a (k,k)-form on V.
Form chern_form(const CurvatureTensor& R, int k);

/// Lambda_omega R as a (1,1)-form on E.
Form lambda_omega_of(const CurvatureTensor& R);
/// Lambda_h R as a (1,1)-form on V; equals c_1.
Form lambda_h_of(const CurvatureTensor& R);

/// sup_norm(Lambda_omega Lambda_h F - Lambda_h Lambda_omega F), F = embed_as_form(R).
double commutator_defect(const CurvatureTensor& R);

/// Subtracts (1/n) omega ^ (S - lambda h), S = Lambda_omega R, lambda = tr S / r.
CurvatureTensor he_project(const CurvatureTensor& R);

struct HEDiagnosis {
  bool is_he = false;
  double lambda = 0.0;
  double defect = 0.0;        // sup_norm(Lambda_omega R - lambda h)
  double trace_defect = 0.0;  // |r lambda - Lambda_omega c_1|
};
HEDiagnosis he_diagnose(const CurvatureTensor& R, Tolerance tol = Tolerance{});

/// R[j][k][a][b] = (lambda / n) delta_jk delta_ab, i.e. (lambda/n) omega ^ h.
CurvatureTensor he_model(int n, int r, double lambda);
/// Entries uniform in [-1,1)^2, then Hermitian-symmetrised.
CurvatureTensor random_hermitian(int n, int r, std::uint64_t seed);
CurvatureTensor random_he(int n, int r, std::uint64_t seed);
/// R[j][k][a][b] = delta_jk U[a][b] with U a random Hermitian r x r matrix (R = u ^ omega).
CurvatureTensor random_omega_pullback(int n, int r, std::uint64_t seed);
/// R[j][k][a][b] = U[j][k] delta_ab (R = v ^ h).
CurvatureTensor random_h_pullback(int n, int r, std::uint64_t seed);

/// |R|^2 = (2 c_2 - c_1^2) ^ omega^[n-2] / vol + |Lambda_omega R|^2.
IdentityReport norm_identity_residual(const CurvatureTensor& R, Tolerance tol = Tolerance{});
/// |S|^2 = (Lambda_h S)^2 - Lambda_h^[2](S ^ S) for S = Lambda_omega R.
IdentityReport one_one_norm_residual(const CurvatureTensor& R, Tolerance tol = Tolerance{});

/// ratio_to_volume((2r c_2 - (r-1) c_1^2) ^ omega^[n-2]); 0 when n < 2.
Complex kl_form_value(const CurvatureTensor& R);
double kl_value(const CurvatureTensor& R);

struct KLResult {
  IdentityReport report;
  double value = 0.0;
  double imag = 0.0;
  bool equality_case = false;
  double model_distance = 0.0;  // sup_norm(F - (lambda/n) omega ^ h)
  bool equality_consistent = false;
};
/// Throws std::invalid_argument if R is not Hermite-Einstein.
KLResult kl_check(const CurvatureTensor& R, Tolerance tol = Tolerance{});

/// r |R|^2 = KL value + |c_1|^2 for Hermite-Einstein R.
IdentityReport kl_chain_residual(const CurvatureTensor& R, Tolerance tol = Tolerance{});

struct CSResult {
  IdentityReport omega_report;  // |Lambda_omega R|^2 <= n |R|^2
  IdentityReport h_report;      // |Lambda_h R|^2 <= r |R|^2
  double margin_omega = 0.0;
  double margin_h = 0.0;
  bool equality_omega = false;
  bool equality_h = false;
};
CSResult cs_check(const CurvatureTensor& R, Tolerance tol = Tolerance{});

/// Averages R over (jkab, akjb, jbak, abjk); requires r = n.
CurvatureTensor kahler_symmetrize(const CurvatureTensor& R);

/// kappa lambda (delta_jk delta_ab + delta_jb delta_ak), kappa = (n-1)/(n+1)
/// so that Lambda_omega R = (n-1) lambda h.
CurvatureTensor constant_curvature(int n, double lambda);
double constant_curvature_calibration(int n);

struct CheckedValue {
  std::string name;
  double expected = 0.0;
  double computed = 0.0;
  double relative_error = 0.0;
  bool pass = false;
};

struct ConstantCurvatureReport {
  int n = 0;
  double lambda = 0.0;
  double kappa = 0.0;
  std::vector<CheckedValue> values;  // Lambda_omega, |R|^2, c_2 ratio
  /// Constant each value would need on its own (NaN if no real constant works).
  std::vector<std::pair<std::string, double>> required_kappa;
  bool consistent = false;
  std::vector<std::string> discrepancy;
};
ConstantCurvatureReport constant_curvature_report(int n, double lambda, double tol = 1e-8);

/// Diagnostic: |R|^2 against c_2 ^ omega^[n-2] / omega^n + (n lambda)^2.
IdentityReport kahler_einstein_diagnostic(const CurvatureTensor& R, double lambda,
                                          Tolerance tol = Tolerance{});

/// star_alpha(u ^ e) = (-1)^{deg u deg e} star_omega(u) ^ star_h(e) over all monomial pairs.
double star_splitting_defect(const ProductSpace& ps);
/// alpha^[l] = sum_k omega^[k] ^ h^[l-k].
double binomial_splitting_defect(const ProductSpace& ps, int l);

struct CurvatureReport {
  int n = 0;
  int r = 0;
  Form c1{HermitianSpace(1)};
  Form c2{HermitianSpace(1)};
  std::optional<double> he_constant;
  HEDiagnosis he;
  double norm_identity_residual = 0.0;
  double kl_value = 0.0;
  double kl_imag = 0.0;
  double cs_margin_omega = 0.0;
  double cs_margin_h = 0.0;
  bool equality_case = false;
  std::vector<IdentityReport> checks;

  bool all_pass() const;
};
CurvatureReport analyze(const CurvatureTensor& R, Tolerance tol = Tolerance{});

}  // namespace hodgekit

#endif
