#ifndef HODGEKIT_IDENTITIES_HPP
#define HODGEKIT_IDENTITIES_HPP

// Evaluators computing both sides of the norm identities for forms on a
// Hermitian space and reporting a scale-free residual.
//
// Sign and index conventions shared by all evaluators:
//   k = p + q, eps(k) = (-1)^{k(k+1)/2}, I = Weil operator, b_l from bessel.hpp;
//   u = sum_j L^[p-j] u_j with u_j primitive of bidegree (j, j+q-p), p <= q.
// Identities stated for p <= q conjugate their input when p > q.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "hodgekit/primitive.hpp"

namespace hodgekit {

struct IdentityReport {
  std::string identity;
  /// Ordered (name, value) pairs, always starting with n.
  std::vector<std::pair<std::string, int>> params;
  double lhs = 0.0;  // |LHS|, or sup norm for form-valued identities
  double rhs = 0.0;
  double residual = 0.0;
  double tolerance = 0.0;
  bool pass = false;
  bool skipped = false;
  std::string note;
  std::uint64_t seed = 0;

  std::optional<int> param(const std::string& name) const;
};

IdentityReport skipped_report(std::string identity,
                              std::vector<std::pair<std::string, int>> params,
                              std::uint64_t seed, std::string why);

/// Theorem: eps(k) |u|^2 vol = sum_l (-1)^l b_l Lambda^[l] u ^ Lambda^[l] conj(I u) ^ omega^[n-k+2l].
/// u must have pure total degree.
IdentityReport thm_norm_residual(const Form& u, Tolerance tol = Tolerance{});

/// Polarised form: eps(k) <u,v> vol = sum_l (-1)^l b_l Lambda^[l] u ^ Lambda^[l] conj(I v) ^ omega^[n-k+2l].
IdentityReport polarization_residual(const Form& u, const Form& v, Tolerance tol = Tolerance{});

/// eps(k) u ^ conj(I v) ^ omega^[n-k] = sum_m (-1)^m <Lambda^[m] u, Lambda^[m] v> vol.
IdentityReport wedge_from_inner_residual(const Form& u, const Form& v, Tolerance tol = Tolerance{});

/// Same left side against sum_m (-1)^m <Lambda^[m] u, Lambda^[m] conj(I v)>, the
/// second slot carrying conj(I v) literally. Diagnostic; fails in general.
IdentityReport wedge_from_inner_literal_residual(const Form& u, const Form& v,
                                                 Tolerance tol = Tolerance{});

/// u ^ conj(I u) ^ omega^{n-p-q} = sum_j u'_j ^ conj(I u'_j) ^ omega^{n-2j-q+p},
/// plain powers of omega and u = sum_j u'_j ^ omega^{p-j}. Requires p + q <= n.
IdentityReport prim16_residual(const Form& u, Tolerance tol = Tolerance{});

/// Lambda^[l] u ^ Lambda^[l] conj(I u) ^ omega^[n-p-q+2l]
///   = sum_{j=0}^{p-l} (-1)^j (-1)^{(q-p)(q-p+1)/2} C(p-j,l) C(n-j-q+l,p-l-j) C(n-j-q+l,l) |L^[p-j] u_j|^2 vol.
IdentityReport morphism_residual(const Form& u, int l, Tolerance tol = Tolerance{});

/// Coefficient of |L^[p-j] u_j|^2 in the morphism identity at index l.
double morphism_coefficient(int n, int p, int q, int l, int j);

/// star L^[j] u = eps(k) L^[n-j-k] I u for primitive u.
IdentityReport star_primitive_residual(const Form& u, int j, Tolerance tol = Tolerance{});

/// |L^[j] u|^2 = C(n-k, j) |u|^2 for primitive u.
IdentityReport lpow_norm_residual(const Form& u, int j, Tolerance tol = Tolerance{});

/// Lambda^[l] u = sum_{j=0}^{p-l} C(n-j-q+l, l) L^[p-j-l] u_j.
IdentityReport lambda_decomp_residual(const Form& u, int l, Tolerance tol = Tolerance{});

/// <u,v> vol = eps(k) u ^ conj(I v) ^ omega^[n-k] for primitive v.
IdentityReport primitive_inner_residual(const Form& u, const Form& v, Tolerance tol = Tolerance{});

/// |u|^2 = sum_l coeffs[l] (Lambda^[l] u)^2 ^ omega^[n-2p+2l] for a real (p,p)-form u,
/// e.g. coeffs = (1, -1, 3) for p = 2.
IdentityReport real_form_expansion_residual(const Form& u, std::span<const double> coeffs,
                                            Tolerance tol = Tolerance{});

/// Coefficients c_0..c_p with |u|^2 = sum_l c_l Lambda^[l] u ^ Lambda^[l] conj(I u) ^ omega^[n-p-q+2l],
/// found by measuring the morphism matrix A(l,j) on forms L^[p-j] u_j built from
/// random primitive u_j and solving A^T c = (1,...,1). Requires p+q <= n.
std::vector<double> solve_coefficients(int n, int p, int q, std::uint64_t seed);

/// Compares solve_coefficients against eps(k) (-1)^l b_l; tolerance max(tol, 1e-7).
IdentityReport solve_b_report(int n, int p, int q, std::uint64_t seed, Tolerance tol = Tolerance{});

enum class Identity {
  ThmNorm,
  Polarization,
  WedgeFromInner,
  Prim16,
  Morphism,
  StarPrimitive,
  LpowNorm,
  LambdaDecomp,
  SolveB,
};

const std::vector<Identity>& all_identities();
std::string identity_name(Identity id);
std::optional<Identity> parse_identity(const std::string& name);

struct SuiteOptions {
  int min_n = 1;
  int max_n = 3;
  int trials = 5;
  std::uint64_t seed = 0;
  Tolerance tol{};
  std::vector<Identity> identities = all_identities();
  std::optional<int> p;  // restrict the bidegree grid
  std::optional<int> q;
};

/// Canonically ordered: identity, n, p, q, extra index, trial.
std::vector<IdentityReport> run_suite(const SuiteOptions& options);
/// Convenience overload over every identity and 1 <= n <= max_n.
std::vector<IdentityReport> run_suite(int max_n, int trials, std::uint64_t seed, Tolerance tol);

}  // namespace hodgekit

#endif
