#ifndef HODGEKIT_HODGE_HPP
#define HODGEKIT_HODGE_HPP

// Metric structure on the exterior algebra.
//
// Conventions: h = sum dz_j (x) dzbar_j, dz_j = dx_j + i dy_j with (dx_j, dy_j)
// a real orthonormal coframe, orientation dx_1^dy_1^...^dx_n^dy_n. Then
//   omega = (i/2) sum_j dz_j ^ dzbar_j = sum_j dx_j ^ dy_j,
// |dz_j|^2 = 2 and distinct canonical monomials are orthogonal, so a (p,q)
// monomial has squared norm 2^(p+q).
//
// Several operators take an IndexMask restricting them to a coordinate subset;
// this is how the Lefschetz operators of the two factors of V (+) E are built.

#include "hodgekit/form.hpp"

namespace hodgekit {

struct Tolerance {
  double rel = 1e-9;

  explicit Tolerance(double r = 1e-9) : rel(r) {
    if (!(r > 0.0)) throw std::invalid_argument("Tolerance must be positive");
  }
};

/// (i/2) sum_{j in mask} dz_j ^ dzbar_j.
Form omega_on(HermitianSpace space, IndexMask mask);
Form omega(HermitianSpace space);
/// omega^[k] = omega^k / k! on the coordinates in `mask`. Zero for k < 0 or
/// k > popcount(mask).
Form omega_pow_on(HermitianSpace space, IndexMask mask, int k);
Form omega_pow(HermitianSpace space, int k);
/// omega^[n], the positive volume form.
Form volume(HermitianSpace space);

/// Hermitian inner product, linear in u and conjugate-linear in v.
Complex inner(const Form& u, const Form& v);
double norm_sq(const Form& u);

/// Complex-linear Hodge star: w ^ star(conj v) = <w, v> volume.
Form star(const Form& u);

Form lefschetz_on(const Form& u, IndexMask mask);
Form lefschetz(const Form& u);
/// Adjoint of lefschetz_on(., mask) under `inner`.
Form lambda_on(const Form& u, IndexMask mask);
Form lambda_op(const Form& u);

/// L^[k] u = omega^[k] ^ u and Lambda^[k] u = Lambda^k u / k! (zero for k < 0).
Form l_pow_on(const Form& u, IndexMask mask, int k);
Form l_pow(const Form& u, int k);
Form lambda_pow_on(const Form& u, IndexMask mask, int k);
Form lambda_pow(const Form& u, int k);

bool is_primitive(const Form& u, Tolerance tol = Tolerance{});

/// The scalar c with t = c * volume. Throws if t has a term of bidegree other
/// than (n,n).
Complex ratio_to_volume(const Form& t);

/// Scale-free residual |a - b| / (1 + max(|a|, |b|)).
double residual(Complex a, Complex b);
/// sup_norm(a - b) / (1 + max(sup_norm(a), sup_norm(b))).
double residual(const Form& a, const Form& b);

/// (-1)^{k(k+1)/2}.
inline int star_sign(int k) noexcept { return ((k * (k + 1) / 2) & 1) ? -1 : 1; }

/// Exact binomial coefficient as a double; zero unless 0 <= k <= n.
double binomial(int n, int k) noexcept;

/// Moves a form supported on coordinates [offset, offset + dim) of `u`'s space
/// into a space of dimension `dim`. Throws if `u` has any index outside.
Form restrict_to(const Form& u, int offset, int dim);
/// Inverse of restrict_to: places u into `target` starting at `offset`.
Form embed_into(const Form& u, HermitianSpace target, int offset);

}  // namespace hodgekit

#endif
