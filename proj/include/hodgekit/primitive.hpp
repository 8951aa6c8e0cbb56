#ifndef HODGEKIT_PRIMITIVE_HPP
#define HODGEKIT_PRIMITIVE_HPP

#include <cstdint>
#include <vector>

#include <Eigen/Dense>

#include "hodgekit/hodge.hpp"

namespace hodgekit {

/// u = sum_m L^[m] v_m with every v_m primitive.
struct PrimitiveDecomposition {
  struct Component {
    int m;
    Form v;
  };
  std::vector<Component> components;

  /// v_m, or the zero form of `space` when absent.
  Form component(HermitianSpace space, int m) const;
  Form reassemble(HermitianSpace space) const;
};

/// Canonical monomials of bidegree (p,q), in MonomialOrder.
std::vector<Monomial> monomial_basis(HermitianSpace space, int p, int q);

/// Orthonormal basis (columns, in monomial_basis coordinates) of the primitive
/// (p,q)-forms, from the null space of the Lambda matrix. Cached.
const Eigen::MatrixXcd& primitive_basis(HermitianSpace space, int p, int q);

/// Coefficient vector of u's (p,q) part against monomial_basis(space,p,q).
Eigen::VectorXcd coefficients(const Form& u, int p, int q);
Form from_coefficients(HermitianSpace space, int p, int q, const Eigen::VectorXcd& c);

PrimitiveDecomposition primitive_decompose(const Form& u, Tolerance tol = Tolerance{});

/// Orthogonal projection onto the primitive forms of each bidegree present.
Form primitive_part(const Form& u);

/// SplitMix64; coefficients are uniform on [-1,1] x [-1,1].
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next() noexcept {
    std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ull);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
  }
  /// Uniform on [-1, 1).
  double symmetric_unit() noexcept {
    return 2.0 * static_cast<double>(next() >> 11) * 0x1.0p-53 - 1.0;
  }

 private:
  std::uint64_t state_;
};

/// Dense random (p,q)-form; a deterministic function of (n, p, q, seed).
Form random_form(HermitianSpace space, int p, int q, std::uint64_t seed);
/// Real (p,p)-form (u + conj u)/2 of a random (p,p)-form.
Form random_real_form(HermitianSpace space, int p, std::uint64_t seed);
/// Primitive part of random_form, redrawn with seed+1, seed+2, ... while its
/// norm is below tol. Throws when no nonzero primitive (p,q)-form exists.
Form random_primitive(HermitianSpace space, int p, int q, std::uint64_t seed,
                      Tolerance tol = Tolerance{});

/// True when nonzero primitive (p,q)-forms exist in dimension n.
bool has_primitive(int n, int p, int q) noexcept;

}  // namespace hodgekit

#endif
