#include "hodgekit/primitive.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>

namespace hodgekit {

namespace {

std::vector<IndexMask> masks_with_popcount(int n, int k) {
  std::vector<IndexMask> out;
  if (k < 0 || k > n) return out;
  for (IndexMask m = 0; m < (IndexMask{1} << n); ++m) {
    if (std::popcount(m) == k) out.push_back(m);
  }
  return out;
}

using MatrixKey = std::tuple<int, int, int, int>;

template <typename Build>
const Eigen::MatrixXcd& cached_matrix(std::map<MatrixKey, std::unique_ptr<Eigen::MatrixXcd>>& cache,
                                      std::mutex& mutex, const MatrixKey& key, Build&& build) {
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return *it->second;
  }
  auto value = std::make_unique<Eigen::MatrixXcd>(build());
  std::lock_guard lock(mutex);
  auto [it, inserted] = cache.emplace(key, std::move(value));
  return *it->second;
}

// Matrix of L^[m] from (p-m, q-m)-forms to (p,q)-forms.
const Eigen::MatrixXcd& lefschetz_matrix(HermitianSpace space, int p, int q, int m) {
  static std::mutex mutex;
  static std::map<MatrixKey, std::unique_ptr<Eigen::MatrixXcd>> cache;
  return cached_matrix(cache, mutex, {space.dim(), p, q, m}, [&] {
    const auto from = monomial_basis(space, p - m, q - m);
    const auto to = monomial_basis(space, p, q);
    Eigen::MatrixXcd a = Eigen::MatrixXcd::Zero(static_cast<Eigen::Index>(to.size()),
                                                static_cast<Eigen::Index>(from.size()));
    for (std::size_t c = 0; c < from.size(); ++c) {
      a.col(static_cast<Eigen::Index>(c)) = coefficients(l_pow(Form::monomial(space, from[c]), m), p, q);
    }
    return a;
  });
}

}  // namespace

Form PrimitiveDecomposition::component(HermitianSpace space, int m) const {
  for (const auto& c : components) {
    if (c.m == m) return c.v;
  }
  return Form(space);
}

Form PrimitiveDecomposition::reassemble(HermitianSpace space) const {
  Form acc(space);
  for (const auto& c : components) acc = acc + l_pow(c.v, c.m);
  return acc;
}

std::vector<Monomial> monomial_basis(HermitianSpace space, int p, int q) {
  std::vector<Monomial> out;
  const auto hs = masks_with_popcount(space.dim(), p);
  const auto as = masks_with_popcount(space.dim(), q);
  out.reserve(hs.size() * as.size());
  for (IndexMask h : hs) {
    for (IndexMask a : as) out.push_back(Monomial{h, a});
  }
  return out;
}

Eigen::VectorXcd coefficients(const Form& u, int p, int q) {
  const auto basis = monomial_basis(u.space(), p, q);
  Eigen::VectorXcd c(static_cast<Eigen::Index>(basis.size()));
  for (std::size_t i = 0; i < basis.size(); ++i) c(static_cast<Eigen::Index>(i)) = u.coefficient(basis[i]);
  return c;
}

Form from_coefficients(HermitianSpace space, int p, int q, const Eigen::VectorXcd& c) {
  const auto basis = monomial_basis(space, p, q);
  if (static_cast<std::size_t>(c.size()) != basis.size()) {
    throw std::invalid_argument("from_coefficients: vector length does not match the basis");
  }
  Form::Terms t;
  for (std::size_t i = 0; i < basis.size(); ++i) t[basis[i]] = c(static_cast<Eigen::Index>(i));
  return Form(space, std::move(t));
}

const Eigen::MatrixXcd& primitive_basis(HermitianSpace space, int p, int q) {
  static std::mutex mutex;
  static std::map<MatrixKey, std::unique_ptr<Eigen::MatrixXcd>> cache;
  return cached_matrix(cache, mutex, {space.dim(), p, q, 0}, [&]() -> Eigen::MatrixXcd {
    const auto from = monomial_basis(space, p, q);
    const auto dim = static_cast<Eigen::Index>(from.size());
    if (dim == 0) return Eigen::MatrixXcd(0, 0);
    const auto to = monomial_basis(space, p - 1, q - 1);
    if (to.empty()) return Eigen::MatrixXcd::Identity(dim, dim);
    Eigen::MatrixXcd a(static_cast<Eigen::Index>(to.size()), dim);
    for (Eigen::Index c = 0; c < dim; ++c) {
      a.col(c) = coefficients(lambda_op(Form::monomial(space, from[static_cast<std::size_t>(c)])), p - 1, q - 1);
    }
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(a, Eigen::ComputeFullV);
    const auto& s = svd.singularValues();
    const double cutoff = 1e-10 * (s.size() > 0 ? s(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < s.size(); ++i) {
      if (s(i) > cutoff) ++rank;
    }
    return svd.matrixV().rightCols(dim - rank);
  });
}

PrimitiveDecomposition primitive_decompose(const Form& u, Tolerance tol) {
  const HermitianSpace space = u.space();
  // Components at round-off level (e.g. the m = 0 part of omega) are dropped.
  const double negligible = 1e-3 * tol.rel * (1.0 + sup_norm(u));
  std::map<int, Form> parts;
  for (const auto& [p, q] : bidegree_support(u)) {
    const Eigen::VectorXcd target = coefficients(u, p, q);
    for (int m = 0; m <= std::min(p, q); ++m) {
      const Eigen::MatrixXcd& basis = primitive_basis(space, p - m, q - m);
      // L^[m] vanishes on primitive k-forms once m > n - k.
      if (basis.cols() == 0 || m > space.dim() - (p + q - 2 * m)) continue;
      const Eigen::MatrixXcd image = lefschetz_matrix(space, p, q, m) * basis;
      Eigen::CompleteOrthogonalDecomposition<Eigen::MatrixXcd> cod(image);
      cod.setThreshold(1e-10);
      const Eigen::VectorXcd coeffs = cod.solve(target);
      const Form v = from_coefficients(space, p - m, q - m, basis * coeffs);
      if (sup_norm(v) <= negligible) continue;
      auto it = parts.find(m);
      if (it == parts.end()) {
        parts.emplace(m, v);
      } else {
        it->second = it->second + v;
      }
    }
  }
  PrimitiveDecomposition out;
  for (auto& [m, v] : parts) out.components.push_back({m, std::move(v)});
  return out;
}

Form primitive_part(const Form& u) {
  Form acc(u.space());
  for (const auto& [p, q] : bidegree_support(u)) {
    const Eigen::MatrixXcd& basis = primitive_basis(u.space(), p, q);
    if (basis.cols() == 0) continue;
    const Eigen::VectorXcd c = basis * (basis.adjoint() * coefficients(u, p, q));
    acc = acc + from_coefficients(u.space(), p, q, c);
  }
  return acc;
}

bool has_primitive(int n, int p, int q) noexcept {
  return p >= 0 && q >= 0 && p + q <= n;
}

Form random_form(HermitianSpace space, int p, int q, std::uint64_t seed) {
  const int n = space.dim();
  if (p < 0 || q < 0 || p > n || q > n) return Form(space);
  SplitMix64 rng(seed ^ (std::uint64_t(n) << 56) ^ (std::uint64_t(p) << 48) ^
                 (std::uint64_t(q) << 40));
  Form::Terms t;
  for (const Monomial& m : monomial_basis(space, p, q)) {
    const double re = rng.symmetric_unit();
    const double im = rng.symmetric_unit();
    t[m] = Complex{re, im};
  }
  return Form(space, std::move(t));
}

Form random_real_form(HermitianSpace space, int p, std::uint64_t seed) {
  const Form u = random_form(space, p, p, seed);
  return scale(0.5, u + conjugate(u));
}

Form random_primitive(HermitianSpace space, int p, int q, std::uint64_t seed, Tolerance tol) {
  if (!has_primitive(space.dim(), p, q)) {
    throw std::invalid_argument("random_primitive: no nonzero primitive (" + std::to_string(p) +
                                "," + std::to_string(q) + ")-forms in dimension " +
                                std::to_string(space.dim()));
  }
  for (std::uint64_t attempt = 0; attempt < 1000; ++attempt) {
    Form v = primitive_part(random_form(space, p, q, seed + attempt));
    if (std::sqrt(norm_sq(v)) >= tol.rel) return v;
  }
  throw std::runtime_error("random_primitive: could not draw a nonzero primitive form");
}

}  // namespace hodgekit
