#ifndef HODGEKIT_FORM_HPP
#define HODGEKIT_FORM_HPP

// Graded exterior algebra of a complex vector space V of dimension n, with
// complex coefficients. A basis monomial is dz_I ^ dzbar_J, always stored with
// every holomorphic factor ahead of every antiholomorphic one and each group
// in ascending index order. Index sets are bit masks (bit j <-> coordinate j+1).

#include <bit>
#include <complex>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

namespace hodgekit {

using Complex = std::complex<double>;
using IndexMask = std::uint32_t;

inline constexpr int kMaxDimension = 16;

/// Complex dimension n of the Hermitian space, in an orthonormal frame.
class HermitianSpace {
 public:
  explicit HermitianSpace(int n);

  int dim() const noexcept { return n_; }
  IndexMask full_mask() const noexcept { return (IndexMask{1} << n_) - 1; }

  friend bool operator==(HermitianSpace a, HermitianSpace b) noexcept { return a.n_ == b.n_; }

 private:
  int n_;
};

struct Monomial {
  IndexMask holo = 0;
  IndexMask anti = 0;

  int p() const noexcept { return std::popcount(holo); }
  int q() const noexcept { return std::popcount(anti); }
  int degree() const noexcept { return p() + q(); }

  friend bool operator==(const Monomial&, const Monomial&) = default;
};

/// Orders monomials by (total degree, holo mask, anti mask).
struct MonomialOrder {
  bool operator()(const Monomial& a, const Monomial& b) const noexcept {
    const int da = a.degree();
    const int db = b.degree();
    if (da != db) return da < db;
    if (a.holo != b.holo) return a.holo < b.holo;
    return a.anti < b.anti;
  }
};

/// Parity of the number of pairs (x in a, y in b) with x > y, as +1 or -1.
/// This is the sign of the shuffle that sorts the word a,b into ascending order.
inline int merge_sign(IndexMask a, IndexMask b) noexcept {
  int inversions = 0;
  while (b != 0) {
    const int y = std::countr_zero(b);
    b &= b - 1;
    inversions += std::popcount(a >> (y + 1));
  }
  return (inversions & 1) ? -1 : 1;
}

/// Sign of (I1,J1) ^ (I2,J2) rewritten canonically, or 0 on a repeated factor.
inline int wedge_sign(const Monomial& a, const Monomial& b) noexcept {
  if ((a.holo & b.holo) != 0 || (a.anti & b.anti) != 0) return 0;
  int s = merge_sign(a.holo, b.holo) * merge_sign(a.anti, b.anti);
  if ((a.q() * b.p()) & 1) s = -s;
  return s;
}

class Form {
 public:
  using Terms = std::map<Monomial, Complex, MonomialOrder>;

  explicit Form(HermitianSpace space) : space_(space) {}
  /// Exact zero coefficients are dropped; indices must lie inside the space and
  /// coefficients must be finite.
  Form(HermitianSpace space, Terms terms);

  static Form scalar(HermitianSpace space, Complex c);
  static Form monomial(HermitianSpace space, Monomial m, Complex c = 1.0);

  HermitianSpace space() const noexcept { return space_; }
  const Terms& terms() const noexcept { return terms_; }
  bool empty() const noexcept { return terms_.empty(); }
  std::size_t size() const noexcept { return terms_.size(); }
  Complex coefficient(const Monomial& m) const;

  /// Total degree if every term has the same degree; -1 for mixed forms and
  /// for the empty form.
  int pure_degree() const noexcept;

  Form operator-() const;

  friend Form operator+(const Form& u, const Form& v);
  friend Form operator-(const Form& u, const Form& v);
  friend Form operator*(Complex c, const Form& u);
  friend Form operator*(const Form& u, Complex c) { return c * u; }

 private:
  HermitianSpace space_;
  Terms terms_;
};

/// dz_j and dzbar_j for 1-based coordinate j.
Form dz(HermitianSpace space, int j);
Form dzbar(HermitianSpace space, int j);

void require_same_space(const Form& u, const Form& v);

Form add(const Form& u, const Form& v);
Form scale(Complex c, const Form& u);
Form wedge(const Form& u, const Form& v);
Form conjugate(const Form& u);
Form grade_project(const Form& u, int p, int q);
/// Projection onto total degree k.
Form degree_project(const Form& u, int k);
/// Multiplies the (p,q) component by i^(p-q).
Form weil(const Form& u);

std::set<std::pair<int, int>> bidegree_support(const Form& u);
double sup_norm(const Form& u);

/// Applies a per-monomial linear map. `fn(m, c, out)` accumulates into `out`.
template <typename Fn>
Form map_terms(const Form& u, Fn&& fn) {
  Form::Terms out;
  for (const auto& [m, c] : u.terms()) fn(m, c, out);
  return Form(u.space(), std::move(out));
}

/// One line per term, e.g. `(0+0.5i) dz1 dzb1`; "0" for the empty form.
std::string to_string(const Form& u);
std::string to_string(const Monomial& m);
std::string format_complex(Complex c);

}  // namespace hodgekit

#endif
