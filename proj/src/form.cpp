#include "hodgekit/form.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace hodgekit {

HermitianSpace::HermitianSpace(int n) : n_(n) {
  if (n < 1 || n > kMaxDimension) {
    throw std::invalid_argument("HermitianSpace: dimension must be in [1, " +
                                std::to_string(kMaxDimension) + "], got " + std::to_string(n));
  }
}

Form::Form(HermitianSpace space, Terms terms) : space_(space) {
  const IndexMask outside = ~space.full_mask();
  for (auto it = terms.begin(); it != terms.end();) {
    if ((it->first.holo & outside) != 0 || (it->first.anti & outside) != 0) {
      throw std::invalid_argument("Form: monomial " + to_string(it->first) +
                                  " has an index outside dimension " +
                                  std::to_string(space.dim()));
    }
    if (!std::isfinite(it->second.real()) || !std::isfinite(it->second.imag())) {
      throw std::invalid_argument("Form: non-finite coefficient on " + to_string(it->first));
    }
    if (it->second == Complex{0.0, 0.0}) {
      it = terms.erase(it);
    } else {
      ++it;
    }
  }
  terms_ = std::move(terms);
}

Form Form::scalar(HermitianSpace space, Complex c) {
  return Form(space, Terms{{Monomial{}, c}});
}

Form Form::monomial(HermitianSpace space, Monomial m, Complex c) {
  return Form(space, Terms{{m, c}});
}

Complex Form::coefficient(const Monomial& m) const {
  const auto it = terms_.find(m);
  return it == terms_.end() ? Complex{} : it->second;
}

int Form::pure_degree() const noexcept {
  if (terms_.empty()) return -1;
  const int k = terms_.begin()->first.degree();
  // Terms are sorted by degree first.
  return terms_.rbegin()->first.degree() == k ? k : -1;
}

Form Form::operator-() const { return scale(-1.0, *this); }

Form operator+(const Form& u, const Form& v) { return add(u, v); }
Form operator-(const Form& u, const Form& v) { return add(u, scale(-1.0, v)); }
Form operator*(Complex c, const Form& u) { return scale(c, u); }

Form dz(HermitianSpace space, int j) {
  if (j < 1 || j > space.dim()) throw std::invalid_argument("dz: index out of range");
  return Form::monomial(space, Monomial{IndexMask{1} << (j - 1), 0});
}

Form dzbar(HermitianSpace space, int j) {
  if (j < 1 || j > space.dim()) throw std::invalid_argument("dzbar: index out of range");
  return Form::monomial(space, Monomial{0, IndexMask{1} << (j - 1)});
}

void require_same_space(const Form& u, const Form& v) {
  if (!(u.space() == v.space())) {
    throw std::invalid_argument("forms live on spaces of different dimension (" +
                                std::to_string(u.space().dim()) + " vs " +
                                std::to_string(v.space().dim()) + ")");
  }
}

Form add(const Form& u, const Form& v) {
  require_same_space(u, v);
  Form::Terms out = u.terms();
  for (const auto& [m, c] : v.terms()) out[m] += c;
  return Form(u.space(), std::move(out));
}

Form scale(Complex c, const Form& u) {
  if (c == Complex{}) return Form(u.space());
  return map_terms(u, [c](const Monomial& m, Complex a, Form::Terms& out) { out[m] = c * a; });
}

Form wedge(const Form& u, const Form& v) {
  require_same_space(u, v);
  Form::Terms out;
  for (const auto& [a, ca] : u.terms()) {
    for (const auto& [b, cb] : v.terms()) {
      const int s = wedge_sign(a, b);
      if (s == 0) continue;
      out[Monomial{a.holo | b.holo, a.anti | b.anti}] += static_cast<double>(s) * ca * cb;
    }
  }
  return Form(u.space(), std::move(out));
}

Form conjugate(const Form& u) {
  // conj(c dz_I ^ dzbar_J) = conj(c) dzbar_I ^ dz_J = (-1)^{|I||J|} conj(c) dz_J ^ dzbar_I
  return map_terms(u, [](const Monomial& m, Complex c, Form::Terms& out) {
    const double s = ((m.p() * m.q()) & 1) ? -1.0 : 1.0;
    out[Monomial{m.anti, m.holo}] = s * std::conj(c);
  });
}

Form grade_project(const Form& u, int p, int q) {
  return map_terms(u, [p, q](const Monomial& m, Complex c, Form::Terms& out) {
    if (m.p() == p && m.q() == q) out[m] = c;
  });
}

Form degree_project(const Form& u, int k) {
  return map_terms(u, [k](const Monomial& m, Complex c, Form::Terms& out) {
    if (m.degree() == k) out[m] = c;
  });
}

Form weil(const Form& u) {
  static const Complex powers[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  return map_terms(u, [](const Monomial& m, Complex c, Form::Terms& out) {
    const int e = ((m.p() - m.q()) % 4 + 4) % 4;
    out[m] = powers[e] * c;
  });
}

std::set<std::pair<int, int>> bidegree_support(const Form& u) {
  std::set<std::pair<int, int>> out;
  for (const auto& [m, c] : u.terms()) out.emplace(m.p(), m.q());
  return out;
}

double sup_norm(const Form& u) {
  double best = 0.0;
  for (const auto& [m, c] : u.terms()) best = std::max(best, std::abs(c));
  return best;
}

std::string format_complex(Complex c) {
  char buf[80];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", c.real(), c.imag());
  return buf;
}

std::string to_string(const Monomial& m) {
  if (m.holo == 0 && m.anti == 0) return "1";
  std::string s;
  auto emit = [&s](IndexMask mask, const char* prefix) {
    while (mask != 0) {
      const int j = std::countr_zero(mask);
      mask &= mask - 1;
      if (!s.empty()) s += ' ';
      s += prefix + std::to_string(j + 1);
    }
  };
  emit(m.holo, "dz");
  emit(m.anti, "dzb");
  return s;
}

std::string to_string(const Form& u) {
  if (u.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [m, c] : u.terms()) {
    if (!first) os << '\n';
    first = false;
    os << '(' << format_complex(c) << ") " << to_string(m);
  }
  return os.str();
}

}  // namespace hodgekit
