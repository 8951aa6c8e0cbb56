#include "hodgekit/hodge.hpp"

#include <cmath>
#include <mutex>
#include <tuple>

namespace hodgekit {

namespace {

// Real coframe: dx_j occupies slot 2j and dy_j slot 2j+1.
using SlotMask = std::uint32_t;
using RealTerms = std::map<SlotMask, Complex>;

struct SlotFactor {
  int slot;
  Complex coeff;
};

// Appends a 1-form (sum of two real slots) on the right of every term.
RealTerms append_real(const RealTerms& in, const SlotFactor (&factor)[2]) {
  RealTerms out;
  for (const auto& [s, c] : in) {
    for (const auto& f : factor) {
      const SlotMask bit = SlotMask{1} << f.slot;
      if ((s & bit) != 0) continue;
      const double sign = (std::popcount(s >> (f.slot + 1)) & 1) ? -1.0 : 1.0;
      out[s | bit] += sign * c * f.coeff;
    }
  }
  for (auto it = out.begin(); it != out.end();) {
    it = (it->second == Complex{}) ? out.erase(it) : std::next(it);
  }
  return out;
}

RealTerms to_real(const Monomial& m) {
  const Complex i{0.0, 1.0};
  RealTerms cur{{0, 1.0}};
  for (IndexMask h = m.holo; h != 0; h &= h - 1) {
    const int j = std::countr_zero(h);
    const SlotFactor f[2] = {{2 * j, 1.0}, {2 * j + 1, i}};
    cur = append_real(cur, f);
  }
  for (IndexMask a = m.anti; a != 0; a &= a - 1) {
    const int j = std::countr_zero(a);
    const SlotFactor f[2] = {{2 * j, 1.0}, {2 * j + 1, -i}};
    cur = append_real(cur, f);
  }
  return cur;
}

// dx = (dz + dzbar)/2, dy = (dz - dzbar)/(2i).
Form::Terms from_real(SlotMask s) {
  const Complex half{0.5, 0.0};
  const Complex half_i{0.0, 0.5};
  Form::Terms cur{{Monomial{}, 1.0}};
  for (SlotMask rest = s; rest != 0; rest &= rest - 1) {
    const int slot = std::countr_zero(rest);
    const int j = slot / 2;
    const IndexMask bit = IndexMask{1} << j;
    const Monomial holo{bit, 0};
    const Monomial anti{0, bit};
    const Complex c_holo = (slot % 2 == 0) ? half : -half_i;
    const Complex c_anti = (slot % 2 == 0) ? half : half_i;
    Form::Terms next;
    for (const auto& [m, c] : cur) {
      if (int sg = wedge_sign(m, holo); sg != 0)
        next[Monomial{m.holo | bit, m.anti}] += static_cast<double>(sg) * c * c_holo;
      if (int sg = wedge_sign(m, anti); sg != 0)
        next[Monomial{m.holo, m.anti | bit}] += static_cast<double>(sg) * c * c_anti;
    }
    cur = std::move(next);
  }
  return cur;
}

Form star_monomial_uncached(HermitianSpace space, const Monomial& m) {
  const SlotMask full = (space.dim() * 2 == 32) ? ~SlotMask{0}
                                                : (SlotMask{1} << (2 * space.dim())) - 1;
  Form::Terms out;
  for (const auto& [s, c] : to_real(m)) {
    const SlotMask comp = full ^ s;
    const double sign = static_cast<double>(merge_sign(s, comp));
    for (const auto& [mc, cc] : from_real(comp)) out[mc] += sign * c * cc;
  }
  return Form(space, std::move(out));
}

const Form& star_monomial(HermitianSpace space, const Monomial& m) {
  static std::mutex mutex;
  static std::map<std::tuple<int, IndexMask, IndexMask>, Form> cache;
  const auto key = std::make_tuple(space.dim(), m.holo, m.anti);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  Form value = star_monomial_uncached(space, m);
  std::lock_guard lock(mutex);
  // std::map nodes are stable, so the returned reference outlives later inserts.
  return cache.emplace(key, std::move(value)).first->second;
}

}  // namespace

Form omega_on(HermitianSpace space, IndexMask mask) {
  Form::Terms t;
  for (IndexMask rest = mask & space.full_mask(); rest != 0; rest &= rest - 1) {
    const IndexMask bit = rest & (~rest + 1);
    t[Monomial{bit, bit}] = Complex{0.0, 0.5};
  }
  return Form(space, std::move(t));
}

Form omega(HermitianSpace space) { return omega_on(space, space.full_mask()); }

Form omega_pow_on(HermitianSpace space, IndexMask mask, int k) {
  mask &= space.full_mask();
  if (k < 0 || k > std::popcount(mask)) return Form(space);
  static std::mutex mutex;
  static std::map<std::tuple<int, IndexMask, int>, Form> cache;
  const auto key = std::make_tuple(space.dim(), mask, k);
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  const Form w = omega_on(space, mask);
  Form acc = Form::scalar(space, 1.0);
  for (int j = 1; j <= k; ++j) acc = scale(1.0 / j, wedge(acc, w));
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(acc)).first->second;
}

Form omega_pow(HermitianSpace space, int k) { return omega_pow_on(space, space.full_mask(), k); }

Form volume(HermitianSpace space) { return omega_pow(space, space.dim()); }

Complex inner(const Form& u, const Form& v) {
  require_same_space(u, v);
  Complex acc{};
  const auto& small = u.size() <= v.size() ? u.terms() : v.terms();
  const auto& large = u.size() <= v.size() ? v.terms() : u.terms();
  const bool u_small = u.size() <= v.size();
  for (const auto& [m, c] : small) {
    const auto it = large.find(m);
    if (it == large.end()) continue;
    const Complex cu = u_small ? c : it->second;
    const Complex cv = u_small ? it->second : c;
    acc += cu * std::conj(cv) * std::ldexp(1.0, m.degree());
  }
  return acc;
}

double norm_sq(const Form& u) { return inner(u, u).real(); }

Form star(const Form& u) {
  Form::Terms out;
  for (const auto& [m, c] : u.terms()) {
    for (const auto& [sm, sc] : star_monomial(u.space(), m).terms()) out[sm] += c * sc;
  }
  return Form(u.space(), std::move(out));
}

Form lefschetz_on(const Form& u, IndexMask mask) {
  return wedge(omega_on(u.space(), mask), u);
}

Form lefschetz(const Form& u) { return lefschetz_on(u, u.space().full_mask()); }

Form lambda_on(const Form& u, IndexMask mask) {
  // Against the diagonal Gram matrix: Lambda m = sum_j -2i s_j m_j, where
  // m_j is m with the pair (dz_j, dzbar_j) removed and s_j the sign of
  // dz_j ^ dzbar_j ^ m_j = s_j m.
  const Complex minus_two_i{0.0, -2.0};
  return map_terms(u, [mask, minus_two_i](const Monomial& m, Complex c, Form::Terms& out) {
    for (IndexMask both = m.holo & m.anti & mask; both != 0; both &= both - 1) {
      const IndexMask bit = both & (~both + 1);
      const Monomial rest{m.holo & ~bit, m.anti & ~bit};
      const int s = wedge_sign(Monomial{bit, bit}, rest);
      out[rest] += static_cast<double>(s) * minus_two_i * c;
    }
  });
}

Form lambda_op(const Form& u) { return lambda_on(u, u.space().full_mask()); }

Form l_pow_on(const Form& u, IndexMask mask, int k) {
  if (k < 0) return Form(u.space());
  if (k == 0) return u;
  return wedge(omega_pow_on(u.space(), mask, k), u);
}

Form l_pow(const Form& u, int k) { return l_pow_on(u, u.space().full_mask(), k); }

Form lambda_pow_on(const Form& u, IndexMask mask, int k) {
  if (k < 0) return Form(u.space());
  Form acc = u;
  for (int j = 1; j <= k && !acc.empty(); ++j) acc = scale(1.0 / j, lambda_on(acc, mask));
  return acc;
}

Form lambda_pow(const Form& u, int k) { return lambda_pow_on(u, u.space().full_mask(), k); }

bool is_primitive(const Form& u, Tolerance tol) {
  return sup_norm(lambda_op(u)) <= tol.rel * (1.0 + sup_norm(u));
}

Complex ratio_to_volume(const Form& t) {
  const HermitianSpace space = t.space();
  const Monomial top{space.full_mask(), space.full_mask()};
  for (const auto& [m, c] : t.terms()) {
    if (!(m == top)) {
      throw std::invalid_argument("ratio_to_volume: term " + to_string(m) +
                                  " is not of bidegree (n,n)");
    }
  }
  return t.coefficient(top) / volume(space).coefficient(top);
}

double residual(Complex a, Complex b) {
  return std::abs(a - b) / (1.0 + std::max(std::abs(a), std::abs(b)));
}

double residual(const Form& a, const Form& b) {
  return sup_norm(a - b) / (1.0 + std::max(sup_norm(a), sup_norm(b)));
}

double binomial(int n, int k) noexcept {
  if (n < 0 || k < 0 || k > n) return 0.0;
  k = std::min(k, n - k);
  double r = 1.0;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return std::round(r);
}

Form restrict_to(const Form& u, int offset, int dim) {
  const HermitianSpace target(dim);
  const IndexMask window = target.full_mask() << offset;
  Form::Terms out;
  for (const auto& [m, c] : u.terms()) {
    if ((m.holo & ~window) != 0 || (m.anti & ~window) != 0) {
      throw std::invalid_argument("restrict_to: term " + to_string(m) +
                                  " has indices outside the target window");
    }
    out[Monomial{m.holo >> offset, m.anti >> offset}] = c;
  }
  return Form(target, std::move(out));
}

Form embed_into(const Form& u, HermitianSpace target, int offset) {
  if (offset < 0 || offset + u.space().dim() > target.dim()) {
    throw std::invalid_argument("embed_into: window does not fit the target space");
  }
  Form::Terms out;
  for (const auto& [m, c] : u.terms()) out[Monomial{m.holo << offset, m.anti << offset}] = c;
  return Form(target, std::move(out));
}

}  // namespace hodgekit
