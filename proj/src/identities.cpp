#include "hodgekit/identities.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hodgekit/bessel.hpp"

namespace hodgekit {

namespace {

using Params = std::vector<std::pair<std::string, int>>;

double b_value(int l) {
  static const BesselCoefficients table = generate(48);
  return table.as_double(static_cast<std::size_t>(l));
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

double sign_pow(int e) { return (e % 2 == 0) ? 1.0 : -1.0; }

std::pair<int, int> pure_bidegree(const Form& u, const char* who) {
  const auto support = bidegree_support(u);
  if (support.size() != 1) {
    throw std::invalid_argument(std::string(who) + ": input must have a single bidegree");
  }
  return *support.begin();
}

// Conjugates (p,q)-forms with p > q so that p <= q afterwards.
struct Normalised {
  Form u;
  int p;
  int q;
  bool conjugated;
};

Normalised normalise(const Form& u, const char* who) {
  const auto [p, q] = pure_bidegree(u, who);
  if (p > q) return {conjugate(u), q, p, true};
  return {u, p, q, false};
}

// Lambda^[l] u ^ Lambda^[l] conj(I v) ^ omega^[n-k+2l] / vol.
Complex paired_term(const Form& u, const Form& v, int k, int l) {
  const HermitianSpace space = u.space();
  const int e = space.dim() - k + 2 * l;
  if (e < 0 || e > space.dim()) return 0.0;
  const Form a = lambda_pow(u, l);
  if (a.empty()) return 0.0;
  const Form b = lambda_pow(conjugate(weil(v)), l);
  if (b.empty()) return 0.0;
  return ratio_to_volume(wedge(wedge(a, b), omega_pow(space, e)));
}

IdentityReport make_report(std::string name, Params params, Complex lhs, Complex rhs,
                           Tolerance tol) {
  IdentityReport r;
  r.identity = std::move(name);
  r.params = std::move(params);
  r.lhs = std::abs(lhs);
  r.rhs = std::abs(rhs);
  r.residual = residual(lhs, rhs);
  r.tolerance = tol.rel;
  r.pass = r.residual <= tol.rel;
  return r;
}

IdentityReport make_report(std::string name, Params params, const Form& lhs, const Form& rhs,
                           Tolerance tol) {
  IdentityReport r;
  r.identity = std::move(name);
  r.params = std::move(params);
  r.lhs = sup_norm(lhs);
  r.rhs = sup_norm(rhs);
  r.residual = residual(lhs, rhs);
  r.tolerance = tol.rel;
  r.pass = r.residual <= tol.rel;
  return r;
}

Params base_params(int n, int p, int q) { return {{"n", n}, {"p", p}, {"q", q}}; }

}  // namespace

std::optional<int> IdentityReport::param(const std::string& name) const {
  for (const auto& [k, v] : params) {
    if (k == name) return v;
  }
  return std::nullopt;
}

IdentityReport skipped_report(std::string identity, Params params, std::uint64_t seed,
                              std::string why) {
  IdentityReport r;
  r.identity = std::move(identity);
  r.params = std::move(params);
  r.skipped = true;
  r.pass = true;
  r.note = std::move(why);
  r.seed = seed;
  return r;
}

IdentityReport thm_norm_residual(const Form& u, Tolerance tol) {
  const int n = u.space().dim();
  if (u.empty()) return make_report("thm-norm", {{"n", n}}, 0.0, 0.0, tol);
  const int k = u.pure_degree();
  if (k < 0) throw std::invalid_argument("thm_norm_residual: input has mixed degree");
  const Complex lhs = static_cast<double>(star_sign(k)) * inner(u, u);
  Complex rhs = 0.0;
  for (int l = 0; l <= n; ++l) rhs += sign_pow(l) * b_value(l) * paired_term(u, u, k, l);
  Params params{{"n", n}, {"k", k}};
  if (const auto s = bidegree_support(u); s.size() == 1) {
    params = base_params(n, s.begin()->first, s.begin()->second);
  }
  return make_report("thm-norm", std::move(params), lhs, rhs, tol);
}

IdentityReport polarization_residual(const Form& u, const Form& v, Tolerance tol) {
  require_same_space(u, v);
  const auto [p, q] = pure_bidegree(u, "polarization_residual");
  if (pure_bidegree(v, "polarization_residual") != std::make_pair(p, q)) {
    throw std::invalid_argument("polarization_residual: u and v have different bidegrees");
  }
  const int n = u.space().dim();
  const int k = p + q;
  const Complex lhs = static_cast<double>(star_sign(k)) * inner(u, v);
  Complex rhs = 0.0;
  for (int l = 0; l <= n; ++l) rhs += sign_pow(l) * b_value(l) * paired_term(u, v, k, l);
  return make_report("polarization", base_params(n, p, q), lhs, rhs, tol);
}

namespace {

IdentityReport wedge_from_inner_impl(const Form& u, const Form& v, Tolerance tol, bool literal) {
  require_same_space(u, v);
  const char* who = literal ? "wedge_from_inner_literal_residual" : "wedge_from_inner_residual";
  const auto [p, q] = pure_bidegree(u, who);
  if (pure_bidegree(v, who) != std::make_pair(p, q)) {
    throw std::invalid_argument(std::string(who) + ": u and v have different bidegrees");
  }
  const HermitianSpace space = u.space();
  const int n = space.dim();
  const int k = p + q;
  const Form iv = conjugate(weil(v));
  Complex lhs = 0.0;
  if (n - k >= 0) {
    lhs = static_cast<double>(star_sign(k)) *
          ratio_to_volume(wedge(wedge(u, iv), omega_pow(space, n - k)));
  }
  const Form& second = literal ? iv : v;
  Complex rhs = 0.0;
  for (int m = 0; m <= n; ++m) rhs += sign_pow(m) * inner(lambda_pow(u, m), lambda_pow(second, m));
  return make_report(literal ? "wedge-from-inner-literal" : "wedge-from-inner",
                     base_params(n, p, q), lhs, rhs, tol);
}

}  // namespace

IdentityReport wedge_from_inner_residual(const Form& u, const Form& v, Tolerance tol) {
  return wedge_from_inner_impl(u, v, tol, false);
}

IdentityReport wedge_from_inner_literal_residual(const Form& u, const Form& v, Tolerance tol) {
  return wedge_from_inner_impl(u, v, tol, true);
}

IdentityReport prim16_residual(const Form& input, Tolerance tol) {
  const auto [u, p, q, conjugated] = normalise(input, "prim16_residual");
  const HermitianSpace space = u.space();
  const int n = space.dim();
  if (p + q > n) throw std::invalid_argument("prim16_residual: requires p + q <= n");
  const auto plain_omega = [&](int e) { return scale(factorial(e), omega_pow(space, e)); };
  const auto pair = [&](const Form& a, int e) {
    return ratio_to_volume(wedge(wedge(a, conjugate(weil(a))), plain_omega(e)));
  };
  const Complex lhs = pair(u, n - p - q);
  const PrimitiveDecomposition dec = primitive_decompose(u, tol);
  Complex rhs = 0.0;
  for (int j = 0; j <= p; ++j) {
    const int m = p - j;
    const Form uj = scale(1.0 / factorial(m), dec.component(space, m));
    if (uj.empty()) continue;
    rhs += pair(uj, n - 2 * j - q + p);
  }
  auto r = make_report("prim16", base_params(n, p, q), lhs, rhs, tol);
  if (conjugated) r.note = "input conjugated to p <= q";
  return r;
}

double morphism_coefficient(int n, int p, int q, int l, int j) {
  const int d = q - p;
  return sign_pow(j) * sign_pow(d * (d + 1) / 2) * binomial(p - j, l) *
         binomial(n - j - q + l, p - l - j) * binomial(n - j - q + l, l);
}

IdentityReport morphism_residual(const Form& input, int l, Tolerance tol) {
  const auto [u, p, q, conjugated] = normalise(input, "morphism_residual");
  const HermitianSpace space = u.space();
  const int n = space.dim();
  if (l < 0 || l > p) throw std::invalid_argument("morphism_residual: l must lie in [0, p]");
  const Complex lhs = paired_term(u, u, p + q, l);
  const PrimitiveDecomposition dec = primitive_decompose(u, tol);
  Complex rhs = 0.0;
  for (int j = 0; j <= p - l; ++j) {
    const Form uj = dec.component(space, p - j);
    if (uj.empty()) continue;
    rhs += morphism_coefficient(n, p, q, l, j) * norm_sq(l_pow(uj, p - j));
  }
  Params params = base_params(n, p, q);
  params.emplace_back("l", l);
  auto r = make_report("morphism", std::move(params), lhs, rhs, tol);
  if (conjugated) r.note = "input conjugated to p <= q";
  return r;
}

IdentityReport star_primitive_residual(const Form& u, int j, Tolerance tol) {
  const auto [p, q] = pure_bidegree(u, "star_primitive_residual");
  const int n = u.space().dim();
  const int k = p + q;
  if (!is_primitive(u, tol)) throw std::invalid_argument("star_primitive_residual: u is not primitive");
  if (j < 0 || j > n - k) throw std::invalid_argument("star_primitive_residual: j must lie in [0, n-k]");
  const Form lhs = star(l_pow(u, j));
  const Form rhs = scale(star_sign(k), l_pow(weil(u), n - j - k));
  Params params = base_params(n, p, q);
  params.emplace_back("j", j);
  return make_report("star-primitive", std::move(params), lhs, rhs, tol);
}

IdentityReport lpow_norm_residual(const Form& u, int j, Tolerance tol) {
  const auto [p, q] = pure_bidegree(u, "lpow_norm_residual");
  const int n = u.space().dim();
  const int k = p + q;
  if (!is_primitive(u, tol)) throw std::invalid_argument("lpow_norm_residual: u is not primitive");
  const Complex lhs = norm_sq(l_pow(u, j));
  const Complex rhs = binomial(n - k, j) * norm_sq(u);
  Params params = base_params(n, p, q);
  params.emplace_back("j", j);
  return make_report("lpow-norm", std::move(params), lhs, rhs, tol);
}

IdentityReport lambda_decomp_residual(const Form& input, int l, Tolerance tol) {
  const auto [u, p, q, conjugated] = normalise(input, "lambda_decomp_residual");
  const HermitianSpace space = u.space();
  const int n = space.dim();
  if (l < 0 || l > p) throw std::invalid_argument("lambda_decomp_residual: l must lie in [0, p]");
  const Form lhs = lambda_pow(u, l);
  const PrimitiveDecomposition dec = primitive_decompose(u, tol);
  Form rhs(space);
  for (int j = 0; j <= p - l; ++j) {
    const Form uj = dec.component(space, p - j);
    if (uj.empty()) continue;
    rhs = rhs + scale(binomial(n - j - q + l, l), l_pow(uj, p - j - l));
  }
  Params params = base_params(n, p, q);
  params.emplace_back("l", l);
  auto r = make_report("lambda-decomp", std::move(params), lhs, rhs, tol);
  if (conjugated) r.note = "input conjugated to p <= q";
  return r;
}

IdentityReport primitive_inner_residual(const Form& u, const Form& v, Tolerance tol) {
  require_same_space(u, v);
  const auto [p, q] = pure_bidegree(v, "primitive_inner_residual");
  const HermitianSpace space = u.space();
  const int n = space.dim();
  const int k = p + q;
  if (!is_primitive(v, tol)) throw std::invalid_argument("primitive_inner_residual: v is not primitive");
  const Complex lhs = inner(u, v);
  Complex rhs = 0.0;
  if (n - k >= 0) {
    rhs = static_cast<double>(star_sign(k)) *
          ratio_to_volume(degree_project(
              wedge(wedge(u, conjugate(weil(v))), omega_pow(space, n - k)), 2 * n));
  }
  return make_report("primitive-inner", base_params(n, p, q), lhs, rhs, tol);
}

IdentityReport real_form_expansion_residual(const Form& u, std::span<const double> coeffs,
                                            Tolerance tol) {
  const auto [p, q] = pure_bidegree(u, "real_form_expansion_residual");
  if (p != q) throw std::invalid_argument("real_form_expansion_residual: expects a (p,p)-form");
  if (residual(conjugate(u), u) > tol.rel) {
    throw std::invalid_argument("real_form_expansion_residual: form is not real");
  }
  const HermitianSpace space = u.space();
  const int n = space.dim();
  const Complex lhs = norm_sq(u);
  Complex rhs = 0.0;
  for (std::size_t l = 0; l < coeffs.size(); ++l) {
    const int e = n - 2 * p + 2 * static_cast<int>(l);
    if (e < 0 || e > n) continue;
    const Form a = lambda_pow(u, static_cast<int>(l));
    rhs += coeffs[l] * ratio_to_volume(wedge(wedge(a, a), omega_pow(space, e)));
  }
  Params params = base_params(n, p, q);
  params.emplace_back("terms", static_cast<int>(coeffs.size()));
  return make_report("real-form-expansion", std::move(params), lhs, rhs, tol);
}

std::vector<double> solve_coefficients(int n, int p, int q, std::uint64_t seed) {
  if (p > q) std::swap(p, q);
  if (p < 0 || p + q > n) {
    throw std::invalid_argument("solve_coefficients: requires 0 <= p <= q and p + q <= n");
  }
  const HermitianSpace space(n);
  const int size = p + 1;
  for (int attempt = 0; attempt < 8; ++attempt) {
    Eigen::MatrixXd a(size, size);
    bool degenerate = false;
    for (int j = 0; j <= p; ++j) {
      const std::uint64_t s = seed + static_cast<std::uint64_t>(attempt * size + j);
      const Form uj = random_primitive(space, j, j + q - p, s);
      const Form w = l_pow(uj, p - j);
      const double y = norm_sq(w);
      if (!(y > 1e-12)) {
        degenerate = true;
        break;
      }
      for (int l = 0; l <= p; ++l) a(l, j) = paired_term(w, w, p + q, l).real() / y;
    }
    if (degenerate) continue;
    Eigen::FullPivLU<Eigen::MatrixXd> lu(a.transpose());
    if (!lu.isInvertible()) continue;
    const Eigen::VectorXd c = lu.solve(Eigen::VectorXd::Ones(size));
    return std::vector<double>(c.data(), c.data() + size);
  }
  throw std::runtime_error("solve_coefficients: singular system after redraws");
}

IdentityReport solve_b_report(int n, int p, int q, std::uint64_t seed, Tolerance tol) {
  if (p > q) std::swap(p, q);
  const auto c = solve_coefficients(n, p, q, seed);
  const int k = p + q;
  double worst = 0.0;
  double lhs = 0.0;
  double rhs = 0.0;
  for (int l = 0; l <= p; ++l) {
    const double expected = star_sign(k) * sign_pow(l) * b_value(l);
    const double r = residual(Complex(c[static_cast<std::size_t>(l)]), Complex(expected));
    if (r >= worst) {
      worst = r;
      lhs = std::abs(c[static_cast<std::size_t>(l)]);
      rhs = std::abs(expected);
    }
  }
  IdentityReport out;
  out.identity = "solve-b";
  out.params = base_params(n, p, q);
  out.lhs = lhs;
  out.rhs = rhs;
  out.residual = worst;
  out.tolerance = std::max(tol.rel, 1e-7);
  out.pass = worst <= out.tolerance;
  out.seed = seed;
  return out;
}

const std::vector<Identity>& all_identities() {
  static const std::vector<Identity> ids = {
      Identity::ThmNorm,       Identity::Polarization, Identity::WedgeFromInner,
      Identity::Prim16,        Identity::Morphism,     Identity::StarPrimitive,
      Identity::LpowNorm,      Identity::LambdaDecomp, Identity::SolveB,
  };
  return ids;
}

std::string identity_name(Identity id) {
  switch (id) {
    case Identity::ThmNorm: return "thm-norm";
    case Identity::Polarization: return "polarization";
    case Identity::WedgeFromInner: return "wedge-from-inner";
    case Identity::Prim16: return "prim16";
    case Identity::Morphism: return "morphism";
    case Identity::StarPrimitive: return "star-primitive";
    case Identity::LpowNorm: return "lpow-norm";
    case Identity::LambdaDecomp: return "lambda-decomp";
    case Identity::SolveB: return "solve-b";
  }
  return "unknown";
}

std::optional<Identity> parse_identity(const std::string& name) {
  for (Identity id : all_identities()) {
    if (identity_name(id) == name) return id;
  }
  return std::nullopt;
}

namespace {

void run_identity(Identity id, const HermitianSpace& space, int p, int q, const SuiteOptions& o,
                  std::vector<IdentityReport>& out) {
  const int n = space.dim();
  const std::string name = identity_name(id);
  const auto trial_seed = [&](int t) { return o.seed + static_cast<std::uint64_t>(t); };
  const auto second_seed = [&](int t) { return o.seed + static_cast<std::uint64_t>(o.trials + t); };
  if (p < 0 || q < 0 || p > n || q > n) {
    out.push_back(skipped_report(name, base_params(n, p, q), o.seed, "no forms of this bidegree"));
    return;
  }
  const int k = p + q;
  const int lo = std::min(p, q);

  auto tagged = [](IdentityReport r, std::uint64_t seed) {
    r.seed = seed;
    return r;
  };

  switch (id) {
    case Identity::ThmNorm:
      for (int t = 0; t < o.trials; ++t)
        out.push_back(tagged(thm_norm_residual(random_form(space, p, q, trial_seed(t)), o.tol), trial_seed(t)));
      if (p == q && p >= 1) {
        // Real (p,p)-forms: conj(I u) = u and the coefficients are eps(2p) (-1)^l b_l.
        std::vector<double> coeffs;
        for (int l = 0; l <= p; ++l) coeffs.push_back(star_sign(2 * p) * sign_pow(l) * b_value(l));
        for (int t = 0; t < o.trials; ++t) {
          auto r = real_form_expansion_residual(random_real_form(space, p, trial_seed(t)), coeffs, o.tol);
          r.identity = "thm-norm-real";
          out.push_back(tagged(std::move(r), trial_seed(t)));
        }
      }
      break;
    case Identity::Polarization:
      for (int t = 0; t < o.trials; ++t)
        out.push_back(tagged(polarization_residual(random_form(space, p, q, trial_seed(t)),
                                                   random_form(space, p, q, second_seed(t)), o.tol),
                             trial_seed(t)));
      break;
    case Identity::WedgeFromInner:
      for (int t = 0; t < o.trials; ++t)
        out.push_back(tagged(wedge_from_inner_residual(random_form(space, p, q, trial_seed(t)),
                                                       random_form(space, p, q, second_seed(t)), o.tol),
                             trial_seed(t)));
      break;
    case Identity::Prim16:
      if (k > n) {
        out.push_back(skipped_report(name, base_params(n, p, q), o.seed, "requires p + q <= n"));
        break;
      }
      for (int t = 0; t < o.trials; ++t)
        out.push_back(tagged(prim16_residual(random_form(space, p, q, trial_seed(t)), o.tol), trial_seed(t)));
      break;
    case Identity::Morphism:
      for (int l = 0; l <= lo; ++l)
        for (int t = 0; t < o.trials; ++t)
          out.push_back(tagged(morphism_residual(random_form(space, p, q, trial_seed(t)), l, o.tol), trial_seed(t)));
      break;
    case Identity::StarPrimitive:
    case Identity::LpowNorm:
      if (!has_primitive(n, p, q)) {
        out.push_back(skipped_report(name, base_params(n, p, q), o.seed, "no primitive forms"));
        break;
      }
      for (int j = 0; j <= n - k; ++j) {
        for (int t = 0; t < o.trials; ++t) {
          const Form u = random_primitive(space, p, q, trial_seed(t), o.tol);
          out.push_back(tagged(id == Identity::StarPrimitive ? star_primitive_residual(u, j, o.tol)
                                                             : lpow_norm_residual(u, j, o.tol),
                               trial_seed(t)));
        }
      }
      break;
    case Identity::LambdaDecomp:
      for (int l = 0; l <= lo; ++l)
        for (int t = 0; t < o.trials; ++t)
          out.push_back(tagged(lambda_decomp_residual(random_form(space, p, q, trial_seed(t)), l, o.tol),
                               trial_seed(t)));
      break;
    case Identity::SolveB:
      if (p > q || k > n) {
        out.push_back(skipped_report(name, base_params(n, p, q), o.seed, "requires p <= q and p + q <= n"));
        break;
      }
      for (int t = 0; t < o.trials; ++t) out.push_back(solve_b_report(n, p, q, trial_seed(t), o.tol));
      break;
  }
}

}  // namespace

std::vector<IdentityReport> run_suite(const SuiteOptions& o) {
  if (o.max_n < 1 || o.min_n < 1) throw std::invalid_argument("run_suite: dimensions must be >= 1");
  if (o.trials < 1) throw std::invalid_argument("run_suite: trials must be >= 1");
  std::vector<IdentityReport> out;
  for (Identity id : o.identities) {
    for (int n = o.min_n; n <= o.max_n; ++n) {
      const HermitianSpace space(n);
      const int p_lo = o.p.value_or(0);
      const int p_hi = o.p.value_or(n);
      const int q_lo = o.q.value_or(0);
      const int q_hi = o.q.value_or(n);
      for (int p = p_lo; p <= p_hi; ++p)
        for (int q = q_lo; q <= q_hi; ++q) run_identity(id, space, p, q, o, out);
    }
  }
  return out;
}

std::vector<IdentityReport> run_suite(int max_n, int trials, std::uint64_t seed, Tolerance tol) {
  SuiteOptions o;
  o.max_n = max_n;
  o.trials = trials;
  o.seed = seed;
  o.tol = tol;
  return run_suite(o);
}

}  // namespace hodgekit
