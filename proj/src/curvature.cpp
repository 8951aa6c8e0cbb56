#include "hodgekit/curvature.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace hodgekit {

namespace {

constexpr Complex kHalfI{0.0, 0.5};

Monomial v_part(int j, int k) { return Monomial{IndexMask{1} << j, IndexMask{1} << k}; }

Monomial e_part(int n, int a, int b) {
  return Monomial{IndexMask{1} << (n + a), IndexMask{1} << (n + b)};
}

Monomial joined(const Monomial& x, const Monomial& y) { return {x.holo | y.holo, x.anti | y.anti}; }

Form power(const Form& f, int k) {
  Form acc = Form::scalar(f.space(), 1.0);
  for (int i = 0; i < k; ++i) acc = wedge(acc, f);
  return acc;
}

double factorial(int n) {
  double f = 1.0;
  for (int i = 2; i <= n; ++i) f *= i;
  return f;
}

IdentityReport scalar_report(std::string name, const CurvatureTensor& R, Complex lhs, Complex rhs,
                             Tolerance tol) {
  IdentityReport out;
  out.identity = std::move(name);
  out.params = {{"n", R.n()}, {"r", R.r()}};
  out.lhs = std::abs(lhs);
  out.rhs = std::abs(rhs);
  out.residual = residual(lhs, rhs);
  out.tolerance = tol.rel;
  out.pass = out.residual <= tol.rel;
  return out;
}

// Ratio to the volume of V for a form living on V (zero forms give 0).
Complex v_ratio(const Form& top) { return top.empty() ? Complex{} : ratio_to_volume(top); }

Form top_on_v(const Form& x, int n, int p) {
  // x ^ omega^[n-p] for a (p,p)-form x on V; empty when the exponent is negative.
  if (n - p < 0) return Form(x.space());
  return wedge(x, omega_pow(x.space(), n - p));
}

std::vector<Complex> random_hermitian_matrix(int m, SplitMix64& rng) {
  std::vector<Complex> u(static_cast<std::size_t>(m * m));
  for (auto& z : u) {
    const double re = rng.symmetric_unit();
    const double im = rng.symmetric_unit();
    z = {re, im};
  }
  std::vector<Complex> out(u.size());
  for (int x = 0; x < m; ++x)
    for (int y = 0; y < m; ++y)
      out[static_cast<std::size_t>(x * m + y)] =
          0.5 * (u[static_cast<std::size_t>(x * m + y)] + std::conj(u[static_cast<std::size_t>(y * m + x)]));
  return out;
}

SplitMix64 tensor_rng(int n, int r, std::uint64_t seed, std::uint64_t salt) {
  return SplitMix64(seed ^ (std::uint64_t(n) << 56) ^ (std::uint64_t(r) << 48) ^ salt);
}

}  // namespace

ProductSpace::ProductSpace(int n_, int r_) : n(n_), r(r_) {
  if (n < 1 || r < 1 || n + r > kMaxDimension) {
    throw std::invalid_argument("ProductSpace: need n, r >= 1 and n + r <= " +
                                std::to_string(kMaxDimension));
  }
}

Form ProductSpace::omega() const { return omega_on(space(), v_mask()); }
Form ProductSpace::h() const { return omega_on(space(), e_mask()); }

CurvatureTensor::CurvatureTensor(int n, int r)
    : CurvatureTensor(n, r, std::vector<Complex>(static_cast<std::size_t>(n * n * r * r))) {}

CurvatureTensor::CurvatureTensor(int n, int r, std::vector<Complex> entries)
    : n_(n), r_(r), entries_(std::move(entries)) {
  (void)ProductSpace(n, r);
  if (entries_.size() != static_cast<std::size_t>(n * n * r * r)) {
    throw std::invalid_argument("CurvatureTensor: expected n^2 r^2 entries");
  }
  for (const Complex& z : entries_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) {
      throw std::invalid_argument("CurvatureTensor: non-finite entry");
    }
  }
}

std::size_t CurvatureTensor::index(int j, int k, int a, int b) const {
  if (j < 0 || j >= n_ || k < 0 || k >= n_ || a < 0 || a >= r_ || b < 0 || b >= r_) {
    throw std::out_of_range("CurvatureTensor: index out of range");
  }
  return static_cast<std::size_t>(((j * n_ + k) * r_ + a) * r_ + b);
}

double CurvatureTensor::hermitian_defect() const {
  double worst = 0.0;
  for (int j = 0; j < n_; ++j)
    for (int k = 0; k < n_; ++k)
      for (int a = 0; a < r_; ++a)
        for (int b = 0; b < r_; ++b)
          worst = std::max(worst, std::abs((*this)(j, k, a, b) - std::conj((*this)(k, j, b, a))));
  return worst;
}

double CurvatureTensor::max_abs() const {
  double m = 0.0;
  for (const Complex& z : entries_) m = std::max(m, std::abs(z));
  return m;
}

CurvatureTensor CurvatureTensor::operator+(const CurvatureTensor& o) const {
  if (o.n_ != n_ || o.r_ != r_) throw std::invalid_argument("CurvatureTensor: shape mismatch");
  std::vector<Complex> e(entries_);
  for (std::size_t i = 0; i < e.size(); ++i) e[i] += o.entries_[i];
  return CurvatureTensor(n_, r_, std::move(e));
}

CurvatureTensor CurvatureTensor::operator-(const CurvatureTensor& o) const {
  return *this + Complex(-1.0) * o;
}

CurvatureTensor operator*(Complex c, const CurvatureTensor& t) {
  std::vector<Complex> e(t.entries_);
  for (Complex& z : e) z *= c;
  return CurvatureTensor(t.n_, t.r_, std::move(e));
}

Form embed_as_form(const CurvatureTensor& R) {
  if (R.hermitian_defect() > 1e-12 * std::max(1.0, R.max_abs())) {
    throw std::invalid_argument("embed_as_form: tensor violates Hermitian symmetry");
  }
  const int n = R.n();
  const int r = R.r();
  Form::Terms t;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          const Complex c = R(j, k, a, b);
          if (c == Complex{}) continue;
          const Monomial x = v_part(j, k);
          const Monomial y = e_part(n, a, b);
          t[joined(x, y)] += static_cast<double>(wedge_sign(x, y)) * kHalfI * kHalfI * c;
        }
  return Form(R.product().space(), std::move(t));
}

CurvatureTensor tensor_from_form(const Form& F, int n, int r) {
  const ProductSpace ps(n, r);
  if (!(F.space() == ps.space())) throw std::invalid_argument("tensor_from_form: wrong space");
  CurvatureTensor R(n, r);
  std::size_t used = 0;
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          const Monomial x = v_part(j, k);
          const Monomial y = e_part(n, a, b);
          const Complex c = F.coefficient(joined(x, y));
          if (c == Complex{}) continue;
          ++used;
          R.at(j, k, a, b) = c / (static_cast<double>(wedge_sign(x, y)) * kHalfI * kHalfI);
        }
  if (used != F.size()) {
    throw std::invalid_argument("tensor_from_form: form has terms outside V(1,1) x E(1,1)");
  }
  return R;
}

Form chern_form(const CurvatureTensor& R, int k) {
  const ProductSpace ps = R.product();
  if (k < 0) throw std::invalid_argument("chern_form: k must be non-negative");
  if (k > ps.r) return Form(ps.v_space());
  const Form top = lambda_pow_on(power(embed_as_form(R), k), ps.e_mask(), k);
  return restrict_to(scale(1.0 / factorial(k), top), 0, ps.n);
}

Form lambda_omega_of(const CurvatureTensor& R) {
  const ProductSpace ps = R.product();
  return restrict_to(lambda_on(embed_as_form(R), ps.v_mask()), ps.n, ps.r);
}

Form lambda_h_of(const CurvatureTensor& R) {
  const ProductSpace ps = R.product();
  return restrict_to(lambda_on(embed_as_form(R), ps.e_mask()), 0, ps.n);
}

double commutator_defect(const CurvatureTensor& R) {
  const ProductSpace ps = R.product();
  const Form F = embed_as_form(R);
  return sup_norm(lambda_on(lambda_on(F, ps.e_mask()), ps.v_mask()) -
                  lambda_on(lambda_on(F, ps.v_mask()), ps.e_mask()));
}

CurvatureTensor he_project(const CurvatureTensor& R) {
  const int n = R.n();
  const int r = R.r();
  // S_ab = sum_j R[j][j][a][b] is Lambda_omega R in coordinates.
  std::vector<Complex> s(static_cast<std::size_t>(r * r));
  Complex trace = 0.0;
  for (int a = 0; a < r; ++a)
    for (int b = 0; b < r; ++b) {
      Complex acc = 0.0;
      for (int j = 0; j < n; ++j) acc += R(j, j, a, b);
      s[static_cast<std::size_t>(a * r + b)] = acc;
      if (a == b) trace += acc;
    }
  const Complex lambda = trace / static_cast<double>(r);
  CurvatureTensor out = R;
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) {
        const Complex target = (a == b) ? lambda : Complex{};
        out.at(j, j, a, b) -= (s[static_cast<std::size_t>(a * r + b)] - target) / static_cast<double>(n);
      }
  return out;
}

HEDiagnosis he_diagnose(const CurvatureTensor& R, Tolerance tol) {
  const ProductSpace ps = R.product();
  const Form S = lambda_omega_of(R);
  HEDiagnosis d;
  const Complex tr = lambda_op(S).coefficient(Monomial{});
  d.lambda = tr.real() / ps.r;
  const Form hE = omega(ps.e_space());
  d.defect = sup_norm(S - scale(d.lambda, hE));
  const Complex tr_c1 = lambda_op(chern_form(R, 1)).coefficient(Monomial{});
  d.trace_defect = std::abs(ps.r * d.lambda - tr_c1);
  const double scale_ref = 1.0 + sup_norm(S);
  d.is_he = d.defect <= tol.rel * scale_ref && d.trace_defect <= tol.rel * (1.0 + std::abs(tr_c1)) &&
            std::abs(tr.imag()) <= tol.rel * scale_ref;
  return d;
}

CurvatureTensor he_model(int n, int r, double lambda) {
  CurvatureTensor R(n, r);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < r; ++a) R.at(j, j, a, a) = lambda / n;
  return R;
}

CurvatureTensor random_hermitian(int n, int r, std::uint64_t seed) {
  SplitMix64 rng = tensor_rng(n, r, seed, 0x5eed0001ULL);
  CurvatureTensor raw(n, r);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b) {
          const double re = rng.symmetric_unit();
          const double im = rng.symmetric_unit();
          raw.at(j, k, a, b) = {re, im};
        }
  CurvatureTensor R(n, r);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < r; ++a)
        for (int b = 0; b < r; ++b)
          R.at(j, k, a, b) = 0.5 * (raw(j, k, a, b) + std::conj(raw(k, j, b, a)));
  return R;
}

CurvatureTensor random_he(int n, int r, std::uint64_t seed) { return he_project(random_hermitian(n, r, seed)); }

CurvatureTensor random_omega_pullback(int n, int r, std::uint64_t seed) {
  SplitMix64 rng = tensor_rng(n, r, seed, 0x5eed0002ULL);
  const auto u = random_hermitian_matrix(r, rng);
  CurvatureTensor R(n, r);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < r; ++a)
      for (int b = 0; b < r; ++b) R.at(j, j, a, b) = u[static_cast<std::size_t>(a * r + b)];
  return R;
}

CurvatureTensor random_h_pullback(int n, int r, std::uint64_t seed) {
  SplitMix64 rng = tensor_rng(n, r, seed, 0x5eed0003ULL);
  const auto v = random_hermitian_matrix(n, rng);
  CurvatureTensor R(n, r);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < r; ++a) R.at(j, k, a, a) = v[static_cast<std::size_t>(j * n + k)];
  return R;
}

IdentityReport norm_identity_residual(const CurvatureTensor& R, Tolerance tol) {
  const int n = R.n();
  const Form F = embed_as_form(R);
  const Form c1 = chern_form(R, 1);
  const Form c2 = chern_form(R, 2);
  const Complex lhs = norm_sq(F);
  const Complex middle = v_ratio(top_on_v(scale(2.0, c2) - wedge(c1, c1), n, 2));
  const Complex rhs = middle + norm_sq(lambda_omega_of(R));
  return scalar_report("curvature-norm", R, lhs, rhs, tol);
}

IdentityReport one_one_norm_residual(const CurvatureTensor& R, Tolerance tol) {
  const Form S = lambda_omega_of(R);
  const Complex trace = lambda_op(S).coefficient(Monomial{});
  const Complex lhs = norm_sq(S);
  const Complex rhs = trace * trace - lambda_pow(wedge(S, S), 2).coefficient(Monomial{});
  return scalar_report("one-one-norm", R, lhs, rhs, tol);
}

Complex kl_form_value(const CurvatureTensor& R) {
  const int n = R.n();
  const int r = R.r();
  const Form c1 = chern_form(R, 1);
  const Form c2 = chern_form(R, 2);
  const Form x = scale(2.0 * r, c2) - scale(r - 1.0, wedge(c1, c1));
  return v_ratio(top_on_v(x, n, 2));
}

double kl_value(const CurvatureTensor& R) { return kl_form_value(R).real(); }

KLResult kl_check(const CurvatureTensor& R, Tolerance tol) {
  const HEDiagnosis he = he_diagnose(R, tol);
  if (!he.is_he) throw std::invalid_argument("kl_check: tensor is not Hermite-Einstein");
  const ProductSpace ps = R.product();
  const Form F = embed_as_form(R);
  const double scale_ref = 1.0 + norm_sq(F);
  KLResult out;
  const Complex v = kl_form_value(R);
  out.value = v.real();
  out.imag = v.imag();
  out.equality_case = out.value <= tol.rel * scale_ref;
  const Form model = scale(he.lambda / ps.n, wedge(ps.omega(), ps.h()));
  out.model_distance = sup_norm(F - model);
  out.equality_consistent = out.equality_case == (out.model_distance <= std::sqrt(tol.rel) * (1.0 + sup_norm(F)));
  IdentityReport& rep = out.report;
  rep.identity = "kobayashi-lubke";
  rep.params = {{"n", ps.n}, {"r", ps.r}};
  rep.lhs = out.value;
  rep.rhs = 0.0;
  rep.residual = std::max(0.0, -out.value) / scale_ref;
  rep.tolerance = tol.rel;
  rep.pass = out.value >= -tol.rel * scale_ref && std::abs(out.imag) <= 1e-10 * scale_ref &&
             out.equality_consistent;
  if (out.equality_case) rep.note = "equality case";
  return out;
}

IdentityReport kl_chain_residual(const CurvatureTensor& R, Tolerance tol) {
  const Complex lhs = static_cast<double>(R.r()) * norm_sq(embed_as_form(R));
  const Complex rhs = kl_form_value(R) + norm_sq(chern_form(R, 1));
  return scalar_report("kl-chain", R, lhs, rhs, tol);
}

CSResult cs_check(const CurvatureTensor& R, Tolerance tol) {
  const ProductSpace ps = R.product();
  const HermitianSpace total = ps.space();
  const Form F = embed_as_form(R);
  const double norm = norm_sq(F);
  const Form S = lambda_omega_of(R);
  const Form c1 = lambda_h_of(R);
  CSResult out;
  out.margin_omega = ps.n * norm - norm_sq(S);
  out.margin_h = ps.r * norm - norm_sq(c1);
  const double eq_scale = tol.rel * (1.0 + sup_norm(F));
  out.equality_omega =
      sup_norm(F - scale(1.0 / ps.n, wedge(embed_into(S, total, ps.n), ps.omega()))) <= eq_scale;
  out.equality_h = sup_norm(F - scale(1.0 / ps.r, wedge(embed_into(c1, total, 0), ps.h()))) <= eq_scale;
  const auto make = [&](const char* name, double lhs, double rhs, double margin, bool eq) {
    IdentityReport rep;
    rep.identity = name;
    rep.params = {{"n", ps.n}, {"r", ps.r}};
    rep.lhs = lhs;
    rep.rhs = rhs;
    rep.residual = margin;
    rep.tolerance = tol.rel;
    rep.pass = margin >= -tol.rel * (1.0 + rhs);
    if (eq) rep.note = "equality";
    return rep;
  };
  out.omega_report = make("cs-omega", norm_sq(S), ps.n * norm, out.margin_omega, out.equality_omega);
  out.h_report = make("cs-h", norm_sq(c1), ps.r * norm, out.margin_h, out.equality_h);
  return out;
}

CurvatureTensor kahler_symmetrize(const CurvatureTensor& R) {
  if (R.n() != R.r()) throw std::invalid_argument("kahler_symmetrize: requires r = n");
  const int n = R.n();
  CurvatureTensor out(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
          out.at(j, k, a, b) = 0.25 * (R(j, k, a, b) + R(a, k, j, b) + R(j, b, a, k) + R(a, b, j, k));
  return out;
}

namespace {

CurvatureTensor curvature_placement(int n, double c, double sign) {
  CurvatureTensor R(n, n);
  for (int j = 0; j < n; ++j)
    for (int a = 0; a < n; ++a) {
      R.at(j, j, a, a) += c;
      R.at(j, a, a, j) += sign * c;
    }
  return R;
}

struct ExampleValues {
  double ricci;     // trace(S) / n
  double ricci_defect;
  double norm;
  double c2_ratio;
};

ExampleValues example_values(const CurvatureTensor& R) {
  const int n = R.n();
  const Form S = lambda_omega_of(R);
  ExampleValues v{};
  v.ricci = lambda_op(S).coefficient(Monomial{}).real() / n;
  v.ricci_defect = sup_norm(S - scale(v.ricci, omega(R.product().e_space())));
  v.norm = norm_sq(embed_as_form(R));
  v.c2_ratio = v_ratio(top_on_v(chern_form(R, 2), n, 2)).real();
  return v;
}

double relative_error(double computed, double expected) {
  return std::abs(computed - expected) / std::max(std::abs(expected), std::numeric_limits<double>::min());
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(12);
  os << x;
  return os.str();
}

}  // namespace

double constant_curvature_calibration(int n) { return (n - 1.0) / (n + 1.0); }

CurvatureTensor constant_curvature(int n, double lambda) {
  if (n < 1) throw std::invalid_argument("constant_curvature: n must be positive");
  return curvature_placement(n, constant_curvature_calibration(n) * lambda, 1.0);
}

ConstantCurvatureReport constant_curvature_report(int n, double lambda, double tol) {
  ConstantCurvatureReport rep;
  rep.n = n;
  rep.lambda = lambda;
  rep.kappa = constant_curvature_calibration(n);
  const double l2 = lambda * lambda;
  const double e_ricci = (n - 1.0) * lambda;
  const double e_norm = 2.0 * n * (n - 1.0) * l2;
  const double e_c2 = -l2 * (n - 2.0) * (n - 1.0) * n * (n + 1.0);

  const ExampleValues at = example_values(constant_curvature(n, lambda));
  const double ricci_err = std::max(relative_error(at.ricci, e_ricci),
                                    at.ricci_defect / std::max(std::abs(e_ricci), 1e-300));
  rep.values = {
      {"lambda_omega", e_ricci, at.ricci, ricci_err, ricci_err <= tol},
      {"norm_sq", e_norm, at.norm, relative_error(at.norm, e_norm), relative_error(at.norm, e_norm) <= tol},
      {"c2_ratio", e_c2, at.c2_ratio, relative_error(at.c2_ratio, e_c2), relative_error(at.c2_ratio, e_c2) <= tol},
  };

  // Each value is homogeneous in the constant (degree 1, 2, 2): solve for it separately.
  const ExampleValues unit = example_values(curvature_placement(n, lambda, 1.0));
  const auto root = [](double expected, double unit_value) {
    if (unit_value == 0.0) return expected == 0.0 ? 0.0 : std::numeric_limits<double>::quiet_NaN();
    const double q = expected / unit_value;
    return q >= 0.0 ? std::sqrt(q) : std::numeric_limits<double>::quiet_NaN();
  };
  rep.required_kappa = {
      {"lambda_omega", unit.ricci == 0.0 ? std::numeric_limits<double>::quiet_NaN() : e_ricci / unit.ricci},
      {"norm_sq", root(e_norm, unit.norm)},
      {"c2_ratio", root(e_c2, unit.c2_ratio)},
  };
  rep.consistent = true;
  for (const auto& v : rep.values) rep.consistent = rep.consistent && v.pass;

  if (!rep.consistent) {
    for (const auto& v : rep.values) {
      if (!v.pass) {
        rep.discrepancy.push_back(v.name + ": expected " + fmt(v.expected) + ", computed " + fmt(v.computed) +
                                  " at kappa = " + fmt(rep.kappa));
      }
    }
    std::string needs = "constants required separately:";
    for (const auto& [name, k] : rep.required_kappa) needs += " " + name + "=" + (std::isnan(k) ? "none" : fmt(k));
    rep.discrepancy.push_back(needs);
    // Curvature-norm identity plus Cauchy-Schwarz on c_1, independent of index placement.
    const double c1_sq_wedge = 2.0 * e_c2 - e_norm + n * e_ricci * e_ricci;
    const double c1_norm = (n * e_ricci) * (n * e_ricci) - c1_sq_wedge;
    const double bound = n * e_norm;
    rep.discrepancy.push_back("any tensor with these three values would need |c_1|^2 = " + fmt(c1_norm) +
                              " > r|R|^2 = " + fmt(bound) + (c1_norm > bound ? " (impossible)" : ""));
    const ExampleValues alt = example_values(curvature_placement(n, lambda, -1.0));
    rep.discrepancy.push_back("placement delta_jk delta_ab - delta_jb delta_ak, constant 1: lambda_omega=" +
                              fmt(alt.ricci) + " norm_sq=" + fmt(alt.norm) + " c2_ratio=" + fmt(alt.c2_ratio));
  }
  return rep;
}

IdentityReport kahler_einstein_diagnostic(const CurvatureTensor& R, double lambda, Tolerance tol) {
  const int n = R.n();
  const Complex lhs = norm_sq(embed_as_form(R));
  const Complex rhs = v_ratio(top_on_v(chern_form(R, 2), n, 2)) + (n * lambda) * (n * lambda);
  auto rep = scalar_report("kahler-einstein-diagnostic", R, lhs, rhs, tol);
  rep.note = "diagnostic";
  return rep;
}

double star_splitting_defect(const ProductSpace& ps) {
  const HermitianSpace total = ps.space();
  double worst = 0.0;
  for (int pu = 0; pu <= ps.n; ++pu)
    for (int qu = 0; qu <= ps.n; ++qu)
      for (int pe = 0; pe <= ps.r; ++pe)
        for (int qe = 0; qe <= ps.r; ++qe)
          for (const Monomial& mu : monomial_basis(ps.v_space(), pu, qu))
            for (const Monomial& me : monomial_basis(ps.e_space(), pe, qe)) {
              const Form u = Form::monomial(ps.v_space(), mu);
              const Form e = Form::monomial(ps.e_space(), me);
              const Form lhs = star(wedge(embed_into(u, total, 0), embed_into(e, total, ps.n)));
              const double sign = ((mu.degree() * me.degree()) & 1) ? -1.0 : 1.0;
              const Form rhs =
                  scale(sign, wedge(embed_into(star(u), total, 0), embed_into(star(e), total, ps.n)));
              worst = std::max(worst, residual(lhs, rhs));
            }
  return worst;
}

double binomial_splitting_defect(const ProductSpace& ps, int l) {
  const HermitianSpace total = ps.space();
  Form rhs(total);
  for (int k = 0; k <= l; ++k)
    rhs = rhs + wedge(omega_pow_on(total, ps.v_mask(), k), omega_pow_on(total, ps.e_mask(), l - k));
  return residual(omega_pow(total, l), rhs);
}

bool CurvatureReport::all_pass() const {
  for (const auto& c : checks) {
    if (!c.skipped && !c.pass) return false;
  }
  return true;
}

CurvatureReport analyze(const CurvatureTensor& R, Tolerance tol) {
  CurvatureReport rep;
  rep.n = R.n();
  rep.r = R.r();
  rep.c1 = chern_form(R, 1);
  rep.c2 = chern_form(R, 2);
  rep.he = he_diagnose(R, tol);

  const IdentityReport norm = norm_identity_residual(R, tol);
  rep.norm_identity_residual = norm.residual;
  rep.checks.push_back(norm);
  rep.checks.push_back(one_one_norm_residual(R, tol));

  IdentityReport comm;
  comm.identity = "lambda-commutator";
  comm.params = {{"n", rep.n}, {"r", rep.r}};
  comm.residual = commutator_defect(R);
  comm.tolerance = tol.rel;
  comm.pass = comm.residual <= tol.rel * (1.0 + sup_norm(embed_as_form(R)));
  rep.checks.push_back(comm);

  const CSResult cs = cs_check(R, tol);
  rep.cs_margin_omega = cs.margin_omega;
  rep.cs_margin_h = cs.margin_h;
  rep.checks.push_back(cs.omega_report);
  rep.checks.push_back(cs.h_report);

  const Complex kl = kl_form_value(R);
  rep.kl_value = kl.real();
  rep.kl_imag = kl.imag();
  if (rep.he.is_he) {
    rep.he_constant = rep.he.lambda;
    const KLResult k = kl_check(R, tol);
    rep.equality_case = k.equality_case;
    rep.checks.push_back(k.report);
    rep.checks.push_back(kl_chain_residual(R, tol));
  } else {
    rep.checks.push_back(skipped_report("kobayashi-lubke", {{"n", rep.n}, {"r", rep.r}}, 0,
                                        "tensor is not Hermite-Einstein"));
  }
  return rep;
}

}  // namespace hodgekit
