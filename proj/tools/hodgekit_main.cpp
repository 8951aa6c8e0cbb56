// hodgekit — command-line front end.
//
//   hodgekit bl --count 10
//   hodgekit verify --identity all --max-n 4 --trials 10 --seed 7
//   hodgekit curvature tensor.json --format json
//   hodgekit examples constant-curvature --n 3 --lambda 1
//
// Exit status: 0 all checks pass, 1 a check failed, 2 usage or input error.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "hodgekit/bessel.hpp"
#include "hodgekit/curvature.hpp"
#include "hodgekit/identities.hpp"
#include "hodgekit/tensor_io.hpp"

namespace {

using namespace hodgekit;

constexpr int kExitFail = 1;
constexpr int kExitUsage = 2;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string num(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.10g", x);
  return buf;
}

std::string sci(double x) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

std::string params_text(const IdentityReport& r) {
  std::string s;
  for (const auto& [k, v] : r.params) {
    if (!s.empty()) s += ' ';
    s += k + "=" + std::to_string(v);
  }
  return s;
}

std::string status(const IdentityReport& r) { return r.skipped ? "SKIP" : (r.pass ? "PASS" : "FAIL"); }

void print_reports(const std::vector<IdentityReport>& reports, const std::string& format) {
  if (format == "json") {
    auto arr = nlohmann::ordered_json::array();
    for (const auto& r : reports) arr.push_back(report_to_json(r));
    std::cout << arr.dump(2) << '\n';
    return;
  }
  std::size_t passed = 0, failed = 0, skipped = 0;
  for (const auto& r : reports) {
    std::printf("%-24s %-22s %-4s lhs=%-16s rhs=%-16s residual=%-10s seed=%llu%s%s\n", r.identity.c_str(),
                params_text(r).c_str(), status(r).c_str(), num(r.lhs).c_str(), num(r.rhs).c_str(),
                sci(r.residual).c_str(), static_cast<unsigned long long>(r.seed), r.note.empty() ? "" : "  # ",
                r.note.c_str());
    if (r.skipped) {
      ++skipped;
    } else if (r.pass) {
      ++passed;
    } else {
      ++failed;
    }
  }
  std::printf("%zu reports: %zu passed, %zu failed, %zu skipped\n", reports.size(), passed, failed, skipped);
}

bool all_pass(const std::vector<IdentityReport>& reports) {
  for (const auto& r : reports) {
    if (!r.skipped && !r.pass) return false;
  }
  return true;
}

double default_tolerance() {
  const char* env = std::getenv("HODGEKIT_TOL");
  if (env == nullptr || *env == '\0') return 1e-9;
  char* end = nullptr;
  const double v = std::strtod(env, &end);
  if (end == env || *end != '\0' || !(v > 0.0) || !std::isfinite(v)) {
    throw UsageError(std::string("HODGEKIT_TOL is not a positive number: ") + env);
  }
  return v;
}

void warn_large(const std::string& what) {
  std::cerr << "warning: " << what << " exceeds the default bounds; cost grows like 4^dim\n";
}

int cmd_bl(int count) {
  if (count < 1) throw UsageError("bl: --count must be at least 1");
  const BesselCoefficients b = generate(static_cast<std::size_t>(count));
  for (std::size_t l = 0; l < b.size(); ++l) std::cout << b[l] << '\n';
  return 0;
}

struct VerifyArgs {
  std::string identity = "all";
  std::optional<int> n;
  int max_n = 3;
  std::optional<int> p;
  std::optional<int> q;
  int trials = 10;
  std::uint64_t seed = 0;
  std::optional<double> tol;
  std::string format = "text";
  bool allow_large = false;
};

int cmd_verify(const VerifyArgs& a) {
  SuiteOptions o;
  if (a.identity != "all") {
    const auto id = parse_identity(a.identity);
    if (!id) throw UsageError("verify: unknown identity '" + a.identity + "'");
    o.identities = {*id};
  }
  if (a.n) {
    o.min_n = o.max_n = *a.n;
  } else {
    o.max_n = a.max_n;
  }
  if (o.max_n < 1) throw UsageError("verify: dimension must be at least 1");
  if (o.max_n > 5) {
    if (!a.allow_large) throw UsageError("verify: n > 5 requires --allow-large");
    warn_large("n = " + std::to_string(o.max_n));
  }
  if (a.trials < 1) throw UsageError("verify: --trials must be at least 1");
  if ((a.p && *a.p < 0) || (a.q && *a.q < 0)) throw UsageError("verify: --p and --q must be non-negative");
  o.p = a.p;
  o.q = a.q;
  o.trials = a.trials;
  o.seed = a.seed;
  o.tol = Tolerance(a.tol.value_or(default_tolerance()));
  const auto reports = run_suite(o);
  print_reports(reports, a.format);
  return all_pass(reports) ? 0 : kExitFail;
}

void print_form(const char* name, const Form& u) {
  std::printf("%s:\n", name);
  if (u.empty()) {
    std::printf("  0\n");
    return;
  }
  std::istringstream lines(to_string(u));
  for (std::string line; std::getline(lines, line);) std::printf("  %s\n", line.c_str());
}

int cmd_curvature(const std::string& path, const std::vector<std::string>& checks, const std::string& format,
                  std::optional<double> tol_arg, bool allow_large) {
  CurvatureTensor R = read_tensor_file(path);
  if ((R.n() > 3 || R.r() > 3) && !allow_large) {
    throw UsageError("curvature: (n, r) above (3, 3) requires --allow-large");
  }
  if (R.n() > 3 || R.r() > 3) warn_large("(n, r) = (" + std::to_string(R.n()) + ", " + std::to_string(R.r()) + ")");
  const Tolerance tol(tol_arg.value_or(default_tolerance()));
  CurvatureReport rep = analyze(R, tol);
  if (!checks.empty()) {
    const auto wanted = [&](const std::string& id) {
      for (const auto& c : checks) {
        if ((c == "norm" && (id == "curvature-norm" || id == "one-one-norm")) || (c == "commutator" && id == "lambda-commutator") ||
            (c == "cs" && (id == "cs-omega" || id == "cs-h")) || (c == "kl" && (id == "kobayashi-lubke" || id == "kl-chain")))
          return true;
      }
      return false;
    };
    std::vector<IdentityReport> kept;
    for (auto& c : rep.checks) {
      if (wanted(c.identity)) kept.push_back(std::move(c));
    }
    rep.checks = std::move(kept);
  }
  if (format == "json") {
    std::cout << curvature_report_to_json(rep).dump(2) << '\n';
  } else {
    std::printf("tensor n=%d r=%d\n", rep.n, rep.r);
    print_form("c1", rep.c1);
    print_form("c2", rep.c2);
    if (rep.he_constant) {
      std::printf("hermite-einstein: yes, lambda=%s\n", num(*rep.he_constant).c_str());
    } else {
      std::printf("hermite-einstein: no (defect %s)\n", sci(rep.he.defect).c_str());
    }
    std::printf("norm_identity_residual: %s\n", sci(rep.norm_identity_residual).c_str());
    std::printf("kl_value: %s\n", num(rep.kl_value).c_str());
    std::printf("cs_margins: %s %s\n", num(rep.cs_margin_omega).c_str(), num(rep.cs_margin_h).c_str());
    std::printf("equality_case: %s\n", rep.equality_case ? "true" : "false");
    print_reports(rep.checks, "text");
  }
  return rep.all_pass() ? 0 : kExitFail;
}

struct ExampleArgs {
  std::string kind;
  int n = 2;
  std::optional<int> r;
  double lambda = 1.0;
  std::uint64_t seed = 0;
  std::string out;
  std::string format = "text";
  bool allow_large = false;
};

void emit_tensor(const CurvatureTensor& R, const std::string& out) {
  if (out.empty() || out == "-") {
    std::cout << tensor_to_json(R).dump(2) << '\n';
  } else {
    write_tensor_file(R, out);
  }
}

int cmd_examples(const ExampleArgs& a) {
  const int r = a.r.value_or(a.n);
  if (a.n < 1 || r < 1) throw UsageError("examples: --n and --r must be positive");
  if ((a.n > 3 || r > 3) && (a.kind != "constant-curvature" || a.n > 4)) {
    if (!a.allow_large) throw UsageError("examples: (n, r) above the default bounds requires --allow-large");
    warn_large("(n, r) = (" + std::to_string(a.n) + ", " + std::to_string(r) + ")");
  }
  if (a.kind == "he-model") {
    emit_tensor(he_model(a.n, r, a.lambda), a.out);
    return 0;
  }
  if (a.kind == "random-hermitian") {
    emit_tensor(random_hermitian(a.n, r, a.seed), a.out);
    return 0;
  }
  if (a.kind == "random-he") {
    emit_tensor(random_he(a.n, r, a.seed), a.out);
    return 0;
  }
  // constant-curvature
  if (r != a.n) throw UsageError("examples constant-curvature: requires r = n");
  const ConstantCurvatureReport rep = constant_curvature_report(a.n, a.lambda);
  if (!a.out.empty()) write_tensor_file(constant_curvature(a.n, a.lambda), a.out);
  if (a.format == "json") {
    nlohmann::ordered_json j;
    j["n"] = rep.n;
    j["lambda"] = rep.lambda;
    j["kappa"] = rep.kappa;
    auto values = nlohmann::ordered_json::array();
    for (const auto& v : rep.values) {
      values.push_back({{"name", v.name}, {"expected", v.expected}, {"computed", v.computed},
                        {"relative_error", v.relative_error}, {"pass", v.pass}});
    }
    j["values"] = std::move(values);
    nlohmann::ordered_json req = nlohmann::ordered_json::object();
    for (const auto& [name, k] : rep.required_kappa) {
      if (std::isnan(k)) {
        req[name] = nullptr;
      } else {
        req[name] = k;
      }
    }
    j["required_kappa"] = std::move(req);
    j["consistent"] = rep.consistent;
    j["discrepancy"] = rep.discrepancy;
    std::cout << j.dump(2) << '\n';
  } else {
    std::printf("constant-curvature n=%d lambda=%s kappa=%s\n", rep.n, num(rep.lambda).c_str(), num(rep.kappa).c_str());
    for (const auto& v : rep.values) {
      std::printf("  %-14s expected=%-16s computed=%-16s rel_err=%-10s %s\n", v.name.c_str(), num(v.expected).c_str(),
                  num(v.computed).c_str(), sci(v.relative_error).c_str(), v.pass ? "PASS" : "FAIL");
    }
    if (!rep.consistent) {
      std::printf("convention discrepancy: no single constant reproduces all three values\n");
      for (const auto& d : rep.discrepancy) std::printf("  %s\n", d.c_str());
    }
  }
  return rep.consistent ? 0 : kExitFail;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exterior algebra on Hermitian spaces: Hodge star, Lefschetz operators and norm identities"};
  app.require_subcommand(1);

  int count = 10;
  auto* bl = app.add_subcommand("bl", "Print b_0 .. b_{count-1}");
  bl->add_option("--count", count, "Number of terms")->required();

  VerifyArgs va;
  std::vector<std::string> identity_names{"all"};
  for (Identity id : all_identities()) identity_names.push_back(identity_name(id));
  auto* verify = app.add_subcommand("verify", "Run identity checks on random forms");
  verify->add_option("--identity", va.identity, "Identity to check")->required();
  auto* n_opt = verify->add_option("--n", va.n, "Single dimension");
  verify->add_option("--max-n", va.max_n, "Check all 1 <= n <= max-n")->excludes(n_opt);
  verify->add_option("--p", va.p, "Restrict to holomorphic degree p");
  verify->add_option("--q", va.q, "Restrict to antiholomorphic degree q");
  verify->add_option("--trials", va.trials, "Random draws per parameter set")->capture_default_str();
  verify->add_option("--seed", va.seed, "Base seed")->capture_default_str();
  verify->add_option("--tol", va.tol, "Tolerance (default 1e-9 or $HODGEKIT_TOL)");
  verify->add_option("--format", va.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  verify->add_flag("--allow-large", va.allow_large, "Allow n > 5");

  std::string input;
  std::vector<std::string> checks;
  std::string cformat = "text";
  std::optional<double> ctol;
  bool callow = false;
  auto* curvature = app.add_subcommand("curvature", "Analyse a curvature tensor file");
  curvature->add_option("input", input, "Tensor JSON file")->required();
  curvature->add_option("--check", checks, "Restrict to norm, commutator, cs, kl")
      ->check(CLI::IsMember({"norm", "commutator", "cs", "kl"}));
  curvature->add_option("--format", cformat)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  curvature->add_option("--tol", ctol, "Tolerance (default 1e-9 or $HODGEKIT_TOL)");
  curvature->add_flag("--allow-large", callow, "Allow (n, r) above (3, 3)");

  ExampleArgs ea;
  auto* examples = app.add_subcommand("examples", "Write example curvature tensors");
  examples->add_option("kind", ea.kind)
      ->required()
      ->check(CLI::IsMember({"he-model", "constant-curvature", "random-hermitian", "random-he"}));
  examples->add_option("--n", ea.n)->capture_default_str();
  examples->add_option("--r", ea.r, "Fibre rank (default n)");
  examples->add_option("--lambda", ea.lambda)->capture_default_str();
  examples->add_option("--seed", ea.seed)->capture_default_str();
  examples->add_option("--out", ea.out, "Output path (default stdout)");
  examples->add_option("--format", ea.format)->check(CLI::IsMember({"text", "json"}))->capture_default_str();
  examples->add_flag("--allow-large", ea.allow_large);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (*bl) return cmd_bl(count);
    if (*verify) return cmd_verify(va);
    if (*curvature) return cmd_curvature(input, checks, cformat, ctol, callow);
    if (*examples) return cmd_examples(ea);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const TensorFormatError& e) {
    std::cerr << "error: " << input << ": " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitFail;
  }
  return kExitUsage;
}
