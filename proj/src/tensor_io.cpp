#include "hodgekit/tensor_io.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <tuple>

namespace hodgekit {

namespace {

using json = nlohmann::json;

// Line and column of a byte offset, for parse diagnostics.
std::string locate(const std::string& text, std::size_t byte) {
  std::size_t line = 1;
  std::size_t col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return "line " + std::to_string(line) + ", column " + std::to_string(col);
}

int require_int(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) throw TensorFormatError(where + ": missing field \"" + key + "\"");
  const json& v = obj.at(key);
  if (!v.is_number_integer()) throw TensorFormatError(where + "." + key + ": expected an integer");
  return v.get<int>();
}

double number_or_zero(const json& obj, const char* key, const std::string& where) {
  if (!obj.contains(key)) return 0.0;
  const json& v = obj.at(key);
  if (!v.is_number()) throw TensorFormatError(where + "." + key + ": expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) throw TensorFormatError(where + "." + key + ": not finite");
  return x;
}

}  // namespace

CurvatureTensor parse_tensor(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    throw TensorFormatError("malformed JSON at " + locate(text, e.byte > 0 ? e.byte - 1 : 0) + ": " + e.what());
  }
  if (!doc.is_object()) throw TensorFormatError("top level must be an object");
  const int n = require_int(doc, "n", "tensor");
  const int r = require_int(doc, "r", "tensor");
  if (n < 1 || r < 1 || n + r > kMaxDimension) {
    throw TensorFormatError("tensor: need n, r >= 1 and n + r <= " + std::to_string(kMaxDimension));
  }
  bool closure = false;
  if (doc.contains("hermitian_closure")) {
    if (!doc["hermitian_closure"].is_boolean()) throw TensorFormatError("tensor.hermitian_closure: expected a boolean");
    closure = doc["hermitian_closure"].get<bool>();
  }
  if (!doc.contains("entries") || !doc["entries"].is_array()) {
    throw TensorFormatError("tensor: missing array field \"entries\"");
  }
  using Key = std::tuple<int, int, int, int>;
  std::map<Key, Complex> explicit_entries;
  const json& entries = doc["entries"];
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const std::string where = "entries[" + std::to_string(i) + "]";
    const json& e = entries[i];
    if (!e.is_object()) throw TensorFormatError(where + ": expected an object");
    const int j = require_int(e, "j", where);
    const int k = require_int(e, "k", where);
    const int a = require_int(e, "a", where);
    const int b = require_int(e, "b", where);
    const auto check = [&](int v, int hi, const char* name) {
      if (v < 1 || v > hi) {
        throw TensorFormatError(where + "." + name + ": index " + std::to_string(v) + " outside 1.." +
                                std::to_string(hi));
      }
    };
    check(j, n, "j");
    check(k, n, "k");
    check(a, r, "a");
    check(b, r, "b");
    const Complex z{number_or_zero(e, "re", where), number_or_zero(e, "im", where)};
    if (!explicit_entries.emplace(Key{j - 1, k - 1, a - 1, b - 1}, z).second) {
      throw TensorFormatError(where + ": duplicate entry for (" + std::to_string(j) + "," + std::to_string(k) +
                              "," + std::to_string(a) + "," + std::to_string(b) + ")");
    }
  }
  CurvatureTensor R(n, r);
  for (const auto& [key, z] : explicit_entries) {
    const auto [j, k, a, b] = key;
    R.at(j, k, a, b) = z;
  }
  if (closure) {
    for (const auto& [key, z] : explicit_entries) {
      const auto [j, k, a, b] = key;
      const Key partner{k, j, b, a};
      if (partner == key || explicit_entries.count(partner)) continue;
      R.at(k, j, b, a) = std::conj(z);
    }
  }
  const double defect = R.hermitian_defect();
  if (defect > 1e-12 * std::max(1.0, R.max_abs())) {
    std::ostringstream os;
    os.precision(6);
    os << "tensor violates Hermitian symmetry R[j][k][a][b] = conj(R[k][j][b][a]) (defect " << defect << ")";
    throw TensorFormatError(os.str());
  }
  return R;
}

CurvatureTensor read_tensor(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_tensor(buf.str());
}

CurvatureTensor read_tensor_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw TensorFormatError("cannot open " + path);
  return read_tensor(in);
}

nlohmann::ordered_json tensor_to_json(const CurvatureTensor& R) {
  nlohmann::ordered_json out;
  out["n"] = R.n();
  out["r"] = R.r();
  out["hermitian_closure"] = false;
  auto entries = nlohmann::ordered_json::array();
  for (int j = 0; j < R.n(); ++j)
    for (int k = 0; k < R.n(); ++k)
      for (int a = 0; a < R.r(); ++a)
        for (int b = 0; b < R.r(); ++b) {
          const Complex z = R(j, k, a, b);
          if (z == Complex{}) continue;
          entries.push_back({{"j", j + 1}, {"k", k + 1}, {"a", a + 1}, {"b", b + 1}, {"re", z.real()}, {"im", z.imag()}});
        }
  out["entries"] = std::move(entries);
  return out;
}

void write_tensor_file(const CurvatureTensor& R, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << tensor_to_json(R).dump(2) << '\n';
}

nlohmann::ordered_json report_to_json(const IdentityReport& r) {
  nlohmann::ordered_json out;
  out["identity"] = r.identity;
  nlohmann::ordered_json params = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.params) params[k] = v;
  out["params"] = std::move(params);
  out["lhs"] = r.lhs;
  out["rhs"] = r.rhs;
  out["residual"] = r.residual;
  out["pass"] = r.pass;
  out["seed"] = r.seed;
  out["skipped"] = r.skipped;
  if (!r.note.empty()) out["note"] = r.note;
  return out;
}

nlohmann::ordered_json form_to_json(const Form& u) {
  auto terms = nlohmann::ordered_json::array();
  for (const auto& [m, c] : u.terms()) {
    terms.push_back({{"monomial", to_string(m)}, {"re", c.real()}, {"im", c.imag()}});
  }
  return terms;
}

nlohmann::ordered_json curvature_report_to_json(const CurvatureReport& r) {
  nlohmann::ordered_json out;
  out["n"] = r.n;
  out["r"] = r.r;
  out["c1"] = form_to_json(r.c1);
  out["c2"] = form_to_json(r.c2);
  if (r.he_constant) {
    out["he_constant"] = *r.he_constant;
  } else {
    out["he_constant"] = nullptr;
  }
  out["he_defect"] = r.he.defect;
  out["norm_identity_residual"] = r.norm_identity_residual;
  out["kl_value"] = r.kl_value;
  out["cs_margins"] = {r.cs_margin_omega, r.cs_margin_h};
  out["equality_case"] = r.equality_case;
  auto checks = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) checks.push_back(report_to_json(c));
  out["checks"] = std::move(checks);
  out["pass"] = r.all_pass();
  return out;
}

}  // namespace hodgekit
