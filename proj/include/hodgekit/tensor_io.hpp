#ifndef HODGEKIT_TENSOR_IO_HPP
#define HODGEKIT_TENSOR_IO_HPP

// JSON tensor files and report serialisation.
//
//   {"n": 2, "r": 2, "hermitian_closure": false,
//    "entries": [{"j": 1, "k": 1, "a": 1, "b": 1, "re": 0.5, "im": 0.0}, ...]}
//
// Indices are 1-based; omitted entries are zero. With "hermitian_closure": true
// every entry is mirrored into R[k][j][b][a] = conj(value).

#include <istream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "hodgekit/curvature.hpp"

namespace hodgekit {

class TensorFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

CurvatureTensor parse_tensor(const std::string& text);
CurvatureTensor read_tensor(std::istream& in);
CurvatureTensor read_tensor_file(const std::string& path);

/// Nonzero entries in (j, k, a, b) order, closure flag false.
nlohmann::ordered_json tensor_to_json(const CurvatureTensor& R);
void write_tensor_file(const CurvatureTensor& R, const std::string& path);

nlohmann::ordered_json report_to_json(const IdentityReport& r);
nlohmann::ordered_json form_to_json(const Form& u);
nlohmann::ordered_json curvature_report_to_json(const CurvatureReport& r);

}  // namespace hodgekit

#endif
