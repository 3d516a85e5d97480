#include "wyd/matrix_io.hpp"

#include <fstream>
#include <string>

#include "wyd/errors.hpp"

namespace wyd {

nlohmann::json matrix_to_json(const Matrix& m) {
  if (m.rows() != m.cols()) throw DimensionError("matrix_to_json: matrix is not square");
  nlohmann::json re = nlohmann::json::array();
  nlohmann::json im = nlohmann::json::array();
  for (Index i = 0; i < m.rows(); ++i) {
    nlohmann::json rr = nlohmann::json::array();
    nlohmann::json ri = nlohmann::json::array();
    for (Index j = 0; j < m.cols(); ++j) {
      rr.push_back(m(i, j).real());
      ri.push_back(m(i, j).imag());
    }
    re.push_back(std::move(rr));
    im.push_back(std::move(ri));
  }
  return {{"dim", m.rows()}, {"re", std::move(re)}, {"im", std::move(im)}};
}

namespace {

void read_part(const nlohmann::json& arr, Index n, const char* name, Matrix& out, bool imag) {
  if (!arr.is_array() || static_cast<Index>(arr.size()) != n) {
    throw DimensionError(std::string("matrix JSON: '") + name + "' must have dim rows");
  }
  for (Index i = 0; i < n; ++i) {
    const auto& row = arr[static_cast<std::size_t>(i)];
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      throw DimensionError(std::string("matrix JSON: row ") + std::to_string(i) + " of '" +
                           name + "' does not have dim entries");
    }
    for (Index j = 0; j < n; ++j) {
      const auto& v = row[static_cast<std::size_t>(j)];
      if (!v.is_number()) throw InputError(std::string("matrix JSON: non-numeric entry in '") + name + "'");
      if (imag) {
        out(i, j).imag(v.get<double>());
      } else {
        out(i, j).real(v.get<double>());
      }
    }
  }
}

}  // namespace

Matrix matrix_from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("dim") || !j.contains("re") || !j.contains("im")) {
    throw InputError("matrix JSON: expected object with 'dim', 're', 'im'");
  }
  if (!j["dim"].is_number_integer() || j["dim"].get<long long>() <= 0) {
    throw InputError("matrix JSON: 'dim' must be a positive integer");
  }
  const auto n = static_cast<Index>(j["dim"].get<long long>());
  Matrix m = Matrix::Zero(n, n);
  read_part(j["re"], n, "re", m, false);
  read_part(j["im"], n, "im", m, true);
  return m;
}

HermitianMatrix hermitian_from_json(const nlohmann::json& j) {
  return HermitianMatrix(matrix_from_json(j));
}

void write_matrix_file(const std::filesystem::path& path, const Matrix& m) {
  std::ofstream os(path);
  if (!os) throw InputError("cannot open " + path.string() + " for writing");
  os << matrix_to_json(m).dump(2) << '\n';
}

Matrix read_matrix_file(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw InputError("cannot open " + path.string());
  nlohmann::json j;
  try {
    is >> j;
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError(path.string() + ": " + e.what());
  }
  return matrix_from_json(j);
}

}  // namespace wyd
