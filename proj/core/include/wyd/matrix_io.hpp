#pragma once

// Matrix JSON schema shared by every file the tools read or write:
//   {"dim": n, "re": [[...n reals...] x n], "im": [[...] x n]}

#include <filesystem>

#include <nlohmann/json.hpp>

#include "wyd/linalg.hpp"

namespace wyd {

nlohmann::json matrix_to_json(const Matrix& m);
inline nlohmann::json matrix_to_json(const HermitianMatrix& m) { return matrix_to_json(m.matrix()); }

/// Throws InputError on missing fields or non-numeric entries, DimensionError
/// on non-square or mismatched arrays.
Matrix matrix_from_json(const nlohmann::json& j);
HermitianMatrix hermitian_from_json(const nlohmann::json& j);

void write_matrix_file(const std::filesystem::path& path, const Matrix& m);
Matrix read_matrix_file(const std::filesystem::path& path);

}  // namespace wyd
