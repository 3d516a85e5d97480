#include "wyd/pauli.hpp"

#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>

#include "wyd/errors.hpp"

namespace wyd {

namespace {

PauliFamily build(Index d) {
  PauliFamily fam;
  fam.dim = d;
  fam.shift = Matrix::Zero(d, d);
  fam.clock = Matrix::Zero(d, d);
  for (Index k = 0; k < d; ++k) {
    fam.shift((k + 1) % d, k) = 1.0;
    fam.clock(k, k) = std::polar(1.0, 2.0 * std::numbers::pi * static_cast<double>(k) /
                                          static_cast<double>(d));
  }
  Matrix xj = Matrix::Identity(d, d);
  for (Index j = 0; j < d; ++j) {
    Matrix w = xj;
    for (Index k = 0; k < d; ++k) {
      fam.ops.push_back(w);
      w = w * fam.clock;
    }
    xj = fam.shift * xj;
  }
  return fam;
}

}  // namespace

const PauliFamily& generalized_paulis(Index d) {
  if (d < 2) throw DimensionError("generalized_paulis: d must be at least 2");
  static std::mutex mu;
  static std::map<Index, std::unique_ptr<PauliFamily>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[d];
  if (!slot) slot = std::make_unique<PauliFamily>(build(d));
  return *slot;
}

Matrix pauli_average(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("pauli_average: matrix must be square");
  const auto& fam = generalized_paulis(a.rows());
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  for (const auto& w : fam.ops) out += w * a * w.adjoint();
  return out / static_cast<double>(fam.dim);
}

Matrix clock_twirl(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("clock_twirl: matrix must be square");
  const auto& fam = generalized_paulis(a.rows());
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  Matrix zk = Matrix::Identity(a.rows(), a.cols());
  for (Index k = 0; k < fam.dim; ++k) {
    out += zk * a * zk.adjoint();
    zk = zk * fam.clock;
  }
  return out / static_cast<double>(fam.dim);
}

Matrix shift_sum(const Matrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("shift_sum: matrix must be square");
  const auto& fam = generalized_paulis(a.rows());
  Matrix out = Matrix::Zero(a.rows(), a.cols());
  Matrix xk = Matrix::Identity(a.rows(), a.cols());
  for (Index k = 0; k < fam.dim; ++k) {
    out += xk * a * xk.adjoint();
    xk = xk * fam.shift;
  }
  return out;
}

Matrix twirl_first_factor(const Matrix& a12, Index d1, Index d2, const std::optional<Matrix>& u) {
  if (a12.rows() != d1 * d2 || a12.cols() != d1 * d2) {
    throw DimensionError("twirl_first_factor: A12 does not match d1*d2");
  }
  if (u && (u->rows() != d1 || u->cols() != d1 || !is_unitary(*u))) {
    throw InputError("twirl_first_factor: U must be a d1 x d1 unitary");
  }
  const auto& fam = generalized_paulis(d1);
  const Matrix id2 = Matrix::Identity(d2, d2);
  Matrix out = Matrix::Zero(a12.rows(), a12.cols());
  for (const auto& w : fam.ops) {
    const Matrix v = kron(u ? Matrix(w * u->adjoint()) : w, id2);
    out += v * a12 * v.adjoint();
  }
  return out / static_cast<double>(d1);
}

std::vector<Matrix> second_factor_blocks(const Matrix& a12, Index d1, Index d2) {
  if (a12.rows() != d1 * d2 || a12.cols() != d1 * d2) {
    throw DimensionError("second_factor_blocks: A12 does not match d1*d2");
  }
  const auto& fam = generalized_paulis(d2);
  const Matrix id1 = Matrix::Identity(d1, d1);
  std::vector<Matrix> out;
  out.reserve(fam.ops.size());
  for (const auto& w : fam.ops) {
    const Matrix v = kron(id1, w);
    out.push_back(v * a12 * v.adjoint());
  }
  return out;
}

}  // namespace wyd
