#pragma once

// Generalized Pauli (shift/clock) operators X|e_k> = |e_{k+1}>,
// Z|e_k> = exp(2 pi i k / d)|e_k>, and twirls built from them.

#include <optional>
#include <vector>

#include "wyd/linalg.hpp"

namespace wyd {

struct PauliFamily {
  Index dim = 0;
  Matrix shift;
  Matrix clock;
  /// W_n = X^j Z^k with n = j * d + k.
  std::vector<Matrix> ops;
};

/// Cached per dimension; d >= 2.
const PauliFamily& generalized_paulis(Index d);

/// (1/d) sum_n W_n A W_n^*, which equals (Tr A) I.
Matrix pauli_average(const Matrix& a);

/// (1/d) sum_k Z^k A Z^{-k}: the diagonal part of A.
Matrix clock_twirl(const Matrix& a);
/// sum_k X^k A X^{-k}.
Matrix shift_sum(const Matrix& a);

/// (1/d1) sum_n (W_n U^* (x) I) A12 (W_n U^* (x) I)^* = I_1 (x) Tr_1 A12.
Matrix twirl_first_factor(const Matrix& a12, Index d1, Index d2,
                          const std::optional<Matrix>& u = std::nullopt);

/// The d2^2 blocks (I (x) W_n) A12 (I (x) W_n)^*.
std::vector<Matrix> second_factor_blocks(const Matrix& a12, Index d1, Index d2);

}  // namespace wyd
