#pragma once

// Block decomposition of the *-algebra generated by Hermitian matrices.
//
// With W = structure.basis, every commutant element Y satisfies
// W^* Y W = (+)_n Y_n (x) I_{d_n^R} and every algebra element X satisfies
// W^* X W = (+)_n I_{d_n^L} (x) X_n. Index inside block n is l * d_n^R + r.

#include <cstdint>
#include <vector>

#include "wyd/equality.hpp"
#include "wyd/linalg.hpp"

namespace wyd {

/// Orthonormal (Frobenius) basis of the unital algebra generated by `gens`.
std::vector<Matrix> algebra_basis(const std::vector<HermitianMatrix>& gens);
/// Orthonormal basis of {Y : [Y, g] = 0 for every generator}.
std::vector<Matrix> commutant_basis(const std::vector<HermitianMatrix>& gens);

struct WedderburnResult {
  BlockStructure structure;  ///< factor lists are left empty
  Index algebra_dim = 0;
  Index commutant_dim = 0;
  double reconstruction_error = 0.0;
  int attempts = 0;
};

/// Throws NumericalError when 10 random central elements fail to split the
/// blocks cleanly (eigenvalue clusters closer than 1e-8 relative).
WedderburnResult wedderburn_decompose(const std::vector<HermitianMatrix>& generators,
                                      std::uint64_t seed = 0x5eedULL);

}  // namespace wyd
