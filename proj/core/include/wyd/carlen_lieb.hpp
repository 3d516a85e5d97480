#pragma once

// Trace functionals:
//   Upsilon_{p,q}(K, A) = Tr (K^* A^p K)^{q/p}
//   Phi(A_1, ..., A_n)  = Tr (sum_k A_k^p)^{1/p}
//   Psi(A12)            = Tr_1 (Tr_2 A12^p)^{1/p}
// and the hatted forms F^ = (F - Tr(linear part) / p) / (p - 1), which are
// convex in the argument for p in (0, 2). At p = 1 the conditional entropy
// is used; the p != 1 formula tends to it plus Tr(linear part).

#include <array>
#include <vector>

#include "wyd/gap_report.hpp"
#include "wyd/linalg.hpp"

namespace wyd {

double upsilon(const Matrix& k, const HermitianMatrix& a, double p, double q);
double upsilon_hat(const Matrix& k, const HermitianMatrix& a, double p);
/// (K^* A^p K)^{1/p}.
HermitianMatrix upsilon_minimizer(const Matrix& k, const HermitianMatrix& a, double p);

double phi(double p, const std::vector<HermitianMatrix>& blocks);
double phi_hat(double p, const std::vector<HermitianMatrix>& blocks);

double psi(double p, const HermitianMatrix& a12, Index d1, Index d2);
double psi_hat(double p, const HermitianMatrix& a12, Index d1, Index d2);

/// |d2^{(1+p)/p} Psi(A12) - Phi({(I (x) W_n) A12 (I (x) W_n)^*})| against 1e-9 scale.
GapReport psi_block_identity(const HermitianMatrix& a12, Index d1, Index d2, double p);

/// Subadditivity gaps sum_j F(X_j) - F(sum_j X_j) for the hatted functionals.
GapReport upsilon_hat_subadditivity_gap(const Matrix& k, const std::vector<HermitianMatrix>& a,
                                        double p, Tolerance tol = {});
/// families[j] is the block list (A_j1, A_j2, ...).
GapReport phi_hat_subadditivity_gap(const std::vector<std::vector<HermitianMatrix>>& families,
                                    double p, Tolerance tol = {});
GapReport psi_hat_subadditivity_gap(const std::vector<HermitianMatrix>& a12, Index d1, Index d2,
                                    double p, Tolerance tol = {});

/// Hat gap Psi^(A123) - Psi^(A23) and the oriented plain Psi gap.
/// At p = 1 the SSA entropy combination is attached to the hat report.
std::array<GapReport, 2> psi_monotonicity_gap(const HermitianMatrix& a123,
                                              std::array<Index, 3> dims, double p,
                                              Tolerance tol = {});

/// Tr_3 [Tr_2 (Tr_1 A123)^p]^{1/p} against Tr_3 Tr_1 (Tr_2 A123^p)^{1/p},
/// oriented <= for p > 1 and >= for p < 1. The signed difference
/// (second minus first) is attached to params.
GapReport triple_minkowski_gap(const HermitianMatrix& a123, std::array<Index, 3> dims, double p,
                               Tolerance tol = {});

}  // namespace wyd
