#pragma once

// Signed-gap forms of the convexity and monotonicity inequalities for J_p
// and related trace functionals. Every GapReport is oriented so that
// gap >= 0 means the inequality holds.

#include <array>
#include <vector>

#include "wyd/entropy.hpp"
#include "wyd/gap_report.hpp"
#include "wyd/linalg.hpp"

namespace wyd {

/// K together with pairs (A_j, B_j) of one common dimension.
struct InstanceFamily {
  Matrix k;
  std::vector<HermitianMatrix> a;
  std::vector<HermitianMatrix> b;

  Index dim() const { return k.rows(); }
  std::size_t size() const { return a.size(); }
  HermitianMatrix a_sum() const;
  HermitianMatrix b_sum() const;
  /// Shapes agree, at least one pair, all matrices psd.
  void validate() const;
  bool positive_definite() const;
};

enum class Functional { j_p, j_tilde_p };

/// Sum_j F(K, A_j, B_j) - F(K, sum A_j, sum B_j).
GapReport subadditivity_gap(Functional f, const InstanceFamily& fam, double p,
                            Tolerance tol = {});

/// Tr K^* A^p K B^r (first regime) or Tr K^* A^p K B^{1-r} (second regime).
enum class LiebAndoRegime { concave, convex };
LiebAndoRegime lieb_ando_regime(double p, double r);
double lieb_ando_value(const Matrix& k, const HermitianMatrix& a, const HermitianMatrix& b,
                       double p, double r);
/// Jensen gap with equal weights 1/m. Concave regime p, r >= 0, p + r <= 1;
/// convex regime 1 < r <= p <= 2.
GapReport lieb_ando_gap(const InstanceFamily& fam, double p, double r, Tolerance tol = {});

struct JensenFunction {
  enum class Kind { power, log } kind = Kind::power;
  double s = 0.5;
};

/// Smallest eigenvalue of f(lambda A1 + (1-lambda) A2) - lambda f(A1) - (1-lambda) f(A2).
double operator_jensen_gap(const JensenFunction& f, const HermitianMatrix& a1,
                           const HermitianMatrix& a2, double lambda);

/// J_p(V1 (x) K2, A12, B12) - J_p(K2, Tr_1 A12, Tr_1 B12). When A12 and B12
/// are of the form I (x) X the weak-reversal values are attached to params.
GapReport partial_trace_monotonicity_gap(const Matrix& k2, const Matrix& v1,
                                         const HermitianMatrix& a12, const HermitianMatrix& b12,
                                         Index d1, Index d2, double p, Tolerance tol = {});

/// The three traces of the weak reversal chain for A12 = I (x) A2,
/// B12 = I (x) B2 and K2 = Tr_1 K12 / d1:
/// { Tr K2^* A2^p K2 B2^{1-p}, (1/d1) T12, T12 }.
std::array<double, 3> weak_reversal(const Matrix& k12, const HermitianMatrix& a2,
                                    const HermitianMatrix& b2, Index d1, double p);

/// J_p(I, A123, A12 (x) I3) - J_p(I, A23, A2 (x) I3). At p = 1 the entropy
/// combination S(A12) + S(A23) - S(A2) - S(A123) is attached to params.
GapReport ssa_gap(const HermitianMatrix& a123, std::array<Index, 3> dims, double p,
                  Tolerance tol = {});

/// sum_j |e_j><e_j| (x) A_j and the same for B.
struct BlockEmbedding {
  HermitianMatrix a12;
  HermitianMatrix b12;
  Index m = 0;
  Index d = 0;
};
BlockEmbedding block_embed(const InstanceFamily& fam);
/// |J_p(I (x) K, A~, B~) - sum_j J_p(K, A_j, B_j)| against 1e-10 scale.
GapReport block_additivity_check(const InstanceFamily& fam, double p);

struct SchwarzTerm {
  HermitianMatrix a;
  HermitianMatrix b;
  Matrix x;
};

struct SchwarzResult {
  GapReport report;
  /// ||M_j||_2 for M_j = (L_Aj + t R_Bj)^{-1/2}(X_j) - (L_Aj + t R_Bj)^{1/2}(Lambda).
  std::vector<double> residual_norms;
  double residual_sum = 0.0;
  /// |gap - sum_j ||M_j||^2|.
  double identity_deviation = 0.0;
};

/// Subadditivity of (A, B, X) -> Tr X^* (L_A + t R_B)^{-1}(X) for t >= 0.
SchwarzResult schwarz_gap(const std::vector<SchwarzTerm>& terms, double t, Tolerance tol = {});

/// Subadditivity of (A, X) -> Tr X^* A^{-1} X.
GapReport p2_convexity_gap(const std::vector<HermitianMatrix>& a, const std::vector<Matrix>& x,
                           Tolerance tol = {});

}  // namespace wyd
