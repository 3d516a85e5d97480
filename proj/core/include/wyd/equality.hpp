#pragma once

// Constructors and detectors for equality in the joint convexity and
// monotonicity of J_p and the Upsilon/Phi/Psi trace functionals.

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "wyd/gap_report.hpp"
#include "wyd/inequalities.hpp"
#include "wyd/linalg.hpp"

namespace wyd {

inline constexpr double kResolventSamples[] = {0.1, 0.37, 1.0, 2.5, 10.0};
inline constexpr double kFlowSamples[] = {0.05, 0.13, 0.29, 0.61};
inline constexpr double kEqualityPSamples[] = {0.3, 0.7, 1.0, 1.3, 1.7};

struct ConditionCheck {
  std::string name;
  double max_deviation = 0.0;
  double threshold = 0.0;
  bool passed = false;
};

struct EqualityVerdicts {
  std::vector<ConditionCheck> checks;

  bool all_pass() const;
  bool all_fail() const;
  /// All pass or all fail.
  bool coherent() const;
  const ConditionCheck& at(const std::string& name) const;
  /// One deviation report per check, plus a coherence report.
  std::vector<GapReport> to_reports(const std::string& prefix) const;
};

/// ||x - y|| / max(1, ||x|| + ||y||).
double relative_deviation(const Matrix& x, const Matrix& y);
/// |x - y| / max(1, |x| + |y|) with y a sum whose absolute parts are `scale`.
double relative_deviation(double x, double y, double scale);

/// Conditions for sum_j J_p(K, A_j, B_j) = J_p(K, sum A_j, sum B_j):
/// additivity at all p_samples and at p_samples[0]; resolvent identity at
/// t_samples; modular flow identity at flow_samples; log identity.
/// Needs positive definite pairs; singular pairs with K = I fall back to
/// check_factorization_conditions, otherwise KernelError.
EqualityVerdicts check_equality_conditions(
    const InstanceFamily& fam, std::span<const double> t_samples = kResolventSamples,
    std::span<const double> p_samples = kEqualityPSamples,
    std::span<const double> flow_samples = kFlowSamples);

/// K = I form for psd pairs with ker B_j inside ker A_j:
/// A_j^{it} B_j^{-it} = A^{it} B^{-it} P_j at flow_samples, and additivity at p.
EqualityVerdicts check_factorization_conditions(
    const InstanceFamily& fam, std::span<const double> flow_samples = kFlowSamples,
    double p = 0.5);

/// A_j = A D^{-1} D_j, B_j = B D^{-1} D_j with K = I. Each D_j must be psd,
/// nonzero and commute with A and B (InputError otherwise). Additivity is
/// verified at p = 0.5, 1, 1.5 to 1e-9 (NumericalError otherwise).
InstanceFamily construct_equality_family(const HermitianMatrix& a, const HermitianMatrix& b,
                                         const std::vector<HermitianMatrix>& d_list);

/// Tensor-factor subalgebra M_{d1} (x) I (factor first) or I (x) M_{d2}.
struct SubalgebraSpec {
  Index d1 = 0;
  Index d2 = 0;
  Factor factor = Factor::first;
};

Matrix conditional_expectation(const SubalgebraSpec& n, const Matrix& a);
HermitianMatrix conditional_expectation(const SubalgebraSpec& n, const HermitianMatrix& a);

/// Petz recovery X -> Q^{1/2} E(Q)^{-1/2} X E(Q)^{-1/2} Q^{1/2}.
Matrix petz_recovery(const SubalgebraSpec& n, const HermitianMatrix& q, const Matrix& x);

/// Conditions (i) Petz recovery, (ii) flow identity, (iv) J_p preservation
/// at p, for the list Q_1..Q_m with ker Q_m inside every ker Q_j.
EqualityVerdicts sufficiency_check(const SubalgebraSpec& n, const std::vector<HermitianMatrix>& q,
                                   std::span<const double> flow_samples = kFlowSamples,
                                   double p = 0.5);

struct Dilation {
  Matrix unitary;
  double unitarity_residual = 0.0;
};

/// [[K, L], [-L, K]] with L = U (1 - |K|^2)^{1/2}, K = U|K|.
/// ContractionError when ||K|| > 1 + 1e-12.
Dilation unitary_dilation(const Matrix& k);

/// |J_p(K, A, B) - J_p(U, A (+) 0, B (+) 0)| against 1e-9 scale, the
/// right side on the modular route.
GapReport dilation_embedding_check(const Matrix& k, const HermitianMatrix& a,
                                   const HermitianMatrix& b, double p);

struct UnitaryReduction {
  InstanceFamily family;
  double max_deviation = 0.0;
};

/// (A_j, K B_j K^*) with K replaced by I. Checks J_p(K, A_j, B_j) =
/// J_p(I, A_j, K B_j K^*) at p to 1e-10 (NumericalError otherwise).
UnitaryReduction reduce_unitary_K(const InstanceFamily& fam, double p = 0.5);

/// One summand H_n^L (x) H_n^R of H_2.
struct StructureBlock {
  HermitianMatrix a_left;   ///< on H_1 (x) H_n^L
  HermitianMatrix a_right;  ///< on H_n^R (or H_n^R (x) H_3 for SSA states)
  HermitianMatrix b_right;  ///< on H_n^R; unused for SSA states
  std::optional<HermitianMatrix> b_left;  ///< defaults to a_left
};

struct BlockStructure {
  Matrix basis;  ///< unitary on H_2, columns are the adapted basis
  std::vector<std::pair<Index, Index>> blocks;  ///< (d_n^L, d_n^R)
  std::vector<HermitianMatrix> a_left, a_right, b_left, b_right;

  Index d2() const;
};

struct StructureState {
  HermitianMatrix a12;
  HermitianMatrix b12;
  BlockStructure structure;
  Index d1 = 0;
  Index d2 = 0;
};

/// A12 = (+)_n A_n^L (x) A_n^R, B12 = (+)_n B_n^L (x) B_n^R with the basis
/// index k = offset_n + l d_n^R + r of H_2.
StructureState construct_structure_state(const std::vector<StructureBlock>& blocks, Index d1);

/// Structure state in the bipartite form rotated by a unitary on H_2.
StructureState rotate_structure_state(const StructureState& s, const Matrix& u2);

struct SsaStructureState {
  HermitianMatrix a123;
  std::array<Index, 3> dims{};
  HermitianMatrix f_left;   ///< on H_1 (x) H_2
  HermitianMatrix f_right;  ///< on H_2 (x) H_3
};

/// A123 = (+)_n A_n^L (x) A_n^R with A_n^R on H_n^R (x) H_3.
SsaStructureState construct_ssa_structure_state(const std::vector<StructureBlock>& blocks,
                                                Index d1, Index d3);

/// A123 = (F_L (x) I3)(I1 (x) F_R) and [F_L (x) I3, I1 (x) F_R] = 0, to 1e-10.
EqualityVerdicts check_commuting_factorization(const HermitianMatrix& a123,
                                               const HermitianMatrix& f_left,
                                               const HermitianMatrix& f_right,
                                               std::array<Index, 3> dims);

/// A_j = A (D^{-1} D_j (x) I) for D_j on the first factor commuting with A.
std::vector<HermitianMatrix> construct_cor_ssas_family(const HermitianMatrix& a,
                                                       const std::vector<HermitianMatrix>& d_list,
                                                       Index d1, Index d2);

/// Validates [A_j, D_j (x) I] = 0 and A_j = A (D^{-1} D_j (x) I), and checks
/// additivity of J_p(I, A, Tr_2 A (x) I) at p_samples.
EqualityVerdicts check_cor_ssas(const std::vector<HermitianMatrix>& a_list,
                                const std::vector<HermitianMatrix>& d_list, Index d1, Index d2,
                                std::span<const double> p_samples = kEqualityPSamples);

/// A_jk = A_k D^{-1} D_j for blocks A_k commuting with every D_j.
std::vector<std::vector<HermitianMatrix>> construct_phi_family(
    const std::vector<HermitianMatrix>& blocks, const std::vector<HermitianMatrix>& d_list);

/// Phi^ family: additivity of Phi^ and of J_p(I, A~, Tr_2 A~ (x) I) for the
/// block-diagonal A~, at p_samples; the factorization when d_list is given.
EqualityVerdicts check_phi_equality(const std::vector<std::vector<HermitianMatrix>>& families,
                                    std::span<const double> p_samples = kEqualityPSamples,
                                    const std::vector<HermitianMatrix>* d_list = nullptr);

/// Psi^ family on M_{d1} (x) M_{d2}: additivity of Psi^ and of
/// J_p(I, A, Tr_2 A (x) I), and the factorization when d_list is given.
EqualityVerdicts check_psi_equality(const std::vector<HermitianMatrix>& a_list, Index d1, Index d2,
                                    std::span<const double> p_samples = kEqualityPSamples,
                                    const std::vector<HermitianMatrix>* d_list = nullptr);

}  // namespace wyd
