#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wyd/errors.hpp"
#include "wyd/linalg.hpp"
#include "wyd/matrix_io.hpp"

using namespace wyd;

namespace {

double dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

HermitianMatrix H(const Matrix& m) { return HermitianMatrix(m); }

}  // namespace

TEST(HermitianMatrix, SymmetrizesSmallAsymmetry) {
  Matrix m(2, 2);
  m << 1.0, Complex(0.5, 1e-10), Complex(0.5, 0.0), 2.0;
  HermitianMatrix h(m);
  EXPECT_EQ(h(0, 1), std::conj(h(1, 0)));
}

TEST(HermitianMatrix, RejectsBadInput) {
  Matrix m(2, 2);
  m << 1.0, 1.0, 0.0, 1.0;
  EXPECT_THROW(HermitianMatrix{m}, InputError);
  Matrix nan = Matrix::Identity(2, 2);
  nan(0, 0) = std::nan("");
  EXPECT_THROW(HermitianMatrix{nan}, InputError);
  EXPECT_THROW(HermitianMatrix{Matrix::Zero(2, 3)}, DimensionError);
}

TEST(EigHermitian, DiagonalInput) {
  auto s = eig_hermitian(HermitianMatrix::diagonal({3.0, 1.0}));
  EXPECT_DOUBLE_EQ(s.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues(1), 3.0);
  EXPECT_NEAR(std::abs(s.eigenvectors(1, 0)), 1.0, 1e-15);
  EXPECT_NEAR(std::abs(s.eigenvectors(0, 1)), 1.0, 1e-15);
}

TEST(EigHermitian, Identity) {
  auto s = eig_hermitian(HermitianMatrix::identity(2));
  EXPECT_DOUBLE_EQ(s.eigenvalues(0), 1.0);
  EXPECT_DOUBLE_EQ(s.eigenvalues(1), 1.0);
  EXPECT_LT(dist(s.eigenvectors.adjoint() * s.eigenvectors, Matrix::Identity(2, 2)), 1e-14);
}

TEST(EigHermitian, PauliX) {
  Matrix x(2, 2);
  x << 0, 1, 1, 0;
  auto s = eig_hermitian(H(x));
  EXPECT_NEAR(s.eigenvalues(0), -1.0, 1e-15);
  EXPECT_NEAR(s.eigenvalues(1), 1.0, 1e-15);
  const double r = 1.0 / std::sqrt(2.0);
  EXPECT_NEAR(std::abs(s.eigenvectors(0, 0)), r, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenvectors(0, 0) + s.eigenvectors(1, 0)), 0.0, 1e-14);
  EXPECT_NEAR(std::abs(s.eigenvectors(0, 1) - s.eigenvectors(1, 1)), 0.0, 1e-14);
}

TEST(EigHermitian, ReconstructionAndUnitarityRandom) {
  oracle::Gen g(11);
  for (int d = 1; d <= 8; ++d) {
    for (int t = 0; t < 10; ++t) {
      auto a = H(g.hermitian(d));
      auto s = eig_hermitian(a);
      const double scale = std::max(1.0, a.matrix().norm());
      EXPECT_LT(dist(s.reconstruct(), a.matrix()), 1e-12 * scale);
      EXPECT_LT(dist(s.eigenvectors.adjoint() * s.eigenvectors, Matrix::Identity(d, d)), 1e-12);
      for (Index i = 1; i < d; ++i) EXPECT_LE(s.eigenvalues(i - 1), s.eigenvalues(i));
    }
  }
}

TEST(MatFunc, Examples) {
  auto sq = mat_func(HermitianMatrix::diagonal({1.0, 4.0}), [](double x) { return std::sqrt(x); }, 0.0);
  EXPECT_LT(dist(sq.matrix(), oracle::diag({1, 2})), 1e-15);
  auto inv = mat_func(HermitianMatrix::diagonal({0.0, 3.0}), [](double x) { return 1.0 / x; }, 0.0);
  EXPECT_LT(dist(inv.matrix(), oracle::diag({0, 1.0 / 3.0})), 1e-15);
  auto lg = mat_func(HermitianMatrix::diagonal({2.0, 2.0}), [](double x) { return std::log(x); }, 0.0);
  EXPECT_LT(dist(lg.matrix(), oracle::diag({std::log(2.0), std::log(2.0)})), 1e-15);
}

TEST(MatFunc, DomainError) {
  EXPECT_THROW(mat_func(HermitianMatrix::diagonal({1.0, 2.0}), [](double) { return std::nan(""); }, 0.0),
               DomainError);
}

TEST(MatFunc, PowerAndLogAgainstSchurPade) {
  oracle::Gen g(12);
  for (int d = 2; d <= 5; ++d) {
    for (double p : {-0.5, 0.3, 0.5, 1.7}) {
      const Matrix a = g.pd(d);
      EXPECT_LT(dist(mat_power(H(a), p).matrix(), oracle::power(a, p)), 1e-10 * (1 + a.norm()));
    }
    const Matrix a = g.pd(d);
    EXPECT_LT(dist(mat_log(H(a)).matrix(), oracle::log(a)), 1e-10);
  }
}

TEST(MatFunc, PowerComposition) {
  oracle::Gen g(13);
  for (int t = 0; t < 20; ++t) {
    const Index d = 2 + t % 4;
    const double p = g.uniform(0.1, 2.0), q = g.uniform(0.1, 2.0);
    Matrix a = g.pd(d);
    if (t % 3 == 0) {
      // rank-deficient: project out one direction
      Matrix u = g.unitary(d);
      a = oracle::herm(u.leftCols(d - 1) * u.leftCols(d - 1).adjoint() * a * u.leftCols(d - 1) *
                       u.leftCols(d - 1).adjoint());
    }
    auto lhs = mat_power(mat_power(H(a), p), q);
    auto rhs = mat_power(H(a), p * q);
    EXPECT_LT(dist(lhs.matrix(), rhs.matrix()), 1e-10 * std::max(1.0, rhs.matrix().norm()));
  }
}

TEST(MatFunc, SupportInverseProperty) {
  oracle::Gen g(14);
  for (int t = 0; t < 20; ++t) {
    const Index d = 2 + t % 3;
    const Matrix u = g.unitary(d);
    Eigen::VectorXd ev(d);
    for (Index i = 0; i < d; ++i) ev(i) = i < t % d ? 0.0 : g.uniform(0.2, 3.0);
    const auto b = H(u * ev.cast<Complex>().asDiagonal() * u.adjoint());
    auto inv = mat_func(b, [](double x) { return 1.0 / x; }, 0.0);
    auto p = support_projection(b);
    EXPECT_LT(dist(p.matrix() * inv.matrix() * b.matrix(), p.matrix()), 1e-10);
  }
}

TEST(SupportProjection, Examples) {
  EXPECT_LT(dist(support_projection(HermitianMatrix::diagonal({0.0, 3.0})).matrix(), oracle::diag({0, 1})),
            1e-15);
  EXPECT_LT(dist(support_projection(HermitianMatrix::identity(3)).matrix(), Matrix::Identity(3, 3)), 1e-14);
  Eigen::VectorXcd v(3);
  v << 1.0, Complex(0, 1), 2.0;
  v.normalize();
  const Matrix proj = v * v.adjoint();
  EXPECT_LT(dist(support_projection(H(proj)).matrix(), proj), 1e-12);
}

TEST(ClassifyPsd, Kinds) {
  EXPECT_EQ(classify_psd(HermitianMatrix::diagonal({1.0, 2.0})).kind, Definiteness::positive_definite);
  auto c = classify_psd(HermitianMatrix::diagonal({0.0, 2.0}));
  EXPECT_EQ(c.kind, Definiteness::positive_semidefinite);
  EXPECT_EQ(c.rank, 1);
  EXPECT_EQ(classify_psd(HermitianMatrix::diagonal({-1e-3, 2.0})).kind, Definiteness::indefinite);
  // within kernel tolerance
  EXPECT_TRUE(is_psd(HermitianMatrix::diagonal({-1e-12, 2.0})));
  EXPECT_THROW(require_positive_definite(HermitianMatrix::diagonal({0.0, 1.0}), "B"), KernelError);
  EXPECT_THROW(require_psd(HermitianMatrix::diagonal({-1.0, 1.0}), "A"), InputError);
}

TEST(CommutingQuotient, Examples) {
  auto q1 = commuting_quotient(HermitianMatrix::diagonal({2.0, 0.0}), HermitianMatrix::diagonal({4.0, 0.0}));
  EXPECT_LT(dist(q1.matrix(), oracle::diag({0.5, 0})), 1e-15);
  auto q2 = commuting_quotient(HermitianMatrix::diagonal({3.0, 5.0}), HermitianMatrix::diagonal({3.0, 5.0}));
  EXPECT_LT(dist(q2.matrix(), Matrix::Identity(2, 2)), 1e-14);
  // eigenvalue-wise division on the support of A
  auto q3 = commuting_quotient(HermitianMatrix::diagonal({1.0, 2.0, 0.0}),
                               HermitianMatrix::diagonal({2.0, 2.0, 7.0}));
  EXPECT_LT(dist(q3.matrix(), oracle::diag({1.0 / 2.0, 2.0 / 2.0, 0.0})), 1e-14);
}

TEST(CommutingQuotient, Errors) {
  EXPECT_THROW(commuting_quotient(HermitianMatrix::diagonal({1.0, 1.0}), HermitianMatrix::diagonal({1.0, 0.0})),
               KernelError);
  Matrix x(2, 2);
  x << 1, 1, 1, 1;
  EXPECT_THROW(commuting_quotient(HermitianMatrix::diagonal({1.0, 2.0}), H(x + Matrix::Identity(2, 2))),
               CommutationError);
}

TEST(Kron, Examples) {
  EXPECT_LT(dist(kron(HermitianMatrix::identity(2), HermitianMatrix::diagonal({1.0, 2.0})).matrix(),
                 oracle::diag({1, 2, 1, 2})),
            0.0 + 1e-15);
  EXPECT_LT(dist(kron(HermitianMatrix::diagonal({1.0, 0.0}), HermitianMatrix::identity(2)).matrix(),
                 oracle::diag({1, 1, 0, 0})),
            1e-15);
}

TEST(Kron, MixedProductAndLoopOracle) {
  oracle::Gen g(15);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = g.gaussian(2, 2), b = g.gaussian(2, 2), c = g.gaussian(2, 2), d = g.gaussian(2, 2);
    EXPECT_LT(dist(kron(a, b) * kron(c, d), kron(Matrix(a * c), Matrix(b * d))), 1e-12);
    const Matrix e = g.gaussian(3, 2);
    EXPECT_EQ(kron(a, e), oracle::kron(a, e));
  }
}

TEST(PartialTrace, Examples) {
  oracle::Gen g(16);
  const Matrix rho = g.density(2), sigma = g.pd(3);
  const Matrix prod = kron(rho, sigma);
  EXPECT_LT(dist(partial_trace(prod, 2, 3, Factor::second), sigma.trace().real() * rho), 1e-14);
  EXPECT_LT(dist(partial_trace(prod, 2, 3, Factor::first), rho.trace().real() * sigma), 1e-14);
  EXPECT_LT(dist(partial_trace(Matrix(Matrix::Identity(4, 4)), 2, 2, Factor::first), 2.0 * Matrix::Identity(2, 2)),
            0.0 + 1e-15);
}

TEST(PartialTrace, LoopOracle) {
  oracle::Gen g(17);
  for (Index d1 = 1; d1 <= 3; ++d1)
    for (Index d2 = 1; d2 <= 3; ++d2) {
      const Matrix a = g.gaussian(d1 * d2, d1 * d2);
      EXPECT_LT(dist(partial_trace(a, d1, d2, Factor::first), oracle::partial_trace(a, d1, d2, true)), 1e-13);
      EXPECT_LT(dist(partial_trace(a, d1, d2, Factor::second), oracle::partial_trace(a, d1, d2, false)), 1e-13);
    }
  EXPECT_THROW(partial_trace(Matrix(Matrix::Identity(4, 4)), 2, 3, Factor::first), DimensionError);
}

TEST(PermuteFactors, SwapsProduct) {
  oracle::Gen g(18);
  const Matrix a = g.gaussian(2, 2), b = g.gaussian(3, 3), c = g.gaussian(2, 2);
  const std::vector<Index> dims{2, 3, 2}, perm{2, 0, 1};
  const Matrix abc = kron(kron(a, b), c);
  EXPECT_LT(dist(permute_factors(abc, dims, perm), kron(kron(c, a), b)), 1e-13);
}

TEST(Entropy, AgainstOracle) {
  oracle::Gen g(19);
  EXPECT_NEAR(entropy(HermitianMatrix::identity(3) * (1.0 / 3.0)), std::log(3.0), 1e-14);
  EXPECT_NEAR(entropy(HermitianMatrix::diagonal({1.0, 0.0})), 0.0, 1e-15);
  for (int d = 2; d <= 4; ++d) {
    const Matrix r = g.density(d);
    EXPECT_NEAR(entropy(H(r)), oracle::entropy(r), 1e-12);
  }
}

TEST(KernelContained, Cases) {
  EXPECT_TRUE(kernel_contained(HermitianMatrix::diagonal({1.0, 0.0}), HermitianMatrix::diagonal({2.0, 0.0})));
  EXPECT_FALSE(kernel_contained(HermitianMatrix::diagonal({1.0, 0.0}), HermitianMatrix::diagonal({2.0, 1.0})));
}

TEST(MatrixIo, RoundTripAndErrors) {
  oracle::Gen g(20);
  const Matrix m = g.gaussian(3, 3);
  EXPECT_EQ(matrix_from_json(matrix_to_json(m)), m);
  auto j = matrix_to_json(m);
  j["re"][0].erase(0);
  EXPECT_THROW(matrix_from_json(j), DimensionError);
  nlohmann::json bad = {{"dim", 1}, {"re", {{"x"}}}, {"im", {{0.0}}}};
  EXPECT_THROW(matrix_from_json(bad), InputError);
  EXPECT_THROW(matrix_from_json(nlohmann::json::object()), InputError);
}
