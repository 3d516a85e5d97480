#include <cmath>
#include <numbers>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wyd/errors.hpp"
#include "wyd/linalg.hpp"
#include "wyd/pauli.hpp"

using namespace wyd;

namespace {

double dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

}  // namespace

TEST(GeneralizedPaulis, DimensionTwo) {
  const auto& f = generalized_paulis(2);
  ASSERT_EQ(f.ops.size(), 4u);
  Matrix x(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  z << 1, 0, 0, -1;
  EXPECT_LT(dist(f.shift, x), 1e-15);
  EXPECT_LT(dist(f.clock, z), 1e-15);
  EXPECT_LT(dist(f.ops[0], Matrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(dist(f.ops[1], z), 1e-15);
  EXPECT_LT(dist(f.ops[2], x), 1e-15);
  EXPECT_LT(dist(f.ops[3], x * z), 1e-15);
  EXPECT_THROW(generalized_paulis(1), DimensionError);
}

TEST(GeneralizedPaulis, UnitaryAndWeyl) {
  for (Index d = 2; d <= 6; ++d) {
    const auto& f = generalized_paulis(d);
    ASSERT_EQ(f.ops.size(), static_cast<std::size_t>(d * d));
    for (const auto& w : f.ops) EXPECT_LT(dist(w.adjoint() * w, Matrix::Identity(d, d)), 1e-12);
    // Z X = omega X Z
    const Complex omega = std::polar(1.0, 2.0 * std::numbers::pi / double(d));
    EXPECT_LT(dist(f.clock * f.shift, omega * f.shift * f.clock), 1e-12);
    // shift sends e_k to e_{k+1}
    for (Index k = 0; k < d; ++k) EXPECT_EQ(f.shift((k + 1) % d, k), Complex(1.0));
    // cached
    EXPECT_EQ(&f, &generalized_paulis(d));
  }
}

TEST(PauliAverage, Completeness) {
  oracle::Gen g(51);
  for (Index d = 2; d <= 5; ++d)
    for (int t = 0; t < 100; ++t) {
      const Matrix a = g.gaussian(d, d);
      EXPECT_LT((pauli_average(a) - a.trace() * Matrix::Identity(d, d)).norm(), 1e-12 * (1 + a.norm()));
    }
}

TEST(ClockTwirl, DiagonalProjection) {
  oracle::Gen g(52);
  for (Index d = 2; d <= 5; ++d) {
    const Matrix a = g.gaussian(d, d);
    const Matrix want = a.diagonal().asDiagonal();
    EXPECT_LT(dist(clock_twirl(a), want), 1e-12);
  }
}

TEST(ShiftSum, DiagonalGivesTrace) {
  oracle::Gen g(53);
  for (Index d = 2; d <= 5; ++d) {
    Eigen::VectorXcd v(d);
    for (Index i = 0; i < d; ++i) v(i) = g.uniform(-1, 1);
    const Matrix dm = v.asDiagonal();
    EXPECT_LT(dist(shift_sum(dm), dm.trace() * Matrix::Identity(d, d)), 1e-12);
  }
}

TEST(TwirlFirstFactor, ProductInput) {
  oracle::Gen g(54);
  const Matrix rho = g.pd(2), sigma = g.pd(3);
  const Matrix out = twirl_first_factor(kron(rho, sigma), 2, 3);
  EXPECT_LT(dist(out, kron(Matrix(Matrix::Identity(2, 2)), Matrix(rho.trace() * sigma))), 1e-12);
}

TEST(TwirlFirstFactor, PartialTraceOracleAndBasisChange) {
  oracle::Gen g(55);
  for (Index d1 = 2; d1 <= 3; ++d1)
    for (Index d2 = 1; d2 <= 3; ++d2)
      for (int t = 0; t < 10; ++t) {
        const Matrix a = g.hermitian(d1 * d2);
        const Matrix want = oracle::kron(Matrix::Identity(d1, d1), oracle::partial_trace(a, d1, d2, true));
        const Matrix out = twirl_first_factor(a, d1, d2);
        EXPECT_LT(dist(out, want), 1e-12 * (1 + a.norm()));
        EXPECT_LT(dist(twirl_first_factor(a, d1, d2, g.unitary(d1)), want), 1e-12 * (1 + a.norm()));
        // idempotent up to the factor d1 carried by I_1 (x) Tr_1, and trace scaling
        EXPECT_LT(dist(twirl_first_factor(out, d1, d2), double(d1) * out), 1e-11 * (1 + a.norm()));
        EXPECT_NEAR(std::abs(out.trace() - double(d1) * a.trace()), 0.0, 1e-11 * (1 + a.norm()));
      }
  EXPECT_THROW(twirl_first_factor(Matrix::Identity(4, 4), 2, 3), DimensionError);
  EXPECT_THROW(twirl_first_factor(Matrix::Identity(4, 4), 2, 2, Matrix(2.0 * Matrix::Identity(2, 2))),
               InputError);
}

TEST(SecondFactorBlocks, AverageIsPartialTrace) {
  oracle::Gen g(56);
  for (Index d2 = 2; d2 <= 3; ++d2) {
    const Matrix a = g.pd(2 * d2);
    const auto blocks = second_factor_blocks(a, 2, d2);
    ASSERT_EQ(blocks.size(), static_cast<std::size_t>(d2 * d2));
    Matrix sum = Matrix::Zero(2 * d2, 2 * d2);
    for (const auto& b : blocks) sum += b;
    const Matrix want = double(d2) * oracle::kron(oracle::partial_trace(a, 2, d2, false), Matrix::Identity(d2, d2));
    EXPECT_LT(dist(sum, want), 1e-12);
  }
}
