#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "wyd/carlen_lieb.hpp"
#include "wyd/errors.hpp"
#include "wyd/variational.hpp"

using namespace wyd;

namespace {

HermitianMatrix H(const Matrix& m) { return HermitianMatrix(m); }

constexpr double kGrid[] = {0.25, 0.5, 0.75, 1.0, 1.25, 1.5, 1.75};

// Tr_1 (Tr_2 A^p)^{1/p} through Schur-Pade powers.
double psi_oracle(const Matrix& a, Index d1, Index d2, double p) {
  const Matrix inner = oracle::partial_trace(oracle::power(a, p), d1, d2, false);
  return oracle::power(inner, 1.0 / p).trace().real();
}

}  // namespace

TEST(Upsilon, Examples) {
  oracle::Gen g(81);
  const Matrix a = g.pd(3);
  for (double p : {0.5, 1.3, 2.0}) EXPECT_NEAR(upsilon(Matrix::Identity(3, 3), H(a), p, 1.0), a.trace().real(), 1e-12);
  const Matrix rho = g.density(3);
  EXPECT_NEAR(upsilon_hat(Matrix::Identity(3, 3), H(rho), 1.0), 0.0, 1e-13);
  Matrix one(1, 1);
  one << 1.0;
  EXPECT_NEAR(upsilon(one, HermitianMatrix::diagonal({3.0}), 1.7, 1.0), 3.0, 1e-14);
  Matrix k(1, 1);
  k << Complex(0.0, 2.0);
  EXPECT_NEAR(upsilon(k, HermitianMatrix::diagonal({3.0}), 0.5, 1.0), std::pow(4.0 * std::sqrt(3.0), 2.0), 1e-12);
}

TEST(Upsilon, AgainstOracle) {
  oracle::Gen g(82);
  for (int t = 0; t < 10; ++t) {
    const Matrix k = g.gaussian(3, 3), a = g.pd(3);
    for (double p : {0.4, 1.5}) {
      const double q = g.uniform(0.5, 2.0);
      const Matrix s = oracle::herm(k.adjoint() * oracle::power(a, p) * k);
      EXPECT_NEAR(upsilon(k, H(a), p, q), oracle::power(s, q / p).trace().real(), 1e-9 * (1 + s.norm()));
    }
  }
}

TEST(HatFunctionals, ContinuousAcrossOne) {
  oracle::Gen g(83);
  const Matrix k = g.gaussian(2, 2);
  const auto a = H(g.pd(2));
  std::vector<HermitianMatrix> blocks{H(g.pd(2)), H(g.pd(2))};
  const auto a12 = H(g.density(4));
  // the p != 1 formulas tend to the p = 1 branch plus the linear trace term
  const double lin_u = (k.adjoint() * a.matrix() * k).trace().real();
  const double lin_phi = blocks[0].trace() + blocks[1].trace();
  for (double eps : {1e-4, -1e-4}) {
    EXPECT_NEAR(upsilon_hat(k, a, 1.0 + eps), upsilon_hat(k, a, 1.0) + lin_u, 1e-2);
    EXPECT_NEAR(phi_hat(1.0 + eps, blocks), phi_hat(1.0, blocks) + lin_phi, 1e-2);
    EXPECT_NEAR(psi_hat(1.0 + eps, a12, 2, 2), psi_hat(1.0, a12, 2, 2) + a12.trace(), 1e-2);
  }
  EXPECT_THROW(upsilon_hat(k, a, 2.0), ParameterError);
}

TEST(Phi, Examples) {
  oracle::Gen g(84);
  const Matrix a = g.pd(3);
  EXPECT_NEAR(phi(0.7, {H(a)}), a.trace().real(), 1e-12);
  EXPECT_NEAR(phi(2.0, {HermitianMatrix::diagonal({1.0}), HermitianMatrix::diagonal({1.0})}), std::sqrt(2.0), 1e-15);
  const Matrix rho = g.density(3);
  const auto half = H(Matrix(rho / 2.0));
  const double want = oracle::entropy(rho) - 2.0 * oracle::entropy(Matrix(rho / 2.0));
  EXPECT_NEAR(want, -std::log(2.0), 1e-12);
  EXPECT_NEAR(phi_hat(1.0, {half, half}), want, 1e-12);
}

TEST(Psi, Examples) {
  const auto mixed = HermitianMatrix::identity(4) * 0.25;
  EXPECT_NEAR(psi(0.5, mixed, 2, 2), 2.0, 1e-14);
  EXPECT_NEAR(psi(0.5, mixed, 2, 2), std::pow(2.0, 1.0 / 0.5 - 1.0), 1e-14);
  oracle::Gen g(85);
  const Matrix rho = g.pd(2), sigma = g.pd(3);
  for (double p : {0.3, 1.0, 1.6}) {
    const double tr_sp = oracle::power(sigma, p).trace().real();
    EXPECT_NEAR(psi(p, H(kron(rho, sigma)), 2, 3), std::pow(tr_sp, 1.0 / p) * rho.trace().real(), 1e-10);
  }
  const Matrix a12 = g.density(6);
  EXPECT_NEAR(psi(1.0, H(a12), 2, 3), 1.0, 1e-13);
  const Matrix a1 = oracle::partial_trace(a12, 2, 3, false);
  EXPECT_NEAR(psi_hat(1.0, H(a12), 2, 3), oracle::entropy(a1) - oracle::entropy(a12), 1e-12);
  for (double p : {0.4, 1.7}) EXPECT_NEAR(psi(p, H(a12), 2, 3), psi_oracle(a12, 2, 3, p), 1e-10);
}

TEST(Psi, BlockIdentity) {
  oracle::Gen g(86);
  for (Index d2 : {2, 3})
    for (int t = 0; t < 5; ++t) {
      const auto a12 = H(g.pd(2 * d2));
      for (double p : {0.5, 1.5}) {
        auto r = psi_block_identity(a12, 2, d2, p);
        EXPECT_TRUE(r.passed()) << r.lhs;
        const auto& v = r.params["values"];
        EXPECT_NEAR(v[0].get<double>(), std::pow(double(d2), (1 + p) / p) * psi_oracle(a12.matrix(), 2, d2, p),
                    1e-9 * v[0].get<double>());
      }
    }
}

TEST(HatSubadditivity, RandomProperty) {
  oracle::Gen g(87);
  for (int t = 0; t < 15; ++t) {
    const Index d = 2 + t % 2;
    const Matrix k = g.gaussian(d, d);
    std::vector<HermitianMatrix> as{H(g.pd(d)), H(g.pd(d))};
    std::vector<std::vector<HermitianMatrix>> fams{{H(g.pd(d)), H(g.pd(d))}, {H(g.pd(d)), H(g.pd(d))}};
    std::vector<HermitianMatrix> bip{H(g.pd(2 * d)), H(g.pd(2 * d))};
    for (double p : kGrid) {
      EXPECT_TRUE(upsilon_hat_subadditivity_gap(k, as, p).passed()) << p;
      EXPECT_TRUE(phi_hat_subadditivity_gap(fams, p).passed()) << p;
      EXPECT_TRUE(psi_hat_subadditivity_gap(bip, 2, d, p).passed()) << p;
    }
  }
}

TEST(PsiMonotonicity, ProductAndEntropy) {
  oracle::Gen g(88);
  const Matrix a123 = oracle::kron(g.density(2), g.density(4));
  for (double p : {0.5, 1.0, 1.5}) {
    auto r = psi_monotonicity_gap(H(a123), {2, 2, 2}, p);
    EXPECT_NEAR(r[0].gap, 0.0, 1e-10);
    EXPECT_NEAR(r[1].gap, 0.0, 1e-10);
  }
  for (int t = 0; t < 10; ++t) {
    const Matrix a = g.density(8);
    auto r = psi_monotonicity_gap(H(a), {2, 2, 2}, 1.0);
    const Matrix a12 = oracle::partial_trace(a, 4, 2, false);
    const Matrix a23 = oracle::partial_trace(a, 2, 4, true);
    const Matrix a2 = oracle::partial_trace(a12, 2, 2, true);
    const double ssa = oracle::entropy(a12) - oracle::entropy(a) - oracle::entropy(a2) + oracle::entropy(a23);
    EXPECT_NEAR(r[0].gap, ssa, 1e-10);
    for (double p : {0.5, 1.5}) {
      auto rp = psi_monotonicity_gap(H(a), {2, 2, 2}, p);
      EXPECT_TRUE(rp[0].passed());
      EXPECT_TRUE(rp[1].passed());
    }
  }
}

TEST(TripleMinkowski, Cases) {
  oracle::Gen g(89);
  const Matrix prod = oracle::kron(oracle::kron(g.density(2), g.density(2)), g.density(2));
  for (double p : kGrid) EXPECT_NEAR(triple_minkowski_gap(H(prod), {2, 2, 2}, p).gap, 0.0, 1e-11);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = g.density(8);
    EXPECT_NEAR(triple_minkowski_gap(H(a), {2, 2, 2}, 1.0).gap, 0.0, 1e-12);
    for (double p : kGrid) EXPECT_TRUE(triple_minkowski_gap(H(a), {2, 2, 2}, p).passed());
  }
}

TEST(OrientationFlip, AcrossOne) {
  oracle::Gen g(90);
  for (int t = 0; t < 10; ++t) {
    const Matrix a = g.density(8);
    for (auto signed_diff : {+[](const Matrix& x, double p) {
                               return triple_minkowski_gap(HermitianMatrix(x), {2, 2, 2}, p)
                                   .params["signed_difference"]
                                   .get<double>();
                             },
                             +[](const Matrix& x, double p) {
                               return psi_monotonicity_gap(HermitianMatrix(x), {2, 2, 2}, p)[1]
                                   .params["signed_difference"]
                                   .get<double>();
                             }}) {
      const double lo = signed_diff(a, 0.5), hi = signed_diff(a, 1.5);
      const bool zero = std::abs(lo) < 1e-12 && std::abs(hi) < 1e-12;
      EXPECT_TRUE(zero || lo * hi < 0.0) << lo << " " << hi;
    }
  }
}

TEST(Variational, ScalarAndDiagonal) {
  Matrix one(1, 1);
  one << 1.0;
  auto r = upsilon_variational_check(one, HermitianMatrix::diagonal({2.0}), 1.5);
  EXPECT_NEAR(r.argmin(0, 0).real(), 2.0, 1e-5);
  for (const auto& rep : r.reports) EXPECT_TRUE(rep.passed()) << rep.name;
  const auto a = HermitianMatrix::diagonal({0.7, 1.9});
  auto r2 = upsilon_variational_check(Matrix::Identity(2, 2), a, 1.25);
  EXPECT_LT((r2.closed_form.matrix() - a.matrix()).norm(), 1e-12);
  EXPECT_LT((r2.argmin.matrix() - a.matrix()).norm(), 1e-5);
  EXPECT_THROW(upsilon_variational_check(one, HermitianMatrix::diagonal({2.0}), 0.5), ParameterError);
}

TEST(Variational, RandomAndMinimality) {
  oracle::Gen g(91);
  for (int t = 0; t < 4; ++t) {
    const Matrix k = g.gaussian(3, 3);
    const auto a = H(g.pd(3));
    const double p = 1.25 + 0.25 * (t % 3);
    auto r = upsilon_variational_check(k, a, p);
    EXPECT_LE((r.argmin.matrix() - r.closed_form.matrix()).norm(), 1e-5);
    for (const auto& rep : r.reports) EXPECT_TRUE(rep.passed()) << rep.name << " " << rep.lhs;
    const Matrix closed = oracle::power(oracle::herm(k.adjoint() * oracle::power(a.matrix(), p) * k), 1.0 / p);
    EXPECT_LT((r.closed_form.matrix() - closed).norm(), 1e-9 * (1 + closed.norm()));
    const double best = upsilon_objective(k, a, r.closed_form, p);
    for (int n = 0; n < 50; ++n) EXPECT_LE(best, upsilon_objective(k, a, H(g.pd(3)), p) + 1e-12);
  }
}
