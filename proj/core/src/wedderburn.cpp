#include "wyd/wedderburn.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>
#include <string>

#include "wyd/errors.hpp"

namespace wyd {

namespace {

using Vector = Eigen::VectorXcd;

constexpr int kMaxAttempts = 10;

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Index d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

// Gram-Schmidt step; returns the normalized residual or nothing if `m` is in the span.
std::optional<Vector> orthogonalize(const std::vector<Vector>& basis, Vector v) {
  const double n0 = v.norm();
  if (n0 == 0.0) return std::nullopt;
  for (int pass = 0; pass < 2; ++pass) {
    for (const auto& b : basis) v -= b.dot(v) * b;
  }
  const double n = v.norm();
  if (n <= 1e-9 * n0) return std::nullopt;
  return v / n;
}

// Orthonormal basis of the null space of a Hermitian psd matrix.
std::vector<Vector> null_space(const Matrix& h) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const RealVector& ev = es.eigenvalues();
  const double tol = 1e-9 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  std::vector<Vector> out;
  for (Index i = 0; i < ev.size(); ++i) {
    if (ev(i) <= tol) out.push_back(es.eigenvectors().col(i));
  }
  return out;
}

Matrix commutation_constraint(const Matrix& g) {
  // vec(gY - Yg) for column-major vec.
  const Index d = g.rows();
  const Matrix id = Matrix::Identity(d, d);
  return kron(id, g) - kron(g.transpose(), id);
}

Index dimension_of(const std::vector<HermitianMatrix>& gens) {
  if (gens.empty()) throw InputError("wedderburn: no generators");
  const Index d = gens.front().dim();
  for (const auto& g : gens) {
    if (g.dim() != d) throw DimensionError("wedderburn: generators differ in size");
  }
  return d;
}

Matrix projector(const std::vector<Vector>& basis, Index n) {
  Matrix p = Matrix::Zero(n, n);
  for (const auto& b : basis) p += b * b.adjoint();
  return p;
}

// Groups ascending eigenvalues; nothing if two neighbours are neither clearly
// equal nor clearly distinct.
std::optional<std::vector<std::vector<Index>>> cluster(const RealVector& ev) {
  const double scale = std::max(ev.cwiseAbs().maxCoeff(), 1e-300);
  std::vector<std::vector<Index>> out{{0}};
  for (Index i = 1; i < ev.size(); ++i) {
    const double gap = ev(i) - ev(i - 1);
    if (gap <= 1e-10 * scale) {
      out.back().push_back(i);
    } else if (gap >= 1e-8 * scale) {
      out.push_back({i});
    } else {
      return std::nullopt;
    }
  }
  return out;
}

struct Block {
  Index first_index;
  Index dl;
  Index dr;
  Matrix columns;  // d x (dl*dr), ordered l*dr + r
};

Matrix random_combination(const std::vector<Matrix>& basis, std::mt19937_64& rng) {
  std::normal_distribution<double> nd;
  Matrix m = Matrix::Zero(basis.front().rows(), basis.front().cols());
  for (const auto& b : basis) m += Complex(nd(rng), nd(rng)) * b;
  return m;
}

std::optional<Block> split_block(const Matrix& v, const std::vector<Matrix>& commutant,
                                 std::mt19937_64& rng) {
  const Index rank = v.cols();
  std::vector<Matrix> compressed;
  std::vector<Vector> span;
  for (const auto& y : commutant) {
    const Matrix c = v.adjoint() * y * v;
    if (auto u = orthogonalize(span, vec(c))) {
      span.push_back(*u);
      compressed.push_back(unvec(*u, rank));
    }
  }
  const auto dim = static_cast<Index>(span.size());
  const auto dl = static_cast<Index>(std::llround(std::sqrt(static_cast<double>(dim))));
  if (dl * dl != dim || rank % dl != 0) {
    throw NumericalError("wedderburn: compressed commutant has dimension " + std::to_string(dim) +
                             " on a block of rank " + std::to_string(rank),
                         static_cast<double>(dim));
  }
  const Index dr = rank / dl;

  Matrix h = random_combination(compressed, rng);
  h = 0.5 * (h + h.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  const auto groups = cluster(es.eigenvalues());
  if (!groups || static_cast<Index>(groups->size()) != dl) return std::nullopt;
  std::vector<Matrix> q;
  for (const auto& g : *groups) {
    if (static_cast<Index>(g.size()) != dr) return std::nullopt;
    Matrix e(rank, dr);
    for (Index r = 0; r < dr; ++r) e.col(r) = es.eigenvectors().col(g[static_cast<std::size_t>(r)]);
    q.push_back(e);
  }

  // Transport the first eigenspace onto the others with a commutant element.
  const Matrix m = random_combination(compressed, rng);
  Matrix cols(rank, rank);
  for (Index l = 0; l < dl; ++l) {
    const Matrix& ql = q[static_cast<std::size_t>(l)];
    const Matrix t = l == 0 ? q[0] : Matrix(ql * (ql.adjoint() * m * q[0]));
    const double c = t.norm() / std::sqrt(static_cast<double>(dr));
    if (c < 1e-6) return std::nullopt;
    cols.middleCols(l * dr, dr) = t / c;
  }
  Block b{0, dl, dr, v * cols};
  return b;
}

// Max relative deviation of W^* X W from the claimed tensor form.
double tensor_form_error(const Matrix& w, const std::vector<Block>& blocks, const Matrix& x,
                         bool algebra_side) {
  const Matrix y = w.adjoint() * x * w;
  Matrix rebuilt = Matrix::Zero(y.rows(), y.cols());
  Index off = 0;
  for (const auto& b : blocks) {
    const Index n = b.dl * b.dr;
    const Matrix blk = y.block(off, off, n, n);
    if (algebra_side) {
      Matrix g = Matrix::Zero(b.dr, b.dr);
      for (Index l = 0; l < b.dl; ++l) g += blk.block(l * b.dr, l * b.dr, b.dr, b.dr);
      g /= static_cast<double>(b.dl);
      rebuilt.block(off, off, n, n) = kron(Matrix::Identity(b.dl, b.dl), g);
    } else {
      Matrix g(b.dl, b.dl);
      for (Index l = 0; l < b.dl; ++l) {
        for (Index lp = 0; lp < b.dl; ++lp) {
          g(l, lp) = blk.block(l * b.dr, lp * b.dr, b.dr, b.dr).trace() / static_cast<double>(b.dr);
        }
      }
      rebuilt.block(off, off, n, n) = kron(g, Matrix::Identity(b.dr, b.dr));
    }
    off += n;
  }
  return (y - rebuilt).norm() / std::max(1.0, x.norm());
}

}  // namespace

std::vector<Matrix> algebra_basis(const std::vector<HermitianMatrix>& gens) {
  const Index d = dimension_of(gens);
  std::vector<Vector> span;
  std::vector<Matrix> out;
  std::vector<Matrix> frontier;
  auto add = [&](const Matrix& m) {
    if (auto u = orthogonalize(span, vec(m))) {
      span.push_back(*u);
      out.push_back(unvec(*u, d));
      frontier.push_back(out.back());
    }
  };
  add(Matrix::Identity(d, d));
  for (const auto& g : gens) add(g.matrix());
  // Words in the generators; left multiplication of new elements suffices.
  while (!frontier.empty() && static_cast<Index>(out.size()) < d * d) {
    std::vector<Matrix> next;
    std::swap(next, frontier);
    for (const auto& m : next) {
      for (const auto& g : gens) add(g.matrix() * m);
    }
  }
  return out;
}

std::vector<Matrix> commutant_basis(const std::vector<HermitianMatrix>& gens) {
  const Index d = dimension_of(gens);
  Matrix h = Matrix::Zero(d * d, d * d);
  for (const auto& g : gens) {
    const Matrix c = commutation_constraint(g.matrix());
    h += c.adjoint() * c;
  }
  std::vector<Matrix> out;
  for (const auto& v : null_space(h)) out.push_back(unvec(v, d));
  return out;
}

WedderburnResult wedderburn_decompose(const std::vector<HermitianMatrix>& generators,
                                      std::uint64_t seed) {
  const Index d = dimension_of(generators);
  const auto alg = algebra_basis(generators);
  const auto com = commutant_basis(generators);

  // Center = M cap M', the null space of 2I - P_M - P_M'.
  std::vector<Vector> va;
  std::vector<Vector> vc;
  for (const auto& m : alg) va.push_back(vec(m));
  for (const auto& m : com) vc.push_back(vec(m));
  const Matrix h = 2.0 * Matrix::Identity(d * d, d * d) - projector(va, d * d) - projector(vc, d * d);
  std::vector<Matrix> center;
  for (const auto& v : null_space(h)) center.push_back(unvec(v, d));
  if (center.empty()) throw NumericalError("wedderburn: empty center", 0.0);

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> nd;
  double last_error = 0.0;
  for (int attempt = 1; attempt <= kMaxAttempts; ++attempt) {
    Matrix z = Matrix::Zero(d, d);
    for (const auto& c : center) z += nd(rng) * c;
    z = 0.5 * (z + z.adjoint());
    Eigen::SelfAdjointEigenSolver<Matrix> es(z);
    const auto groups = cluster(es.eigenvalues());
    if (!groups) continue;

    std::vector<Block> blocks;
    bool ok = true;
    for (const auto& g : *groups) {
      Matrix v(d, static_cast<Index>(g.size()));
      for (std::size_t i = 0; i < g.size(); ++i) v.col(static_cast<Index>(i)) = es.eigenvectors().col(g[i]);
      auto b = split_block(v, com, rng);
      if (!b) {
        ok = false;
        break;
      }
      const RealVector diag = (v * v.adjoint()).diagonal().real();
      Index first = 0;
      while (first < d && diag(first) <= 1e-6) ++first;
      b->first_index = first;
      blocks.push_back(std::move(*b));
    }
    if (!ok) continue;
    std::stable_sort(blocks.begin(), blocks.end(),
                     [](const Block& x, const Block& y) { return x.first_index < y.first_index; });

    Matrix w(d, d);
    Index off = 0;
    WedderburnResult out;
    for (const auto& b : blocks) {
      w.middleCols(off, b.columns.cols()) = b.columns;
      off += b.columns.cols();
      out.structure.blocks.emplace_back(b.dl, b.dr);
    }
    double err = (w.adjoint() * w - Matrix::Identity(d, d)).norm();
    for (const auto& x : alg) err = std::max(err, tensor_form_error(w, blocks, x, true));
    for (const auto& y : com) err = std::max(err, tensor_form_error(w, blocks, y, false));
    last_error = err;
    if (err > 1e-9) continue;

    out.structure.basis = w;
    out.algebra_dim = static_cast<Index>(alg.size());
    out.commutant_dim = static_cast<Index>(com.size());
    out.reconstruction_error = err;
    out.attempts = attempt;
    return out;
  }
  throw NumericalError("wedderburn: no clean block split after " + std::to_string(kMaxAttempts) +
                           " attempts",
                       last_error);
}

}  // namespace wyd
