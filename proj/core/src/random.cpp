#include "wyd/random.hpp"

#include <cmath>

#include "wyd/errors.hpp"
#include "wyd/matrix_io.hpp"

namespace wyd {

namespace {

constexpr std::array<std::pair<InstanceKind, std::string_view>, 7> kKindNames{{
    {InstanceKind::density, "density"},
    {InstanceKind::pd, "pd"},
    {InstanceKind::unitary, "unitary"},
    {InstanceKind::contraction, "contraction"},
    {InstanceKind::family, "family"},
    {InstanceKind::tripartite, "tripartite"},
    {InstanceKind::structure_state, "structure_state"},
}};

void require_dims(std::span<const Index> dims, std::size_t lo, std::size_t hi, InstanceKind k) {
  if (dims.size() < lo || dims.size() > hi) {
    throw InputError("random_instance: wrong number of dims for " + std::string(to_string(k)));
  }
}

}  // namespace

std::string_view to_string(InstanceKind k) {
  for (const auto& [kind, name] : kKindNames) {
    if (kind == k) return name;
  }
  return "unknown";
}

InstanceKind instance_kind_from_string(std::string_view s) {
  for (const auto& [kind, name] : kKindNames) {
    if (name == s) return kind;
  }
  throw InputError("unknown instance kind '" + std::string(s) + "'");
}

std::uint64_t fnv1a(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return h;
}

Engine make_engine(std::uint64_t seed, std::string_view tag, std::span<const Index> dims,
                   std::uint64_t index) {
  const std::uint64_t t = fnv1a(tag);
  std::vector<std::uint32_t> words{static_cast<std::uint32_t>(seed),
                                   static_cast<std::uint32_t>(seed >> 32),
                                   static_cast<std::uint32_t>(t),
                                   static_cast<std::uint32_t>(t >> 32),
                                   static_cast<std::uint32_t>(index),
                                   static_cast<std::uint32_t>(index >> 32)};
  for (Index d : dims) words.push_back(static_cast<std::uint32_t>(d));
  std::seed_seq seq(words.begin(), words.end());
  return Engine(seq);
}

void check_dims(std::span<const Index> dims) {
  Index total = 1;
  for (Index d : dims) {
    if (d <= 0) throw DimensionError("dimensions must be positive");
    total *= d;
    if (total > kMaxTotalDim) {
      throw SizeError("total dimension exceeds " + std::to_string(kMaxTotalDim));
    }
  }
}

Matrix ginibre(Index rows, Index cols, Engine& rng) {
  std::normal_distribution<double> nd(0.0, std::sqrt(0.5));
  Matrix g(rows, cols);
  // Fill in a fixed order so the draw sequence does not depend on Eigen internals.
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) {
      const double re = nd(rng);
      const double im = nd(rng);
      g(i, j) = Complex(re, im);
    }
  }
  return g;
}

HermitianMatrix random_hermitian(Index d, Engine& rng) {
  const Matrix g = ginibre(d, d, rng);
  return HermitianMatrix(0.5 * (g + g.adjoint()));
}

HermitianMatrix random_density(Index d, Engine& rng) {
  const Matrix g = ginibre(d, d, rng);
  const Matrix w = g * g.adjoint();
  return HermitianMatrix(w / w.trace().real());
}

HermitianMatrix random_pd(Index d, Engine& rng) {
  const Matrix g = ginibre(d, d, rng);
  return HermitianMatrix(g * g.adjoint() + 1e-3 * Matrix::Identity(d, d));
}

Matrix random_unitary(Index d, Engine& rng) {
  const Matrix g = ginibre(d, d, rng);
  Eigen::HouseholderQR<Matrix> qr(g);
  const Matrix q = qr.householderQ() * Matrix::Identity(d, d);
  const Matrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  Matrix out = q;
  for (Index i = 0; i < d; ++i) {
    const double a = std::abs(r(i, i));
    if (a > 0.0) out.col(i) *= r(i, i) / a;
  }
  return out;
}

Matrix random_contraction(Index d, Engine& rng) {
  const Matrix g = ginibre(d, d, rng);
  return 0.95 * g / operator_norm(g);
}

InstanceFamily random_family(Index d, Index m, Engine& rng) {
  if (m <= 0) throw InputError("random_family: m must be positive");
  InstanceFamily fam;
  fam.k = ginibre(d, d, rng) / std::sqrt(static_cast<double>(d));
  for (Index j = 0; j < m; ++j) {
    fam.a.push_back(random_pd(d, rng));
    fam.b.push_back(random_pd(d, rng));
  }
  return fam;
}

HermitianMatrix random_tripartite(std::array<Index, 3> dims, Engine& rng) {
  check_dims(dims);
  return random_density(dims[0] * dims[1] * dims[2], rng);
}

std::vector<std::pair<Index, Index>> default_blocks(Index d2) {
  if (d2 <= 0) throw DimensionError("default_blocks: d2 must be positive");
  if (d2 == 1) return {{1, 1}};
  if (d2 == 2) return {{1, 1}, {1, 1}};
  if (d2 % 2 == 0) return {{2, d2 / 2 - 1}, {1, 2}};
  return {{1, d2 - 1}, {1, 1}};
}

StructureState random_structure_state(Index d1, Index d2, Engine& rng) {
  const std::array<Index, 2> dims{d1, d2};
  check_dims(dims);
  std::vector<StructureBlock> blocks;
  for (const auto& [dl, dr] : default_blocks(d2)) {
    blocks.push_back(
        {random_density(d1 * dl, rng), random_density(dr, rng), random_density(dr, rng), std::nullopt});
  }
  const auto s = construct_structure_state(blocks, d1);
  return rotate_structure_state(s, random_unitary(d2, rng));
}

nlohmann::json Instance::to_json() const {
  nlohmann::json j{{"kind", std::string(wyd::to_string(kind))},
                   {"dims", dims},
                   {"seed", seed},
                   {"index", index}};
  nlohmann::json ms = nlohmann::json::object();
  for (const auto& [name, m] : matrices) ms[name] = matrix_to_json(m);
  j["matrices"] = ms;
  if (!meta.empty()) j["meta"] = meta;
  return j;
}

Instance random_instance(InstanceKind kind, std::span<const Index> dims, std::uint64_t seed,
                         std::uint64_t index) {
  if (dims.empty()) throw InputError("random_instance: no dims");
  Instance out{kind, {dims.begin(), dims.end()}, seed, index, {}, nlohmann::json::object()};
  Engine rng = make_engine(seed, to_string(kind), dims, index);
  switch (kind) {
    case InstanceKind::density:
    case InstanceKind::pd:
    case InstanceKind::unitary:
    case InstanceKind::contraction: {
      require_dims(dims, 1, 1, kind);
      check_dims(dims);
      const Index d = dims[0];
      if (kind == InstanceKind::density) out.matrices.emplace_back("A", random_density(d, rng).matrix());
      if (kind == InstanceKind::pd) out.matrices.emplace_back("A", random_pd(d, rng).matrix());
      if (kind == InstanceKind::unitary) out.matrices.emplace_back("U", random_unitary(d, rng));
      if (kind == InstanceKind::contraction) out.matrices.emplace_back("K", random_contraction(d, rng));
      break;
    }
    case InstanceKind::family: {
      require_dims(dims, 1, 2, kind);
      check_dims(dims.first(1));
      const Index m = dims.size() > 1 ? dims[1] : 2;
      const auto fam = random_family(dims[0], m, rng);
      out.matrices.emplace_back("K", fam.k);
      for (std::size_t j = 0; j < fam.size(); ++j) {
        out.matrices.emplace_back("A" + std::to_string(j + 1), fam.a[j].matrix());
        out.matrices.emplace_back("B" + std::to_string(j + 1), fam.b[j].matrix());
      }
      break;
    }
    case InstanceKind::tripartite: {
      require_dims(dims, 3, 3, kind);
      out.matrices.emplace_back("A123", random_tripartite({dims[0], dims[1], dims[2]}, rng).matrix());
      break;
    }
    case InstanceKind::structure_state: {
      require_dims(dims, 2, 2, kind);
      const auto s = random_structure_state(dims[0], dims[1], rng);
      out.matrices.emplace_back("A12", s.a12.matrix());
      out.matrices.emplace_back("B12", s.b12.matrix());
      out.matrices.emplace_back("basis", s.structure.basis);
      nlohmann::json blocks = nlohmann::json::array();
      for (const auto& [dl, dr] : s.structure.blocks) blocks.push_back({dl, dr});
      out.meta["blocks"] = blocks;
      break;
    }
  }
  return out;
}

}  // namespace wyd
