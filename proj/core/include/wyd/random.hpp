#pragma once

// Seeded random instances. Every draw is a pure function of
// (seed, kind, dims, index): the engine is seeded through std::seed_seq.

#include <array>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "wyd/equality.hpp"
#include "wyd/inequalities.hpp"
#include "wyd/linalg.hpp"

namespace wyd {

using Engine = std::mt19937_64;

/// Largest total dimension accepted by random_instance.
inline constexpr Index kMaxTotalDim = 64;

enum class InstanceKind { density, pd, unitary, contraction, family, tripartite, structure_state };

std::string_view to_string(InstanceKind k);
InstanceKind instance_kind_from_string(std::string_view s);

/// 64-bit FNV-1a, used to fold string tags into seeds.
std::uint64_t fnv1a(std::string_view s);
Engine make_engine(std::uint64_t seed, std::string_view tag, std::span<const Index> dims,
                   std::uint64_t index);

/// Throws DimensionError for non-positive entries, SizeError when the product exceeds 64.
void check_dims(std::span<const Index> dims);

/// Complex standard Gaussian entries (real and imaginary parts N(0, 1/2)).
Matrix ginibre(Index rows, Index cols, Engine& rng);
HermitianMatrix random_hermitian(Index d, Engine& rng);
/// G G^* / Tr G G^*.
HermitianMatrix random_density(Index d, Engine& rng);
/// G G^* + 1e-3 I.
HermitianMatrix random_pd(Index d, Engine& rng);
/// QR of a Gaussian matrix with the phases of diag(R) absorbed.
Matrix random_unitary(Index d, Engine& rng);
/// 0.95 G / ||G||.
Matrix random_contraction(Index d, Engine& rng);
/// K Gaussian scaled by 1/sqrt(d), m positive definite pairs.
InstanceFamily random_family(Index d, Index m, Engine& rng);
/// Density matrix on C^d1 (x) C^d2 (x) C^d3.
HermitianMatrix random_tripartite(std::array<Index, 3> dims, Engine& rng);
/// Block shapes used for random structure states with a given d2.
std::vector<std::pair<Index, Index>> default_blocks(Index d2);
/// Structure state with default_blocks(d2), unit-trace factors, and a
/// random unitary basis change on H_2.
StructureState random_structure_state(Index d1, Index d2, Engine& rng);

struct Instance {
  InstanceKind kind = InstanceKind::density;
  std::vector<Index> dims;
  std::uint64_t seed = 0;
  std::uint64_t index = 0;
  std::vector<std::pair<std::string, Matrix>> matrices;
  nlohmann::json meta = nlohmann::json::object();  ///< e.g. block dimension lists

  nlohmann::json to_json() const;
};

/// dims: density/pd/unitary/contraction [d]; family [d] or [d, m];
/// tripartite [d1, d2, d3]; structure_state [d1, d2].
Instance random_instance(InstanceKind kind, std::span<const Index> dims, std::uint64_t seed,
                         std::uint64_t index = 0);

}  // namespace wyd
