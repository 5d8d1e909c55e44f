#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "chevalley/algebra.hpp"
#include "chevalley/linalg.hpp"
#include "chevalley/rootsys.hpp"

namespace chv {

/// Raised when the recognition budgets are exhausted or the input is not a
/// Chevalley Lie algebra over GF(p), p >= 5.
class recognition_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct RecoveryComponent {
  DynkinType type;
  // indexed like RootSystem(type).positive_roots()
  std::vector<Vec> e_vectors;
  std::vector<Vec> f_vectors;
  std::vector<Vec> h_vectors;  // per simple root
};

struct RecoveryStats {
  unsigned full_restarts = 0;
  unsigned corrections = 0;    // components whose string needed fixing up
  unsigned refinements = 0;
  std::uint64_t random_draws = 0;
};

struct RecoveryOutput {
  std::uint64_t p = 0;
  unsigned dim = 0;
  std::vector<RecoveryComponent> components;
  Subspace cartan;          // the full zero-weight space
  std::vector<Vec> center;  // complement of the coroot span inside the Cartan
  RecoveryStats stats;
};

/// The whole pipeline: weight-space splitting, diagram growth, classification
/// and correction, Chevalley scaling, and a final verification pass. Las
/// Vegas: anything returned has already passed the oracle checks.
/// h0, when nonnull and nonzero, must be split toral; the output Cartan
/// contains it.
RecoveryOutput recover_chevalley_basis(const LieAlgebra& L, const Subspace* h0,
                                       std::uint64_t seed);

/// An automorphism g of L with g(h1) = h2, built from two recognition runs
/// with matching root labels. Requires [L,L] = L and h1, h2 Cartan.
Matrix conjugate_cartans(const LieAlgebra& L, const Subspace& h1, const Subspace& h2,
                         std::uint64_t seed);

/// Eigenspace dimensions of ad h at 1, 2, 3 for one string node, measured on
/// the whole algebra.
struct NodeDims {
  std::size_t v1 = 0, v2 = 0, v3 = 0;
};

/// The classification decision for a maximal string: bonds are the lifted
/// Cartan integers between nodes, dims the measured weight-space dimensions.
/// Returns the true type of the component; throws recognition_error when the
/// measurements match no known diagram.
DynkinType classify_string(const std::vector<std::vector<int>>& bonds,
                           const std::vector<NodeDims>& dims, std::uint64_t p);

}  // namespace chv
