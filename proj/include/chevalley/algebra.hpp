#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "chevalley/field.hpp"
#include "chevalley/linalg.hpp"
#include "chevalley/rootsys.hpp"

namespace chv {

/// Meaning of one basis index of a canonically built algebra.
struct BasisTag {
  enum class Kind { E, F, H, Z } kind = Kind::E;
  RootCoords coords;      // E/F: coordinates of the positive root
  unsigned simple = 0;    // H: simple-root index
  unsigned component = 0;
};

struct CanonicalTags {
  std::vector<DynkinType> components;
  unsigned center_dim = 0;
  std::vector<BasisTag> tags;  // one per basis index
};

/// A Lie algebra over GF(p) given by its structure-constant tensor.
/// Brackets of basis pairs are stored sparsely for i < j; antisymmetry and
/// [b_i, b_i] = 0 are structural.
class LieAlgebra {
public:
  using Term = std::pair<std::uint32_t, Fel>;  // (k, coefficient)

  LieAlgebra(PrimeField field, unsigned dim)
      : F_(field), dim_(dim), slices_(std::size_t(dim) * (dim - 1) / 2) {}

  const PrimeField& field() const { return F_; }
  unsigned dim() const { return dim_; }

  /// [b_i, b_j] := terms (i != j; swapping negates). Terms are normalized:
  /// sorted by k, zero coefficients dropped.
  void set_bracket(unsigned i, unsigned j, std::vector<Term> terms);
  const std::vector<Term>& slice(unsigned i, unsigned j) const;  // i < j

  Vec bracket_basis(unsigned i, unsigned j) const;  // any i != j
  Vec bracket(const Vec& x, const Vec& y) const;
  Matrix ad(const Vec& x) const;
  /// [b_j, y], one column's worth of work.
  Vec ad_column(const Vec& y, unsigned j) const;

  /// [[b_i,b_j],b_k] + [[b_j,b_k],b_i] + [[b_k,b_i],b_j]
  Vec jacobi_defect(unsigned i, unsigned j, unsigned k) const;

  std::uint64_t nnz() const;
  bool tensor_equal(const LieAlgebra& o) const;

private:
  std::size_t pair_index(unsigned i, unsigned j) const {  // i < j
    return std::size_t(i) * dim_ - std::size_t(i) * (i + 1) / 2 + (j - i - 1);
  }

  PrimeField F_;
  unsigned dim_;
  std::vector<std::vector<Term>> slices_;
};

/// Canonical Chevalley algebra of the given root system: basis e_gamma
/// (positive roots in system order), f_gamma, then h_1..h_rank.
std::pair<LieAlgebra, CanonicalTags> build_chevalley(const RootSystem& rs, const PrimeField& F);

LieAlgebra direct_sum(const std::vector<const LieAlgebra*>& parts);
std::pair<LieAlgebra, CanonicalTags> direct_sum_tagged(
    const std::vector<std::pair<const LieAlgebra*, const CanonicalTags*>>& parts);
LieAlgebra add_center(const LieAlgebra& L, unsigned k);
CanonicalTags add_center_tags(const CanonicalTags& tags, unsigned dim_before, unsigned k);

struct BasisChange {
  Matrix forward;  // columns are the new basis vectors in old coordinates
  Matrix inverse;
};

/// The tensor of L re-expressed in the basis whose vectors are the columns
/// of fwd (inv = fwd^-1).
LieAlgebra change_basis(const LieAlgebra& L, const Matrix& fwd, const Matrix& inv);

/// The same algebra expressed in a random invertible change of basis.
std::pair<LieAlgebra, BasisChange> scramble(const LieAlgebra& L, std::uint64_t seed);

}  // namespace chv
