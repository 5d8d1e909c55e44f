#pragma once

#include <cstddef>
#include <optional>
#include <vector>

#include "chevalley/field.hpp"
#include "chevalley/rng.hpp"

namespace chv {

using Vec = std::vector<Fel>;

/// Dense row-major matrix over GF(p).
class Matrix {
public:
  Matrix() : rows_(0), cols_(0) {}
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, 0) {}

  static Matrix identity(std::size_t n);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fel& at(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  Fel at(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const Fel* row(std::size_t i) const { return a_.data() + i * cols_; }
  Fel* row(std::size_t i) { return a_.data() + i * cols_; }

  Vec row_vec(std::size_t i) const { return Vec(row(i), row(i) + cols_); }
  void set_row(std::size_t i, const Vec& v);

  bool operator==(const Matrix& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && a_ == o.a_;
  }

private:
  std::size_t rows_, cols_;
  std::vector<Fel> a_;
};

Matrix mat_mul(const Matrix& A, const Matrix& B, const PrimeField& F);
Vec mat_apply(const Matrix& A, const Vec& v, const PrimeField& F);
Matrix mat_transpose(const Matrix& A);
Matrix mat_add(const Matrix& A, const Matrix& B, const PrimeField& F);
Matrix mat_scale(const Matrix& A, Fel c, const PrimeField& F);
/// A - c I
Matrix mat_sub_scalar_diag(const Matrix& A, Fel c, const PrimeField& F);
std::optional<Matrix> mat_try_inverse(const Matrix& A, const PrimeField& F);
Matrix mat_inverse(const Matrix& A, const PrimeField& F);  // throws if singular

// vector helpers
bool vec_is_zero(const Vec& v);
Vec vec_scale(const Vec& v, Fel c, const PrimeField& F);
void vec_add_scaled(Vec& dst, const Vec& src, Fel c, const PrimeField& F);  // dst += c*src
Vec vec_sub(const Vec& a, const Vec& b, const PrimeField& F);

/// If u == c*v for some scalar c (v nonzero), returns c.
std::optional<Fel> proportionality(const Vec& u, const Vec& v, const PrimeField& F);

struct RrefResult {
  Matrix m;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row-echelon form by Gauss-Jordan, first-nonzero pivoting.
RrefResult rref(Matrix M, const PrimeField& F);

// ============================================================================
// Subspaces, kept in canonical (RREF basis) form
// ============================================================================

class Subspace {
public:
  Subspace() : ambient_(0) {}

  static Subspace zero(std::size_t ambient);
  static Subspace full(std::size_t ambient);
  /// Row span of the given matrix.
  static Subspace from_rows(const Matrix& rows, const PrimeField& F);
  static Subspace from_vectors(const std::vector<Vec>& vectors, std::size_t ambient,
                               const PrimeField& F);

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix& basis() const { return basis_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  bool contains(const Vec& v, const PrimeField& F) const;
  bool contains(const Subspace& other, const PrimeField& F) const;
  /// Coordinates of v over the RREF basis rows; nullopt if v is outside.
  std::optional<Vec> coords(const Vec& v, const PrimeField& F) const;
  /// coords * basis, mapping restricted coordinates back into the ambient space.
  Vec lift(const Vec& coords_vec, const PrimeField& F) const;

  Vec random_vector(const PrimeField& F, Rng& rng) const;          // possibly zero
  Vec random_nonzero_vector(const PrimeField& F, Rng& rng) const;  // dim >= 1

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  /// Canonical-form ordering, used for deterministic tie-breaking.
  bool operator<(const Subspace& o) const;

private:
  std::size_t ambient_;
  Matrix basis_;  // dim x ambient, RREF
  std::vector<std::size_t> pivots_;
};

Subspace sub_sum(const Subspace& A, const Subspace& B, const PrimeField& F);
Subspace sub_intersect(const Subspace& A, const Subspace& B, const PrimeField& F);
/// Complement of A in the full ambient space: span of the standard basis
/// vectors at A's non-pivot columns.
Subspace sub_complement(const Subspace& A, const PrimeField& F);
/// Complement of A within B (requires A <= B); the same non-pivot convention
/// applied to A's coordinates over B's RREF basis.
Subspace sub_complement_within(const Subspace& A, const Subspace& B, const PrimeField& F);

Subspace nullspace(const Matrix& M, const PrimeField& F);
/// Column space of M.
Subspace image(const Matrix& M, const PrimeField& F);

/// Incremental echelon structure for rank/membership bookkeeping.
class Echelon {
public:
  explicit Echelon(std::size_t ambient) : ambient_(ambient) {}
  std::size_t rank() const { return rows_.size(); }
  /// Reduces v against the rows collected so far.
  Vec reduce(Vec v, const PrimeField& F) const;
  /// Adds v if independent; returns whether the rank grew.
  bool add(Vec v, const PrimeField& F);
  bool contains(const Vec& v, const PrimeField& F) const { return vec_is_zero(reduce(v, F)); }

private:
  std::size_t ambient_;
  std::vector<Vec> rows_;
  std::vector<std::size_t> pivots_;
};

// ============================================================================
// Spectral computations
// ============================================================================

/// Exact minimal polynomial. Random Krylov annihilators are lcm'ed until the
/// candidate provably kills M on the standard basis.
Poly minimal_polynomial(const Matrix& M, const PrimeField& F, Rng& rng);

struct EigenPair {
  Fel value;
  Subspace space;  // in ambient coordinates
};

struct EigenDecomposition {
  std::vector<EigenPair> pairs;  // sorted by eigenvalue
  Subspace perp;                 // intersection of the images of (M - lambda I)
  // Set when the eigenspaces plus perp fail to span the domain; the caller
  // treats this as a retry signal, not an error.
  bool non_semisimple_residue = false;
};

/// Spectral decomposition of M restricted to an M-invariant subspace.
/// Returns nullopt when the domain is not invariant under M.
std::optional<EigenDecomposition> try_eigen_decompose(const Matrix& M, const Subspace& domain,
                                                      const PrimeField& F, Rng& rng);
/// Same, but a non-invariant domain is an error.
EigenDecomposition eigen_decompose(const Matrix& M, const Subspace& domain, const PrimeField& F,
                                   Rng& rng);

}  // namespace chv
