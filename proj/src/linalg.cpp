#include "chevalley/linalg.hpp"

#include <algorithm>
#include <cassert>

namespace chv {

Matrix Matrix::identity(std::size_t n) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m.at(i, i) = 1;
  return m;
}

void Matrix::set_row(std::size_t i, const Vec& v) {
  assert(v.size() == cols_);
  std::copy(v.begin(), v.end(), row(i));
}

Matrix mat_mul(const Matrix& A, const Matrix& B, const PrimeField& F) {
  if (A.cols() != B.rows()) throw std::invalid_argument("matrix product shape mismatch");
  Matrix C(A.rows(), B.cols());
  for (std::size_t i = 0; i < A.rows(); ++i) {
    for (std::size_t k = 0; k < A.cols(); ++k) {
      Fel a = A.at(i, k);
      if (a == 0) continue;
      const Fel* brow = B.row(k);
      Fel* crow = C.row(i);
      for (std::size_t j = 0; j < B.cols(); ++j) {
        if (brow[j] == 0) continue;
        crow[j] = F.add(crow[j], F.mul(a, brow[j]));
      }
    }
  }
  return C;
}

Vec mat_apply(const Matrix& A, const Vec& v, const PrimeField& F) {
  if (A.cols() != v.size()) throw std::invalid_argument("matrix apply shape mismatch");
  Vec r(A.rows(), 0);
  for (std::size_t i = 0; i < A.rows(); ++i) {
    Fel acc = 0;
    const Fel* arow = A.row(i);
    for (std::size_t j = 0; j < v.size(); ++j) {
      if (arow[j] == 0 || v[j] == 0) continue;
      acc = F.add(acc, F.mul(arow[j], v[j]));
    }
    r[i] = acc;
  }
  return r;
}

Matrix mat_transpose(const Matrix& A) {
  Matrix T(A.cols(), A.rows());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) T.at(j, i) = A.at(i, j);
  return T;
}

Matrix mat_add(const Matrix& A, const Matrix& B, const PrimeField& F) {
  if (A.rows() != B.rows() || A.cols() != B.cols())
    throw std::invalid_argument("matrix sum shape mismatch");
  Matrix C(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) C.at(i, j) = F.add(A.at(i, j), B.at(i, j));
  return C;
}

Matrix mat_scale(const Matrix& A, Fel c, const PrimeField& F) {
  Matrix C(A.rows(), A.cols());
  for (std::size_t i = 0; i < A.rows(); ++i)
    for (std::size_t j = 0; j < A.cols(); ++j) C.at(i, j) = F.mul(A.at(i, j), c);
  return C;
}

Matrix mat_sub_scalar_diag(const Matrix& A, Fel c, const PrimeField& F) {
  Matrix C = A;
  for (std::size_t i = 0; i < A.rows(); ++i) C.at(i, i) = F.sub(C.at(i, i), c);
  return C;
}

std::optional<Matrix> mat_try_inverse(const Matrix& A, const PrimeField& F) {
  if (A.rows() != A.cols()) throw std::invalid_argument("inverse of non-square matrix");
  std::size_t n = A.rows();
  Matrix work = A;
  Matrix inv = Matrix::identity(n);
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t piv = col;
    while (piv < n && work.at(piv, col) == 0) ++piv;
    if (piv == n) return std::nullopt;
    if (piv != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work.at(piv, j), work.at(col, j));
        std::swap(inv.at(piv, j), inv.at(col, j));
      }
    }
    Fel s = F.inv(work.at(col, col));
    for (std::size_t j = 0; j < n; ++j) {
      work.at(col, j) = F.mul(work.at(col, j), s);
      inv.at(col, j) = F.mul(inv.at(col, j), s);
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      Fel c = work.at(i, col);
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        work.at(i, j) = F.sub(work.at(i, j), F.mul(c, work.at(col, j)));
        inv.at(i, j) = F.sub(inv.at(i, j), F.mul(c, inv.at(col, j)));
      }
    }
  }
  return inv;
}

Matrix mat_inverse(const Matrix& A, const PrimeField& F) {
  auto r = mat_try_inverse(A, F);
  if (!r) throw std::domain_error("matrix not invertible");
  return *r;
}

bool vec_is_zero(const Vec& v) {
  return std::all_of(v.begin(), v.end(), [](Fel x) { return x == 0; });
}

Vec vec_scale(const Vec& v, Fel c, const PrimeField& F) {
  Vec r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = F.mul(v[i], c);
  return r;
}

void vec_add_scaled(Vec& dst, const Vec& src, Fel c, const PrimeField& F) {
  assert(dst.size() == src.size());
  if (c == 0) return;
  for (std::size_t i = 0; i < dst.size(); ++i)
    if (src[i] != 0) dst[i] = F.add(dst[i], F.mul(c, src[i]));
}

Vec vec_sub(const Vec& a, const Vec& b, const PrimeField& F) {
  assert(a.size() == b.size());
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = F.sub(a[i], b[i]);
  return r;
}

std::optional<Fel> proportionality(const Vec& u, const Vec& v, const PrimeField& F) {
  assert(u.size() == v.size());
  std::size_t lead = v.size();
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (v[i] != 0) {
      lead = i;
      break;
    }
  }
  if (lead == v.size()) return std::nullopt;  // v == 0
  Fel c = F.mul(u[lead], F.inv(v[lead]));
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (u[i] != F.mul(c, v[i])) return std::nullopt;
  }
  return c;
}

RrefResult rref(Matrix M, const PrimeField& F) {
  RrefResult res;
  std::size_t rows = M.rows(), cols = M.cols();
  std::size_t r = 0;
  for (std::size_t col = 0; col < cols && r < rows; ++col) {
    std::size_t piv = r;
    while (piv < rows && M.at(piv, col) == 0) ++piv;
    if (piv == rows) continue;
    if (piv != r)
      for (std::size_t j = 0; j < cols; ++j) std::swap(M.at(piv, j), M.at(r, j));
    Fel s = F.inv(M.at(r, col));
    for (std::size_t j = col; j < cols; ++j) M.at(r, j) = F.mul(M.at(r, j), s);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r) continue;
      Fel c = M.at(i, col);
      if (c == 0) continue;
      for (std::size_t j = col; j < cols; ++j)
        M.at(i, j) = F.sub(M.at(i, j), F.mul(c, M.at(r, j)));
    }
    res.pivots.push_back(col);
    ++r;
  }
  res.rank = r;
  res.m = std::move(M);
  return res;
}

// ============================================================================
// Subspace
// ============================================================================

Subspace Subspace::zero(std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix(0, ambient);
  return s;
}

Subspace Subspace::full(std::size_t ambient) {
  Subspace s;
  s.ambient_ = ambient;
  s.basis_ = Matrix::identity(ambient);
  s.pivots_.resize(ambient);
  for (std::size_t i = 0; i < ambient; ++i) s.pivots_[i] = i;
  return s;
}

Subspace Subspace::from_rows(const Matrix& rows, const PrimeField& F) {
  RrefResult r = rref(rows, F);
  Subspace s;
  s.ambient_ = rows.cols();
  s.pivots_ = r.pivots;
  s.basis_ = Matrix(r.rank, rows.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < rows.cols(); ++j) s.basis_.at(i, j) = r.m.at(i, j);
  return s;
}

Subspace Subspace::from_vectors(const std::vector<Vec>& vectors, std::size_t ambient,
                                const PrimeField& F) {
  Matrix m(vectors.size(), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i) m.set_row(i, vectors[i]);
  return from_rows(m, F);
}

bool Subspace::contains(const Vec& v, const PrimeField& F) const {
  return coords(v, F).has_value();
}

bool Subspace::contains(const Subspace& other, const PrimeField& F) const {
  for (std::size_t i = 0; i < other.dim(); ++i) {
    if (!contains(other.basis_.row_vec(i), F)) return false;
  }
  return true;
}

std::optional<Vec> Subspace::coords(const Vec& v, const PrimeField& F) const {
  if (v.size() != ambient_) throw std::invalid_argument("vector/ambient mismatch");
  Vec rem = v;
  Vec cs(dim(), 0);
  for (std::size_t i = 0; i < dim(); ++i) {
    Fel c = rem[pivots_[i]];
    if (c != 0) {
      cs[i] = c;
      for (std::size_t j = 0; j < ambient_; ++j)
        if (basis_.at(i, j) != 0) rem[j] = F.sub(rem[j], F.mul(c, basis_.at(i, j)));
    }
  }
  if (!vec_is_zero(rem)) return std::nullopt;
  return cs;
}

Vec Subspace::lift(const Vec& coords_vec, const PrimeField& F) const {
  assert(coords_vec.size() == dim());
  Vec r(ambient_, 0);
  for (std::size_t i = 0; i < dim(); ++i) vec_add_scaled(r, basis_.row_vec(i), coords_vec[i], F);
  return r;
}

Vec Subspace::random_vector(const PrimeField& F, Rng& rng) const {
  Vec cs(dim());
  for (auto& c : cs) c = rng.uniform(F);
  return lift(cs, F);
}

Vec Subspace::random_nonzero_vector(const PrimeField& F, Rng& rng) const {
  if (dim() == 0) throw std::domain_error("random nonzero vector of the zero space");
  for (;;) {
    Vec v = random_vector(F, rng);
    if (!vec_is_zero(v)) return v;
  }
}

bool Subspace::operator<(const Subspace& o) const {
  if (dim() != o.dim()) return dim() < o.dim();
  for (std::size_t i = 0; i < dim(); ++i)
    for (std::size_t j = 0; j < ambient_; ++j) {
      Fel a = basis_.at(i, j), b = o.basis_.at(i, j);
      if (a != b) return a < b;
    }
  return false;
}

Subspace sub_sum(const Subspace& A, const Subspace& B, const PrimeField& F) {
  if (A.ambient() != B.ambient()) throw std::invalid_argument("ambient mismatch");
  Matrix stack(A.dim() + B.dim(), A.ambient());
  for (std::size_t i = 0; i < A.dim(); ++i) stack.set_row(i, A.basis().row_vec(i));
  for (std::size_t i = 0; i < B.dim(); ++i) stack.set_row(A.dim() + i, B.basis().row_vec(i));
  return Subspace::from_rows(stack, F);
}

Subspace sub_intersect(const Subspace& A, const Subspace& B, const PrimeField& F) {
  if (A.ambient() != B.ambient()) throw std::invalid_argument("ambient mismatch");
  std::size_t n = A.ambient();
  // Zassenhaus: echelonize [A|A; B|0]; rows with zero left half carry the
  // intersection in their right half.
  std::size_t rows = A.dim() + B.dim();
  Matrix z(rows, 2 * n);
  for (std::size_t i = 0; i < A.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) {
      z.at(i, j) = A.basis().at(i, j);
      z.at(i, n + j) = A.basis().at(i, j);
    }
  for (std::size_t i = 0; i < B.dim(); ++i)
    for (std::size_t j = 0; j < n; ++j) z.at(A.dim() + i, j) = B.basis().at(i, j);
  RrefResult r = rref(std::move(z), F);
  std::vector<Vec> inter;
  for (std::size_t i = 0; i < r.rank; ++i) {
    bool left_zero = true;
    for (std::size_t j = 0; j < n; ++j)
      if (r.m.at(i, j) != 0) {
        left_zero = false;
        break;
      }
    if (left_zero) {
      Vec v(n);
      for (std::size_t j = 0; j < n; ++j) v[j] = r.m.at(i, n + j);
      if (!vec_is_zero(v)) inter.push_back(std::move(v));
    }
  }
  return Subspace::from_vectors(inter, n, F);
}

Subspace sub_complement(const Subspace& A, const PrimeField& F) {
  std::size_t n = A.ambient();
  std::vector<bool> is_pivot(n, false);
  for (auto p : A.pivots()) is_pivot[p] = true;
  std::vector<Vec> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) {
      Vec e(n, 0);
      e[j] = 1;
      rows.push_back(std::move(e));
    }
  }
  return Subspace::from_vectors(rows, n, F);
}

Subspace sub_complement_within(const Subspace& A, const Subspace& B, const PrimeField& F) {
  if (!B.contains(A, F)) throw std::invalid_argument("complement_within requires A <= B");
  // Express A over B's basis, complement there, lift back.
  Matrix rel(A.dim(), B.dim());
  for (std::size_t i = 0; i < A.dim(); ++i) {
    auto cs = B.coords(A.basis().row_vec(i), F);
    rel.set_row(i, *cs);
  }
  Subspace arel = Subspace::from_rows(rel, F);
  std::vector<bool> is_pivot(B.dim(), false);
  for (auto p : arel.pivots()) is_pivot[p] = true;
  std::vector<Vec> rows;
  for (std::size_t j = 0; j < B.dim(); ++j) {
    if (!is_pivot[j]) rows.push_back(B.basis().row_vec(j));
  }
  return Subspace::from_vectors(rows, B.ambient(), F);
}

Subspace nullspace(const Matrix& M, const PrimeField& F) {
  RrefResult r = rref(M, F);
  std::size_t n = M.cols();
  std::vector<bool> is_pivot(n, false);
  std::vector<std::size_t> pivot_row(n, 0);
  for (std::size_t i = 0; i < r.pivots.size(); ++i) {
    is_pivot[r.pivots[i]] = true;
    pivot_row[r.pivots[i]] = i;
  }
  std::vector<Vec> rows;
  for (std::size_t j = 0; j < n; ++j) {
    if (is_pivot[j]) continue;
    Vec v(n, 0);
    v[j] = 1;
    for (std::size_t col = 0; col < n; ++col) {
      if (is_pivot[col]) {
        Fel c = r.m.at(pivot_row[col], j);
        v[col] = F.neg(c);
      }
    }
    rows.push_back(std::move(v));
  }
  return Subspace::from_vectors(rows, n, F);
}

Subspace image(const Matrix& M, const PrimeField& F) {
  return Subspace::from_rows(mat_transpose(M), F);
}

Vec Echelon::reduce(Vec v, const PrimeField& F) const {
  for (std::size_t i = 0; i < rows_.size(); ++i) {
    Fel c = v[pivots_[i]];
    if (c == 0) continue;
    for (std::size_t j = 0; j < ambient_; ++j)
      if (rows_[i][j] != 0) v[j] = F.sub(v[j], F.mul(c, rows_[i][j]));
  }
  return v;
}

bool Echelon::add(Vec v, const PrimeField& F) {
  v = reduce(std::move(v), F);
  std::size_t lead = ambient_;
  for (std::size_t j = 0; j < ambient_; ++j) {
    if (v[j] != 0) {
      lead = j;
      break;
    }
  }
  if (lead == ambient_) return false;
  Fel s = F.inv(v[lead]);
  for (auto& x : v) x = F.mul(x, s);
  rows_.push_back(std::move(v));
  pivots_.push_back(lead);
  return true;
}

// ============================================================================
// Minimal polynomial
// ============================================================================

namespace {

// Least-degree monic g with g(M)v = 0, by tracking the Krylov chain of v
// against an echelonized history.
Poly krylov_annihilator(const Matrix& M, const Vec& v, const PrimeField& F) {
  std::size_t n = M.rows();
  std::vector<Vec> rows;            // echelon rows
  std::vector<std::size_t> pivots;  // their leading columns
  std::vector<Poly> polys;          // rows[i] = polys[i](M) v
  Vec cur = v;
  Poly curpoly{std::vector<Fel>{1}};
  for (std::size_t step = 0; step <= n; ++step) {
    // reduce cur against history, mirroring the operations on the polynomial
    Vec red = cur;
    Poly redpoly = curpoly;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      Fel c = red[pivots[i]];
      if (c == 0) continue;
      for (std::size_t j = 0; j < n; ++j)
        if (rows[i][j] != 0) red[j] = F.sub(red[j], F.mul(c, rows[i][j]));
      Poly scaled = polys[i];
      for (auto& x : scaled.c) x = F.mul(x, c);
      redpoly = poly_sub(redpoly, scaled, F);
    }
    std::size_t lead = n;
    for (std::size_t j = 0; j < n; ++j)
      if (red[j] != 0) {
        lead = j;
        break;
      }
    if (lead == n) return poly_monic(redpoly, F);
    Fel s = F.inv(red[lead]);
    for (auto& x : red) x = F.mul(x, s);
    for (auto& x : redpoly.c) x = F.mul(x, s);
    rows.push_back(red);
    pivots.push_back(lead);
    polys.push_back(redpoly);
    cur = mat_apply(M, red, F);
    redpoly.c.insert(redpoly.c.begin(), 0);  // multiply by X
    curpoly = std::move(redpoly);
  }
  throw std::logic_error("krylov chain exceeded dimension");  // unreachable
}

// g(M) e_index, by Horner with matrix-vector products.
Vec apply_poly_column(const Poly& g, const Matrix& M, std::size_t index, const PrimeField& F) {
  std::size_t n = M.rows();
  Vec r(n, 0);
  for (std::size_t i = g.c.size(); i-- > 0;) {
    r = mat_apply(M, r, F);
    if (g.c[i] != 0) r[index] = F.add(r[index], g.c[i]);
  }
  return r;
}

}  // namespace

Poly minimal_polynomial(const Matrix& M, const PrimeField& F, Rng& rng) {
  if (M.rows() != M.cols()) throw std::invalid_argument("minimal polynomial of non-square matrix");
  std::size_t n = M.rows();
  if (n == 0) return Poly{std::vector<Fel>{1}};
  Vec v(n);
  for (auto& x : v) x = rng.uniform(F);
  if (vec_is_zero(v)) v[0] = 1;
  Poly m = krylov_annihilator(M, v, F);
  // The random annihilator divides the true minimal polynomial; patch it up
  // on whichever standard basis vector it misses.
  for (std::size_t i = 0; i < n; ++i) {
    Vec r = apply_poly_column(m, M, i, F);
    if (!vec_is_zero(r)) {
      Vec e(n, 0);
      e[i] = 1;
      m = poly_lcm(m, krylov_annihilator(M, e, F), F);
    }
  }
  return poly_monic(m, F);
}

// ============================================================================
// Eigenspace decomposition
// ============================================================================

std::optional<EigenDecomposition> try_eigen_decompose(const Matrix& M, const Subspace& domain,
                                                      const PrimeField& F, Rng& rng) {
  std::size_t s = domain.dim();
  EigenDecomposition out;
  out.perp = Subspace::zero(domain.ambient());
  if (s == 0) return out;

  // restriction of M to the domain, in basis coordinates
  Matrix R(s, s);
  for (std::size_t i = 0; i < s; ++i) {
    Vec u = mat_apply(M, domain.basis().row_vec(i), F);
    auto cs = domain.coords(u, F);
    if (!cs) return std::nullopt;  // not invariant
    for (std::size_t j = 0; j < s; ++j) R.at(j, i) = (*cs)[j];
  }

  Poly mu = minimal_polynomial(R, F, rng);
  std::vector<Fel> eigenvalues = poly_roots(mu, F, rng);

  Subspace perp_rel = Subspace::full(s);
  std::size_t eigendim_total = 0;
  Matrix stacked(0, 0);
  std::vector<Vec> all_rows;
  for (Fel lambda : eigenvalues) {
    Matrix shifted = mat_sub_scalar_diag(R, lambda, F);
    Subspace kernel_rel = nullspace(shifted, F);
    perp_rel = sub_intersect(perp_rel, image(shifted, F), F);
    // pull back into ambient coordinates
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < kernel_rel.dim(); ++i) {
      rows.push_back(domain.lift(kernel_rel.basis().row_vec(i), F));
      all_rows.push_back(rows.back());
    }
    eigendim_total += kernel_rel.dim();
    out.pairs.push_back({lambda, Subspace::from_vectors(rows, domain.ambient(), F)});
  }
  if (eigenvalues.empty()) {
    out.perp = domain;
    return out;
  }
  std::vector<Vec> perp_rows;
  for (std::size_t i = 0; i < perp_rel.dim(); ++i) {
    perp_rows.push_back(domain.lift(perp_rel.basis().row_vec(i), F));
    all_rows.push_back(perp_rows.back());
  }
  out.perp = Subspace::from_vectors(perp_rows, domain.ambient(), F);

  Subspace together = Subspace::from_vectors(all_rows, domain.ambient(), F);
  if (together.dim() != eigendim_total + out.perp.dim() || together.dim() != s)
    out.non_semisimple_residue = true;
  return out;
}

EigenDecomposition eigen_decompose(const Matrix& M, const Subspace& domain, const PrimeField& F,
                                   Rng& rng) {
  auto r = try_eigen_decompose(M, domain, F, rng);
  if (!r) throw std::invalid_argument("domain is not invariant under the operator");
  return *r;
}

}  // namespace chv
