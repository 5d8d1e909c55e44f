#include <doctest.h>

#include <algorithm>
#include <set>

#include "chevalley/linalg.hpp"

using namespace chv;

namespace {

Matrix from_rows(std::vector<Vec> rows) {
  Matrix m(rows.size(), rows.empty() ? 0 : rows[0].size());
  for (std::size_t i = 0; i < rows.size(); ++i) m.set_row(i, rows[i]);
  return m;
}

Matrix random_matrix(std::size_t n, const PrimeField& F, Rng& rng) {
  Matrix m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) m.at(i, j) = rng.uniform(F);
  return m;
}

// Berkowitz division-free characteristic polynomial, an independent route to
// the spectrum used to cross-check the Krylov minimal polynomial.
Poly berkowitz_charpoly(const Matrix& A, const PrimeField& F) {
  std::size_t n = A.rows();
  // vectors of polynomial coefficients, built by iterated Toeplitz products
  std::vector<Fel> poly{1};  // charpoly of the empty matrix
  for (std::size_t k = 1; k <= n; ++k) {
    // principal k x k submatrix; R = row (A[k-1][0..k-2]), C = column
    std::size_t m = k - 1;
    // Toeplitz column entries: t_0 = 1 (degree k), t_1 = -A[m][m],
    // t_{j+2} = -(R M^j C) for j = 0..m-1
    std::vector<Fel> t(k + 1, 0);
    t[0] = 1;
    t[1] = F.neg(A.at(m, m));
    if (m > 0) {
      Vec cur(m);
      for (std::size_t i = 0; i < m; ++i) cur[i] = A.at(i, m);  // C
      for (std::size_t j = 0; j + 2 <= k; ++j) {
        Fel rc = 0;
        for (std::size_t i = 0; i < m; ++i) rc = F.add(rc, F.mul(A.at(m, i), cur[i]));
        t[j + 2] = F.neg(rc);
        if (j + 3 <= k) {
          Vec nxt(m, 0);
          for (std::size_t i = 0; i < m; ++i)
            for (std::size_t l = 0; l < m; ++l)
              nxt[i] = F.add(nxt[i], F.mul(A.at(i, l), cur[l]));
          cur = std::move(nxt);
        }
      }
    }
    // multiply poly (length k) by the Toeplitz column (degree drop pattern)
    std::vector<Fel> next(k + 1, 0);
    for (std::size_t i = 0; i < poly.size(); ++i)
      for (std::size_t j = 0; i + j <= k && j < t.size(); ++j)
        next[i + j] = F.add(next[i + j], F.mul(poly[i], t[j]));
    poly = std::move(next);
  }
  // poly holds coefficients from the leading term down
  std::reverse(poly.begin(), poly.end());
  return Poly{poly};
}

}  // namespace

TEST_CASE("rref on simple shapes") {
  PrimeField F(7);
  {
    auto r = rref(Matrix::identity(3), F);
    CHECK(r.rank == 3);
    CHECK(r.m == Matrix::identity(3));
  }
  {
    auto r = rref(Matrix(2, 5), F);
    CHECK(r.rank == 0);
  }
  {
    PrimeField F5(5);
    auto r = rref(from_rows({{1, 2}, {2, 4}}), F5);
    CHECK(r.rank == 1);
    CHECK(r.m.row_vec(0) == Vec{1, 2});
    CHECK(r.m.row_vec(1) == Vec{0, 0});
  }
}

TEST_CASE("nullspace on simple shapes") {
  PrimeField F(7);
  CHECK(nullspace(Matrix::identity(4), F).dim() == 0);
  CHECK(nullspace(Matrix(3, 3), F).dim() == 3);
  {
    Matrix m(3, 3);
    m.at(0, 0) = 1;
    m.at(2, 2) = 3;
    Subspace ker = nullspace(m, F);
    CHECK(ker.dim() == 1);
    CHECK(ker.basis().row_vec(0) == Vec{0, 1, 0});
  }
}

TEST_CASE("nullspace vectors are genuine kernel vectors") {
  PrimeField F(11);
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix m = random_matrix(6, F, rng);
    Subspace ker = nullspace(m, F);
    for (std::size_t i = 0; i < ker.dim(); ++i)
      CHECK(vec_is_zero(mat_apply(m, ker.basis().row_vec(i), F)));
    auto r = rref(m, F);
    CHECK(ker.dim() + r.rank == 6);
  }
}

TEST_CASE("subspace operations") {
  PrimeField F5(5);
  Subspace e1 = Subspace::from_vectors({{1, 0, 0}}, 3, F5);
  Subspace e2 = Subspace::from_vectors({{0, 1, 0}}, 3, F5);
  CHECK(sub_intersect(e1, e1, F5) == e1);
  CHECK(sub_intersect(e1, e2, F5).dim() == 0);
  CHECK(sub_sum(e1, e2, F5).dim() == 2);

  PrimeField F7(7);
  Subspace diag = Subspace::from_vectors({{1, 1}}, 2, F7);
  Subspace comp = sub_complement(diag, F7);
  CHECK(comp == Subspace::from_vectors({{0, 1}}, 2, F7));  // non-pivot column convention
}

TEST_CASE("complement properties on random subspaces") {
  PrimeField F(7);
  Rng rng(8);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t n = 6;
    std::size_t k = rng.next() % (n + 1);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < k; ++i) {
      Vec v(n);
      for (auto& x : v) x = rng.uniform(F);
      rows.push_back(v);
    }
    Subspace a = Subspace::from_vectors(rows, n, F);
    Subspace c = sub_complement(a, F);
    CHECK(a.dim() + c.dim() == n);
    CHECK(sub_intersect(a, c, F).dim() == 0);
    CHECK(sub_sum(a, c, F).dim() == n);
  }
}

TEST_CASE("complement within a subspace") {
  PrimeField F(7);
  Rng rng(9);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 7;
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < 4; ++i) {
      Vec v(n);
      for (auto& x : v) x = rng.uniform(F);
      rows.push_back(v);
    }
    Subspace b = Subspace::from_vectors(rows, n, F);
    // a = span of a couple of random vectors inside b
    std::vector<Vec> arows;
    for (std::size_t i = 0; i < 2; ++i) arows.push_back(b.random_vector(F, rng));
    Subspace a = Subspace::from_vectors(arows, n, F);
    Subspace c = sub_complement_within(a, b, F);
    CHECK(a.dim() + c.dim() == b.dim());
    CHECK(sub_intersect(a, c, F).dim() == 0);
    CHECK(sub_sum(a, c, F) == b);
  }
}

TEST_CASE("zassenhaus intersection against membership") {
  PrimeField F(5);
  Rng rng(10);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 6;
    auto rand_space = [&](std::size_t k) {
      std::vector<Vec> rows;
      for (std::size_t i = 0; i < k; ++i) {
        Vec v(n);
        for (auto& x : v) x = rng.uniform(F);
        rows.push_back(v);
      }
      return Subspace::from_vectors(rows, n, F);
    };
    Subspace a = rand_space(3), b = rand_space(4);
    Subspace i = sub_intersect(a, b, F);
    for (std::size_t r = 0; r < i.dim(); ++r) {
      CHECK(a.contains(i.basis().row_vec(r), F));
      CHECK(b.contains(i.basis().row_vec(r), F));
    }
    CHECK(a.dim() + b.dim() == i.dim() + sub_sum(a, b, F).dim());
  }
}

TEST_CASE("minimal polynomial on fixed matrices") {
  Rng rng(11);
  {
    PrimeField F(7);
    Matrix m(3, 3);
    m.at(0, 0) = 1;
    m.at(1, 1) = 1;
    m.at(2, 2) = 2;
    Poly mu = minimal_polynomial(m, F, rng);
    // (X-1)(X-2) = X^2 - 3X + 2 = X^2 + 4X + 2 mod 7
    CHECK(mu == Poly{std::vector<Fel>{2, 4, 1}});
  }
  {
    PrimeField F(5);
    Matrix j(3, 3);  // nilpotent Jordan block
    j.at(0, 1) = 1;
    j.at(1, 2) = 1;
    CHECK(minimal_polynomial(j, F, rng) == Poly{std::vector<Fel>{0, 0, 0, 1}});
  }
}

TEST_CASE("minimal polynomial against Berkowitz characteristic polynomial") {
  PrimeField F(11);
  Rng rng(12);
  for (int trial = 0; trial < 1000; ++trial) {
    Matrix m = random_matrix(8, F, rng);
    Poly mu = minimal_polynomial(m, F, rng);
    // annihilates the matrix
    for (std::size_t col = 0; col < 8; ++col) {
      Vec e(8, 0);
      e[col] = 1;
      Vec r(8, 0);
      for (std::size_t i = mu.c.size(); i-- > 0;) {
        r = mat_apply(m, r, F);
        if (mu.c[i] != 0) r[col] = F.add(r[col], mu.c[i]);
      }
      CHECK(vec_is_zero(r));
    }
    // divides the characteristic polynomial computed the division-free way
    Poly chi = berkowitz_charpoly(m, F);
    Poly q, r;
    poly_divmod(chi, mu, F, q, r);
    CHECK(r.is_zero());
  }
}

TEST_CASE("berkowitz sanity") {
  PrimeField F(7);
  Matrix m(2, 2);
  m.at(0, 0) = 2;
  m.at(0, 1) = 1;
  m.at(1, 0) = 3;
  m.at(1, 1) = 4;
  // X^2 - 6X + (8-3) = X^2 + X + 5 mod 7
  CHECK(berkowitz_charpoly(m, F) == Poly{std::vector<Fel>{5, 1, 1}});
}

TEST_CASE("eigen decomposition of a diagonal operator") {
  PrimeField F(7);
  Rng rng(13);
  Matrix m(3, 3);
  m.at(0, 0) = 2;
  m.at(1, 1) = 5;
  m.at(2, 2) = 0;
  auto dec = eigen_decompose(m, Subspace::full(3), F, rng);
  REQUIRE(dec.pairs.size() == 3);
  CHECK(dec.pairs[0].value == 0);
  CHECK(dec.pairs[0].space.basis().row_vec(0) == Vec{0, 0, 1});
  CHECK(dec.pairs[1].value == 2);
  CHECK(dec.pairs[1].space.basis().row_vec(0) == Vec{1, 0, 0});
  CHECK(dec.pairs[2].value == 5);
  CHECK(dec.perp.dim() == 0);
  CHECK_FALSE(dec.non_semisimple_residue);
}

TEST_CASE("eigen decomposition with no rational spectrum") {
  // companion matrix of X^2 + 2 over GF(5), irreducible
  PrimeField F(5);
  Rng rng(14);
  Matrix m(2, 2);
  m.at(0, 1) = F.neg(2);
  m.at(1, 0) = 1;
  auto dec = eigen_decompose(m, Subspace::full(2), F, rng);
  CHECK(dec.pairs.empty());
  CHECK(dec.perp == Subspace::full(2));
  CHECK_FALSE(dec.non_semisimple_residue);
}

TEST_CASE("eigen decomposition of the sl2 adjoint h") {
  // ad h on basis (e, f, h) has eigenvalues 2, -2, 0
  PrimeField F(7);
  Rng rng(15);
  Matrix m(3, 3);
  m.at(0, 0) = 2;
  m.at(1, 1) = F.neg(2);
  auto dec = eigen_decompose(m, Subspace::full(3), F, rng);
  REQUIRE(dec.pairs.size() == 3);
  std::set<Fel> values;
  for (auto& pr : dec.pairs) {
    values.insert(pr.value);
    CHECK(pr.space.dim() == 1);
  }
  CHECK(values == std::set<Fel>{0, 2, 5});
}

TEST_CASE("eigen decomposition flags a non-semisimple restriction") {
  PrimeField F(7);
  Rng rng(16);
  Matrix m(3, 3);  // J2(0) + a fixed point
  m.at(0, 1) = 1;
  m.at(2, 2) = 1;
  auto dec = eigen_decompose(m, Subspace::full(3), F, rng);
  CHECK(dec.non_semisimple_residue);
}

TEST_CASE("eigen decomposition requires an invariant domain") {
  PrimeField F(7);
  Rng rng(17);
  Matrix m(2, 2);  // rotation-ish: e1 -> e2
  m.at(1, 0) = 1;
  Subspace dom = Subspace::from_vectors({{1, 0}}, 2, F);
  CHECK_FALSE(try_eigen_decompose(m, dom, F, rng).has_value());
  CHECK_THROWS_AS(eigen_decompose(m, dom, F, rng), std::invalid_argument);
}

TEST_CASE("eigen decomposition against an exhaustive eigenvalue sweep") {
  Rng rng(18);
  for (std::uint64_t p : {5, 7, 11, 13}) {
    PrimeField F(p);
    for (int trial = 0; trial < 60; ++trial) {
      std::size_t n = 2 + rng.next() % 11;  // up to 12
      Matrix m = random_matrix(n, F, rng);
      auto dec = eigen_decompose(m, Subspace::full(n), F, rng);
      std::set<Fel> got;
      std::size_t dimsum = dec.perp.dim();
      for (auto& pr : dec.pairs) {
        got.insert(pr.value);
        dimsum += pr.space.dim();
        // every reported vector is an exact eigenvector
        for (std::size_t i = 0; i < pr.space.dim(); ++i) {
          Vec v = pr.space.basis().row_vec(i);
          CHECK(mat_apply(m, v, F) == vec_scale(v, pr.value, F));
        }
      }
      std::set<Fel> expect;
      for (Fel lam = 0; lam < p; ++lam)
        if (nullspace(mat_sub_scalar_diag(m, lam, F), F).dim() > 0) expect.insert(lam);
      CHECK(got == expect);
      if (!dec.non_semisimple_residue) CHECK(dimsum == n);
    }
  }
}

TEST_CASE("restriction to an invariant subspace") {
  // block diagonal operator: restrict to the first block's span
  PrimeField F(7);
  Rng rng(19);
  Matrix m(4, 4);
  m.at(0, 0) = 3;
  m.at(0, 1) = 1;
  m.at(1, 0) = 2;
  m.at(1, 1) = 6;
  m.at(2, 2) = 5;
  m.at(3, 3) = 5;
  Subspace dom = Subspace::from_vectors({{0, 0, 1, 0}, {0, 0, 0, 1}}, 4, F);
  auto dec = eigen_decompose(m, dom, F, rng);
  REQUIRE(dec.pairs.size() == 1);
  CHECK(dec.pairs[0].value == 5);
  CHECK(dec.pairs[0].space.dim() == 2);
  CHECK(dec.perp.dim() == 0);
}
