#include <doctest.h>

#include <array>
#include <set>

#include "chevalley/algebra.hpp"
#include "chevalley/rng.hpp"

using namespace chv;

namespace {

LieAlgebra canonical(char series, unsigned rank, std::uint64_t p) {
  RootSystem rs(DynkinType{series, rank});
  return build_chevalley(rs, PrimeField(p)).first;
}

Vec basis_vec(unsigned d, unsigned i) {
  Vec v(d, 0);
  v[i] = 1;
  return v;
}

bool jacobi_holds(const LieAlgebra& L, bool exhaustive, Rng& rng, unsigned samples = 10000) {
  unsigned d = L.dim();
  if (exhaustive) {
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = i + 1; j < d; ++j)
        for (unsigned k = j + 1; k < d; ++k)
          if (!vec_is_zero(L.jacobi_defect(i, j, k))) return false;
    return true;
  }
  for (unsigned t = 0; t < samples; ++t) {
    unsigned i = rng.index(d), j = rng.index(d), k = rng.index(d);
    if (i == j || j == k || i == k) continue;
    if (!vec_is_zero(L.jacobi_defect(i, j, k))) return false;
  }
  return true;
}

// the adjoint tensor of sl3 from literal 3x3 matrix units
LieAlgebra sl3_adjoint_oracle(std::uint64_t p) {
  PrimeField F(p);
  using Mat3 = std::array<std::array<int, 3>, 3>;
  auto unit = [](int r, int c) {
    Mat3 m{};
    m[r][c] = 1;
    return m;
  };
  auto sub = [](Mat3 a, const Mat3& b) {
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) a[i][j] -= b[i][j];
    return a;
  };
  auto mul = [](const Mat3& a, const Mat3& b) {
    Mat3 r{};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j)
        for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
    return r;
  };
  // basis aligned with build_chevalley's order for A2:
  // e_{a1}=E12, e_{a2}=E23, e_{a1+a2}=E13, f's transposed, h1, h2
  std::vector<Mat3> basis = {unit(0, 1), unit(1, 2), unit(0, 2),
                             unit(1, 0), unit(2, 1), unit(2, 0),
                             sub(unit(0, 0), unit(1, 1)), sub(unit(1, 1), unit(2, 2))};
  // expand a traceless matrix over the basis: off-diagonal entries are unit
  // coefficients, the diagonal part solves against h1, h2
  auto expand = [&](const Mat3& m) {
    Vec v(8, 0);
    auto fi = [&](int x) { return F.from_int(x); };
    v[0] = fi(m[0][1]);
    v[1] = fi(m[1][2]);
    v[2] = fi(m[0][2]);
    v[3] = fi(m[1][0]);
    v[4] = fi(m[2][1]);
    v[5] = fi(m[2][0]);
    // diagonal = a*h1 + b*h2 with a = m00, b = -m22
    v[6] = fi(m[0][0]);
    v[7] = fi(-m[2][2]);
    return v;
  };
  LieAlgebra L(F, 8);
  for (unsigned i = 0; i < 8; ++i)
    for (unsigned j = i + 1; j < 8; ++j) {
      Mat3 br = sub(mul(basis[i], basis[j]), mul(basis[j], basis[i]));
      Vec coords = expand(br);
      std::vector<LieAlgebra::Term> terms;
      for (unsigned k = 0; k < 8; ++k)
        if (coords[k] != 0) terms.emplace_back(k, coords[k]);
      L.set_bracket(i, j, std::move(terms));
    }
  return L;
}

}  // namespace

TEST_CASE("A1 relations") {
  LieAlgebra L = canonical('A', 1, 7);
  REQUIRE(L.dim() == 3);
  // order: e, f, h
  Vec e = basis_vec(3, 0), f = basis_vec(3, 1), h = basis_vec(3, 2);
  CHECK(L.bracket(h, e) == vec_scale(e, 2, L.field()));
  CHECK(L.bracket(h, f) == vec_scale(f, L.field().neg(2), L.field()));
  CHECK(L.bracket(e, f) == h);
  Matrix adh = L.ad(h);
  CHECK(adh.at(0, 0) == 2);
  CHECK(adh.at(1, 1) == 5);
  CHECK(adh.at(2, 2) == 0);
}

TEST_CASE("dimensions of named algebras") {
  CHECK(canonical('F', 4, 11).dim() == 52);
  CHECK(canonical('A', 2, 5).dim() == 8);
  CHECK(canonical('G', 2, 7).dim() == 14);
  CHECK(canonical('E', 6, 7).dim() == 78);
}

TEST_CASE("p below 5 is rejected") {
  CHECK_THROWS_AS(canonical('A', 2, 3), std::invalid_argument);
  CHECK_THROWS_AS(canonical('G', 2, 2), std::invalid_argument);
}

TEST_CASE("A2 tensor equals the sl3 adjoint oracle") {
  LieAlgebra built = canonical('A', 2, 5);
  LieAlgebra oracle = sl3_adjoint_oracle(5);
  CHECK(built.tensor_equal(oracle));
}

TEST_CASE("canonical tags line up with the tensor") {
  RootSystem rs(DynkinType{'B', 2});
  PrimeField F(11);
  auto [L, tags] = build_chevalley(rs, F);
  REQUIRE(tags.tags.size() == L.dim());
  for (unsigned i = 0; i < L.dim(); ++i) {
    const BasisTag& t = tags.tags[i];
    if (t.kind != BasisTag::Kind::H) continue;
    // [h_i, e_beta] = <beta, alpha_i^vee> e_beta
    for (unsigned j = 0; j < L.dim(); ++j) {
      if (tags.tags[j].kind != BasisTag::Kind::E) continue;
      long pair = 0;
      for (unsigned c = 0; c < 2; ++c)
        pair += long(rs.cartan()[t.simple][c]) * tags.tags[j].coords[c];
      Vec got = L.bracket_basis(i, j);
      CHECK(got == vec_scale(basis_vec(L.dim(), j), F.from_int(pair), F));
    }
  }
}

TEST_CASE("jacobi and antisymmetry on constructed algebras") {
  Rng rng(21);
  for (auto [series, rank, p] : {std::tuple<char, unsigned, std::uint64_t>{'A', 3, 7},
                                 {'B', 3, 5},
                                 {'C', 3, 11},
                                 {'D', 4, 7},
                                 {'G', 2, 7},
                                 {'F', 4, 5}}) {
    LieAlgebra L = canonical(series, rank, p);
    CHECK(jacobi_holds(L, L.dim() <= 60, rng));
    // alternating: [x, x] = 0 on random vectors
    for (int t = 0; t < 20; ++t) {
      Vec x(L.dim());
      for (auto& v : x) v = rng.uniform(L.field());
      CHECK(vec_is_zero(L.bracket(x, x)));
    }
  }
  // sampled triples above the exhaustive cutoff
  LieAlgebra e6 = canonical('E', 6, 7);
  CHECK(jacobi_holds(e6, false, rng));
}

TEST_CASE("structure constants bounded by series") {
  for (auto [series, rank, bound] :
       {std::tuple<char, unsigned, Fel>{'A', 3, 1}, {'D', 4, 1}, {'B', 3, 2}, {'C', 3, 2},
        {'F', 4, 2}, {'G', 2, 3}}) {
    PrimeField F(101);  // large prime so lifted magnitudes are visible
    RootSystem rs(DynkinType{series, rank});
    auto [L, tags] = build_chevalley(rs, F);
    std::size_t P = rs.num_positive();
    Fel maxc = 0;
    for (unsigned i = 0; i < 2 * P; ++i)
      for (unsigned j = i + 1; j < 2 * P; ++j)
        for (auto& [k, c] : L.slice(i, j)) {
          if (k >= 2 * P) continue;  // skip the coroot part of [e,f]
          Fel lifted = std::min<Fel>(c, F.p() - c);
          maxc = std::max(maxc, lifted);
        }
    CHECK(maxc == bound);
  }
}

TEST_CASE("direct sums and centers") {
  LieAlgebra a1 = canonical('A', 1, 7);
  LieAlgebra sum = direct_sum({&a1, &a1});
  CHECK(sum.dim() == 6);
  // the blocks commute
  for (unsigned i = 0; i < 3; ++i)
    for (unsigned j = 3; j < 6; ++j) CHECK(vec_is_zero(sum.bracket_basis(i, j)));
  Rng rng(22);
  CHECK(jacobi_holds(sum, true, rng));

  LieAlgebra a2 = canonical('A', 2, 7);
  LieAlgebra centered = add_center(a2, 2);
  CHECK(centered.dim() == 10);
  for (unsigned z = 8; z < 10; ++z) {
    Matrix adz = centered.ad(basis_vec(10, z));
    for (unsigned i = 0; i < 10; ++i)
      for (unsigned j = 0; j < 10; ++j) CHECK(adz.at(i, j) == 0);
  }
  CHECK(jacobi_holds(centered, true, rng));

  LieAlgebra g2 = canonical('G', 2, 7);
  CHECK(direct_sum({&a2, &g2}).dim() == 22);

  LieAlgebra a1p5 = canonical('A', 1, 5);
  CHECK_THROWS_AS(direct_sum({&a1, &a1p5}), std::invalid_argument);
}

TEST_CASE("scramble basics") {
  PrimeField F(5);
  LieAlgebra L = canonical('A', 1, 5);
  // identity change of basis leaves the tensor alone
  Matrix id = Matrix::identity(3);
  CHECK(change_basis(L, id, id).tensor_equal(L));

  auto [scr, bc] = scramble(L, 42);
  CHECK(mat_mul(bc.forward, bc.inverse, F) == Matrix::identity(3));
  // undo: the scrambled basis expressed through the inverse brings the
  // original tensor back exactly
  LieAlgebra undone = change_basis(scr, bc.inverse, bc.forward);
  CHECK(undone.tensor_equal(L));
  // scrambled tensors still satisfy the axioms
  Rng rng(23);
  CHECK(jacobi_holds(scr, true, rng));
}

TEST_CASE("scramble preserves conjugation invariants") {
  PrimeField F(7);
  LieAlgebra L = canonical('A', 2, 7);
  auto [scr, bc] = scramble(L, 9);
  Rng rng(24);
  // h1 in the old basis is basis vector 6; its coordinates in the new basis
  // are a column of the inverse
  Vec h1_old = basis_vec(8, 6);
  Vec h1_new = mat_apply(bc.inverse, h1_old, F);
  Poly m1 = minimal_polynomial(L.ad(h1_old), F, rng);
  Poly m2 = minimal_polynomial(scr.ad(h1_new), F, rng);
  CHECK(m1 == m2);
}

TEST_CASE("ad and ad_column agree") {
  LieAlgebra L = canonical('B', 2, 11);
  Rng rng(25);
  for (int t = 0; t < 100; ++t) {
    Vec y(L.dim());
    for (auto& v : y) v = rng.uniform(L.field());
    unsigned j = static_cast<unsigned>(rng.index(L.dim()));
    // ad_column gives [b_j, y] = -ad(y) applied to b_j
    Vec got = L.ad_column(y, j);
    Vec via_ad = mat_apply(L.ad(y), basis_vec(L.dim(), j), L.field());
    CHECK(got == vec_scale(via_ad, L.field().neg(1), L.field()));
  }
}

TEST_CASE("ad is a Lie homomorphism") {
  LieAlgebra L = canonical('A', 2, 7);
  Rng rng(26);
  const PrimeField& F = L.field();
  for (int t = 0; t < 25; ++t) {
    Vec x(L.dim()), y(L.dim());
    for (auto& v : x) v = rng.uniform(F);
    for (auto& v : y) v = rng.uniform(F);
    Matrix lhs = L.ad(L.bracket(x, y));
    Matrix ax = L.ad(x), ay = L.ad(y);
    Matrix rhs = mat_add(mat_mul(ax, ay, F), mat_scale(mat_mul(ay, ax, F), F.neg(1), F), F);
    CHECK(lhs == rhs);
  }
}
