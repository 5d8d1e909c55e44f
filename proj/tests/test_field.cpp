#include <doctest.h>

#include <algorithm>
#include <set>

#include "chevalley/field.hpp"
#include "chevalley/rng.hpp"

using namespace chv;

TEST_CASE("prime validation") {
  CHECK_THROWS_AS(PrimeField(4), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(9), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(91), std::invalid_argument);  // 7 * 13
  CHECK_THROWS_AS(PrimeField(2), std::invalid_argument);   // characteristic below 5
  CHECK_THROWS_AS(PrimeField(3), std::invalid_argument);
  CHECK_THROWS_AS(PrimeField(1ull << 31), std::invalid_argument);
  CHECK(PrimeField(5).p() == 5);
  CHECK(PrimeField(101).p() == 101);
  CHECK(PrimeField(2147483647).p() == 2147483647u);  // largest supported prime
  CHECK(is_prime(2));
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(3215031751ull));  // strong pseudoprime to bases 2,3,5,7 is out of range anyway
}

TEST_CASE("basic arithmetic") {
  PrimeField F7(7);
  CHECK(F7.inv(3) == 5);  // 3*5 = 15 = 1 mod 7
  CHECK(F7.mul(3, F7.inv(3)) == 1);
  PrimeField F5(5);
  CHECK(F5.pow(2, 4) == 1);
  PrimeField F11(11);
  CHECK(F11.neg(0) == 0);
  CHECK(F11.sub(3, 7) == 7);
  CHECK_THROWS_AS(F7.inv(0), std::domain_error);

  // inversion across a whole field
  for (Fel a = 1; a < 11; ++a) CHECK(F11.mul(a, F11.inv(a)) == 1);
}

TEST_CASE("field op counter counts mul and inv") {
  PrimeField F(7);
  reset_field_ops();
  F.mul(2, 3);
  F.inv(4);
  F.add(1, 2);
  CHECK(field_ops() == 2);
  reset_field_ops();
}

TEST_CASE("polynomial division and gcd basics") {
  PrimeField F(7);
  Rng rng(1);
  for (int trial = 0; trial < 100; ++trial) {
    std::vector<Fel> ac((rng.next() % 8) + 1), bc((rng.next() % 6) + 1);
    for (auto& x : ac) x = rng.uniform(F);
    for (auto& x : bc) x = rng.uniform(F);
    Poly a{ac}, b{bc};
    if (b.is_zero()) continue;
    Poly q, r;
    poly_divmod(a, b, F, q, r);
    CHECK(poly_add(poly_mul(q, b, F), r, F) == a);
    CHECK(r.degree() < b.degree());
    if (!a.is_zero()) {
      Poly g = poly_gcd(a, b, F);
      Poly qq, rr;
      poly_divmod(a, g, F, qq, rr);
      CHECK(rr.is_zero());
      poly_divmod(b, g, F, qq, rr);
      CHECK(rr.is_zero());
    }
  }
}

TEST_CASE("X^p mod f has degree below deg f") {
  PrimeField F(11);
  Rng rng(2);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Fel> fc((rng.next() % 6) + 2);
    for (auto& x : fc) x = rng.uniform(F);
    fc.back() = 1;
    Poly f{fc};
    Poly x{std::vector<Fel>{0, 1}};
    Poly xp = poly_powmod(x, F.p(), f, F);
    CHECK(xp.degree() < f.degree());
  }
}

TEST_CASE("root finding on constructed examples") {
  Rng rng(3);
  {
    PrimeField F(7);
    Poly f = poly_from_roots({1, 2, 3}, F);
    auto roots = poly_roots(f, F, rng);
    CHECK(roots == std::vector<Fel>{1, 2, 3});
  }
  {
    // X^2 + 2 is irreducible mod 5 since -2 is a non-residue
    PrimeField F(5);
    Poly f{std::vector<Fel>{2, 0, 1}};
    CHECK(poly_roots(f, F, rng).empty());
  }
  {
    // repeated root reported once
    PrimeField F(11);
    Poly f{std::vector<Fel>{0, 0, 0, 1}};  // X^3
    CHECK(poly_roots(f, F, rng) == std::vector<Fel>{0});
  }
}

// brute-force oracle: evaluate f at every field element
static std::vector<Fel> roots_by_sweep(const Poly& f, const PrimeField& F) {
  std::vector<Fel> out;
  for (Fel x = 0; x < F.p(); ++x)
    if (poly_eval(f, x, F) == 0) out.push_back(x);
  return out;
}

TEST_CASE("root finding matches exhaustive evaluation") {
  Rng rng(4);
  int cases = 0;
  for (std::uint64_t p : {5, 7, 11, 13}) {
    PrimeField F(p);
    for (int trial = 0; trial < 125; ++trial) {
      std::size_t deg = rng.next() % 12 + 1;
      std::vector<Fel> c(deg + 1);
      for (auto& x : c) x = rng.uniform(F);
      c.back() = 1;  // monic
      Poly f{c};
      CHECK(poly_roots(f, F, rng) == roots_by_sweep(f, F));
      ++cases;
    }
  }
  CHECK(cases == 500);
}

TEST_CASE("root finding rejects the zero polynomial") {
  PrimeField F(7);
  Rng rng(5);
  CHECK_THROWS_AS(poly_roots(Poly{}, F, rng), std::domain_error);
}
