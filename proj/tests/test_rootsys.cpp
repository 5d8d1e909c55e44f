#include <doctest.h>

#include <array>
#include <map>
#include <set>
#include <stdexcept>

#include "chevalley/rootsys.hpp"

using namespace chv;

namespace {

RootCoords neg(const RootCoords& c) {
  RootCoords n(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) n[i] = -c[i];
  return n;
}

std::vector<RootCoords> all_roots(const RootSystem& rs) {
  std::vector<RootCoords> out;
  for (const Root& r : rs.positive_roots()) out.push_back(r.coords);
  for (const Root& r : rs.positive_roots()) out.push_back(neg(r.coords));
  return out;
}

std::vector<DynkinType> supported_types() {
  return {{'A', 1}, {'A', 2}, {'A', 3}, {'A', 4}, {'B', 2}, {'B', 3}, {'B', 4},
          {'C', 3}, {'C', 4}, {'D', 4}, {'D', 5}, {'E', 6}, {'E', 7}, {'E', 8},
          {'F', 4}, {'G', 2}};
}

}  // namespace

TEST_CASE("type validation") {
  CHECK_THROWS_AS((DynkinType{'A', 0}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DynkinType{'B', 1}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DynkinType{'C', 2}.validate()), std::invalid_argument);  // C2 = B2
  CHECK_THROWS_AS((DynkinType{'D', 3}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DynkinType{'E', 9}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DynkinType{'F', 5}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DynkinType{'G', 3}.validate()), std::invalid_argument);
  CHECK_THROWS_AS((DynkinType{'H', 2}.validate()), std::invalid_argument);
  DynkinType{'E', 7}.validate();
}

TEST_CASE("positive root counts") {
  std::map<std::string, std::size_t> expect = {
      {"A1", 1},  {"A2", 3},  {"A3", 6},   {"A4", 10},  {"B2", 4},  {"B3", 9},
      {"B4", 16}, {"C3", 9},  {"C4", 16},  {"D4", 12},  {"D5", 20}, {"E6", 36},
      {"E7", 63}, {"E8", 120}, {"F4", 24}, {"G2", 6}};
  for (const DynkinType& t : supported_types()) {
    RootSystem rs(t);
    CHECK(rs.num_positive() == expect[t.name()]);
    CHECK(rs.dimension() == 2 * expect[t.name()] + t.rank);
  }
}

TEST_CASE("A2 roots by hand") {
  RootSystem rs({'A', 2});
  REQUIRE(rs.num_positive() == 3);
  CHECK(rs.positive_root(0).coords == RootCoords{1, 0});
  CHECK(rs.positive_root(1).coords == RootCoords{0, 1});
  CHECK(rs.positive_root(2).coords == RootCoords{1, 1});
}

TEST_CASE("G2 structure") {
  RootSystem rs({'G', 2});
  CHECK(rs.num_positive() == 6);
  // highest root 3a1 + 2a2, with a1 short
  CHECK(rs.positive_root(5).coords == RootCoords{3, 2});
  CHECK(rs.simple_norm2(0) == 2);
  CHECK(rs.simple_norm2(1) == 6);
  CHECK_FALSE(rs.positive_root(0).is_long);
  CHECK(rs.positive_root(1).is_long);
  // brute force: the 12 roots form the hexagonal pattern, six of each length
  int longs = 0, shorts = 0;
  for (const Root& r : rs.positive_roots()) (r.is_long ? longs : shorts) += 1;
  CHECK(longs == 3);
  CHECK(shorts == 3);
}

TEST_CASE("cartan matrix invariants") {
  for (const DynkinType& t : supported_types()) {
    RootSystem rs(t);
    const auto& a = rs.cartan();
    for (unsigned i = 0; i < t.rank; ++i) {
      CHECK(a[i][i] == 2);
      for (unsigned j = 0; j < t.rank; ++j) {
        if (i == j) continue;
        CHECK(a[i][j] <= 0);
        CHECK(a[i][j] >= -3);
        CHECK((a[i][j] == 0) == (a[j][i] == 0));
      }
    }
  }
}

TEST_CASE("length classes per series") {
  CHECK(RootSystem({'B', 3}).simple_norm2(2) == 2);   // last node short
  CHECK(RootSystem({'B', 3}).simple_norm2(0) == 4);
  CHECK(RootSystem({'C', 3}).simple_norm2(2) == 4);   // last node long
  CHECK(RootSystem({'C', 3}).simple_norm2(0) == 2);
  RootSystem f4({'F', 4});
  CHECK(f4.simple_norm2(0) == 4);
  CHECK(f4.simple_norm2(1) == 4);
  CHECK(f4.simple_norm2(2) == 2);
  CHECK(f4.simple_norm2(3) == 2);
  for (const DynkinType& t : {DynkinType{'A', 3}, DynkinType{'D', 4}, DynkinType{'E', 6}}) {
    RootSystem rs(t);
    for (const Root& r : rs.positive_roots()) CHECK(r.is_long);
  }
}

TEST_CASE("cartan pairing basics") {
  for (const DynkinType& t : supported_types()) {
    RootSystem rs(t);
    for (const RootCoords& r : all_roots(rs)) CHECK(rs.pairing(r, r) == 2);
  }
  RootSystem a2({'A', 2});
  CHECK(a2.pairing({1, 0}, {0, 1}) == -1);
}

TEST_CASE("G2 pairings realize +-3") {
  RootSystem rs({'G', 2});
  std::set<int> seen;
  for (const RootCoords& b : all_roots(rs))
    for (const RootCoords& a : all_roots(rs)) seen.insert(rs.pairing(b, a));
  CHECK(seen.count(3) == 1);
  CHECK(seen.count(-3) == 1);
}

TEST_CASE("pairing values stay within the Cartan range") {
  for (const DynkinType& t : supported_types()) {
    RootSystem rs(t);
    auto roots = all_roots(rs);
    for (const RootCoords& b : roots)
      for (const RootCoords& a : roots) {
        int v = rs.pairing(b, a);
        if (b == a) continue;
        CHECK(v <= 3);
        CHECK(v >= -3);
      }
  }
}

TEST_CASE("structure constants: antisymmetry and magnitude") {
  for (const DynkinType& t : supported_types()) {
    if (t.series == 'E' && t.rank >= 7) continue;  // covered by spot checks below
    RootSystem rs(t);
    auto roots = all_roots(rs);
    int max_abs = 0;
    for (const RootCoords& a : roots)
      for (const RootCoords& b : roots) {
        RootCoords sum(a.size());
        bool zero = true;
        for (std::size_t i = 0; i < a.size(); ++i) {
          sum[i] = a[i] + b[i];
          if (sum[i] != 0) zero = false;
        }
        if (zero) continue;
        int nab = rs.structure_constant(a, b);
        int nba = rs.structure_constant(b, a);
        CHECK(nab == -nba);
        if (!rs.is_root(sum)) {
          CHECK(nab == 0);
        } else {
          int expect = rs.down_string(b, a) + 1;
          CHECK(std::abs(nab) == expect);
          max_abs = std::max(max_abs, std::abs(nab));
        }
      }
    if (t.series == 'G') CHECK(max_abs == 3);
    if (t.series == 'B' || t.series == 'C' || t.series == 'F') CHECK(max_abs == 2);
    if (t.series == 'A' || t.series == 'D') CHECK(max_abs == 1);
  }
}

TEST_CASE("extraspecial pairs exist uniquely with minimal first member") {
  for (const DynkinType& t : supported_types()) {
    RootSystem rs(t);
    for (std::size_t g = 0; g < rs.num_positive(); ++g) {
      if (rs.positive_root(g).height < 2) continue;
      auto [a, b] = rs.extraspecial(g);
      const RootCoords& ga = rs.positive_root(a).coords;
      const RootCoords& gb = rs.positive_root(b).coords;
      RootCoords sum(ga.size());
      for (std::size_t i = 0; i < ga.size(); ++i) sum[i] = ga[i] + gb[i];
      CHECK(sum == rs.positive_root(g).coords);
      CHECK(rs.root_less(ga, gb));
      // minimality of the first member over all decompositions
      for (std::size_t a2 = 0; a2 < a; ++a2) {
        RootCoords rest(ga.size());
        for (std::size_t i = 0; i < ga.size(); ++i)
          rest[i] = rs.positive_root(g).coords[i] - rs.positive_root(a2).coords[i];
        CHECK(rs.positive_index(rest) < 0);
      }
    }
  }
}

TEST_CASE("A2 structure constants match the sl3 matrix-unit model") {
  RootSystem rs({'A', 2});
  // e_{a1} = E12, e_{a2} = E23, e_{a1+a2} = E13 and transposes for f's;
  // [E12, E23] = E13 forces N_{a1,a2} = +1.
  CHECK(rs.structure_constant({1, 0}, {0, 1}) == 1);
  CHECK(rs.structure_constant({0, 1}, {1, 0}) == -1);
  // [E13, E32] = E12, bracket of e_{a1+a2} with f_{a2}
  CHECK(rs.structure_constant({1, 1}, {0, -1}) == 1);
  // [E13, E21] = -E23
  CHECK(rs.structure_constant({1, 1}, {-1, 0}) == -1);
  // negation rule
  CHECK(rs.structure_constant({-1, 0}, {0, -1}) == -1);
}

TEST_CASE("structure constant of a non-root sum is zero") {
  RootSystem rs({'A', 3});
  CHECK(rs.structure_constant({1, 0, 0}, {0, 0, 1}) == 0);
  CHECK_THROWS_AS(rs.structure_constant({1, 0, 0}, {-1, 0, 0}), std::invalid_argument);
}

TEST_CASE("root strings are unbroken intervals") {
  for (const DynkinType& t : supported_types()) {
    if (t.series == 'E' && t.rank >= 7) continue;  // large; same logic as the rest
    RootSystem rs(t);
    auto roots = all_roots(rs);
    for (const RootCoords& b : roots)
      for (const RootCoords& a : roots) {
        if (a == b || a == neg(b)) continue;
        std::set<int> ks;
        for (int k = -6; k <= 6; ++k) {
          RootCoords c(a.size());
          for (std::size_t i = 0; i < a.size(); ++i) c[i] = b[i] + k * a[i];
          if (rs.is_root(c)) ks.insert(k);
        }
        REQUIRE(!ks.empty());
        int lo = *ks.begin(), hi = *ks.rbegin();
        CHECK(static_cast<int>(ks.size()) == hi - lo + 1);
        // string length bounded by 3 steps
        CHECK(hi - lo <= 3);
      }
  }
}

TEST_CASE("coroot coordinates are integral and correct on simples") {
  for (const DynkinType& t : supported_types()) {
    RootSystem rs(t);
    for (unsigned i = 0; i < t.rank; ++i) {
      RootCoords alpha(t.rank, 0);
      alpha[i] = 1;
      std::vector<int> cc = rs.coroot_coords(alpha);
      for (unsigned j = 0; j < t.rank; ++j) CHECK(cc[j] == (i == j ? 1 : 0));
    }
    // highest root of G2: theta = 3a1+2a2 long, theta^vee = a1^vee + 2 a2^vee...
    if (t.series == 'G') {
      std::vector<int> cc = rs.coroot_coords({3, 2});
      CHECK(cc == std::vector<int>{1, 2});
    }
  }
}
