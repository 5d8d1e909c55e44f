#include "chevalley/rootsys.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace chv {

void DynkinType::validate() const {
  bool ok = false;
  switch (series) {
    case 'A': ok = rank >= 1; break;
    case 'B': ok = rank >= 2; break;
    case 'C': ok = rank >= 3; break;
    case 'D': ok = rank >= 4; break;
    case 'E': ok = rank >= 6 && rank <= 8; break;
    case 'F': ok = rank == 4; break;
    case 'G': ok = rank == 2; break;
    default: ok = false;
  }
  if (!ok)
    throw std::invalid_argument("invalid Dynkin type " + std::string(1, series) +
                                std::to_string(rank));
}

namespace {

std::size_t expected_positive_count(const DynkinType& t) {
  std::size_t n = t.rank;
  switch (t.series) {
    case 'A': return n * (n + 1) / 2;
    case 'B':
    case 'C': return n * n;
    case 'D': return n * (n - 1);
    case 'E': return n == 6 ? 36 : (n == 7 ? 63 : 120);
    case 'F': return 24;
    case 'G': return 6;
  }
  return 0;
}

}  // namespace

RootSystem::RootSystem(DynkinType t) : type_(t) {
  type_.validate();
  build_cartan();
  enumerate_roots();
  build_structure_constants();
}

void RootSystem::build_cartan() {
  unsigned n = type_.rank;
  cartan_.assign(n, std::vector<int>(n, 0));
  for (unsigned i = 0; i < n; ++i) cartan_[i][i] = 2;
  norm2_.assign(n, 2);

  auto bond = [&](unsigned i, unsigned j) {  // single edge, both -1
    cartan_[i][j] = -1;
    cartan_[j][i] = -1;
  };

  switch (type_.series) {
    case 'A':
      for (unsigned i = 0; i + 1 < n; ++i) bond(i, i + 1);
      break;
    case 'B':
      // alpha_0..alpha_{n-2} long, alpha_{n-1} short
      for (unsigned i = 0; i + 2 < n; ++i) bond(i, i + 1);
      for (unsigned i = 0; i + 1 < n; ++i) norm2_[i] = 4;
      cartan_[n - 2][n - 1] = -1;
      cartan_[n - 1][n - 2] = -2;
      break;
    case 'C':
      // alpha_0..alpha_{n-2} short, alpha_{n-1} long
      for (unsigned i = 0; i + 2 < n; ++i) bond(i, i + 1);
      norm2_[n - 1] = 4;
      cartan_[n - 2][n - 1] = -2;
      cartan_[n - 1][n - 2] = -1;
      break;
    case 'D':
      for (unsigned i = 0; i + 3 < n; ++i) bond(i, i + 1);
      bond(n - 3, n - 2);
      bond(n - 3, n - 1);
      break;
    case 'E':
      bond(0, 2);
      bond(2, 3);
      bond(1, 3);
      for (unsigned i = 3; i + 1 < n; ++i) bond(i, i + 1);
      break;
    case 'F':
      bond(0, 1);
      bond(2, 3);
      norm2_[0] = norm2_[1] = 4;
      cartan_[1][2] = -1;
      cartan_[2][1] = -2;
      break;
    case 'G':
      // alpha_0 short, alpha_1 long
      norm2_[1] = 6;
      cartan_[0][1] = -3;
      cartan_[1][0] = -1;
      break;
  }

  bilinear_.assign(n, std::vector<int>(n, 0));
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j) {
      int twice = cartan_[i][j] * norm2_[i];  // 2(alpha_i, alpha_j)
      if (twice % 2 != 0) throw std::logic_error("non-integral bilinear form");
      bilinear_[i][j] = twice / 2;
    }
  for (unsigned i = 0; i < n; ++i)
    for (unsigned j = 0; j < n; ++j)
      if (bilinear_[i][j] != bilinear_[j][i]) throw std::logic_error("asymmetric bilinear form");
}

bool RootSystem::root_less(const RootCoords& a, const RootCoords& b) const {
  int ha = std::accumulate(a.begin(), a.end(), 0);
  int hb = std::accumulate(b.begin(), b.end(), 0);
  if (ha != hb) return ha < hb;
  return a > b;  // within a height level alpha_0 comes first
}

void RootSystem::enumerate_roots() {
  unsigned n = type_.rank;
  std::map<RootCoords, bool> found;
  std::vector<RootCoords> queue;
  for (unsigned i = 0; i < n; ++i) {
    RootCoords e(n, 0);
    e[i] = 1;
    found[e] = true;
    queue.push_back(e);
  }
  for (std::size_t qi = 0; qi < queue.size(); ++qi) {
    RootCoords beta = queue[qi];
    for (unsigned i = 0; i < n; ++i) {
      // down-string length of beta in direction alpha_i
      int r = 0;
      RootCoords walk = beta;
      for (;;) {
        walk[i] -= 1;
        if (!found.count(walk)) break;
        ++r;
      }
      int pair = 0;
      for (unsigned j = 0; j < n; ++j) pair += beta[j] * cartan_[i][j];
      if (r - pair > 0) {
        RootCoords up = beta;
        up[i] += 1;
        if (!found.count(up)) {
          found[up] = true;
          queue.push_back(up);
        }
      }
    }
  }

  std::vector<RootCoords> all(queue.begin(), queue.end());
  std::sort(all.begin(), all.end(),
            [this](const RootCoords& a, const RootCoords& b) { return root_less(a, b); });

  int max_norm = 0;
  for (const auto& c : all) max_norm = std::max(max_norm, norm2(c));
  positive_.reserve(all.size());
  for (std::size_t i = 0; i < all.size(); ++i) {
    Root r;
    r.coords = all[i];
    r.height = std::accumulate(all[i].begin(), all[i].end(), 0);
    r.is_long = norm2(all[i]) == max_norm;
    positive_index_[all[i]] = i;
    positive_.push_back(std::move(r));
  }
  if (positive_.size() != expected_positive_count(type_))
    throw std::logic_error("root enumeration produced a wrong count for " + type_.name());
}

int RootSystem::positive_index(const RootCoords& coords) const {
  auto it = positive_index_.find(coords);
  return it == positive_index_.end() ? -1 : static_cast<int>(it->second);
}

bool RootSystem::is_root(const RootCoords& coords) const {
  if (positive_index_.count(coords)) return true;
  RootCoords neg(coords.size());
  for (std::size_t i = 0; i < coords.size(); ++i) neg[i] = -coords[i];
  return positive_index_.count(neg) != 0;
}

int RootSystem::norm2(const RootCoords& beta) const {
  long acc = 0;
  unsigned n = type_.rank;
  for (unsigned i = 0; i < n; ++i) {
    if (beta[i] == 0) continue;
    for (unsigned j = 0; j < n; ++j) acc += long(beta[i]) * beta[j] * bilinear_[i][j];
  }
  return static_cast<int>(acc);
}

int RootSystem::pairing(const RootCoords& beta, const RootCoords& alpha) const {
  long twice = 0;
  unsigned n = type_.rank;
  for (unsigned i = 0; i < n; ++i) {
    if (beta[i] == 0) continue;
    for (unsigned j = 0; j < n; ++j) twice += 2L * beta[i] * alpha[j] * bilinear_[i][j];
  }
  int na = norm2(alpha);
  if (twice % na != 0) throw std::logic_error("non-integral Cartan pairing");
  return static_cast<int>(twice / na);
}

int RootSystem::down_string(const RootCoords& beta, const RootCoords& alpha) const {
  int r = 0;
  RootCoords walk = beta;
  for (;;) {
    for (std::size_t i = 0; i < walk.size(); ++i) walk[i] -= alpha[i];
    if (!is_root(walk)) break;
    ++r;
  }
  return r;
}

std::pair<std::size_t, std::size_t> RootSystem::extraspecial(std::size_t gamma_idx) const {
  if (positive_[gamma_idx].height < 2)
    throw std::invalid_argument("extraspecial pair of a simple root");
  return extraspecial_[gamma_idx];
}

void RootSystem::build_structure_constants() {
  unsigned n = type_.rank;
  extraspecial_.assign(positive_.size(), {0, 0});
  // Heights increase along the fixed order, so every quantity the recursion
  // needs is available by the time a root is processed.
  for (std::size_t g = 0; g < positive_.size(); ++g) {
    const RootCoords& gamma = positive_[g].coords;
    if (positive_[g].height < 2) continue;
    std::vector<std::pair<std::size_t, std::size_t>> specials;
    for (std::size_t a = 0; a < positive_.size(); ++a) {
      if (positive_[a].height >= positive_[g].height) break;
      RootCoords rest(n);
      for (unsigned i = 0; i < n; ++i) rest[i] = gamma[i] - positive_[a].coords[i];
      int b = positive_index(rest);
      if (b < 0) continue;
      if (a < static_cast<std::size_t>(b)) specials.emplace_back(a, b);
    }
    if (specials.empty()) throw std::logic_error("no special pair for a non-simple root");
    auto [eps, eta] = specials.front();  // minimal first component = extraspecial
    extraspecial_[g] = {eps, eta};
    special_n_[{eps, eta}] =
        down_string(positive_[eta].coords, positive_[eps].coords) + 1;
    const RootCoords& ec = positive_[eps].coords;
    for (std::size_t k = 1; k < specials.size(); ++k) {
      auto [a, b] = specials[k];
      const RootCoords& ac = positive_[a].coords;
      const RootCoords& bc = positive_[b].coords;
      RootCoords b_minus_e(n), a_minus_e(n), neg_e(n);
      for (unsigned i = 0; i < n; ++i) {
        b_minus_e[i] = bc[i] - ec[i];
        a_minus_e[i] = ac[i] - ec[i];
        neg_e[i] = -ec[i];
      }
      long t1 = 0, t2 = 0;
      if (is_root(b_minus_e))
        t1 = long(signed_constant(bc, neg_e)) * signed_constant(ac, b_minus_e);
      if (is_root(a_minus_e))
        t2 = long(signed_constant(ac, neg_e)) * signed_constant(bc, a_minus_e);
      int denom = signed_constant(gamma, neg_e);
      if (denom == 0 || (t1 - t2) % denom != 0)
        throw std::logic_error("structure constant recursion failed for " + type_.name());
      int val = static_cast<int>((t1 - t2) / denom);
      int expect = down_string(bc, ac) + 1;
      if (val != expect && val != -expect)
        throw std::logic_error("structure constant magnitude check failed for " + type_.name());
      special_n_[{a, b}] = val;
    }
  }
}

int RootSystem::lookup_special(std::size_t a, std::size_t b) const {
  auto it = special_n_.find({a, b});
  if (it == special_n_.end()) throw std::logic_error("missing structure constant entry");
  return it->second;
}

// N_{a,b} for roots with a+b a (nonzero) root; reduces every case to the
// stored positive special pairs via antisymmetry, negation and the
// norm-ratio identity for triples summing to zero.
int RootSystem::signed_constant(const RootCoords& a, const RootCoords& b) const {
  unsigned n = type_.rank;
  bool a_pos = positive_index_.count(a) != 0;
  bool b_pos = positive_index_.count(b) != 0;
  RootCoords neg_a(n), neg_b(n), sum(n);
  for (unsigned i = 0; i < n; ++i) {
    neg_a[i] = -a[i];
    neg_b[i] = -b[i];
    sum[i] = a[i] + b[i];
  }
  if (a_pos && b_pos) {
    std::size_t ia = positive_index_.at(a), ib = positive_index_.at(b);
    return ia < ib ? lookup_special(ia, ib) : -lookup_special(ib, ia);
  }
  if (!a_pos && !b_pos) return -signed_constant(neg_a, neg_b);
  if (a_pos) {
    // b negative; write m = -b
    if (positive_index_.count(sum)) {
      // a = m + phi with phi = a + b; N_{a,-m} = -(|phi|^2/|a|^2) N_{m,phi}
      int base = signed_constant(neg_b, sum);
      long num = long(norm2(sum)) * base;
      int den = norm2(a);
      if (num % den != 0) throw std::logic_error("norm-ratio identity not integral");
      return static_cast<int>(-num / den);
    }
    return signed_constant(neg_b, neg_a);
  }
  return -signed_constant(b, a);
}

int RootSystem::structure_constant(const RootCoords& a, const RootCoords& b) const {
  unsigned n = type_.rank;
  RootCoords sum(n);
  bool zero = true;
  for (unsigned i = 0; i < n; ++i) {
    sum[i] = a[i] + b[i];
    if (sum[i] != 0) zero = false;
  }
  if (zero) throw std::invalid_argument("structure_constant with beta = -alpha");
  if (!is_root(a) || !is_root(b)) throw std::invalid_argument("arguments must be roots");
  if (!is_root(sum)) return 0;
  return signed_constant(a, b);
}

std::vector<int> RootSystem::coroot_coords(const RootCoords& gamma) const {
  unsigned n = type_.rank;
  int ng = norm2(gamma);
  std::vector<int> c(n);
  for (unsigned i = 0; i < n; ++i) {
    long num = long(gamma[i]) * norm2_[i];
    if (num % ng != 0) throw std::logic_error("coroot expansion not integral");
    c[i] = static_cast<int>(num / ng);
  }
  return c;
}

}  // namespace chv
