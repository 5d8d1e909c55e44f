#include "chevalley/algebra.hpp"

#include <algorithm>
#include <stdexcept>

#include "chevalley/rng.hpp"

namespace chv {

void LieAlgebra::set_bracket(unsigned i, unsigned j, std::vector<Term> terms) {
  if (i == j || i >= dim_ || j >= dim_) throw std::invalid_argument("bad bracket indices");
  bool flip = i > j;
  if (flip) std::swap(i, j);
  std::sort(terms.begin(), terms.end());
  std::vector<Term> clean;
  for (auto& [k, c] : terms) {
    if (k >= dim_) throw std::invalid_argument("bracket target out of range");
    if (!clean.empty() && clean.back().first == k) throw std::invalid_argument("duplicate term");
    Fel v = flip ? F_.neg(c) : c;
    if (v != 0) clean.emplace_back(k, v);
  }
  slices_[pair_index(i, j)] = std::move(clean);
}

const std::vector<LieAlgebra::Term>& LieAlgebra::slice(unsigned i, unsigned j) const {
  return slices_[pair_index(i, j)];
}

Vec LieAlgebra::bracket_basis(unsigned i, unsigned j) const {
  Vec r(dim_, 0);
  if (i == j) return r;
  bool flip = i > j;
  if (flip) std::swap(i, j);
  for (auto& [k, c] : slices_[pair_index(i, j)]) r[k] = flip ? F_.neg(c) : c;
  return r;
}

Vec LieAlgebra::bracket(const Vec& x, const Vec& y) const {
  if (x.size() != dim_ || y.size() != dim_) throw std::invalid_argument("dimension mismatch");
  Vec r(dim_, 0);
  std::vector<unsigned> sx, sy;
  for (unsigned i = 0; i < dim_; ++i) {
    if (x[i] != 0) sx.push_back(i);
    if (y[i] != 0) sy.push_back(i);
  }
  for (unsigned i : sx) {
    for (unsigned j : sy) {
      if (i == j) continue;
      Fel t = F_.mul(x[i], y[j]);
      bool flip = i > j;
      const auto& sl = slices_[flip ? pair_index(j, i) : pair_index(i, j)];
      for (auto& [k, c] : sl) {
        Fel v = F_.mul(t, c);
        r[k] = flip ? F_.sub(r[k], v) : F_.add(r[k], v);
      }
    }
  }
  return r;
}

Matrix LieAlgebra::ad(const Vec& x) const {
  if (x.size() != dim_) throw std::invalid_argument("dimension mismatch");
  Matrix M(dim_, dim_);
  for (unsigned i = 0; i + 1 < dim_; ++i) {
    for (unsigned j = i + 1; j < dim_; ++j) {
      const auto& sl = slices_[pair_index(i, j)];
      if (sl.empty()) continue;
      Fel xi = x[i], xj = x[j];
      if (xi == 0 && xj == 0) continue;
      for (auto& [k, c] : sl) {
        // [x, b_j] picks up x_i * c, [x, b_i] picks up -x_j * c
        if (xi != 0) M.at(k, j) = F_.add(M.at(k, j), F_.mul(xi, c));
        if (xj != 0) M.at(k, i) = F_.sub(M.at(k, i), F_.mul(xj, c));
      }
    }
  }
  return M;
}

Vec LieAlgebra::ad_column(const Vec& y, unsigned j) const {
  if (y.size() != dim_ || j >= dim_) throw std::invalid_argument("dimension mismatch");
  Vec r(dim_, 0);
  for (unsigned k = 0; k < dim_; ++k) {
    if (k == j || y[k] == 0) continue;
    bool flip = j > k;
    unsigned a = flip ? k : j, b = flip ? j : k;
    for (auto& [m, c] : slices_[pair_index(a, b)]) {
      Fel v = F_.mul(y[k], c);
      r[m] = flip ? F_.sub(r[m], v) : F_.add(r[m], v);
    }
  }
  return r;
}

Vec LieAlgebra::jacobi_defect(unsigned i, unsigned j, unsigned k) const {
  // [w, b_m] = -ad_column(w, m)
  Vec r(dim_, 0);
  auto acc = [&](unsigned a, unsigned b, unsigned m) {
    Vec t = ad_column(bracket_basis(a, b), m);
    for (unsigned s = 0; s < dim_; ++s) r[s] = F_.sub(r[s], t[s]);
  };
  acc(i, j, k);
  acc(j, k, i);
  acc(k, i, j);
  return r;
}

std::uint64_t LieAlgebra::nnz() const {
  std::uint64_t n = 0;
  for (auto& s : slices_) n += s.size();
  return n;
}

bool LieAlgebra::tensor_equal(const LieAlgebra& o) const {
  return dim_ == o.dim_ && F_.p() == o.F_.p() && slices_ == o.slices_;
}

// ============================================================================
// Canonical construction
// ============================================================================

std::pair<LieAlgebra, CanonicalTags> build_chevalley(const RootSystem& rs, const PrimeField& F) {
  unsigned P = static_cast<unsigned>(rs.num_positive());
  unsigned l = rs.rank();
  unsigned d = 2 * P + l;
  LieAlgebra L(F, d);
  CanonicalTags tags;
  tags.components = {rs.type()};
  tags.tags.resize(d);
  for (unsigned i = 0; i < P; ++i) {
    tags.tags[i] = {BasisTag::Kind::E, rs.positive_root(i).coords, 0, 0};
    tags.tags[P + i] = {BasisTag::Kind::F, rs.positive_root(i).coords, 0, 0};
  }
  for (unsigned i = 0; i < l; ++i) tags.tags[2 * P + i] = {BasisTag::Kind::H, {}, i, 0};

  auto neg = [&](const RootCoords& c) {
    RootCoords n(c.size());
    for (std::size_t t = 0; t < c.size(); ++t) n[t] = -c[t];
    return n;
  };
  auto root_basis_index = [&](const RootCoords& c) -> unsigned {
    int idx = rs.positive_index(c);
    if (idx >= 0) return static_cast<unsigned>(idx);
    idx = rs.positive_index(neg(c));
    return P + static_cast<unsigned>(idx);
  };

  for (unsigned a = 0; a < P; ++a) {
    const RootCoords& ca = rs.positive_root(a).coords;
    // [e_a, e_b] and [f_a, f_b]
    for (unsigned b = a + 1; b < P; ++b) {
      const RootCoords& cb = rs.positive_root(b).coords;
      int n = rs.structure_constant(ca, cb);
      if (n != 0) {
        RootCoords sum(ca.size());
        for (std::size_t t = 0; t < ca.size(); ++t) sum[t] = ca[t] + cb[t];
        L.set_bracket(a, b, {{root_basis_index(sum), F.from_int(n)}});
        int nn = rs.structure_constant(neg(ca), neg(cb));
        L.set_bracket(P + a, P + b, {{root_basis_index(neg(sum)), F.from_int(nn)}});
      }
    }
    // [e_a, f_b], b != a
    for (unsigned b = 0; b < P; ++b) {
      if (b == a) continue;
      const RootCoords& cb = rs.positive_root(b).coords;
      RootCoords diff(ca.size());
      bool iszero = true;
      for (std::size_t t = 0; t < ca.size(); ++t) {
        diff[t] = ca[t] - cb[t];
        if (diff[t] != 0) iszero = false;
      }
      if (iszero || !rs.is_root(diff)) continue;
      int n = rs.structure_constant(ca, neg(cb));
      if (n != 0) L.set_bracket(a, P + b, {{root_basis_index(diff), F.from_int(n)}});
    }
    // [e_a, f_a] = h_{gamma_a}
    std::vector<LieAlgebra::Term> hterms;
    std::vector<int> cc = rs.coroot_coords(ca);
    for (unsigned i = 0; i < l; ++i) {
      Fel c = F.from_int(cc[i]);
      if (c != 0) hterms.emplace_back(2 * P + i, c);
    }
    L.set_bracket(a, P + a, std::move(hterms));
    // [h_i, e_a] and [h_i, f_a]
    for (unsigned i = 0; i < l; ++i) {
      long pair = 0;
      for (unsigned j = 0; j < l; ++j) pair += long(rs.cartan()[i][j]) * ca[j];
      Fel c = F.from_int(pair);
      if (c != 0) {
        L.set_bracket(2 * P + i, a, {{a, c}});
        L.set_bracket(2 * P + i, P + a, {{P + a, F.neg(c)}});
      }
    }
  }
  return {std::move(L), std::move(tags)};
}

LieAlgebra direct_sum(const std::vector<const LieAlgebra*>& parts) {
  if (parts.empty()) throw std::invalid_argument("empty direct sum");
  const PrimeField& F = parts[0]->field();
  unsigned d = 0;
  for (auto* p : parts) {
    if (!(p->field() == F)) throw std::invalid_argument("direct sum over different fields");
    d += p->dim();
  }
  LieAlgebra L(F, d);
  unsigned off = 0;
  for (auto* p : parts) {
    for (unsigned i = 0; i + 1 < p->dim(); ++i)
      for (unsigned j = i + 1; j < p->dim(); ++j) {
        auto terms = p->slice(i, j);
        if (terms.empty()) continue;
        for (auto& t : terms) t.first += off;
        L.set_bracket(off + i, off + j, std::move(terms));
      }
    off += p->dim();
  }
  return L;
}

std::pair<LieAlgebra, CanonicalTags> direct_sum_tagged(
    const std::vector<std::pair<const LieAlgebra*, const CanonicalTags*>>& parts) {
  std::vector<const LieAlgebra*> algs;
  for (auto& [a, t] : parts) algs.push_back(a);
  LieAlgebra L = direct_sum(algs);
  CanonicalTags tags;
  unsigned comp = 0;
  for (auto& [a, t] : parts) {
    if (t->center_dim != 0 || t->components.size() != 1)
      throw std::invalid_argument("direct_sum_tagged expects plain canonical parts");
    tags.components.push_back(t->components[0]);
    for (BasisTag bt : t->tags) {
      bt.component = comp;
      tags.tags.push_back(std::move(bt));
    }
    ++comp;
  }
  return {std::move(L), std::move(tags)};
}

LieAlgebra add_center(const LieAlgebra& L, unsigned k) {
  LieAlgebra out(L.field(), L.dim() + k);
  for (unsigned i = 0; i + 1 < L.dim(); ++i)
    for (unsigned j = i + 1; j < L.dim(); ++j) {
      auto terms = L.slice(i, j);
      if (!terms.empty()) out.set_bracket(i, j, std::move(terms));
    }
  return out;
}

CanonicalTags add_center_tags(const CanonicalTags& tags, unsigned dim_before, unsigned k) {
  CanonicalTags out = tags;
  out.center_dim += k;
  (void)dim_before;
  for (unsigned i = 0; i < k; ++i) out.tags.push_back({BasisTag::Kind::Z, {}, 0, 0});
  return out;
}

LieAlgebra change_basis(const LieAlgebra& L, const Matrix& fwd, const Matrix& inv) {
  const PrimeField& F = L.field();
  unsigned d = L.dim();
  LieAlgebra out(F, d);
  std::vector<Vec> cols(d, Vec(d));
  for (unsigned j = 0; j < d; ++j)
    for (unsigned i = 0; i < d; ++i) cols[j][i] = fwd.at(i, j);
  for (unsigned i = 0; i + 1 < d; ++i) {
    for (unsigned j = i + 1; j < d; ++j) {
      Vec w = L.bracket(cols[i], cols[j]);
      if (vec_is_zero(w)) continue;
      Vec nc = mat_apply(inv, w, F);
      std::vector<LieAlgebra::Term> terms;
      for (unsigned k = 0; k < d; ++k)
        if (nc[k] != 0) terms.emplace_back(k, nc[k]);
      out.set_bracket(i, j, std::move(terms));
    }
  }
  return out;
}

std::pair<LieAlgebra, BasisChange> scramble(const LieAlgebra& L, std::uint64_t seed) {
  const PrimeField& F = L.field();
  unsigned d = L.dim();
  Rng rng(seed);
  Matrix P(d, d), Pinv;
  for (;;) {
    for (unsigned i = 0; i < d; ++i)
      for (unsigned j = 0; j < d; ++j) P.at(i, j) = rng.uniform(F);
    auto inv = mat_try_inverse(P, F);
    if (inv) {
      Pinv = std::move(*inv);
      break;
    }
  }
  LieAlgebra out = change_basis(L, P, Pinv);
  return {std::move(out), BasisChange{std::move(P), std::move(Pinv)}};
}

}  // namespace chv
