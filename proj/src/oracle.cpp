#include "chevalley/oracle.hpp"

#include <sstream>

namespace chv {

namespace {

std::string vec_str(const Vec& v) {
  std::ostringstream ss;
  for (std::size_t i = 0; i < v.size(); ++i) ss << (i ? " " : "") << v[i];
  return ss.str();
}

std::string coords_str(const RootCoords& c) {
  std::ostringstream ss;
  ss << "(";
  for (std::size_t i = 0; i < c.size(); ++i) ss << (i ? "," : "") << c[i];
  ss << ")";
  return ss.str();
}

RootCoords negate(const RootCoords& c) {
  RootCoords n(c.size());
  for (std::size_t i = 0; i < c.size(); ++i) n[i] = -c[i];
  return n;
}

}  // namespace

VerificationReport check_chevalley_axioms(const LieAlgebra& L, const RecoveryOutput& out) {
  VerificationReport rep;
  const PrimeField& F = L.field();
  unsigned d = L.dim();
  if (out.dim != d || out.p != F.p()) {
    rep.fail("shape", "recovery dim/prime do not match the algebra");
    return rep;
  }

  // Signed root bookkeeping per component: every root gets its vector and
  // its coordinates, so brackets can be compared against the constants the
  // identified type dictates.
  struct CompData {
    RootSystem rs;
    std::vector<const Vec*> evec, fvec;
  };
  std::vector<CompData> comps;
  std::vector<Vec> basis_order;  // assembled recovered basis
  for (const auto& comp : out.components) {
    RootSystem rs(comp.type);
    std::size_t P = rs.num_positive();
    if (comp.e_vectors.size() != P || comp.f_vectors.size() != P ||
        comp.h_vectors.size() != rs.rank()) {
      rep.fail("root-count", comp.type.name() + " has a wrong number of recovered vectors");
      return rep;
    }
    CompData cd{std::move(rs), {}, {}};
    for (const Vec& v : comp.e_vectors) cd.evec.push_back(&v);
    for (const Vec& v : comp.f_vectors) cd.fvec.push_back(&v);
    comps.push_back(std::move(cd));
    for (const Vec& v : comp.e_vectors) basis_order.push_back(v);
    for (const Vec& v : comp.f_vectors) basis_order.push_back(v);
    for (const Vec& v : comp.h_vectors) basis_order.push_back(v);
  }
  for (const Vec& z : out.center) basis_order.push_back(z);
  if (basis_order.size() != d) {
    rep.fail("basis", "recovered vectors do not have total dimension d");
    return rep;
  }
  Matrix B(d, d);  // columns are recovered basis vectors
  for (unsigned j = 0; j < d; ++j)
    for (unsigned i = 0; i < d; ++i) B.at(i, j) = basis_order[j][i];
  auto Binv = mat_try_inverse(B, F);
  if (!Binv) {
    rep.fail("basis", "recovered vectors are linearly dependent");
    return rep;
  }

  // Cartan commutes pairwise.
  {
    const Subspace& c = out.cartan;
    std::vector<Matrix> ads;
    for (std::size_t i = 0; i < c.dim(); ++i) ads.push_back(L.ad(c.basis().row_vec(i)));
    for (std::size_t i = 0; i < c.dim(); ++i)
      for (std::size_t j = i + 1; j < c.dim(); ++j) {
        Vec w = mat_apply(ads[i], c.basis().row_vec(j), F);
        if (!vec_is_zero(w)) rep.fail("cartan-commutes", "rows " + std::to_string(i) + "," +
                                                              std::to_string(j));
      }
  }

  // Per component: h-action eigenvalues, e/f coroots, and all pairwise
  // root-space brackets, including cross-component vanishing.
  for (std::size_t ci = 0; ci < comps.size(); ++ci) {
    const RootSystem& rs = comps[ci].rs;
    const RecoveryComponent& comp = out.components[ci];
    std::size_t P = rs.num_positive();
    std::vector<Matrix> adh;
    for (const Vec& h : comp.h_vectors) adh.push_back(L.ad(h));
    auto root_vec = [&](std::size_t ri, bool positive) -> const Vec& {
      return positive ? *comps[ci].evec[ri] : *comps[ci].fvec[ri];
    };
    for (std::size_t ri = 0; ri < P; ++ri) {
      const RootCoords& beta = rs.positive_root(ri).coords;
      for (unsigned i = 0; i < rs.rank(); ++i) {
        long pair = 0;
        for (unsigned j = 0; j < rs.rank(); ++j) pair += long(rs.cartan()[i][j]) * beta[j];
        Fel c = F.from_int(pair);
        Vec we = mat_apply(adh[i], root_vec(ri, true), F);
        if (we != vec_scale(root_vec(ri, true), c, F))
          rep.fail("h-action", comp.type.name() + " [h_" + std::to_string(i) + ", e_" +
                                   coords_str(beta) + "]");
        Vec wf = mat_apply(adh[i], root_vec(ri, false), F);
        if (wf != vec_scale(root_vec(ri, false), F.neg(c), F))
          rep.fail("h-action", comp.type.name() + " [h_" + std::to_string(i) + ", f_" +
                                   coords_str(beta) + "]");
      }
      // [e_gamma, f_gamma] = sum coroot coefficients h_i
      Vec target(d, 0);
      std::vector<int> cc = rs.coroot_coords(rs.positive_root(ri).coords);
      for (unsigned i = 0; i < rs.rank(); ++i)
        vec_add_scaled(target, comp.h_vectors[i], F.from_int(cc[i]), F);
      Vec got = L.bracket(root_vec(ri, true), root_vec(ri, false));
      if (got != target)
        rep.fail("ef-coroot", comp.type.name() + " gamma=" + coords_str(beta));
    }
    // root-space brackets within the component
    auto signed_vec = [&](std::size_t ri, int sign) { return root_vec(ri, sign > 0); };
    auto signed_coords = [&](std::size_t ri, int sign) {
      return sign > 0 ? rs.positive_root(ri).coords : negate(rs.positive_root(ri).coords);
    };
    for (std::size_t ai = 0; ai < P; ++ai)
      for (int asig : {+1, -1})
        for (std::size_t bi = 0; bi < P; ++bi)
          for (int bsig : {+1, -1}) {
            if (ai == bi && asig != bsig) continue;  // covered by ef-coroot
            if (std::make_pair(ai, asig) >= std::make_pair(bi, bsig)) continue;
            RootCoords a = signed_coords(ai, asig), b = signed_coords(bi, bsig);
            RootCoords sum(a.size());
            for (std::size_t t = 0; t < a.size(); ++t) sum[t] = a[t] + b[t];
            Vec got = L.bracket(signed_vec(ai, asig), signed_vec(bi, bsig));
            Vec want(d, 0);
            if (rs.is_root(sum)) {
              int n = rs.structure_constant(a, b);
              int si = rs.positive_index(sum);
              const Vec& tv = si >= 0 ? *comps[ci].evec[si] : *comps[ci].fvec[rs.positive_index(negate(sum))];
              want = vec_scale(tv, F.from_int(n), F);
            }
            if (got != want)
              rep.fail("root-brackets", comp.type.name() + " [" + coords_str(a) + "," +
                                            coords_str(b) + "]");
          }
  }
  // Cross-component brackets vanish, and the center is central.
  {
    std::vector<std::pair<std::size_t, const Vec*>> tagged;  // (block id, vector)
    for (std::size_t ci = 0; ci < comps.size(); ++ci) {
      const RecoveryComponent& comp = out.components[ci];
      for (const Vec& v : comp.e_vectors) tagged.emplace_back(ci, &v);
      for (const Vec& v : comp.f_vectors) tagged.emplace_back(ci, &v);
      for (const Vec& v : comp.h_vectors) tagged.emplace_back(ci, &v);
    }
    bool witnessed = false;
    for (std::size_t i = 0; i < tagged.size() && !witnessed; ++i)
      for (std::size_t j = i + 1; j < tagged.size() && !witnessed; ++j) {
        if (tagged[i].first == tagged[j].first) continue;
        if (!vec_is_zero(L.bracket(*tagged[i].second, *tagged[j].second))) {
          rep.fail("cross-component", "blocks " + std::to_string(tagged[i].first) + "," +
                                          std::to_string(tagged[j].first));
          witnessed = true;
        }
      }
    for (const Vec& z : out.center) {
      Matrix adz = L.ad(z);
      for (std::size_t i = 0; i < tagged.size(); ++i)
        if (!vec_is_zero(mat_apply(adz, *tagged[i].second, F))) {
          rep.fail("center", "a center row acts nontrivially");
          break;
        }
      for (const Vec& z2 : out.center)
        if (!vec_is_zero(mat_apply(adz, z2, F))) {
          rep.fail("center", "center rows do not commute");
          break;
        }
    }
  }
  return rep;
}

std::vector<std::pair<std::string, WeightDims>> measure_table1(const LieAlgebra& L,
                                                               const CanonicalTags& tags,
                                                               const RootSystem& rs) {
  const PrimeField& F = L.field();
  std::vector<std::pair<std::string, WeightDims>> out;
  bool simply_laced = true;
  for (unsigned i = 0; i < rs.rank(); ++i)
    if (rs.simple_norm2(i) != rs.simple_norm2(0)) simply_laced = false;

  auto measure = [&](unsigned simple_idx) {
    // locate the basis index tagged h_simple_idx
    Vec h(L.dim(), 0);
    for (std::size_t i = 0; i < tags.tags.size(); ++i) {
      if (tags.tags[i].kind == BasisTag::Kind::H && tags.tags[i].simple == simple_idx &&
          tags.tags[i].component == 0) {
        h[i] = 1;
        break;
      }
    }
    Matrix adh = L.ad(h);
    WeightDims dims;
    dims.v1 = nullspace(mat_sub_scalar_diag(adh, F.from_int(1), F), F).dim();
    dims.v2 = nullspace(mat_sub_scalar_diag(adh, F.from_int(2), F), F).dim();
    dims.v3 = nullspace(mat_sub_scalar_diag(adh, F.from_int(3), F), F).dim();
    return dims;
  };

  if (simply_laced) {
    out.emplace_back("long", measure(0));
    return out;
  }
  int max_norm = 0;
  for (unsigned i = 0; i < rs.rank(); ++i) max_norm = std::max(max_norm, rs.simple_norm2(i));
  unsigned long_idx = 0, short_idx = 0;
  for (unsigned i = 0; i < rs.rank(); ++i)
    if (rs.simple_norm2(i) == max_norm) {
      long_idx = i;
      break;
    }
  for (unsigned i = 0; i < rs.rank(); ++i)
    if (rs.simple_norm2(i) != max_norm) {
      short_idx = i;
      break;
    }
  out.emplace_back("short", measure(short_idx));
  out.emplace_back("long", measure(long_idx));
  return out;
}

VerificationReport check_automorphism(const LieAlgebra& L, const Matrix& g) {
  VerificationReport rep;
  const PrimeField& F = L.field();
  unsigned d = L.dim();
  if (g.rows() != d || g.cols() != d) {
    rep.fail("shape", "matrix dimension mismatch");
    return rep;
  }
  if (!mat_try_inverse(g, F)) {
    rep.fail("invertible", "matrix is singular");
    return rep;
  }
  std::vector<Vec> cols(d, Vec(d));
  for (unsigned j = 0; j < d; ++j)
    for (unsigned i = 0; i < d; ++i) cols[j][i] = g.at(i, j);
  std::vector<Matrix> adcols;
  adcols.reserve(d);
  for (unsigned j = 0; j < d; ++j) adcols.push_back(L.ad(cols[j]));
  for (unsigned i = 0; i + 1 < d; ++i)
    for (unsigned j = i + 1; j < d; ++j) {
      Vec lhs = mat_apply(adcols[i], cols[j], F);  // [g b_i, g b_j]
      Vec rhs = mat_apply(g, L.bracket_basis(i, j), F);
      if (lhs != rhs) {
        rep.fail("multiplicative", "pair (" + std::to_string(i) + "," + std::to_string(j) + ")");
        return rep;
      }
    }
  return rep;
}

}  // namespace chv
