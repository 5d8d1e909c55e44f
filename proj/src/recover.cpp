#include "chevalley/recover.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <optional>

#include "chevalley/oracle.hpp"
#include "chevalley/rng.hpp"

namespace chv {

namespace {

// Retry budgets. The per-site success probability is bounded below by a
// constant, so these make overall failure astronomically unlikely while
// keeping every loop total.
constexpr unsigned kEigenDraws = 200;
constexpr unsigned kFindA1Rounds = 50;
constexpr unsigned kFullRestarts = 10;

// Internal retry signal; converted into a fresh full attempt.
struct retry_run : std::exception {
  const char* what() const noexcept override { return "recognition retry"; }
};

struct Member {
  Subspace space;
  std::vector<Fel> label;  // eigenvalues under the committed node h's
  int partner = -1;        // index of the opposite-label member, -1 if none
};

struct Node {
  Vec e, f, h;
};

int lift_small(Fel v, const PrimeField& F, int bound) {
  if (v <= static_cast<Fel>(bound)) return static_cast<int>(v);
  if (v >= F.p() - bound) return static_cast<int>(v) - static_cast<int>(F.p());
  throw retry_run{};
}

class Recognizer {
 public:
  Recognizer(const LieAlgebra& L, std::uint64_t seed) : L_(L), F_(L.field()), rng_(seed) {}

  RecoveryOutput run(const Subspace* h0) {
    std::exception_ptr last;
    for (unsigned restart = 0; restart < kFullRestarts; ++restart) {
      Rng attempt_rng = rng_.fork(restart + 1);
      try {
        RecoveryOutput out = attempt(h0, attempt_rng);
        out.stats = stats_;
        return out;
      } catch (const retry_run&) {
        ++stats_.full_restarts;
      } catch (const recognition_error&) {
        ++stats_.full_restarts;
      }
    }
    throw recognition_error(
        "recognition budget exhausted; input is probably not a Chevalley Lie algebra over "
        "GF(p), p >= 5");
  }

  RecoveryStats stats_;

 private:
  const LieAlgebra& L_;
  const PrimeField& F_;
  Rng rng_;

  // per-attempt state
  std::vector<Member> family_;
  std::vector<Node> nodes_;
  std::vector<std::vector<Fel>> bonds_;  // bonds_[i][j] = eigenvalue of ad h_i on e_j
  Echelon torus_{0};
  std::vector<RecoveryComponent> components_;
  std::vector<Vec> all_h_;
  std::map<std::string, std::unique_ptr<RootSystem>> rs_cache_;
  Rng* arng_ = nullptr;

  const RootSystem& root_system(const DynkinType& t) {
    auto it = rs_cache_.find(t.name());
    if (it == rs_cache_.end())
      it = rs_cache_.emplace(t.name(), std::make_unique<RootSystem>(t)).first;
    return *it->second;
  }

  unsigned dim() const { return L_.dim(); }

  // ------------------------------------------------------------------
  // family refinement
  // ------------------------------------------------------------------

  // Splits every member along the eigenspaces of ad x, keeping the opposite
  // pairing consistent. Uncommitted refinements leave labels alone and
  // report failure softly; committed ones append the eigenvalue and treat
  // failure as a broken run.
  bool refine(const Matrix& adx, bool commit) {
    std::vector<Member> next;
    std::vector<char> done(family_.size(), 0);
    ++stats_.refinements;
    std::size_t covered = 0;
    for (const auto& m : family_) covered += m.space.dim();

    auto decompose = [&](const Subspace& s) { return try_eigen_decompose(adx, s, F_, *arng_); };

    for (std::size_t idx = 0; idx < family_.size(); ++idx) {
      if (done[idx]) continue;
      const Member& m = family_[idx];
      if (m.partner < 0) {
        done[idx] = 1;
        auto dec = decompose(m.space);
        if (!dec || dec->non_semisimple_residue) {
          if (commit) throw retry_run{};
          return false;
        }
        // pieces for +-lambda pair up with each other
        std::map<Fel, int> placed;
        for (const auto& pr : dec->pairs) {
          if (pr.space.dim() == 0) continue;
          Member nm{pr.space, m.label, -1};
          if (commit) nm.label.push_back(pr.value);
          int my_index = static_cast<int>(next.size());
          Fel neg = F_.neg(pr.value);
          auto it = placed.find(neg);
          if (pr.value != 0 && it != placed.end() &&
              next[it->second].space.dim() == pr.space.dim()) {
            nm.partner = it->second;
            next[it->second].partner = my_index;
          }
          placed[pr.value] = my_index;
          next.push_back(std::move(nm));
        }
        if (dec->perp.dim() > 0) {
          if (commit) throw retry_run{};  // a toral refinement must split completely
          next.push_back(Member{dec->perp, m.label, -1});
        }
      } else {
        std::size_t jdx = static_cast<std::size_t>(m.partner);
        done[idx] = done[jdx] = 1;
        const Member& mj = family_[jdx];
        auto deci = decompose(m.space);
        auto decj = decompose(mj.space);
        if (!deci || !decj || deci->non_semisimple_residue || decj->non_semisimple_residue) {
          if (commit) throw retry_run{};
          return false;
        }
        // every piece of one side must see its mirror on the other
        if (deci->pairs.size() != decj->pairs.size() ||
            (deci->perp.dim() != decj->perp.dim())) {
          if (commit) throw retry_run{};
          return false;
        }
        std::map<Fel, const EigenPair*> mirror;
        for (const auto& pr : decj->pairs) mirror[pr.value] = &pr;
        for (const auto& pr : deci->pairs) {
          auto it = mirror.find(F_.neg(pr.value));
          if (it == mirror.end() || it->second->space.dim() != pr.space.dim()) {
            if (commit) throw retry_run{};
            return false;
          }
          Member a{pr.space, m.label, -1};
          Member b{it->second->space, mj.label, -1};
          if (commit) {
            a.label.push_back(pr.value);
            b.label.push_back(F_.neg(pr.value));
          }
          a.partner = static_cast<int>(next.size()) + 1;
          b.partner = static_cast<int>(next.size());
          next.push_back(std::move(a));
          next.push_back(std::move(b));
        }
        if (deci->perp.dim() > 0) {
          if (commit) throw retry_run{};
          Member a{deci->perp, m.label, static_cast<int>(next.size()) + 1};
          Member b{decj->perp, mj.label, static_cast<int>(next.size())};
          next.push_back(std::move(a));
          next.push_back(std::move(b));
        }
      }
    }

    std::size_t total = 0;
    for (const auto& m : next) total += m.space.dim();
    if (total != covered) throw retry_run{};
    family_ = std::move(next);
    return true;
  }

  // ------------------------------------------------------------------
  // node building
  // ------------------------------------------------------------------

  std::optional<Node> build_node(const Vec& e, const Vec& f0) {
    Vec h0 = L_.bracket(e, f0);
    if (vec_is_zero(h0)) return std::nullopt;
    Vec u = L_.bracket(h0, e);
    auto c = proportionality(u, e, F_);
    if (!c || *c == 0) return std::nullopt;
    Fel t = F_.mul(2 % F_.p(), F_.inv(*c));
    Node n;
    n.e = e;
    n.h = vec_scale(h0, t, F_);
    n.f = vec_scale(f0, t, F_);
    Vec w = L_.bracket(n.h, n.f);
    Vec expect = vec_scale(n.f, F_.neg(2 % F_.p()), F_);
    if (w != expect) return std::nullopt;
    return n;
  }

  // Tries to pull a fresh sl2 node out of the paired members (V+, V-). The
  // node is accepted only when its h extends the torus; dependent candidates
  // are rejected so the string cannot wrap around to an affine diagram.
  std::optional<Node> attach_from_pair(const Member& plus, const Member& minus) {
    unsigned budget = (plus.space.dim() == 1 && minus.space.dim() == 1) ? 3 : kEigenDraws;
    for (unsigned draw = 0; draw < budget; ++draw) {
      ++stats_.random_draws;
      Vec y = plus.space.random_nonzero_vector(F_, *arng_);
      Vec z = minus.space.random_nonzero_vector(F_, *arng_);
      Vec x = L_.bracket(y, z);
      if (vec_is_zero(x)) continue;
      Matrix adx = L_.ad(x);
      auto decp = try_eigen_decompose(adx, plus.space, F_, *arng_);
      auto decm = try_eigen_decompose(adx, minus.space, F_, *arng_);
      if (!decp || !decm) continue;
      for (const auto& pp : decp->pairs) {
        if (pp.value == 0 || pp.space.dim() != 1) continue;
        for (const auto& pm : decm->pairs) {
          if (pm.value != F_.neg(pp.value) || pm.space.dim() != 1) continue;
          auto node = build_node(pp.space.basis().row_vec(0), pm.space.basis().row_vec(0));
          if (!node) continue;
          Echelon probe = torus_;
          if (!probe.add(node->h, F_)) continue;  // dependent torus direction
          return node;
        }
      }
    }
    return std::nullopt;
  }

  void commit_node(Node node) {
    Matrix adh = L_.ad(node.h);
    // bonds with the existing nodes, both directions
    std::vector<Fel> incoming;  // ad h_i eigenvalue on the new e
    for (const auto& old : nodes_) {
      Vec w = L_.bracket(old.h, node.e);
      auto c = proportionality(w, node.e, F_);
      if (!c) throw retry_run{};
      incoming.push_back(*c);
    }
    std::vector<Fel> outgoing;
    for (const auto& old : nodes_) {
      Vec w = mat_apply(adh, old.e, F_);
      auto c = proportionality(w, old.e, F_);
      if (!c) throw retry_run{};
      outgoing.push_back(*c);
    }
    if (!refine(adh, true)) throw retry_run{};
    if (!torus_.add(node.h, F_)) throw retry_run{};
    std::size_t m = nodes_.size();
    for (std::size_t i = 0; i < m; ++i) {
      bonds_[i].push_back(incoming[i]);
    }
    bonds_.push_back(outgoing);
    bonds_.back().push_back(2 % F_.p());
    nodes_.push_back(std::move(node));
  }

  // ------------------------------------------------------------------
  // the per-component phases
  // ------------------------------------------------------------------

  std::vector<std::pair<std::size_t, std::size_t>> paired_pairs() const {
    std::vector<std::pair<std::size_t, std::size_t>> out;
    for (std::size_t i = 0; i < family_.size(); ++i) {
      int j = family_[i].partner;
      if (j >= 0 && static_cast<std::size_t>(j) > i)
        out.emplace_back(i, static_cast<std::size_t>(j));
    }
    return out;
  }

  // Step of looking for one fundamental sl2: refine with commutators of
  // opposite minimal members until a 1-dimensional opposite pair shows up,
  // then scale it into a node.
  bool find_a1() {
    for (unsigned round = 0; round < kFindA1Rounds; ++round) {
      auto pairs = paired_pairs();
      if (pairs.empty()) return false;
      bool any_multi = false;
      for (auto [i, j] : pairs) {
        if (family_[i].space.dim() != 1) {
          any_multi = true;
          continue;
        }
        auto node = build_node(family_[i].space.basis().row_vec(0),
                               family_[j].space.basis().row_vec(0));
        if (!node) continue;
        commit_node(std::move(*node));
        return true;
      }
      if (!any_multi) return false;
      // refine using a commutator from an opposite pair of minimal dimension
      std::size_t best = family_.size(), mate = 0;
      std::size_t best_dim = dim() + 1;
      for (auto [i, j] : pairs) {
        std::size_t d = family_[i].space.dim();
        if (d > 1 && d < best_dim) {
          best_dim = d;
          best = i;
          mate = j;
        }
      }
      if (best == family_.size()) return false;
      bool progressed = false;
      for (unsigned draw = 0; draw < kEigenDraws && !progressed; ++draw) {
        ++stats_.random_draws;
        Vec y = family_[best].space.random_nonzero_vector(F_, *arng_);
        Vec z = family_[mate].space.random_nonzero_vector(F_, *arng_);
        Vec x = L_.bracket(y, z);
        if (vec_is_zero(x)) continue;
        progressed = refine(L_.ad(x), false);
      }
      if (!progressed) return false;
    }
    return false;
  }

  // Finds the paired member whose label is (0,...,0,w); -1 if absent.
  std::vector<std::size_t> members_with_tail_label(Fel w) const {
    std::vector<Fel> want(nodes_.size(), 0);
    want.back() = w;
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < family_.size(); ++i)
      if (family_[i].partner >= 0 && family_[i].label == want) out.push_back(i);
    return out;
  }

  bool extend_tail_once() {
    for (Fel w : {Fel(1), Fel(2)}) {
      for (std::size_t i : members_with_tail_label(w)) {
        const Member& plus = family_[i];
        const Member& minus = family_[static_cast<std::size_t>(plus.partner)];
        auto node = attach_from_pair(plus, minus);
        if (node) {
          commit_node(std::move(*node));
          return true;
        }
      }
    }
    return false;
  }

  void reverse_string() {
    std::reverse(nodes_.begin(), nodes_.end());
    std::size_t m = bonds_.size();
    std::vector<std::vector<Fel>> nb(m, std::vector<Fel>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) nb[i][j] = bonds_[m - 1 - i][m - 1 - j];
    bonds_ = std::move(nb);
    for (auto& mem : family_) std::reverse(mem.label.begin(), mem.label.end());
  }

  void extend_string() {
    for (;;) {
      if (!extend_tail_once()) break;
    }
    reverse_string();
    for (;;) {
      if (!extend_tail_once()) break;
    }
  }

  // ------------------------------------------------------------------
  // classification
  // ------------------------------------------------------------------

  NodeDims measure_dims(const Node& n) {
    Matrix adh = L_.ad(n.h);
    NodeDims dims;
    dims.v1 = nullspace(mat_sub_scalar_diag(adh, 1 % F_.p(), F_), F_).dim();
    dims.v2 = nullspace(mat_sub_scalar_diag(adh, 2 % F_.p(), F_), F_).dim();
    dims.v3 = nullspace(mat_sub_scalar_diag(adh, 3 % F_.p(), F_), F_).dim();
    return dims;
  }

  DynkinType classify() {
    std::size_t m = nodes_.size();
    std::vector<std::vector<int>> bonds_int(m, std::vector<int>(m));
    for (std::size_t i = 0; i < m; ++i)
      for (std::size_t j = 0; j < m; ++j) bonds_int[i][j] = lift_small(bonds_[i][j], F_, 3);
    std::vector<NodeDims> dims(m);
    for (std::size_t i = 0; i < m; ++i) dims[i] = measure_dims(nodes_[i]);
    return classify_string(bonds_int, dims, F_.p());
  }

  // ------------------------------------------------------------------
  // correction: torus growth and the full rebuild
  // ------------------------------------------------------------------

  Subspace unpaired_sum() const {
    std::vector<Vec> rows;
    for (const auto& mem : family_) {
      if (mem.partner >= 0) continue;
      for (std::size_t i = 0; i < mem.space.dim(); ++i)
        rows.push_back(mem.space.basis().row_vec(i));
    }
    return Subspace::from_vectors(rows, dim(), F_);
  }

  void grow_to_rank(unsigned target_rank) {
    while (torus_.rank() < target_rank) {
      bool progressed = false;
      for (auto [i, j] : paired_pairs()) {
        auto node = attach_from_pair(family_[i], family_[j]);
        if (node) {
          commit_node(std::move(*node));
          progressed = true;
          break;
        }
      }
      if (progressed) continue;
      // The missing directions may be buried in the zero-weight part; split
      // it with a random commuting element to surface new opposite pairs.
      Subspace z = unpaired_sum();
      if (z.dim() == 0) throw retry_run{};
      bool split = false;
      for (unsigned draw = 0; draw < kEigenDraws && !split; ++draw) {
        ++stats_.random_draws;
        Vec x = z.random_nonzero_vector(F_, *arng_);
        split = refine(L_.ad(x), false) && !paired_pairs().empty();
      }
      if (!split) throw retry_run{};
    }
  }

  struct SignedRoot {
    RootCoords coords;
    bool positive;
    std::size_t index;  // positive-root index
  };

  std::vector<SignedRoot> signed_roots(const RootSystem& rs) const {
    std::vector<SignedRoot> out;
    for (std::size_t i = 0; i < rs.num_positive(); ++i)
      out.push_back({rs.positive_root(i).coords, true, i});
    for (std::size_t i = 0; i < rs.num_positive(); ++i) {
      RootCoords c = rs.positive_root(i).coords;
      for (auto& x : c) x = -x;
      out.push_back({std::move(c), false, i});
    }
    return out;
  }

  // Attempts to finish the component as the given type: identify the grown
  // torus inside the target root system, read off every root space, rebuild
  // the simple-root nodes in Bourbaki order, and scale the remaining root
  // vectors through the extraspecial pairs.
  bool rebuild_and_emit(const DynkinType& target) {
    const RootSystem& rs = root_system(target);
    std::vector<SignedRoot> roots = signed_roots(rs);
    std::size_t m = nodes_.size();

    // pairing of every root against candidate images, in field form
    auto pair_f = [&](const RootCoords& beta, const RootCoords& alpha) {
      return F_.from_int(rs.pairing(beta, alpha));
    };

    std::vector<std::size_t> pick(m, 0);
    std::vector<const SignedRoot*> chosen(m, nullptr);

    // depth-first enumeration of embeddings matching the measured bonds
    std::size_t depth = 0;
    while (true) {
      if (depth == m) {
        if (try_finish(rs, chosen)) return true;
        --depth;
        ++pick[depth];
      }
      if (pick[depth] >= roots.size()) {
        if (depth == 0) return false;
        pick[depth] = 0;
        --depth;
        ++pick[depth];
        continue;
      }
      const SignedRoot& cand = roots[pick[depth]];
      bool ok = true;
      for (std::size_t s = 0; s < depth && ok; ++s) {
        if (pair_f(cand.coords, chosen[s]->coords) != bonds_[s][depth] ||
            pair_f(chosen[s]->coords, cand.coords) != bonds_[depth][s])
          ok = false;
      }
      if (!ok) {
        ++pick[depth];
        continue;
      }
      chosen[depth] = &cand;
      ++depth;
      if (depth < m) pick[depth] = 0;
    }
  }

  bool try_finish(const RootSystem& rs, const std::vector<const SignedRoot*>& images) {
    // predicted label of every root of the target against the embedded torus
    std::map<std::vector<Fel>, std::size_t> predicted;  // label -> signed root id
    std::vector<SignedRoot> roots = signed_roots(rs);
    for (std::size_t r = 0; r < roots.size(); ++r) {
      std::vector<Fel> lab(images.size());
      for (std::size_t i = 0; i < images.size(); ++i)
        lab[i] = F_.from_int(rs.pairing(roots[r].coords, images[i]->coords));
      if (!predicted.emplace(std::move(lab), r).second) return false;  // collision
    }
    std::vector<Fel> zero_label(images.size(), 0);
    std::size_t matched = 0;
    for (const auto& mem : family_) {
      if (mem.label == zero_label) continue;
      auto it = predicted.find(mem.label);
      if (it == predicted.end() || mem.space.dim() != 1) return false;
      ++matched;
    }
    if (matched != roots.size()) return false;

    // rebuild nodes at the Bourbaki simple roots of the target
    unsigned l = rs.rank();
    std::vector<Node> new_nodes(l);
    for (unsigned i = 0; i < l; ++i) {
      RootCoords alpha(l, 0);
      alpha[i] = 1;
      std::vector<Fel> lab_e(images.size()), lab_f(images.size());
      for (std::size_t s = 0; s < images.size(); ++s) {
        lab_e[s] = F_.from_int(rs.pairing(alpha, images[s]->coords));
        lab_f[s] = F_.neg(lab_e[s]);
      }
      const Member* me = find_member(lab_e);
      const Member* mf = find_member(lab_f);
      if (!me || !mf || me->space.dim() != 1 || mf->space.dim() != 1) return false;
      auto node = build_node(me->space.basis().row_vec(0), mf->space.basis().row_vec(0));
      if (!node) return false;
      new_nodes[i] = std::move(*node);
    }

    // relabel every member against the rebuilt torus
    std::vector<Matrix> adh;
    for (unsigned i = 0; i < l; ++i) adh.push_back(L_.ad(new_nodes[i].h));
    std::map<std::vector<Fel>, std::size_t> root_member;  // standard label -> member idx
    std::vector<Fel> zero_new(l, 0);
    for (std::size_t mi = 0; mi < family_.size(); ++mi) {
      const Member& mem = family_[mi];
      if (mem.label == zero_label) {
        // must stay zero-weight for the new torus as well
        for (unsigned i = 0; i < l; ++i)
          for (std::size_t r = 0; r < mem.space.dim(); ++r)
            if (!vec_is_zero(mat_apply(adh[i], mem.space.basis().row_vec(r), F_))) return false;
        continue;
      }
      Vec v = mem.space.basis().row_vec(0);
      std::vector<Fel> lab(l);
      for (unsigned i = 0; i < l; ++i) {
        auto c = proportionality(mat_apply(adh[i], v, F_), v, F_);
        if (!c) return false;
        lab[i] = *c;
      }
      if (lab == zero_new) return false;
      if (!root_member.emplace(std::move(lab), mi).second) return false;
    }

    // match members to roots through the standard pairing labels
    auto standard_label = [&](const RootCoords& beta) {
      std::vector<Fel> lab(l);
      for (unsigned i = 0; i < l; ++i) {
        long pair = 0;
        for (unsigned j = 0; j < l; ++j) pair += long(rs.cartan()[i][j]) * beta[j];
        lab[i] = F_.from_int(pair);
      }
      return lab;
    };
    std::size_t P = rs.num_positive();
    std::vector<Vec> evec(P), fvec(P);
    for (std::size_t r = 0; r < P; ++r) {
      const RootCoords& beta = rs.positive_root(r).coords;
      RootCoords nbeta = beta;
      for (auto& x : nbeta) x = -x;
      auto ite = root_member.find(standard_label(beta));
      auto itf = root_member.find(standard_label(nbeta));
      if (ite == root_member.end() || itf == root_member.end()) return false;
      evec[r] = family_[ite->second].space.basis().row_vec(0);
      fvec[r] = family_[itf->second].space.basis().row_vec(0);
    }
    if (root_member.size() != 2 * P) return false;

    // Chevalley scaling: simple-root vectors come from the rebuilt nodes,
    // then each higher root is normalized through its extraspecial pair and
    // each negative through [e,f] = h.
    RecoveryComponent comp;
    comp.type = rs.type();
    comp.e_vectors.resize(P);
    comp.f_vectors.resize(P);
    comp.h_vectors.resize(l);
    for (unsigned i = 0; i < l; ++i) {
      RootCoords alpha(l, 0);
      alpha[i] = 1;
      int idx = rs.positive_index(alpha);
      comp.e_vectors[idx] = new_nodes[i].e;
      comp.f_vectors[idx] = new_nodes[i].f;
      comp.h_vectors[i] = new_nodes[i].h;
    }
    for (std::size_t r = 0; r < P; ++r) {
      if (rs.positive_root(r).height == 1) continue;
      auto [ai, bi] = rs.extraspecial(r);
      int n = rs.structure_constant(rs.positive_root(ai).coords, rs.positive_root(bi).coords);
      Vec w = L_.bracket(comp.e_vectors[ai], comp.e_vectors[bi]);
      if (vec_is_zero(w)) return false;
      if (!proportionality(w, evec[r], F_)) return false;
      comp.e_vectors[r] = vec_scale(w, F_.inv(F_.from_int(n)), F_);
      // negative side: [e_gamma, f_gamma] = h_gamma
      Vec target(dim(), 0);
      std::vector<int> cc = rs.coroot_coords(rs.positive_root(r).coords);
      for (unsigned i = 0; i < l; ++i)
        vec_add_scaled(target, comp.h_vectors[i], F_.from_int(cc[i]), F_);
      Vec s = L_.bracket(comp.e_vectors[r], fvec[r]);
      auto mu = proportionality(s, target, F_);
      if (!mu || *mu == 0) return false;
      comp.f_vectors[r] = vec_scale(fvec[r], F_.inv(*mu), F_);
    }

    // emit: drop the written-out members, clear labels on the rest
    std::vector<Member> rest;
    std::vector<Fel> zl(images.size(), 0);
    for (auto& mem : family_) {
      if (mem.label != zl) continue;
      rest.push_back(Member{mem.space, {}, -1});
    }
    family_ = std::move(rest);
    for (const Vec& h : comp.h_vectors) all_h_.push_back(h);
    components_.push_back(std::move(comp));
    nodes_.clear();
    bonds_.clear();
    torus_ = Echelon(dim());
    return true;
  }

  const Member* find_member(const std::vector<Fel>& label) const {
    for (const auto& mem : family_)
      if (mem.label == label) return &mem;
    return nullptr;
  }

  // ------------------------------------------------------------------
  // between components: reseeding and the abelian break
  // ------------------------------------------------------------------

  bool is_abelian(const Subspace& w) {
    for (std::size_t i = 1; i < w.dim(); ++i) {
      Matrix adi = L_.ad(w.basis().row_vec(i));
      for (std::size_t j = 0; j < i; ++j)
        if (!vec_is_zero(mat_apply(adi, w.basis().row_vec(j), F_))) return false;
    }
    return true;
  }

  // Ensures some opposite pair exists, or certifies the leftover is abelian.
  // Returns the abelian remainder when the loop should stop.
  std::optional<Subspace> reseed_or_finish() {
    if (!paired_pairs().empty()) return std::nullopt;
    Subspace w = unpaired_sum();
    if (w.dim() == 0) return w;
    if (is_abelian(w)) return w;
    family_ = {Member{w, {}, -1}};
    for (unsigned draw = 0; draw < kEigenDraws; ++draw) {
      ++stats_.random_draws;
      Vec x = w.random_nonzero_vector(F_, *arng_);
      if (refine(L_.ad(x), false) && !paired_pairs().empty()) return std::nullopt;
      family_ = {Member{w, {}, -1}};
    }
    throw retry_run{};  // non-abelian but unsplittable
  }

  // ------------------------------------------------------------------
  // one full attempt
  // ------------------------------------------------------------------

  RecoveryOutput attempt(const Subspace* h0, Rng& arng) {
    arng_ = &arng;
    family_ = {Member{Subspace::full(dim()), {}, -1}};
    nodes_.clear();
    bonds_.clear();
    torus_ = Echelon(dim());
    components_.clear();
    all_h_.clear();

    if (h0 && h0->dim() > 0) {
      for (std::size_t i = 0; i < h0->dim(); ++i) {
        if (!refine(L_.ad(h0->basis().row_vec(i)), false))
          throw recognition_error("h0 is not split toral");
      }
    }

    Subspace leftover;
    for (;;) {
      auto done = reseed_or_finish();
      if (done) {
        leftover = *done;
        break;
      }
      if (!find_a1()) throw retry_run{};
      extend_string();
      DynkinType target = classify();
      if (torus_.rank() < target.rank || nodes_.size() != target.rank) ++stats_.corrections;
      grow_to_rank(target.rank);
      if (!rebuild_and_emit(target)) throw retry_run{};
    }

    RecoveryOutput out;
    out.p = F_.p();
    out.dim = dim();
    out.components = components_;
    out.cartan = leftover;
    // the emitted coroots live inside the zero-weight leftover; the rest of
    // it is the center
    std::vector<Vec> hrows = all_h_;
    Subspace hspan = Subspace::from_vectors(hrows, dim(), F_);
    for (std::size_t i = 0; i < hspan.dim(); ++i)
      if (!leftover.contains(hspan.basis().row_vec(i), F_)) throw retry_run{};
    Subspace comp = sub_complement_within(hspan, leftover, F_);
    for (std::size_t i = 0; i < comp.dim(); ++i) out.center.push_back(comp.basis().row_vec(i));

    VerificationReport rep = check_chevalley_axioms(L_, out);
    if (!rep.passed) throw retry_run{};
    return out;
  }
};

}  // namespace

// ----------------------------------------------------------------------
// string classification (exposed for direct testing)
// ----------------------------------------------------------------------

DynkinType classify_string(const std::vector<std::vector<int>>& bonds,
                           const std::vector<NodeDims>& dims, std::uint64_t p) {
  std::size_t m = bonds.size();
  auto fail = []() -> DynkinType {
    throw recognition_error("string diagram matches no classification row");
  };
  auto is_a1 = [&](const NodeDims& d) { return d.v1 == 0 && d.v2 == 1; };
  // merged signatures at p = 5: the eigenvalue-2 space also collects V3
  auto sig = [&](const NodeDims& d, std::size_t v1, std::size_t v2, std::size_t v3) {
    if (p == 5) return d.v1 == v1 && d.v2 == v2 + v3 && d.v3 == v3 + v2;
    return d.v1 == v1 && d.v2 == v2 && d.v3 == v3;
  };

  if (m == 1) {
    if (!is_a1(dims[0])) fail();
    return DynkinType{'A', 1};
  }
  if (m == 2) {
    int prod = std::abs(bonds[0][1] * bonds[1][0]);
    if (prod == 3) return DynkinType{'G', 2};
    if (prod == 2) return DynkinType{'B', 2};
    if (prod != 1) fail();
    bool a2 = sig(dims[0], 2, 1, 0) && sig(dims[1], 2, 1, 0);
    if (a2) return DynkinType{'A', 2};
    for (const NodeDims* d : {&dims[0], &dims[1]}) {
      if (sig(*d, 4, 1, 0) || sig(*d, 2, 1, 2)) return DynkinType{'G', 2};
    }
    fail();
  }

  // locate double edges between consecutive nodes
  int doubles = 0;
  std::size_t short_node = m;  // node on the short side of the (unique) double edge
  bool double_at_end = false, interior_double = false;
  for (std::size_t i = 0; i + 1 < m; ++i) {
    int a = std::abs(bonds[i][i + 1]), b = std::abs(bonds[i + 1][i]);
    if (a == 3 || b == 3) fail();  // triple bonds live in 2-node strings only
    if (a == 2 || b == 2) {
      ++doubles;
      short_node = (a == 2) ? i : i + 1;
      if (i == 0 || i + 2 == m) double_at_end = true;
      else interior_double = true;
    }
  }
  if (doubles > 1) fail();

  if (doubles == 0) {
    const NodeDims& d = dims[0];
    std::size_t v1 = d.v1, v2 = d.v2;
    if (v2 == 1) {
      if (v1 == 2 * (m - 1)) return DynkinType{'A', static_cast<unsigned>(m)};
      if (v1 == 20 && m == 5) return DynkinType{'E', 6};
      if (v1 == 32 && (m == 5 || m == 7)) return DynkinType{'E', 7};
      if (v1 == 56 && (m == 4 || m == 7 || m == 8)) return DynkinType{'E', 8};
      if (v1 % 4 == 0 && v1 >= 8) {
        unsigned k = static_cast<unsigned>(v1 / 4 + 2);
        if (m == 3 || k == m + 1) return DynkinType{'D', k};
      }
      if (v1 % 4 == 2) {
        unsigned k = static_cast<unsigned>((v1 + 6) / 4);
        if (k >= 2 && k >= m) return DynkinType{'B', k};
      }
      fail();
    }
    if ((p == 5 ? v2 == 3 : (v2 == 3 && d.v3 == 0)) && v1 % 4 == 0) {
      unsigned k = static_cast<unsigned>(v1 / 4 + 2);
      if (k >= 3 && k >= m) return DynkinType{'C', k};
    }
    if (v2 == 7 && v1 == 8) return DynkinType{'F', 4};
    fail();
  }

  // one double edge
  if (interior_double) {
    if (m != 4) fail();
    return DynkinType{'F', 4};
  }
  (void)double_at_end;
  bool terminal_short = (short_node == 0 || short_node == m - 1);
  const NodeDims& ds = dims[short_node == 0 ? 0 : m - 1];
  if (terminal_short) {
    // B-shaped: short node at the end of the double edge
    if (ds.v2 == 7) {
      if (ds.v1 == 8) return DynkinType{'F', 4};
      if (ds.v1 == 0 && m == 4) return DynkinType{'B', 4};
      fail();
    }
    if (ds.v2 % 2 == 1 && ds.v2 >= 3 && ds.v1 == 0) {
      unsigned k = static_cast<unsigned>((ds.v2 + 1) / 2);
      if (k >= m) return DynkinType{'B', k};
    }
    fail();
  }
  // C-shaped: long node at the end; consult the short node beside it
  std::size_t sn = short_node;
  NodeDims dshort = dims[sn <= 1 ? 1 : m - 2];
  if (p == 5 ? dshort.v2 == 3 : (dshort.v2 == 3 && dshort.v3 == 0)) {
    if (dshort.v1 % 4 == 0) {
      unsigned k = static_cast<unsigned>(dshort.v1 / 4 + 2);
      if (k >= 3 && k >= m) return DynkinType{'C', k};
    }
  }
  if (dshort.v2 == 7 && dshort.v1 == 8) return DynkinType{'F', 4};
  fail();
  return DynkinType{};  // unreachable
}

RecoveryOutput recover_chevalley_basis(const LieAlgebra& L, const Subspace* h0,
                                       std::uint64_t seed) {
  if (h0 && h0->dim() > 0 && h0->ambient() != L.dim())
    throw std::invalid_argument("h0 ambient dimension mismatch");
  Recognizer rec(L, seed);
  return rec.run(h0);
}

Matrix conjugate_cartans(const LieAlgebra& L, const Subspace& h1, const Subspace& h2,
                         std::uint64_t seed) {
  const PrimeField& F = L.field();
  unsigned d = L.dim();
  // the stated case: [L, L] = L
  {
    Echelon span(d);
    for (unsigned i = 0; i + 1 < d && span.rank() < d; ++i)
      for (unsigned j = i + 1; j < d && span.rank() < d; ++j)
        span.add(L.bracket_basis(i, j), F);
    if (span.rank() != d)
      throw std::invalid_argument("conjugate_cartans requires [L,L] = L");
  }
  Rng rng(seed);
  RecoveryOutput o1 = recover_chevalley_basis(L, &h1, rng.next());
  RecoveryOutput o2 = recover_chevalley_basis(L, &h2, rng.next());
  if (!o1.center.empty() || !o2.center.empty())
    throw recognition_error("unexpected central remainder in a perfect algebra");

  // Components are intrinsic ideals; matching by support makes the label
  // identification canonical.
  auto support = [&](const RecoveryComponent& c) {
    std::vector<Vec> rows;
    for (const Vec& v : c.e_vectors) rows.push_back(v);
    for (const Vec& v : c.f_vectors) rows.push_back(v);
    for (const Vec& v : c.h_vectors) rows.push_back(v);
    return Subspace::from_vectors(rows, d, F);
  };
  auto order = [&](const RecoveryOutput& o) {
    std::vector<std::pair<Subspace, const RecoveryComponent*>> v;
    for (const auto& c : o.components) v.emplace_back(support(c), &c);
    std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) {
      if (!(a.first == b.first)) return a.first < b.first;
      return false;
    });
    return v;
  };
  auto v1 = order(o1), v2 = order(o2);
  if (v1.size() != v2.size()) throw recognition_error("component count mismatch");
  for (std::size_t i = 0; i < v1.size(); ++i) {
    if (!(v1[i].first == v2[i].first) || !(v1[i].second->type == v2[i].second->type))
      throw recognition_error("component matching failed");
  }

  auto assemble = [&](const std::vector<std::pair<Subspace, const RecoveryComponent*>>& v) {
    Matrix B(d, d);
    unsigned col = 0;
    for (const auto& [sup, comp] : v) {
      for (const Vec& x : comp->e_vectors) {
        for (unsigned r = 0; r < d; ++r) B.at(r, col) = x[r];
        ++col;
      }
      for (const Vec& x : comp->f_vectors) {
        for (unsigned r = 0; r < d; ++r) B.at(r, col) = x[r];
        ++col;
      }
      for (const Vec& x : comp->h_vectors) {
        for (unsigned r = 0; r < d; ++r) B.at(r, col) = x[r];
        ++col;
      }
    }
    if (col != d) throw recognition_error("recovered bases do not span");
    return B;
  };
  Matrix B1 = assemble(v1), B2 = assemble(v2);
  Matrix g = mat_mul(B2, mat_inverse(B1, F), F);

  // g must carry h1 onto h2 and respect every bracket
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < h1.dim(); ++i)
    rows.push_back(mat_apply(g, h1.basis().row_vec(i), F));
  if (!(Subspace::from_vectors(rows, d, F) == h2))
    throw recognition_error("base change does not map h1 onto h2");
  if (!check_automorphism(L, g).passed)
    throw recognition_error("base change is not an automorphism");
  return g;
}

}  // namespace chv
