#include "chevalley.h"

#include <cstring>
#include <optional>
#include <sstream>

#include "chevalley/algebra.hpp"
#include "chevalley/io.hpp"
#include "chevalley/oracle.hpp"
#include "chevalley/recover.hpp"

using namespace chv;

struct chv_algebra {
  LieAlgebra alg;
  std::optional<CanonicalTags> tags;
};
struct chv_matrix {
  Matrix fwd;
  Matrix inv;
  unsigned long p;
};
struct chv_subspace {
  Subspace s;
  unsigned long p;
};
struct chv_recovery {
  RecoveryOutput out;
};

namespace {

thread_local std::string g_last_error;

chv_status fail(chv_status s, const std::string& msg) {
  g_last_error = msg;
  return s;
}

template <typename Fn>
chv_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const parse_error& e) {
    return fail(CHV_ERR_PARSE, e.what());
  } catch (const recognition_error& e) {
    return fail(CHV_ERR_RECOGNITION, e.what());
  } catch (const std::invalid_argument& e) {
    return fail(CHV_ERR_ARGUMENT, e.what());
  } catch (const std::domain_error& e) {
    return fail(CHV_ERR_ARGUMENT, e.what());
  } catch (const std::runtime_error& e) {
    // io.cpp reports filesystem problems as plain runtime errors
    return fail(CHV_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(CHV_ERR_INTERNAL, e.what());
  }
}

chv_status need(bool cond, const char* what) {
  return cond ? CHV_OK : fail(CHV_ERR_ARGUMENT, what);
}

}  // namespace

extern "C" {

const char* chv_status_name(chv_status s) {
  switch (s) {
    case CHV_OK: return "ok";
    case CHV_ERR_ARGUMENT: return "argument";
    case CHV_ERR_PARSE: return "parse";
    case CHV_ERR_IO: return "io";
    case CHV_ERR_RECOGNITION: return "recognition";
    case CHV_ERR_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* chv_last_error(void) { return g_last_error.c_str(); }

chv_status chv_algebra_build(char series, unsigned rank, unsigned long p, chv_algebra** out) {
  if (chv_status s = need(out != nullptr, "null out"); s != CHV_OK) return s;
  return guarded([&] {
    DynkinType t{series, rank};
    t.validate();
    PrimeField F(p);
    RootSystem rs(t);
    auto [alg, tags] = build_chevalley(rs, F);
    *out = new chv_algebra{std::move(alg), std::move(tags)};
    return CHV_OK;
  });
}

chv_status chv_algebra_direct_sum(const chv_algebra* a, const chv_algebra* b, chv_algebra** out) {
  if (chv_status s = need(a && b && out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    LieAlgebra sum = direct_sum({&a->alg, &b->alg});
    std::optional<CanonicalTags> tags;
    if (a->tags && b->tags && a->tags->center_dim == 0 && b->tags->center_dim == 0) {
      std::vector<std::pair<const LieAlgebra*, const CanonicalTags*>> parts;
      parts.emplace_back(&a->alg, &*a->tags);
      parts.emplace_back(&b->alg, &*b->tags);
      tags = direct_sum_tagged(parts).second;
    }
    *out = new chv_algebra{std::move(sum), std::move(tags)};
    return CHV_OK;
  });
}

chv_status chv_algebra_add_center(const chv_algebra* a, unsigned k, chv_algebra** out) {
  if (chv_status s = need(a && out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    LieAlgebra ext = add_center(a->alg, k);
    std::optional<CanonicalTags> tags;
    if (a->tags) tags = add_center_tags(*a->tags, a->alg.dim(), k);
    *out = new chv_algebra{std::move(ext), std::move(tags)};
    return CHV_OK;
  });
}

chv_status chv_algebra_scramble(const chv_algebra* a, unsigned long long seed, chv_algebra** out,
                                chv_matrix** basis_change_out) {
  if (chv_status s = need(a && out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    auto [alg, bc] = scramble(a->alg, seed);
    *out = new chv_algebra{std::move(alg), std::nullopt};
    if (basis_change_out)
      *basis_change_out =
          new chv_matrix{std::move(bc.forward), std::move(bc.inverse), a->alg.field().p()};
    return CHV_OK;
  });
}

void chv_algebra_free(chv_algebra* a) { delete a; }

unsigned chv_algebra_dim(const chv_algebra* a) { return a ? a->alg.dim() : 0; }
unsigned long chv_algebra_prime(const chv_algebra* a) { return a ? a->alg.field().p() : 0; }
int chv_algebra_has_tags(const chv_algebra* a) { return a && a->tags ? 1 : 0; }

chv_status chv_algebra_equal(const chv_algebra* a, const chv_algebra* b, int* equal_out) {
  if (chv_status s = need(a && b && equal_out, "null argument"); s != CHV_OK) return s;
  *equal_out = a->alg.tensor_equal(b->alg) ? 1 : 0;
  return CHV_OK;
}

chv_status chv_algebra_read(const char* path, chv_algebra** out) {
  if (chv_status s = need(path && out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    std::istringstream is(load_text(path));
    *out = new chv_algebra{read_algebra(is), std::nullopt};
    return CHV_OK;
  });
}

chv_status chv_algebra_write(const chv_algebra* a, const char* path) {
  if (chv_status s = need(a && path, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    std::ostringstream os;
    write_algebra(os, a->alg);
    save_text(path, os.str());
    return CHV_OK;
  });
}

chv_status chv_algebra_write_tags(const chv_algebra* a, const char* path) {
  if (chv_status s = need(a && path, "null argument"); s != CHV_OK) return s;
  if (!a->tags) return fail(CHV_ERR_ARGUMENT, "algebra carries no canonical tags");
  return guarded([&] {
    std::ostringstream os;
    write_tags(os, a->alg, *a->tags);
    save_text(path, os.str());
    return CHV_OK;
  });
}

chv_status chv_matrix_write(const chv_matrix* m, const char* path) {
  if (chv_status s = need(m && path, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    std::ostringstream os;
    write_basis_change(os, BasisChange{m->fwd, m->inv}, PrimeField(m->p),
                       static_cast<unsigned>(m->fwd.rows()));
    save_text(path, os.str());
    return CHV_OK;
  });
}

chv_status chv_matrix_read(const char* path, chv_matrix** out) {
  if (chv_status s = need(path && out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    std::istringstream is(load_text(path));
    // re-parse the prime from the header for the handle
    std::string head;
    std::getline(is, head);
    is.seekg(0);
    BasisChange bc = read_basis_change(is);
    auto pos = head.find("p=");
    unsigned long p = std::stoul(head.substr(pos + 2));
    *out = new chv_matrix{std::move(bc.forward), std::move(bc.inverse), p};
    return CHV_OK;
  });
}

void chv_matrix_free(chv_matrix* m) { delete m; }

chv_status chv_matrix_pullback_unit(const chv_matrix* m, unsigned index, unsigned long* vec_out) {
  if (chv_status s = need(m && vec_out, "null argument"); s != CHV_OK) return s;
  if (index >= m->inv.cols()) return fail(CHV_ERR_ARGUMENT, "index out of range");
  for (std::size_t r = 0; r < m->inv.rows(); ++r) vec_out[r] = m->inv.at(r, index);
  return CHV_OK;
}

chv_status chv_subspace_read(const char* path, chv_subspace** out) {
  if (chv_status s = need(path && out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    std::istringstream is(load_text(path));
    std::string head;
    std::getline(is, head);
    is.seekg(0);
    auto pos = head.find("p=");
    unsigned long p = pos == std::string::npos ? 0 : std::stoul(head.substr(pos + 2));
    *out = new chv_subspace{read_subspace(is), p};
    return CHV_OK;
  });
}

chv_status chv_subspace_write(const chv_subspace* s, const char* path) {
  if (chv_status st = need(s && path, "null argument"); st != CHV_OK) return st;
  return guarded([&] {
    std::ostringstream os;
    write_subspace(os, s->s, PrimeField(s->p));
    save_text(path, os.str());
    return CHV_OK;
  });
}

chv_status chv_subspace_create(unsigned long p, unsigned dim, unsigned rows,
                               const unsigned long* data, chv_subspace** out) {
  if (chv_status s = need(out && (rows == 0 || data), "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    PrimeField F(p);
    std::vector<Vec> rws;
    for (unsigned r = 0; r < rows; ++r) {
      Vec v(dim);
      for (unsigned c = 0; c < dim; ++c)
        v[c] = F.from_int(static_cast<std::int64_t>(data[std::size_t(r) * dim + c] % p));
      rws.push_back(std::move(v));
    }
    *out = new chv_subspace{Subspace::from_vectors(rws, dim, F), p};
    return CHV_OK;
  });
}

unsigned chv_subspace_dim(const chv_subspace* s) {
  return s ? static_cast<unsigned>(s->s.dim()) : 0;
}

void chv_subspace_free(chv_subspace* s) { delete s; }

chv_status chv_recover(const chv_algebra* a, const chv_subspace* h0, unsigned long long seed,
                       chv_recovery** out) {
  if (chv_status s = need(a && out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    const Subspace* hs = h0 ? &h0->s : nullptr;
    *out = new chv_recovery{recover_chevalley_basis(a->alg, hs, seed)};
    return CHV_OK;
  });
}

void chv_recovery_free(chv_recovery* r) { delete r; }

chv_status chv_recovery_write(const chv_recovery* r, const char* path) {
  if (chv_status s = need(r && path, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    std::ostringstream os;
    write_recovery(os, r->out);
    save_text(path, os.str());
    return CHV_OK;
  });
}

chv_status chv_recovery_read(const char* path, chv_recovery** out) {
  if (chv_status s = need(path && out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    std::istringstream is(load_text(path));
    *out = new chv_recovery{read_recovery(is)};
    return CHV_OK;
  });
}

unsigned chv_recovery_component_count(const chv_recovery* r) {
  return r ? static_cast<unsigned>(r->out.components.size()) : 0;
}

chv_status chv_recovery_component_type(const chv_recovery* r, unsigned idx, char* series_out,
                                       unsigned* rank_out) {
  if (chv_status s = need(r && series_out && rank_out, "null argument"); s != CHV_OK) return s;
  if (idx >= r->out.components.size()) return fail(CHV_ERR_ARGUMENT, "component out of range");
  *series_out = r->out.components[idx].type.series;
  *rank_out = r->out.components[idx].type.rank;
  return CHV_OK;
}

unsigned chv_recovery_center_dim(const chv_recovery* r) {
  return r ? static_cast<unsigned>(r->out.center.size()) : 0;
}

unsigned chv_recovery_restarts(const chv_recovery* r) {
  return r ? r->out.stats.full_restarts : 0;
}

chv_status chv_recovery_cartan(const chv_recovery* r, chv_subspace** out) {
  if (chv_status s = need(r && out, "null argument"); s != CHV_OK) return s;
  *out = new chv_subspace{r->out.cartan, r->out.p};
  return CHV_OK;
}

chv_status chv_verify(const chv_algebra* a, const chv_recovery* r, int* passed_out,
                      char** report_out) {
  if (chv_status s = need(a && r && passed_out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    VerificationReport rep = check_chevalley_axioms(a->alg, r->out);
    *passed_out = rep.passed ? 1 : 0;
    if (report_out) {
      std::ostringstream os;
      const char* names[] = {"shape",       "basis",        "cartan-commutes", "h-action",
                             "ef-coroot",   "root-brackets", "root-count",
                             "cross-component", "center"};
      for (const char* n : names) {
        bool bad = false;
        for (auto& [check, witness] : rep.failures)
          if (check == n) bad = true;
        os << "check " << n << " " << (bad ? "FAIL" : "PASS") << "\n";
      }
      for (auto& [check, witness] : rep.failures) os << "witness " << check << ": " << witness << "\n";
      std::string str = os.str();
      *report_out = static_cast<char*>(std::malloc(str.size() + 1));
      std::memcpy(*report_out, str.c_str(), str.size() + 1);
    }
    return CHV_OK;
  });
}

void chv_string_free(char* s) { std::free(s); }

chv_status chv_conjugate_cartans(const chv_algebra* a, const chv_subspace* h1,
                                 const chv_subspace* h2, unsigned long long seed,
                                 chv_matrix** g_out) {
  if (chv_status s = need(a && h1 && h2 && g_out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    Matrix g = conjugate_cartans(a->alg, h1->s, h2->s, seed);
    Matrix gi = mat_inverse(g, a->alg.field());
    *g_out = new chv_matrix{std::move(g), std::move(gi), a->alg.field().p()};
    return CHV_OK;
  });
}

chv_status chv_check_automorphism(const chv_algebra* a, const chv_matrix* g, int* passed_out) {
  if (chv_status s = need(a && g && passed_out, "null argument"); s != CHV_OK) return s;
  return guarded([&] {
    *passed_out = check_automorphism(a->alg, g->fwd).passed ? 1 : 0;
    return CHV_OK;
  });
}

unsigned long long chv_field_ops(void) { return field_ops(); }
void chv_field_ops_reset(void) { reset_field_ops(); }

}  // extern "C"
