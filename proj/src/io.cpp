#include "chevalley/io.hpp"

#include <fstream>
#include <ostream>
#include <sstream>

namespace chv {

namespace {

// Line-oriented tokenizer that remembers positions for error messages.
class LineReader {
 public:
  explicit LineReader(std::istream& is) : is_(is) {}

  // next nonempty line split into tokens; false at EOF
  bool next(std::vector<std::string>& tokens) {
    std::string line;
    while (std::getline(is_, line)) {
      ++lineno_;
      tokens.clear();
      std::istringstream ss(line);
      std::string tok;
      while (ss >> tok) tokens.push_back(tok);
      if (!tokens.empty()) return true;
    }
    return false;
  }

  int lineno() const { return lineno_; }

  [[noreturn]] void err(const std::string& msg) const { throw parse_error(lineno_, msg); }

 private:
  std::istream& is_;
  int lineno_ = 0;
};

std::uint64_t parse_u64(const LineReader& r, const std::string& tok) {
  try {
    std::size_t pos = 0;
    if (tok.empty() || tok[0] == '-') throw std::invalid_argument("negative");
    std::uint64_t v = std::stoull(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    r.err("expected a non-negative integer, got '" + tok + "'");
  }
}

long parse_long(const LineReader& r, const std::string& tok) {
  try {
    std::size_t pos = 0;
    long v = std::stol(tok, &pos);
    if (pos != tok.size()) throw std::invalid_argument("trailing");
    return v;
  } catch (const std::exception&) {
    r.err("expected an integer, got '" + tok + "'");
  }
}

// parses "key=value" returning value
std::uint64_t header_field(const LineReader& r, const std::string& tok, const std::string& key) {
  if (tok.rfind(key + "=", 0) != 0) r.err("expected '" + key + "=...', got '" + tok + "'");
  return parse_u64(r, tok.substr(key.size() + 1));
}

Vec parse_vector(const LineReader& r, const std::vector<std::string>& tokens, std::size_t from,
                 std::size_t count, const PrimeField& F) {
  if (tokens.size() != from + count) r.err("expected " + std::to_string(count) + " coordinates");
  Vec v(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint64_t x = parse_u64(r, tokens[from + i]);
    if (x >= F.p()) r.err("coordinate out of range");
    v[i] = static_cast<Fel>(x);
  }
  return v;
}

}  // namespace

void write_algebra(std::ostream& os, const LieAlgebra& L) {
  os << "liealg v1 p=" << L.field().p() << " d=" << L.dim() << "\n";
  for (unsigned i = 0; i + 1 < L.dim(); ++i)
    for (unsigned j = i + 1; j < L.dim(); ++j)
      for (const auto& [k, c] : L.slice(i, j)) os << i << " " << j << " " << k << " " << c << "\n";
}

LieAlgebra read_algebra(std::istream& is) {
  LineReader r(is);
  std::vector<std::string> t;
  if (!r.next(t)) throw parse_error(1, "empty input");
  if (t.size() != 4 || t[0] != "liealg" || t[1] != "v1") r.err("bad header, expected 'liealg v1 p=<p> d=<d>'");
  std::uint64_t p = header_field(r, t[2], "p");
  std::uint64_t d = header_field(r, t[3], "d");
  PrimeField F = [&]() -> PrimeField {
    try {
      return PrimeField(p);
    } catch (const std::exception& e) {
      r.err(e.what());
    }
  }();
  if (d < 1 || d > 100000) r.err("unreasonable dimension");
  LieAlgebra L(F, static_cast<unsigned>(d));
  long last_i = -1, last_j = -1, last_k = -1;
  std::vector<LieAlgebra::Term> terms;
  auto flush = [&]() {
    if (last_i >= 0) L.set_bracket(static_cast<unsigned>(last_i), static_cast<unsigned>(last_j),
                                   std::move(terms));
    terms = {};
  };
  while (r.next(t)) {
    if (t.size() != 4) r.err("expected 'i j k c'");
    std::uint64_t i = parse_u64(r, t[0]), j = parse_u64(r, t[1]), k = parse_u64(r, t[2]),
                  c = parse_u64(r, t[3]);
    if (i >= d || j >= d || k >= d) r.err("index out of range");
    if (i >= j) r.err("entries must have i < j");
    if (c == 0 || c >= p) r.err("coefficient out of range [1, p)");
    if (long(i) != last_i || long(j) != last_j) {
      if (std::make_pair(long(i), long(j)) < std::make_pair(last_i, last_j))
        r.err("entries out of order");
      flush();
      last_i = long(i);
      last_j = long(j);
      last_k = -1;
    }
    if (long(k) <= last_k) r.err("entries out of order");
    last_k = long(k);
    terms.emplace_back(static_cast<std::uint32_t>(k), static_cast<Fel>(c));
  }
  flush();
  return L;
}

void write_tags(std::ostream& os, const LieAlgebra& L, const CanonicalTags& tags) {
  if (tags.components.size() != 1 || tags.center_dim != 0)
    throw std::invalid_argument("tag sidecars cover single canonical components only");
  os << "liealgtags v1 p=" << L.field().p() << " d=" << L.dim() << " type="
     << tags.components[0].name() << "\n";
  for (std::size_t i = 0; i < tags.tags.size(); ++i) {
    const BasisTag& bt = tags.tags[i];
    os << "tag " << i << " ";
    switch (bt.kind) {
      case BasisTag::Kind::E:
      case BasisTag::Kind::F:
        os << (bt.kind == BasisTag::Kind::E ? "e" : "f");
        for (int c : bt.coords) os << " " << c;
        break;
      case BasisTag::Kind::H:
        os << "h " << bt.simple;
        break;
      case BasisTag::Kind::Z:
        os << "z";
        break;
    }
    os << "\n";
  }
}

void write_recovery(std::ostream& os, const RecoveryOutput& out) {
  os << "chevrec v1 p=" << out.p << " d=" << out.dim << " components=" << out.components.size()
     << " center=" << out.center.size() << "\n";
  for (std::size_t ci = 0; ci < out.components.size(); ++ci) {
    const RecoveryComponent& comp = out.components[ci];
    os << "component " << ci << " " << comp.type.name() << "\n";
    RootSystem rs(comp.type);
    auto put = [&](const char* role, const RootCoords* coords, unsigned simple, const Vec& v) {
      os << "basis " << role;
      if (coords)
        for (int c : *coords) os << " " << c;
      else
        os << " " << simple;
      for (Fel x : v) os << " " << x;
      os << "\n";
    };
    for (std::size_t i = 0; i < rs.num_positive(); ++i)
      put("e", &rs.positive_root(i).coords, 0, comp.e_vectors[i]);
    for (std::size_t i = 0; i < rs.num_positive(); ++i)
      put("f", &rs.positive_root(i).coords, 0, comp.f_vectors[i]);
    for (unsigned i = 0; i < rs.rank(); ++i) put("h", nullptr, i, comp.h_vectors[i]);
  }
  for (const Vec& z : out.center) {
    os << "basis z";
    for (Fel x : z) os << " " << x;
    os << "\n";
  }
}

RecoveryOutput read_recovery(std::istream& is) {
  LineReader r(is);
  std::vector<std::string> t;
  if (!r.next(t)) throw parse_error(1, "empty input");
  if (t.size() != 5 || t[0] != "chevrec" || t[1] != "v1")
    r.err("bad header, expected 'chevrec v1 p=<p> d=<d> components=<n> center=<k>'");
  RecoveryOutput out;
  out.p = header_field(r, t[2], "p");
  out.dim = static_cast<unsigned>(header_field(r, t[3], "d"));
  std::uint64_t ncomp = header_field(r, t[4], "components");
  std::uint64_t ncenter = header_field(r, t[5 - 1], "center");
  PrimeField F = [&]() -> PrimeField {
    try {
      return PrimeField(out.p);
    } catch (const std::exception& e) {
      r.err(e.what());
    }
  }();

  struct Pending {
    RootSystem rs;
    std::size_t e_seen = 0, f_seen = 0, h_seen = 0;
  };
  std::vector<Pending> pend;
  int cur = -1;
  while (r.next(t)) {
    if (t[0] == "component") {
      if (t.size() != 3) r.err("expected 'component <idx> <type>'");
      std::uint64_t idx = parse_u64(r, t[1]);
      if (idx != out.components.size()) r.err("components out of order");
      if (t[2].size() < 2) r.err("bad type name");
      DynkinType ty{t[2][0], 0};
      ty.rank = static_cast<unsigned>(parse_u64(r, t[2].substr(1)));
      try {
        ty.validate();
      } catch (const std::exception& e) {
        r.err(e.what());
      }
      pend.push_back(Pending{RootSystem(ty)});
      RecoveryComponent comp;
      comp.type = ty;
      comp.e_vectors.resize(pend.back().rs.num_positive());
      comp.f_vectors.resize(pend.back().rs.num_positive());
      comp.h_vectors.resize(ty.rank);
      out.components.push_back(std::move(comp));
      cur = static_cast<int>(out.components.size()) - 1;
      continue;
    }
    if (t[0] != "basis") r.err("expected 'component' or 'basis' line");
    if (t.size() < 2) r.err("missing basis role");
    const std::string& role = t[1];
    if (role == "z") {
      out.center.push_back(parse_vector(r, t, 2, out.dim, F));
      continue;
    }
    if (cur < 0) r.err("basis line before any component");
    Pending& pd = pend[cur];
    RecoveryComponent& comp = out.components[cur];
    if (role == "h") {
      if (t.size() < 3) r.err("missing simple index");
      std::uint64_t i = parse_u64(r, t[2]);
      if (i >= comp.type.rank) r.err("simple index out of range");
      comp.h_vectors[i] = parse_vector(r, t, 3, out.dim, F);
      ++pd.h_seen;
      continue;
    }
    if (role != "e" && role != "f") r.err("unknown basis role '" + role + "'");
    unsigned rank = comp.type.rank;
    if (t.size() < 2 + rank) r.err("missing root coordinates");
    RootCoords coords(rank);
    for (unsigned i = 0; i < rank; ++i) coords[i] = static_cast<int>(parse_long(r, t[2 + i]));
    int idx = pd.rs.positive_index(coords);
    if (idx < 0) r.err("coordinates are not a positive root of " + comp.type.name());
    Vec v = parse_vector(r, t, 2 + rank, out.dim, F);
    if (role == "e") {
      comp.e_vectors[idx] = std::move(v);
      ++pd.e_seen;
    } else {
      comp.f_vectors[idx] = std::move(v);
      ++pd.f_seen;
    }
  }
  if (out.components.size() != ncomp) r.err("component count mismatch with header");
  if (out.center.size() != ncenter) r.err("center count mismatch with header");
  for (std::size_t ci = 0; ci < pend.size(); ++ci) {
    if (pend[ci].e_seen != pend[ci].rs.num_positive() ||
        pend[ci].f_seen != pend[ci].rs.num_positive() ||
        pend[ci].h_seen != out.components[ci].type.rank)
      r.err("incomplete component " + std::to_string(ci));
  }
  // Cartan = span of the recovered coroots and the central complement.
  std::vector<Vec> rows;
  for (const auto& comp : out.components)
    for (const Vec& h : comp.h_vectors) rows.push_back(h);
  for (const Vec& z : out.center) rows.push_back(z);
  out.cartan = Subspace::from_vectors(rows, out.dim, F);
  return out;
}

void write_subspace(std::ostream& os, const Subspace& s, const PrimeField& F) {
  os << "subspace v1 p=" << F.p() << " d=" << s.ambient() << " rows=" << s.dim() << "\n";
  for (std::size_t i = 0; i < s.dim(); ++i) {
    for (std::size_t j = 0; j < s.ambient(); ++j)
      os << (j ? " " : "") << s.basis().at(i, j);
    os << "\n";
  }
}

Subspace read_subspace(std::istream& is) {
  LineReader r(is);
  std::vector<std::string> t;
  if (!r.next(t)) throw parse_error(1, "empty input");
  if (t.size() != 5 || t[0] != "subspace" || t[1] != "v1")
    r.err("bad header, expected 'subspace v1 p=<p> d=<d> rows=<r>'");
  std::uint64_t p = header_field(r, t[2], "p");
  std::uint64_t d = header_field(r, t[3], "d");
  std::uint64_t nrows = header_field(r, t[4], "rows");
  PrimeField F = [&]() -> PrimeField {
    try {
      return PrimeField(p);
    } catch (const std::exception& e) {
      r.err(e.what());
    }
  }();
  std::vector<Vec> rows;
  for (std::uint64_t i = 0; i < nrows; ++i) {
    if (!r.next(t)) r.err("missing subspace row");
    rows.push_back(parse_vector(r, t, 0, d, F));
  }
  return Subspace::from_vectors(rows, d, F);
}

void write_basis_change(std::ostream& os, const BasisChange& bc, const PrimeField& F,
                        unsigned dim) {
  os << "basischange v1 p=" << F.p() << " d=" << dim << "\n";
  auto dump = [&](const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) os << (j ? " " : "") << m.at(i, j);
      os << "\n";
    }
  };
  dump(bc.forward);
  dump(bc.inverse);
}

BasisChange read_basis_change(std::istream& is) {
  LineReader r(is);
  std::vector<std::string> t;
  if (!r.next(t)) throw parse_error(1, "empty input");
  if (t.size() != 4 || t[0] != "basischange" || t[1] != "v1")
    r.err("bad header, expected 'basischange v1 p=<p> d=<d>'");
  std::uint64_t p = header_field(r, t[2], "p");
  std::uint64_t d = header_field(r, t[3], "d");
  PrimeField F = [&]() -> PrimeField {
    try {
      return PrimeField(p);
    } catch (const std::exception& e) {
      r.err(e.what());
    }
  }();
  BasisChange bc{Matrix(d, d), Matrix(d, d)};
  for (Matrix* m : {&bc.forward, &bc.inverse}) {
    for (std::uint64_t i = 0; i < d; ++i) {
      if (!r.next(t)) r.err("missing matrix row");
      Vec v = parse_vector(r, t, 0, d, F);
      m->set_row(i, v);
    }
  }
  return bc;
}

void save_text(const std::string& path, const std::string& content) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw std::runtime_error("cannot open '" + path + "' for writing");
  os << content;
  if (!os) throw std::runtime_error("write failed for '" + path + "'");
}

std::string load_text(const std::string& path) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw std::runtime_error("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << is.rdbuf();
  return ss.str();
}

}  // namespace chv
