#include "chevalley/field.hpp"

#include <algorithm>

#include "chevalley/rng.hpp"

namespace chv {

namespace {
std::uint64_t g_field_ops = 0;
}

std::uint64_t field_ops() { return g_field_ops; }
void reset_field_ops() { g_field_ops = 0; }

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t q : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
    if (n % q == 0) return n == q;
  }
  // Miller-Rabin with the first twelve prime bases, deterministic for all
  // 64-bit inputs.
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (std::uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull,
                          31ull, 37ull}) {
    std::uint64_t x = 1, base = a % n, e = d;
    while (e) {
      if (e & 1) x = (unsigned __int128)x * base % n;
      base = (unsigned __int128)base * base % n;
      e >>= 1;
    }
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 1; i < s; ++i) {
      x = (unsigned __int128)x * x % n;
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

PrimeField::PrimeField(std::uint64_t p) {
  if (p < 5) throw std::invalid_argument("field characteristic must be at least 5");
  if (p >= (1ull << 31)) throw std::invalid_argument("prime too large, need p < 2^31");
  if (!is_prime(p)) throw std::invalid_argument("modulus " + std::to_string(p) + " is not prime");
  p_ = static_cast<Fel>(p);
}

Fel PrimeField::mul(Fel a, Fel b) const {
  ++g_field_ops;
  return static_cast<Fel>(std::uint64_t(a) * b % p_);
}

Fel PrimeField::inv(Fel a) const {
  if (a == 0) throw std::domain_error("division by zero in GF(p)");
  ++g_field_ops;
  // extended Euclid on (a, p)
  std::int64_t t = 0, newt = 1;
  std::int64_t r = p_, newr = a;
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (t < 0) t += p_;
  return static_cast<Fel>(t);
}

Fel PrimeField::pow(Fel a, std::uint64_t e) const {
  Fel r = 1, base = a;
  while (e) {
    if (e & 1) r = mul(r, base);
    base = mul(base, base);
    e >>= 1;
  }
  return r;
}

// ============================================================================
// Polynomials
// ============================================================================

Poly poly_add(const Poly& a, const Poly& b, const PrimeField& F) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    Fel x = i < a.c.size() ? a.c[i] : 0;
    Fel y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = F.add(x, y);
  }
  r.trim();
  return r;
}

Poly poly_sub(const Poly& a, const Poly& b, const PrimeField& F) {
  Poly r;
  r.c.resize(std::max(a.c.size(), b.c.size()), 0);
  for (std::size_t i = 0; i < r.c.size(); ++i) {
    Fel x = i < a.c.size() ? a.c[i] : 0;
    Fel y = i < b.c.size() ? b.c[i] : 0;
    r.c[i] = F.sub(x, y);
  }
  r.trim();
  return r;
}

Poly poly_mul(const Poly& a, const Poly& b, const PrimeField& F) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  Poly r;
  r.c.assign(a.c.size() + b.c.size() - 1, 0);
  for (std::size_t i = 0; i < a.c.size(); ++i) {
    if (a.c[i] == 0) continue;
    for (std::size_t j = 0; j < b.c.size(); ++j) {
      if (b.c[j] == 0) continue;
      r.c[i + j] = F.add(r.c[i + j], F.mul(a.c[i], b.c[j]));
    }
  }
  r.trim();
  return r;
}

void poly_divmod(const Poly& a, const Poly& b, const PrimeField& F, Poly& q, Poly& r) {
  if (b.is_zero()) throw std::domain_error("polynomial division by zero");
  r = a;
  q = Poly{};
  int db = b.degree();
  if (a.degree() < db) return;
  q.c.assign(a.degree() - db + 1, 0);
  Fel lead_inv = F.inv(b.c.back());
  while (r.degree() >= db) {
    int shift = r.degree() - db;
    Fel coef = F.mul(r.c.back(), lead_inv);
    q.c[shift] = coef;
    for (int i = 0; i <= db; ++i) {
      r.c[i + shift] = F.sub(r.c[i + shift], F.mul(coef, b.c[i]));
    }
    r.trim();
  }
  q.trim();
}

Poly poly_mod(const Poly& a, const Poly& b, const PrimeField& F) {
  Poly q, r;
  poly_divmod(a, b, F, q, r);
  return r;
}

Poly poly_monic(const Poly& a, const PrimeField& F) {
  if (a.is_zero() || a.c.back() == 1) return a;
  Poly r = a;
  Fel inv = F.inv(a.c.back());
  for (auto& x : r.c) x = F.mul(x, inv);
  return r;
}

Poly poly_gcd(Poly a, Poly b, const PrimeField& F) {
  while (!b.is_zero()) {
    Poly r = poly_mod(a, b, F);
    a = std::move(b);
    b = std::move(r);
  }
  return poly_monic(a, F);
}

Poly poly_lcm(const Poly& a, const Poly& b, const PrimeField& F) {
  if (a.is_zero() || b.is_zero()) return Poly{};
  Poly g = poly_gcd(a, b, F);
  Poly q, r;
  poly_divmod(a, g, F, q, r);
  return poly_monic(poly_mul(q, b, F), F);
}

Fel poly_eval(const Poly& a, Fel x, const PrimeField& F) {
  Fel r = 0;
  for (std::size_t i = a.c.size(); i-- > 0;) {
    r = F.add(F.mul(r, x), a.c[i]);
  }
  return r;
}

Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& m, const PrimeField& F) {
  Poly r{std::vector<Fel>{1}};
  Poly b = poly_mod(base, m, F);
  while (e) {
    if (e & 1) r = poly_mod(poly_mul(r, b, F), m, F);
    b = poly_mod(poly_mul(b, b, F), m, F);
    e >>= 1;
  }
  return r;
}

Poly poly_from_roots(const std::vector<Fel>& roots, const PrimeField& F) {
  Poly r{std::vector<Fel>{1}};
  for (Fel root : roots) {
    r = poly_mul(r, Poly{std::vector<Fel>{F.neg(root), 1}}, F);
  }
  return r;
}

namespace {

// g is a monic product of distinct linear factors; splits it recursively.
void collect_roots(const Poly& g, const PrimeField& F, Rng& rng, std::vector<Fel>& out) {
  int d = g.degree();
  if (d <= 0) return;
  if (d == 1) {
    // g = X + c0
    out.push_back(F.neg(g.c[0]));
    return;
  }
  // (X + a)^((p-1)/2) - 1 separates roots by the quadratic character of r + a.
  std::uint64_t half = (F.p() - 1) / 2;
  for (;;) {
    Fel a = rng.uniform(F);
    Poly shifted{std::vector<Fel>{a, 1}};
    Poly w = poly_powmod(shifted, half, g, F);
    w = poly_sub(w, Poly{std::vector<Fel>{1}}, F);
    Poly h = poly_gcd(w, g, F);
    if (h.degree() > 0 && h.degree() < d) {
      Poly q, r;
      poly_divmod(g, h, F, q, r);
      collect_roots(h, F, rng, out);
      collect_roots(q, F, rng, out);
      return;
    }
  }
}

}  // namespace

std::vector<Fel> poly_roots(const Poly& f, const PrimeField& F, Rng& rng) {
  if (f.is_zero()) throw std::domain_error("poly_roots of the zero polynomial");
  std::vector<Fel> out;
  if (f.degree() == 0) return out;
  Poly fm = poly_monic(f, F);
  // X^p mod f, then gcd with X^p - X picks out the split part.
  Poly x{std::vector<Fel>{0, 1}};
  Poly xp = poly_powmod(x, F.p(), fm, F);
  Poly g = poly_gcd(poly_sub(xp, x, F), fm, F);
  collect_roots(g, F, rng, out);
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace chv
