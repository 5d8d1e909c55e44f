#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace chv {

// Elements of GF(p) are stored reduced, as machine words in [0, p).
using Fel = std::uint32_t;

// Running count of field multiplications and inversions, used by the
// bench command. Not thread safe; all pipelines here are single threaded.
std::uint64_t field_ops();
void reset_field_ops();

/// Arithmetic in GF(p) for a prime 5 <= p < 2^31.
class PrimeField {
public:
  explicit PrimeField(std::uint64_t p);

  Fel p() const { return p_; }

  Fel add(Fel a, Fel b) const {
    Fel s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fel sub(Fel a, Fel b) const { return a >= b ? a - b : a + p_ - b; }
  Fel neg(Fel a) const { return a == 0 ? 0 : p_ - a; }
  Fel mul(Fel a, Fel b) const;
  Fel inv(Fel a) const;  // throws on a == 0
  Fel pow(Fel a, std::uint64_t e) const;

  // Reduces an arbitrary signed integer into [0, p).
  Fel from_int(std::int64_t v) const {
    std::int64_t r = v % static_cast<std::int64_t>(p_);
    if (r < 0) r += p_;
    return static_cast<Fel>(r);
  }

  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

private:
  Fel p_;
};

bool is_prime(std::uint64_t n);

// ============================================================================
// Univariate polynomials over GF(p)
// ============================================================================

/// Coefficient vector, c[i] the coefficient of X^i, no trailing zeros.
/// The zero polynomial is the empty vector and has degree -1.
struct Poly {
  std::vector<Fel> c;

  Poly() = default;
  explicit Poly(std::vector<Fel> coeffs) : c(std::move(coeffs)) { trim(); }

  int degree() const { return static_cast<int>(c.size()) - 1; }
  bool is_zero() const { return c.empty(); }
  void trim() {
    while (!c.empty() && c.back() == 0) c.pop_back();
  }
  bool operator==(const Poly& o) const { return c == o.c; }
};

Poly poly_add(const Poly& a, const Poly& b, const PrimeField& F);
Poly poly_sub(const Poly& a, const Poly& b, const PrimeField& F);
Poly poly_mul(const Poly& a, const Poly& b, const PrimeField& F);
// quotient/remainder with b != 0
void poly_divmod(const Poly& a, const Poly& b, const PrimeField& F, Poly& q, Poly& r);
Poly poly_mod(const Poly& a, const Poly& b, const PrimeField& F);
Poly poly_monic(const Poly& a, const PrimeField& F);
Poly poly_gcd(Poly a, Poly b, const PrimeField& F);  // monic gcd
Poly poly_lcm(const Poly& a, const Poly& b, const PrimeField& F);
Fel poly_eval(const Poly& a, Fel x, const PrimeField& F);
// base^e mod m, m nonconstant
Poly poly_powmod(const Poly& base, std::uint64_t e, const Poly& m, const PrimeField& F);

// Builds (X - r1)(X - r2)... from the given roots.
Poly poly_from_roots(const std::vector<Fel>& roots, const PrimeField& F);

class Rng;

/// All roots of f in GF(p), each reported once, sorted ascending.
/// Splits gcd(X^p - X, f) by random quadratic-residue shifts; Las Vegas,
/// retries internally until the split succeeds.
std::vector<Fel> poly_roots(const Poly& f, const PrimeField& F, Rng& rng);

}  // namespace chv
