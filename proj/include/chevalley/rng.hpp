#pragma once

#include <cstdint>
#include <random>

#include "chevalley/field.hpp"

namespace chv {

/// Seedable source of randomness for the Las Vegas parts. One instance is
/// threaded through a whole run so that every run is reproducible from its
/// seed.
class Rng {
public:
  explicit Rng(std::uint64_t seed) : gen_(seed) {}

  std::uint64_t next() { return gen_(); }

  Fel uniform(const PrimeField& F) {
    return static_cast<Fel>(next() % F.p());
  }

  Fel nonzero(const PrimeField& F) {
    Fel v;
    do {
      v = uniform(F);
    } while (v == 0);
    return v;
  }

  std::size_t index(std::size_t n) { return static_cast<std::size_t>(next() % n); }

  /// Independent stream for a subtask; mixes the salt so sibling forks differ.
  Rng fork(std::uint64_t salt) {
    std::uint64_t s = next() ^ (salt * 0x9e3779b97f4a7c15ull);
    return Rng(s ^ (s >> 31));
  }

private:
  std::mt19937_64 gen_;
};

}  // namespace chv
