#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace chv {

/// Series/rank pair naming a simple root system.
struct DynkinType {
  char series = 'A';  // 'A'..'G'
  unsigned rank = 1;

  /// Throws std::invalid_argument if the rank is outside the series
  /// (C starts at 3 so that B2 is not duplicated).
  void validate() const;
  std::string name() const { return std::string(1, series) + std::to_string(rank); }

  bool operator==(const DynkinType& o) const { return series == o.series && rank == o.rank; }
  bool operator<(const DynkinType& o) const {
    return series != o.series ? series < o.series : rank < o.rank;
  }
};

using RootCoords = std::vector<int>;  // coefficients over the simple roots

struct Root {
  RootCoords coords;
  int height = 0;
  bool is_long = true;  // all roots count as long in the simply-laced series
};

/// Root datum for one simple type: positive roots in a fixed total order
/// (height, then reverse-lexicographic coordinates), Cartan matrix,
/// extraspecial pairs and the structure-constant table seeded from them.
class RootSystem {
public:
  explicit RootSystem(DynkinType t);

  const DynkinType& type() const { return type_; }
  unsigned rank() const { return type_.rank; }
  std::size_t num_positive() const { return positive_.size(); }
  const std::vector<Root>& positive_roots() const { return positive_; }
  const Root& positive_root(std::size_t i) const { return positive_[i]; }
  /// Algebra dimension 2 * positives + rank.
  std::size_t dimension() const { return 2 * positive_.size() + rank(); }

  /// cartan()[i][j] = <alpha_j, alpha_i^vee>
  const std::vector<std::vector<int>>& cartan() const { return cartan_; }
  int simple_norm2(unsigned i) const { return norm2_[i]; }

  /// Index of a positive root, or -1.
  int positive_index(const RootCoords& coords) const;
  /// True for positive or negative roots.
  bool is_root(const RootCoords& coords) const;

  /// (beta, beta) under the invariant form normalized so short roots have 2.
  int norm2(const RootCoords& beta) const;

  /// <beta, alpha^vee> = 2(beta,alpha)/(alpha,alpha); both arguments roots
  /// (alpha may be any root, not just simple).
  int pairing(const RootCoords& beta, const RootCoords& alpha) const;

  /// max k >= 0 with beta - k*alpha still a root.
  int down_string(const RootCoords& beta, const RootCoords& alpha) const;

  /// N_{a,b} with |N| = r+1 when a+b is a root, else 0. Requires a+b != 0.
  int structure_constant(const RootCoords& a, const RootCoords& b) const;

  /// The extraspecial pair (alpha, beta) of a non-simple positive root,
  /// as indices into positive_roots().
  std::pair<std::size_t, std::size_t> extraspecial(std::size_t gamma_idx) const;

  /// Integer coefficients c with h_gamma = sum c_i h_{alpha_i}.
  std::vector<int> coroot_coords(const RootCoords& gamma) const;

  /// Total order used for the extraspecial convention.
  bool root_less(const RootCoords& a, const RootCoords& b) const;

private:
  void build_cartan();
  void enumerate_roots();
  void build_structure_constants();
  int lookup_special(std::size_t a, std::size_t b) const;
  int signed_constant(const RootCoords& a, const RootCoords& b) const;

  DynkinType type_;
  std::vector<std::vector<int>> cartan_;
  std::vector<int> norm2_;                 // per simple root
  std::vector<std::vector<int>> bilinear_; // (alpha_i, alpha_j)
  std::vector<Root> positive_;
  std::map<RootCoords, std::size_t> positive_index_;
  std::map<std::pair<std::size_t, std::size_t>, int> special_n_;  // (a,b) with a<b in order
  std::vector<std::pair<std::size_t, std::size_t>> extraspecial_; // per positive root; (0,0) for simples
};

}  // namespace chv
