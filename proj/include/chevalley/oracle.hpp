#pragma once

#include <string>
#include <vector>

#include "chevalley/algebra.hpp"
#include "chevalley/recover.hpp"

namespace chv {

struct VerificationReport {
  bool passed = true;
  // (check name, witness)
  std::vector<std::pair<std::string, std::string>> failures;

  void fail(std::string check, std::string witness) {
    passed = false;
    failures.emplace_back(std::move(check), std::move(witness));
  }
};

/// Exhaustive check of the Chevalley relations on a recovery: the Cartan is
/// abelian, every [h_i, e_beta] eigenvalue is the Cartan integer, e/f pairs
/// bracket to coroots, all root-space brackets carry the structure constants
/// of the identified type, and the recovered vectors form a basis.
VerificationReport check_chevalley_axioms(const LieAlgebra& L, const RecoveryOutput& out);

struct WeightDims {
  std::size_t v1 = 0, v2 = 0, v3 = 0;  // dims at eigenvalues 1,2,3 mod p
};

/// Eigenspace dimensions of ad h for one simple root h of each length class
/// of a canonically built algebra. Small characteristics merge colliding
/// eigenvalues and are reported as measured.
std::vector<std::pair<std::string, WeightDims>> measure_table1(const LieAlgebra& L,
                                                               const CanonicalTags& tags,
                                                               const RootSystem& rs);

/// Checks that g is invertible and multiplicative on all basis pairs.
VerificationReport check_automorphism(const LieAlgebra& L, const Matrix& g);

}  // namespace chv
