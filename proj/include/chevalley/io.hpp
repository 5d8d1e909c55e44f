#pragma once

#include <iosfwd>
#include <stdexcept>
#include <string>

#include "chevalley/algebra.hpp"
#include "chevalley/recover.hpp"

namespace chv {

class parse_error : public std::runtime_error {
 public:
  parse_error(int line, const std::string& msg)
      : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// "liealg v1" tensor format: header, then one sorted "i j k c" line per
// nonzero structure constant with i < j. Bit-exact round trips.
void write_algebra(std::ostream& os, const LieAlgebra& L);
LieAlgebra read_algebra(std::istream& is);

// Canonical-basis sidecar: "tag <index> <role> <payload>" lines.
// Only single-component, centerless tag sets are writable.
void write_tags(std::ostream& os, const LieAlgebra& L, const CanonicalTags& tags);

void write_recovery(std::ostream& os, const RecoveryOutput& out);
RecoveryOutput read_recovery(std::istream& is);

void write_subspace(std::ostream& os, const Subspace& s, const PrimeField& F);
Subspace read_subspace(std::istream& is);

void write_basis_change(std::ostream& os, const BasisChange& bc, const PrimeField& F,
                        unsigned dim);
BasisChange read_basis_change(std::istream& is);

// path convenience wrappers; throw std::runtime_error on IO failure
void save_text(const std::string& path, const std::string& content);
std::string load_text(const std::string& path);

}  // namespace chv
