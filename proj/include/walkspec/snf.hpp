#pragma once

// Smith normal forms over the integers and over the local rings Z/p^kZ,
// together with the module-theoretic solvers built on them.

#include <cstdint>
#include <optional>
#include <vector>

#include "walkspec/exact.hpp"

namespace walkspec {

struct Ring {
  enum class Kind { Integers, ModPrimePower };
  Kind kind = Kind::Integers;
  Integer p = 0;
  unsigned k = 0;

  static Ring integers() { return {}; }
  static Ring mod_prime_power(const Integer& p, unsigned k) { return {Kind::ModPrimePower, p, k}; }
  Integer modulus() const;  // p^k, or 0 over the integers
};

// U * M * V = S in the stated ring. Over Z/p^kZ every matrix is reduced to
// representatives in [0, p^k) and nonzero invariant factors are exactly p^c.
struct SnfResult {
  Ring ring;
  IntMatrix u;
  IntMatrix s;
  IntMatrix v;
  std::vector<Integer> invariant_factors;  // the r nonzero diagonal entries
  std::vector<unsigned> exponents;          // c_i with invariant factor p^{c_i}; modular case only
  bool even_prime = false;                  // p = 2 was requested; allowed but outside the odd theory

  std::size_t rank() const { return invariant_factors.size(); }
};

SnfResult snf_int(const IntMatrix& m);

// Throws DomainError unless p is prime and k >= 1.
SnfResult snf_mod_pk(const IntMatrix& m, const Integer& p, unsigned k);

// All min(rows, cols) diagonal entries of the integer SNF, zeros included.
std::vector<Integer> invariant_factors_full(const IntMatrix& m);

// Rank of the reduction mod p, by SNF over Z/pZ.
std::size_t rank_mod_p(const IntMatrix& m, const Integer& p);

struct Solvability {
  bool solvable = false;
  IntVector solution;  // M x = b (mod p^k), entries in [0, p^k); empty when unsolvable
};

// Decides M x = b over Z/p^kZ by comparing the invariant factors of M and
// (M | b); the solution comes from the SNF transforms of M.
Solvability solvable_mod_pk(const IntMatrix& m, const IntVector& b, const Integer& p, unsigned k);

struct KernelShape {
  std::vector<unsigned> torsion_exponents;  // nonzero c_i, ascending
  std::size_t free_rank = 0;                 // n - r
  Integer modulus;                           // p^k
  unsigned k = 0;
  // Generators of the kernel: p^{k-c_i} V e_i for torsion coordinates and
  // V e_j for j >= r. When torsion is empty these form a free basis.
  std::vector<IntVector> generators;
  std::optional<std::vector<IntVector>> free_basis;

  // log_p of the kernel cardinality.
  unsigned long log_size() const;
};

KernelShape kernel_shape(const IntMatrix& m, const Integer& p, unsigned k);

struct DnTest {
  bool holds = false;   // p^k | d_n
  IntVector witness;    // M z = 0 (mod p^k), z != 0 (mod p); empty when !holds
};

// For a tall matrix (rows >= cols): M z = 0 (mod p^k) has a solution with
// z != 0 (mod p) iff p^k divides the n-th invariant factor.
DnTest dn_test(const IntMatrix& m, const Integer& p, unsigned k);

// Completes linearly independent `vectors` lying in the free module spanned by
// `module_basis` to a basis of that module. Inputs are returned first, in order.
std::vector<IntVector> extend_basis(const std::vector<IntVector>& vectors,
                                    const std::vector<IntVector>& module_basis,
                                    const Integer& p, unsigned k);

}  // namespace walkspec
