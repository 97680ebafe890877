#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "csp/perm.hpp"

namespace csp {

/// Dense vector over the prime field F_ell.
class FlVector {
 public:
  FlVector() = default;
  FlVector(uint32_t ell, uint32_t dim);
  static FlVector unit(uint32_t ell, uint32_t dim, uint32_t index);
  static FlVector ones(uint32_t ell, uint32_t dim);

  uint32_t ell() const { return ell_; }
  uint32_t dim() const { return static_cast<uint32_t>(c_.size()); }
  uint8_t operator[](uint32_t i) const { return c_[i]; }
  void set(uint32_t i, uint32_t value);

  bool is_zero() const;
  friend FlVector operator+(const FlVector& a, const FlVector& b);
  friend FlVector operator-(const FlVector& a, const FlVector& b);
  FlVector negated() const;
  FlVector scaled(uint32_t a) const;
  /// Coordinate relabelling by a permutation: result[p[i]] = v[i].
  FlVector permuted(const Perm& p) const;
  bool operator==(const FlVector&) const = default;

  std::string key() const;
  /// Sparse form (index, scalar) of the nonzero entries.
  std::vector<std::pair<uint32_t, uint8_t>> support() const;

 private:
  uint32_t ell_ = 2;
  std::vector<uint8_t> c_;
};

uint32_t fl_inverse(uint32_t a, uint32_t ell);

/// Subspace of F_ell^dim kept in reduced row-echelon form.  For ell = 2 the
/// rows are bit-packed machine words; the byte path used for other primes
/// can be forced for cross-checking.
class FlSubspace {
 public:
  FlSubspace() = default;
  FlSubspace(uint32_t ell, uint32_t dim, bool force_generic = false);

  uint32_t ell() const { return ell_; }
  uint32_t dim() const { return dim_; }
  uint32_t rank() const { return static_cast<uint32_t>(pivots_.size()); }
  const std::vector<uint32_t>& pivots() const { return pivots_; }

  /// Inserts v; returns true when the subspace grew.
  bool insert(const FlVector& v);
  bool contains(const FlVector& v) const;
  /// Canonical coset representative: v minus its projection on the span.
  FlVector residue(const FlVector& v) const;
  std::vector<FlVector> basis() const;
  FlVector basis_row(uint32_t r) const;

 private:
  uint32_t ell_ = 2;
  uint32_t dim_ = 0;
  bool generic_ = false;
  std::vector<std::vector<uint64_t>> bitrows_;
  std::vector<std::vector<uint8_t>> rows_;
  std::vector<uint32_t> pivots_;  // ascending, one per row

  void bit_reduce(std::vector<uint64_t>& w) const;
  void gen_reduce(std::vector<uint8_t>& w) const;
};

using LinOp = std::function<FlVector(const FlVector&)>;

/// LinOp applying a coordinate permutation.
LinOp perm_op(const Perm& p);

/// Least subspace containing the seed vectors and closed under every
/// operator.  Worklist is FIFO over (inserted vector, operator) pairs, so
/// the result and its basis are deterministic.
FlSubspace module_closure(uint32_t ell, uint32_t dim, const std::vector<FlVector>& seed,
                          const std::vector<LinOp>& ops, bool force_generic = false);

struct LinConstraint {
  LinOp op;
  FlVector rhs;
};

/// Affine solution set inside a subspace: empty, or particular + homogeneous.
struct AffineSolution {
  bool empty = true;
  FlVector particular;
  FlSubspace homogeneous;
};

/// Solves op_i(x) = rhs_i simultaneously for x restricted to the ambient
/// subspace.
AffineSolution solve_affine(const std::vector<LinConstraint>& constraints,
                            const FlSubspace& ambient);

}  // namespace csp
