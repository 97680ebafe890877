#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <unordered_map>

#include "csp/perm.hpp"
#include "csp/words.hpp"

namespace csp {

/// Raised when an enumeration would exceed its cap; the caller is expected
/// to fall back to the linear-by-finite representation.
class CapExceededError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A concrete finite permutation group.  The element index is built lazily
/// by BFS over the generators and their inverses; after that every query is
/// read-only.
class FinGroup {
 public:
  static constexpr uint64_t kDefaultCap = 2'000'000;

  explicit FinGroup(std::vector<Perm> generators, uint64_t cap = kDefaultCap);

  uint32_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  uint64_t cap() const { return cap_; }

  uint64_t order() const;
  const std::vector<Perm>& elements() const;  // identity first, BFS order
  uint32_t index_of(const Perm& g) const;
  std::optional<uint32_t> try_index(const Perm& g) const;
  bool contains(const Perm& g) const { return try_index(g).has_value(); }
  const Perm& identity() const;

  std::vector<Perm> center() const;
  std::vector<Perm> centralizer(const Perm& g) const;
  std::vector<std::vector<uint32_t>> conj_classes() const;
  bool is_cyclic() const;
  bool is_abelian() const;
  uint32_t exponent() const;

  /// Left-multiplication action on the element index: i -> index(g * elems[i]).
  Perm regular_perm(const Perm& g) const;

 private:
  void ensure_enumerated() const;
  std::vector<Perm> gens_;
  uint32_t degree_;
  uint64_t cap_;
  mutable bool enumerated_ = false;
  mutable std::vector<Perm> elems_;
  mutable std::unordered_map<std::string, uint32_t> index_;
};

using FinGroupPtr = std::shared_ptr<const FinGroup>;

/// Homomorphism from a free group into a finite permutation group, given by
/// one image per generator.  The recorded target is the image subgroup.
struct FreeHom {
  ClassMarkedFreeGroup domain;
  FinGroupPtr target;
  std::vector<Perm> images;

  static FreeHom by_images(ClassMarkedFreeGroup domain, std::vector<Perm> images,
                           uint64_t cap = FinGroup::kDefaultCap);
  Perm eval(const Word& w) const;
  uint32_t degree() const { return target->degree(); }
};

/// ker f <= ker g, decided by the Goursat criterion: the subgroup of
/// im f x im g generated by the paired generator images meets 1 x im g
/// trivially.
bool check_kernel_containment(const FreeHom& f, const FreeHom& g,
                              uint64_t cap = FinGroup::kDefaultCap);

/// Homomorphism into the product with componentwise images; its kernel is
/// ker f intersect ker g.
FreeHom intersect_kernels(const FreeHom& f, const FreeHom& g,
                          uint64_t cap = FinGroup::kDefaultCap);

/// G / <<S>> realized by the left-multiplication action on cosets of the
/// normal closure.
struct QuotientByNormalClosure {
  FinGroupPtr quotient;
  std::vector<uint32_t> coset_of;   // element id -> coset id (identity coset 0)
  std::vector<uint32_t> coset_rep;  // coset id -> element id of a representative
  uint64_t closure_order = 0;

  Perm project(const FinGroup& G, const Perm& g) const;
};
QuotientByNormalClosure quotient_by_normal_closure(const FinGroup& G,
                                                   const std::vector<Perm>& S);

/// gamma_i -> rotation of the i-th block: the map onto H_1 with mod-m
/// coefficients, as a permutation group on rank*m points.
FreeHom abelianization_mod(const ClassMarkedFreeGroup& domain, uint32_t m,
                           uint64_t cap = FinGroup::kDefaultCap);

}  // namespace csp
