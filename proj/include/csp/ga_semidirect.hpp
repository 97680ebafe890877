#pragma once

#include <random>
#include <unordered_map>

#include "csp/fingroup.hpp"
#include "csp/fl_linear.hpp"

namespace csp {

/// Element (v, g) of a group-algebra semidirect product V x| B: v is a
/// vector over F_ell indexed by the points that g permutes (for a group
/// algebra, B permutes its own elements by left multiplication).
///
/// Law: (v, g)(v', g') = (v + g.v', g g');  (v, g)^-1 = (-(g^-1.v), g^-1).
struct SdElem {
  FlVector v;
  Perm g;

  static SdElem identity(uint32_t ell, uint32_t dim);
  static SdElem of_vector(FlVector vec);
  static SdElem of_perm(uint32_t ell, Perm p);

  friend SdElem operator*(const SdElem& a, const SdElem& b);
  SdElem inverse() const;
  SdElem pow(int64_t e) const;
  SdElem conjugated_by(const SdElem& w) const;  // w * this * w^-1
  bool operator==(const SdElem&) const = default;
  bool is_identity() const { return v.is_zero() && g.is_identity(); }
  std::string key() const;
  static SdElem stack(const SdElem& a, const SdElem& b);
};

/// Free-group homomorphism into a semidirect product, one image per
/// generator.
struct SdHom {
  ClassMarkedFreeGroup domain;
  std::vector<SdElem> images;

  SdElem eval(const Word& w) const;
  /// Canonical form: the concatenated image keys.  Two homs on the same
  /// domain into the same product are equal iff their keys are.
  std::string key() const;
};

/// A group presented as an F_ell-module normal subgroup (echelon basis)
/// extended by an enumerable finite quotient with a transversal.  An
/// optional "kill" subspace supports quotients by invariant submodules:
/// all vector parts are understood modulo it, and canonical representatives
/// are kill-residues.
///
/// Invariants: the transversal of the identity is 0; for all f, f' the
/// cocycle defect t(f) + f.t(f') - t(f f') lies in the module; the module
/// and the kill subspace are invariant under the quotient action; and the
/// group order is ell^rank(module) * |quotient|.
class LinByFin {
 public:
  /// Builds the subgroup generated by `gens` inside the ambient semidirect
  /// product: enumerates the quotient of g-parts (throws CapExceededError
  /// past `cap`), builds the transversal by shortlex-first BFS, and closes
  /// the Schreier defect vectors of the non-tree edges under the quotient
  /// action.
  static LinByFin from_generators(std::vector<SdElem> gens, uint64_t cap);

  uint32_t ell() const { return ell_; }
  uint32_t dim() const { return dim_; }
  const std::vector<SdElem>& generators() const { return gens_; }
  const FinGroup& quotient() const { return *quotient_; }
  const FlSubspace& module_part() const { return module_; }
  const FlSubspace& kill() const { return kill_; }
  const FlVector& transversal(uint32_t fid) const { return transversal_[fid]; }
  const std::vector<int32_t>& transversal_word(uint32_t fid) const { return twords_[fid]; }

  /// ell^rank * |quotient| if it fits, else CapExceededError.
  uint64_t order(uint64_t cap = UINT64_MAX) const;
  std::string order_expr() const;  // "ell^rank * |quotient|" rendered

  SdElem canonical(const SdElem& x) const;
  bool equal(const SdElem& a, const SdElem& b) const;
  bool is_identity_elem(const SdElem& x) const;
  bool contains(const SdElem& x) const;
  bool in_module(const FlVector& v) const;  // v in module + kill
  SdElem mul(const SdElem& a, const SdElem& b) const { return canonical(a * b); }
  SdElem inv(const SdElem& a) const { return canonical(a.inverse()); }

  /// Quotient by an action-invariant submodule of the module part (given in
  /// kill-residue coordinates): extends the kill subspace.
  LinByFin collapse_module(const FlSubspace& sub) const;

  /// Consistency checks (cocycle defects on random pairs, module
  /// invariance, identity transversal).  Throws std::logic_error.
  void verify(std::mt19937_64& rng, int samples = 100) const;

 private:
  uint32_t ell_ = 2;
  uint32_t dim_ = 0;
  std::vector<SdElem> gens_;
  FinGroupPtr quotient_;
  FlSubspace module_;  // kill-residue coordinates
  FlSubspace kill_;
  std::vector<FlVector> transversal_;
  std::vector<std::vector<int32_t>> twords_;  // BFS words, signed generator indices
};

/// Full element list of a small LinByFin group, identity first, in
/// (quotient index, module coefficient) odometer order.
struct LinByFinEnumeration {
  std::vector<SdElem> elements;
  std::unordered_map<std::string, uint32_t> index;
  uint32_t id_of(const SdElem& canonical_elem) const;
};
LinByFinEnumeration enumerate_linbyfin(const LinByFin& G, uint64_t cap);
/// Left-multiplication action of x on the enumerated elements.
Perm linbyfin_regular_perm(const LinByFin& G, const LinByFinEnumeration& en, const SdElem& x);

/// A subgroup of a LinByFin group cut out by commutation constraints:
/// for each surviving quotient element, the affine set of vector parts.
struct SdSubgroup {
  struct Component {
    uint32_t fid;
    AffineSolution sols;  // absolute vector parts, kill-residue coordinates
  };
  std::vector<Component> components;  // ascending fid; only nonempty fibers

  bool trivial(const LinByFin& G) const;
  /// All vector parts lie in `sub` and every quotient part is the identity.
  bool contained_in_module(const LinByFin& G, const FlSubspace& sub) const;
};

SdSubgroup linbyfin_center(const LinByFin& G);
SdSubgroup linbyfin_centralizer(const LinByFin& G, const SdElem& x);

/// Module of the normal closure of an element with trivial quotient part:
/// the closure of its vector under the quotient action.
FlSubspace normal_closure_module(const LinByFin& G, const SdElem& x);

/// Quotient by the central cyclic subgroup generated by (w, 1), when that
/// element lies in the group; `collapsed` reports whether the intersection
/// was nontrivial.  w must be fixed by the whole quotient action.
LinByFin quotient_central_cyclic(const LinByFin& G, const FlVector& w, bool* collapsed);

}  // namespace csp
