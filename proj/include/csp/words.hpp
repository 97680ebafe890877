#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace csp {

/// Signed generator index: +i is the i-th generator (1-based), -i its inverse.
using Letter = int32_t;

/// A freely reduced word in a finitely generated free group.
class Word {
 public:
  Word() = default;

  /// Free reduction of an arbitrary letter sequence.  Idempotent.
  static Word reduce(std::span<const Letter> raw);
  static Word reduce(std::initializer_list<Letter> raw);
  static Word generator(uint32_t i) { return Word({static_cast<Letter>(i)}); }

  bool empty() const { return letters_.empty(); }
  size_t size() const { return letters_.size(); }
  const std::vector<Letter>& letters() const { return letters_; }
  Letter operator[](size_t i) const { return letters_[i]; }

  friend Word operator*(const Word& a, const Word& b);
  Word inverse() const;
  Word pow(int e) const;
  Word conjugated_by(const Word& w) const;  // w * this * w^-1
  bool operator==(const Word&) const = default;

  uint32_t max_index() const;

  /// Splits as c * core * c^-1 with core cyclically reduced.
  std::pair<Word, Word> cyclic_split() const;

  /// Length-then-letter order used whenever a canonical word is needed.
  static bool shortlex_less(const Word& a, const Word& b);

 private:
  explicit Word(std::vector<Letter> reduced) : letters_(std::move(reduced)) {}
  std::vector<Letter> letters_;
  friend class FreeAut;
};

/// Free group of given rank with a set of marked generators whose conjugacy
/// classes every automorphism we build must preserve, and an optional
/// distinguished "peripheral" generator (the loop about the puncture that
/// gets forgotten one level down).
struct ClassMarkedFreeGroup {
  uint32_t rank = 0;
  std::vector<uint32_t> marked;            // distinct, 1..rank
  std::optional<uint32_t> peripheral;      // if set: in 1..rank and marked

  /// pi_1 of the sphere with `punctures` punctures: free of rank
  /// punctures-1, every generator marked, the last one peripheral.
  static ClassMarkedFreeGroup punctured_sphere(uint32_t punctures);
  /// Same but with no distinguished generator (one puncture fewer).
  static ClassMarkedFreeGroup all_marked(uint32_t rank);

  void validate() const;
  bool in_range(const Word& w) const { return w.max_index() <= rank; }

  /// The group with the peripheral generator erased (rank - 1).
  ClassMarkedFreeGroup erased() const;
};

/// Word literal syntax: whitespace-separated tokens `g1 g2^-1 L` where `L`
/// denotes the peripheral generator.
Word parse_word(const std::string& text, const ClassMarkedFreeGroup& g);
std::string format_word(const Word& w, const ClassMarkedFreeGroup& g);

/// If u and v are conjugate, returns w with w u w^-1 = v (deterministic
/// cyclic-rotation scan); otherwise nullopt.
std::optional<Word> conjugator(const Word& u, const Word& v);
inline bool conjugate_test(const Word& u, const Word& v) {
  return conjugator(u, v).has_value();
}

/// Deletes every occurrence of the peripheral generator and re-reduces;
/// generators above it shift down one index.  This is the surjection onto
/// the free group of rank one less.
Word erase_peripheral(const Word& w, const ClassMarkedFreeGroup& g);

/// Automorphism of a free group, stored as generator images together with
/// the images under the inverse automorphism.  Composition is
/// (s * t)(w) = s(t(w)).
class FreeAut {
 public:
  static FreeAut identity(const ClassMarkedFreeGroup& g);
  /// gamma_i -> w gamma_i w^-1
  static FreeAut inner(const ClassMarkedFreeGroup& g, const Word& w);
  /// Elementary braid half twist on strands k, k+1.
  static FreeAut half_twist(const ClassMarkedFreeGroup& g, uint32_t k);
  /// Builds from explicit forward and inverse images; throws unless the two
  /// families compose to the identity on every generator.
  static FreeAut from_images(const ClassMarkedFreeGroup& g, std::vector<Word> fwd,
                             std::vector<Word> inv);

  const ClassMarkedFreeGroup& domain() const { return domain_; }
  const Word& image(uint32_t i) const { return fwd_[i - 1]; }
  const std::vector<Word>& images() const { return fwd_; }

  Word apply(const Word& w) const;
  Word apply_inverse(const Word& w) const;

  friend FreeAut operator*(const FreeAut& s, const FreeAut& t);
  FreeAut inverse() const;
  FreeAut pow(int e) const;
  bool is_identity() const;
  bool operator==(const FreeAut& o) const { return fwd_ == o.fwd_; }

  /// True when the image of every marked generator is conjugate to it.
  bool class_preserving() const;

 private:
  FreeAut(ClassMarkedFreeGroup g, std::vector<Word> fwd, std::vector<Word> inv)
      : domain_(std::move(g)), fwd_(std::move(fwd)), inv_(std::move(inv)) {}
  ClassMarkedFreeGroup domain_;
  std::vector<Word> fwd_, inv_;
};

/// The pure-braid twist about a curve enclosing punctures i < j, as an
/// automorphism of the free group on the first rank generators.  Preserves
/// every marked class and fixes the product g1...g_rank exactly.
FreeAut artin_twist(const ClassMarkedFreeGroup& g, uint32_t i, uint32_t j);

/// inner(w^-1) * t for the canonical w conjugating the peripheral generator
/// to its image under t; the result fixes the peripheral generator exactly.
/// Throws if t does not preserve the peripheral class.
FreeAut normalize_fixing_peripheral(const FreeAut& t);

/// Point-pushing: drags the peripheral puncture around generator j.  Fixes
/// the peripheral generator exactly, and erasing the peripheral generator
/// from its images gives conjugation by gamma_j.
FreeAut point_push(const ClassMarkedFreeGroup& g, uint32_t j);
/// Multiplicative extension: point_push(u v) = point_push(u) * point_push(v).
FreeAut point_push_word(const ClassMarkedFreeGroup& g, const Word& w);

}  // namespace csp
