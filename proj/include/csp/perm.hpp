#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace csp {

/// Permutation of the points {0, ..., degree-1}.
///
/// Composition is function composition: (a * b) sends x to a[b[x]],
/// so in a product the right factor acts first.  This matches the
/// convention used for evaluating homomorphisms on words.
class Perm {
 public:
  Perm() = default;
  explicit Perm(std::vector<uint32_t> images);

  static Perm identity(uint32_t degree);

  uint32_t degree() const { return static_cast<uint32_t>(map_.size()); }
  uint32_t operator[](uint32_t x) const { return map_[x]; }
  bool is_identity() const;
  uint32_t order() const;

  friend Perm operator*(const Perm& a, const Perm& b);
  Perm inverse() const;
  bool operator==(const Perm&) const = default;

  /// Acts a on block [0,a.degree) and b on the following block.
  static Perm stack(const Perm& a, const Perm& b);

  /// Extracts the restriction to [offset, offset+degree).  The block must
  /// be invariant.
  Perm block(uint32_t offset, uint32_t degree) const;

  /// Cycle notation, 1-indexed: "(1 2)(3 4)".  Identity prints as "()".
  std::string to_cycles() const;

  /// Parses 1-indexed cycle notation.  Points not mentioned are fixed.
  /// degree 0 means "use the largest point mentioned".
  static Perm parse_cycles(const std::string& text, uint32_t degree = 0);

  const std::vector<uint32_t>& images() const { return map_; }
  std::string key() const;  // packed bytes, usable as a hash-map key

 private:
  std::vector<uint32_t> map_;
};

}  // namespace csp
