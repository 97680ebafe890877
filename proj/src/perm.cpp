#include "csp/perm.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

namespace csp {

Perm::Perm(std::vector<uint32_t> images) : map_(std::move(images)) {
  std::vector<bool> seen(map_.size(), false);
  for (uint32_t x : map_) {
    if (x >= map_.size() || seen[x]) throw std::invalid_argument("not a permutation");
    seen[x] = true;
  }
}

Perm Perm::identity(uint32_t degree) {
  std::vector<uint32_t> m(degree);
  std::iota(m.begin(), m.end(), 0u);
  Perm p;
  p.map_ = std::move(m);
  return p;
}

bool Perm::is_identity() const {
  for (uint32_t i = 0; i < map_.size(); ++i)
    if (map_[i] != i) return false;
  return true;
}

uint32_t Perm::order() const {
  // lcm of cycle lengths
  uint64_t ord = 1;
  std::vector<bool> seen(map_.size(), false);
  for (uint32_t i = 0; i < map_.size(); ++i) {
    if (seen[i]) continue;
    uint64_t len = 0;
    for (uint32_t j = i; !seen[j]; j = map_[j]) {
      seen[j] = true;
      ++len;
    }
    ord = std::lcm(ord, len);
  }
  return static_cast<uint32_t>(ord);
}

Perm operator*(const Perm& a, const Perm& b) {
  if (a.degree() != b.degree()) throw std::invalid_argument("degree mismatch");
  Perm r;
  r.map_.resize(a.map_.size());
  for (uint32_t i = 0; i < a.map_.size(); ++i) r.map_[i] = a.map_[b.map_[i]];
  return r;
}

Perm Perm::inverse() const {
  Perm r;
  r.map_.resize(map_.size());
  for (uint32_t i = 0; i < map_.size(); ++i) r.map_[map_[i]] = i;
  return r;
}

Perm Perm::stack(const Perm& a, const Perm& b) {
  Perm r;
  r.map_.reserve(a.degree() + b.degree());
  r.map_ = a.map_;
  for (uint32_t x : b.map_) r.map_.push_back(x + a.degree());
  return r;
}

Perm Perm::block(uint32_t offset, uint32_t degree) const {
  Perm r;
  r.map_.resize(degree);
  for (uint32_t i = 0; i < degree; ++i) {
    uint32_t img = map_[offset + i];
    if (img < offset || img >= offset + degree)
      throw std::invalid_argument("block is not invariant");
    r.map_[i] = img - offset;
  }
  return r;
}

std::string Perm::to_cycles() const {
  std::ostringstream os;
  std::vector<bool> seen(map_.size(), false);
  bool any = false;
  for (uint32_t i = 0; i < map_.size(); ++i) {
    if (seen[i] || map_[i] == i) {
      seen[i] = true;
      continue;
    }
    any = true;
    os << '(' << (i + 1);
    seen[i] = true;
    for (uint32_t j = map_[i]; j != i; j = map_[j]) {
      os << ' ' << (j + 1);
      seen[j] = true;
    }
    os << ')';
  }
  if (!any) return "()";
  return os.str();
}

Perm Perm::parse_cycles(const std::string& text, uint32_t degree) {
  std::vector<std::vector<uint32_t>> cycles;
  uint32_t max_pt = 0;
  size_t i = 0;
  auto skip_ws = [&] {
    while (i < text.size() && (text[i] == ' ' || text[i] == '\t' || text[i] == ',')) ++i;
  };
  skip_ws();
  while (i < text.size()) {
    if (text[i] != '(') throw std::invalid_argument("expected '(' in cycle notation: " + text);
    ++i;
    std::vector<uint32_t> cyc;
    skip_ws();
    while (i < text.size() && text[i] != ')') {
      if (!isdigit(static_cast<unsigned char>(text[i])))
        throw std::invalid_argument("expected point in cycle notation: " + text);
      uint32_t pt = 0;
      while (i < text.size() && isdigit(static_cast<unsigned char>(text[i])))
        pt = pt * 10 + (text[i++] - '0');
      if (pt == 0) throw std::invalid_argument("points are 1-indexed");
      cyc.push_back(pt - 1);
      max_pt = std::max(max_pt, pt);
      skip_ws();
    }
    if (i >= text.size()) throw std::invalid_argument("unterminated cycle: " + text);
    ++i;  // ')'
    if (cyc.size() > 1) cycles.push_back(std::move(cyc));
    skip_ws();
  }
  if (degree == 0) degree = max_pt;
  if (max_pt > degree) throw std::invalid_argument("cycle point exceeds degree");
  std::vector<uint32_t> m(degree);
  std::iota(m.begin(), m.end(), 0u);
  for (const auto& cyc : cycles) {
    for (size_t k = 0; k < cyc.size(); ++k) {
      uint32_t from = cyc[k], to = cyc[(k + 1) % cyc.size()];
      if (m[from] != from) throw std::invalid_argument("point repeated across cycles");
      m[from] = to;
    }
  }
  return Perm(std::move(m));
}

std::string Perm::key() const {
  return std::string(reinterpret_cast<const char*>(map_.data()),
                     map_.size() * sizeof(uint32_t));
}

}  // namespace csp
