#include "csp/fl_linear.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace csp {

namespace {

void check_prime(uint32_t ell) {
  if (ell < 2) throw std::invalid_argument("field order must be a prime >= 2");
  for (uint32_t d = 2; d * d <= ell; ++d)
    if (ell % d == 0) throw std::invalid_argument("field order must be prime");
}

}  // namespace

FlVector::FlVector(uint32_t ell, uint32_t dim) : ell_(ell), c_(dim, 0) { check_prime(ell); }

FlVector FlVector::unit(uint32_t ell, uint32_t dim, uint32_t index) {
  FlVector v(ell, dim);
  v.set(index, 1);
  return v;
}

FlVector FlVector::ones(uint32_t ell, uint32_t dim) {
  FlVector v(ell, dim);
  for (uint32_t i = 0; i < dim; ++i) v.c_[i] = 1;
  return v;
}

void FlVector::set(uint32_t i, uint32_t value) {
  c_[i] = static_cast<uint8_t>(value % ell_);
}

bool FlVector::is_zero() const {
  return std::all_of(c_.begin(), c_.end(), [](uint8_t x) { return x == 0; });
}

FlVector operator+(const FlVector& a, const FlVector& b) {
  if (a.ell_ != b.ell_ || a.dim() != b.dim()) throw std::invalid_argument("vector mismatch");
  FlVector r = a;
  for (uint32_t i = 0; i < r.dim(); ++i) {
    uint32_t s = r.c_[i] + b.c_[i];
    r.c_[i] = static_cast<uint8_t>(s >= r.ell_ ? s - r.ell_ : s);
  }
  return r;
}

FlVector operator-(const FlVector& a, const FlVector& b) { return a + b.negated(); }

FlVector FlVector::negated() const {
  FlVector r = *this;
  for (auto& x : r.c_)
    if (x) x = static_cast<uint8_t>(ell_ - x);
  return r;
}

FlVector FlVector::scaled(uint32_t a) const {
  a %= ell_;
  FlVector r(ell_, dim());
  for (uint32_t i = 0; i < dim(); ++i) r.c_[i] = static_cast<uint8_t>((c_[i] * a) % ell_);
  return r;
}

FlVector FlVector::permuted(const Perm& p) const {
  if (p.degree() != dim()) throw std::invalid_argument("permutation degree mismatch");
  FlVector r(ell_, dim());
  for (uint32_t i = 0; i < dim(); ++i) r.c_[p[i]] = c_[i];
  return r;
}

std::string FlVector::key() const {
  return std::string(reinterpret_cast<const char*>(c_.data()), c_.size());
}

std::vector<std::pair<uint32_t, uint8_t>> FlVector::support() const {
  std::vector<std::pair<uint32_t, uint8_t>> s;
  for (uint32_t i = 0; i < dim(); ++i)
    if (c_[i]) s.emplace_back(i, c_[i]);
  return s;
}

uint32_t fl_inverse(uint32_t a, uint32_t ell) {
  a %= ell;
  if (a == 0) throw std::invalid_argument("no inverse of 0");
  // ell is tiny; scan
  for (uint32_t x = 1; x < ell; ++x)
    if ((a * x) % ell == 1) return x;
  throw std::logic_error("inverse not found");
}

FlSubspace::FlSubspace(uint32_t ell, uint32_t dim, bool force_generic)
    : ell_(ell), dim_(dim), generic_(force_generic || ell != 2) {
  check_prime(ell);
}

void FlSubspace::bit_reduce(std::vector<uint64_t>& w) const {
  for (size_t r = 0; r < bitrows_.size(); ++r) {
    uint32_t p = pivots_[r];
    if (w[p >> 6] & (1ull << (p & 63)))
      for (size_t k = 0; k < w.size(); ++k) w[k] ^= bitrows_[r][k];
  }
}

void FlSubspace::gen_reduce(std::vector<uint8_t>& w) const {
  for (size_t r = 0; r < rows_.size(); ++r) {
    uint32_t coef = w[pivots_[r]];  // rows are normalized to leading 1
    if (coef)
      for (uint32_t k = 0; k < dim_; ++k)
        w[k] = static_cast<uint8_t>((w[k] + (ell_ - coef) * rows_[r][k]) % ell_);
  }
}

bool FlSubspace::insert(const FlVector& v) {
  if (v.ell() != ell_ || v.dim() != dim_) throw std::invalid_argument("dimension mismatch");
  if (!generic_) {
    std::vector<uint64_t> w((dim_ + 63) / 64, 0);
    for (uint32_t i = 0; i < dim_; ++i)
      if (v[i]) w[i >> 6] |= 1ull << (i & 63);
    bit_reduce(w);
    uint32_t pivot = dim_;
    for (uint32_t i = 0; i < dim_; ++i)
      if (w[i >> 6] & (1ull << (i & 63))) {
        pivot = i;
        break;
      }
    if (pivot == dim_) return false;
    // keep reduced echelon: clear the new pivot from existing rows
    for (size_t r = 0; r < bitrows_.size(); ++r)
      if (bitrows_[r][pivot >> 6] & (1ull << (pivot & 63)))
        for (size_t k = 0; k < w.size(); ++k) bitrows_[r][k] ^= w[k];
    auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
    size_t idx = pos - pivots_.begin();
    pivots_.insert(pos, pivot);
    bitrows_.insert(bitrows_.begin() + idx, std::move(w));
    return true;
  }
  std::vector<uint8_t> w(dim_);
  for (uint32_t i = 0; i < dim_; ++i) w[i] = v[i];
  gen_reduce(w);
  uint32_t pivot = dim_;
  for (uint32_t i = 0; i < dim_; ++i)
    if (w[i]) {
      pivot = i;
      break;
    }
  if (pivot == dim_) return false;
  uint32_t inv = fl_inverse(w[pivot], ell_);
  for (auto& x : w) x = static_cast<uint8_t>((x * inv) % ell_);
  for (size_t r = 0; r < rows_.size(); ++r) {
    uint32_t coef = rows_[r][pivot];
    if (coef)
      for (uint32_t k = 0; k < dim_; ++k)
        rows_[r][k] = static_cast<uint8_t>((rows_[r][k] + (ell_ - coef) * w[k]) % ell_);
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(), pivot);
  size_t idx = pos - pivots_.begin();
  pivots_.insert(pos, pivot);
  rows_.insert(rows_.begin() + idx, std::move(w));
  return true;
}

bool FlSubspace::contains(const FlVector& v) const { return residue(v).is_zero(); }

FlVector FlSubspace::residue(const FlVector& v) const {
  if (v.ell() != ell_ || v.dim() != dim_) throw std::invalid_argument("dimension mismatch");
  FlVector out(ell_, dim_);
  if (!generic_) {
    std::vector<uint64_t> w((dim_ + 63) / 64, 0);
    for (uint32_t i = 0; i < dim_; ++i)
      if (v[i]) w[i >> 6] |= 1ull << (i & 63);
    bit_reduce(w);
    for (uint32_t i = 0; i < dim_; ++i)
      if (w[i >> 6] & (1ull << (i & 63))) out.set(i, 1);
    return out;
  }
  std::vector<uint8_t> w(dim_);
  for (uint32_t i = 0; i < dim_; ++i) w[i] = v[i];
  gen_reduce(w);
  for (uint32_t i = 0; i < dim_; ++i) out.set(i, w[i]);
  return out;
}

std::vector<FlVector> FlSubspace::basis() const {
  std::vector<FlVector> b;
  for (uint32_t r = 0; r < rank(); ++r) b.push_back(basis_row(r));
  return b;
}

FlVector FlSubspace::basis_row(uint32_t r) const {
  FlVector v(ell_, dim_);
  if (!generic_) {
    for (uint32_t i = 0; i < dim_; ++i)
      if (bitrows_[r][i >> 6] & (1ull << (i & 63))) v.set(i, 1);
  } else {
    for (uint32_t i = 0; i < dim_; ++i) v.set(i, rows_[r][i]);
  }
  return v;
}

LinOp perm_op(const Perm& p) {
  return [p](const FlVector& v) { return v.permuted(p); };
}

FlSubspace module_closure(uint32_t ell, uint32_t dim, const std::vector<FlVector>& seed,
                          const std::vector<LinOp>& ops, bool force_generic) {
  FlSubspace s(ell, dim, force_generic);
  std::deque<FlVector> work;
  for (const auto& v : seed)
    if (s.insert(v)) work.push_back(v);
  while (!work.empty()) {
    FlVector v = std::move(work.front());
    work.pop_front();
    for (const auto& op : ops) {
      FlVector u = op(v);
      if (s.insert(u)) work.push_back(std::move(u));
    }
  }
  return s;
}

AffineSolution solve_affine(const std::vector<LinConstraint>& constraints,
                            const FlSubspace& ambient) {
  const uint32_t ell = ambient.ell();
  const uint32_t dim = ambient.dim();
  const uint32_t r = ambient.rank();
  // unknowns: coefficients of the ambient basis.  Equations are stacked
  // coordinates of every constraint.
  std::vector<FlVector> cols;
  for (uint32_t k = 0; k < r; ++k) cols.push_back(ambient.basis_row(k));

  size_t n_eq = 0;
  for (const auto& c : constraints) n_eq += c.rhs.dim();
  // augmented matrix rows: [a_1 ... a_r | b]
  std::vector<std::vector<uint8_t>> mat;
  mat.reserve(n_eq);
  std::vector<std::vector<FlVector>> op_cols;  // per constraint, per unknown
  for (const auto& c : constraints) {
    std::vector<FlVector> oc;
    for (uint32_t k = 0; k < r; ++k) oc.push_back(c.op(cols[k]));
    op_cols.push_back(std::move(oc));
  }
  for (size_t ci = 0; ci < constraints.size(); ++ci) {
    const auto& rhs = constraints[ci].rhs;
    for (uint32_t coord = 0; coord < rhs.dim(); ++coord) {
      std::vector<uint8_t> row(r + 1, 0);
      bool nonzero = false;
      for (uint32_t k = 0; k < r; ++k) {
        row[k] = op_cols[ci][k][coord];
        nonzero |= row[k] != 0;
      }
      row[r] = rhs[coord];
      nonzero |= row[r] != 0;
      if (nonzero) mat.push_back(std::move(row));
    }
  }

  // Gaussian elimination over the unknown columns
  std::vector<uint32_t> pivot_of_col(r, UINT32_MAX);
  uint32_t lead = 0;
  for (uint32_t col = 0; col < r && lead < mat.size(); ++col) {
    uint32_t sel = UINT32_MAX;
    for (uint32_t i = lead; i < mat.size(); ++i)
      if (mat[i][col]) {
        sel = i;
        break;
      }
    if (sel == UINT32_MAX) continue;
    std::swap(mat[lead], mat[sel]);
    uint32_t inv = fl_inverse(mat[lead][col], ell);
    for (auto& x : mat[lead]) x = static_cast<uint8_t>((x * inv) % ell);
    for (uint32_t i = 0; i < mat.size(); ++i) {
      if (i == lead || !mat[i][col]) continue;
      uint32_t coef = mat[i][col];
      for (uint32_t k = col; k <= r; ++k)
        mat[i][k] = static_cast<uint8_t>((mat[i][k] + (ell - coef) * mat[lead][k]) % ell);
    }
    pivot_of_col[col] = lead;
    ++lead;
  }
  // inconsistent iff a row 0 ... 0 | nonzero remains
  for (uint32_t i = lead; i < mat.size(); ++i)
    if (mat[i][r]) return AffineSolution{true, FlVector(ell, dim), FlSubspace(ell, dim)};

  AffineSolution sol;
  sol.empty = false;
  // particular: free unknowns 0, pivot unknowns from the rhs column
  std::vector<uint8_t> coeff(r, 0);
  for (uint32_t col = 0; col < r; ++col)
    if (pivot_of_col[col] != UINT32_MAX) coeff[col] = mat[pivot_of_col[col]][r];
  FlVector part(ell, dim);
  for (uint32_t k = 0; k < r; ++k)
    if (coeff[k]) part = part + cols[k].scaled(coeff[k]);
  sol.particular = part;
  // homogeneous: one basis vector per free column
  sol.homogeneous = FlSubspace(ell, dim);
  for (uint32_t fc = 0; fc < r; ++fc) {
    if (pivot_of_col[fc] != UINT32_MAX) continue;
    FlVector h = cols[fc];
    for (uint32_t col = 0; col < r; ++col) {
      if (pivot_of_col[col] == UINT32_MAX) continue;
      uint32_t coef = mat[pivot_of_col[col]][fc];
      if (coef) h = h - cols[col].scaled(coef);
    }
    sol.homogeneous.insert(h);
  }
  return sol;
}

}  // namespace csp
