#include "csp/ga_semidirect.hpp"

#include <algorithm>
#include <deque>
#include <sstream>

namespace csp {

SdElem SdElem::identity(uint32_t ell, uint32_t dim) {
  return SdElem{FlVector(ell, dim), Perm::identity(dim)};
}

SdElem SdElem::of_vector(FlVector vec) {
  uint32_t d = vec.dim();
  return SdElem{std::move(vec), Perm::identity(d)};
}

SdElem SdElem::of_perm(uint32_t ell, Perm p) {
  uint32_t d = p.degree();
  return SdElem{FlVector(ell, d), std::move(p)};
}

SdElem operator*(const SdElem& a, const SdElem& b) {
  return SdElem{a.v + b.v.permuted(a.g), a.g * b.g};
}

SdElem SdElem::inverse() const {
  Perm gi = g.inverse();
  return SdElem{v.permuted(gi).negated(), gi};
}

SdElem SdElem::pow(int64_t e) const {
  SdElem base = e < 0 ? inverse() : *this;
  SdElem r = identity(v.ell(), v.dim());
  for (int64_t k = std::abs(e); k > 0; k >>= 1) {
    if (k & 1) r = r * base;
    if (k > 1) base = base * base;
  }
  return r;
}

SdElem SdElem::conjugated_by(const SdElem& w) const { return w * *this * w.inverse(); }

std::string SdElem::key() const { return v.key() + g.key(); }

SdElem SdElem::stack(const SdElem& a, const SdElem& b) {
  if (a.v.ell() != b.v.ell()) throw std::invalid_argument("field mismatch");
  FlVector v(a.v.ell(), a.v.dim() + b.v.dim());
  for (uint32_t i = 0; i < a.v.dim(); ++i) v.set(i, a.v[i]);
  for (uint32_t i = 0; i < b.v.dim(); ++i) v.set(a.v.dim() + i, b.v[i]);
  return SdElem{std::move(v), Perm::stack(a.g, b.g)};
}

SdElem SdHom::eval(const Word& w) const {
  SdElem r = SdElem::identity(images.front().v.ell(), images.front().v.dim());
  for (Letter l : w.letters()) {
    const SdElem& x = images[std::abs(l) - 1];
    r = r * (l > 0 ? x : x.inverse());
  }
  return r;
}

std::string SdHom::key() const {
  std::string k;
  for (const auto& x : images) k += x.key();
  return k;
}

LinByFin LinByFin::from_generators(std::vector<SdElem> gens, uint64_t cap) {
  if (gens.empty()) throw std::invalid_argument("need at least one generator");
  LinByFin G;
  G.ell_ = gens.front().v.ell();
  G.dim_ = gens.front().v.dim();
  for (const auto& g : gens)
    if (g.v.ell() != G.ell_ || g.v.dim() != G.dim_ || g.g.degree() != G.dim_)
      throw std::invalid_argument("generator shape mismatch");
  G.gens_ = std::move(gens);
  G.kill_ = FlSubspace(G.ell_, G.dim_);

  std::vector<Perm> gperms;
  for (const auto& g : G.gens_) gperms.push_back(g.g);
  G.quotient_ = std::make_shared<FinGroup>(gperms, cap);
  uint32_t nf = static_cast<uint32_t>(G.quotient_->order());

  // transversal by BFS; defect vectors harvested from non-tree edges
  std::vector<SdElem> edges = G.gens_;
  for (const auto& g : G.gens_) edges.push_back(g.inverse());
  G.transversal_.assign(nf, FlVector(G.ell_, G.dim_));
  G.twords_.assign(nf, {});
  std::vector<char> have(nf, 0);
  have[G.quotient_->index_of(Perm::identity(G.dim_))] = 1;
  std::deque<uint32_t> bfs{0};
  std::vector<FlVector> defects;
  int32_t ngen = static_cast<int32_t>(G.gens_.size());
  while (!bfs.empty()) {
    uint32_t f = bfs.front();
    bfs.pop_front();
    const Perm& pf = G.quotient_->elements()[f];
    for (size_t e = 0; e < edges.size(); ++e) {
      uint32_t f2 = G.quotient_->index_of(pf * edges[e].g);
      FlVector cand = G.transversal_[f] + edges[e].v.permuted(pf);
      if (!have[f2]) {
        have[f2] = 1;
        G.transversal_[f2] = std::move(cand);
        G.twords_[f2] = G.twords_[f];
        int32_t idx = static_cast<int32_t>(e) + 1;
        G.twords_[f2].push_back(idx <= ngen ? idx : -(idx - ngen));
        bfs.push_back(f2);
      } else {
        defects.push_back(cand - G.transversal_[f2]);
      }
    }
  }

  std::vector<LinOp> ops;
  for (const auto& g : G.gens_) ops.push_back(perm_op(g.g));
  G.module_ = module_closure(G.ell_, G.dim_, defects, ops);
  return G;
}

uint64_t LinByFin::order(uint64_t cap) const {
  uint64_t n = quotient_->order();
  for (uint32_t r = 0; r < module_.rank(); ++r) {
    if (n > cap / ell_) throw CapExceededError("linbyfin order exceeds cap");
    n *= ell_;
  }
  if (n > cap) throw CapExceededError("linbyfin order exceeds cap");
  return n;
}

std::string LinByFin::order_expr() const {
  std::ostringstream os;
  os << ell_ << '^' << module_.rank() << " * " << quotient_->order();
  return os.str();
}

SdElem LinByFin::canonical(const SdElem& x) const {
  return SdElem{kill_.residue(x.v), x.g};
}

bool LinByFin::equal(const SdElem& a, const SdElem& b) const {
  return a.g == b.g && kill_.residue(a.v) == kill_.residue(b.v);
}

bool LinByFin::is_identity_elem(const SdElem& x) const {
  return x.g.is_identity() && kill_.residue(x.v).is_zero();
}

bool LinByFin::contains(const SdElem& x) const {
  auto fid = quotient_->try_index(x.g);
  if (!fid) return false;
  return in_module(x.v - transversal_[*fid]);
}

bool LinByFin::in_module(const FlVector& v) const {
  return module_.contains(kill_.residue(v));
}

LinByFin LinByFin::collapse_module(const FlSubspace& sub) const {
  // invariance of `sub` under the quotient action, modulo the kill subspace
  FlSubspace combined = kill_;
  for (uint32_t r = 0; r < sub.rank(); ++r) combined.insert(sub.basis_row(r));
  for (uint32_t r = 0; r < sub.rank(); ++r) {
    FlVector row = sub.basis_row(r);
    if (!module_.contains(kill_.residue(row)))
      throw std::invalid_argument("collapse target is not inside the module");
    for (const auto& g : gens_)
      if (!combined.contains(row.permuted(g.g)))
        throw std::invalid_argument("collapse target is not action-invariant");
  }
  LinByFin r = *this;
  r.kill_ = combined;
  FlSubspace newmod(ell_, dim_);
  for (uint32_t k = 0; k < module_.rank(); ++k) newmod.insert(r.kill_.residue(module_.basis_row(k)));
  if (newmod.rank() != module_.rank() - sub.rank())
    throw std::logic_error("module rank did not drop by the collapse rank");
  r.module_ = std::move(newmod);
  for (auto& t : r.transversal_) t = r.kill_.residue(t);
  for (auto& g : r.gens_) g.v = r.kill_.residue(g.v);
  return r;
}

void LinByFin::verify(std::mt19937_64& rng, int samples) const {
  uint32_t nf = static_cast<uint32_t>(quotient_->order());
  if (!transversal_[0].is_zero() || !quotient_->elements()[0].is_identity())
    throw std::logic_error("identity transversal is not zero");
  for (uint32_t r = 0; r < module_.rank(); ++r)
    for (const auto& g : gens_)
      if (!in_module(module_.basis_row(r).permuted(g.g)))
        throw std::logic_error("module is not action-invariant");
  for (const auto& g : gens_)
    if (!contains(g)) throw std::logic_error("generator fails membership");
  std::uniform_int_distribution<uint32_t> pick(0, nf - 1);
  for (int s = 0; s < samples; ++s) {
    uint32_t a = pick(rng), b = pick(rng);
    const Perm &pa = quotient_->elements()[a], &pb = quotient_->elements()[b];
    uint32_t c = quotient_->index_of(pa * pb);
    FlVector defect = transversal_[a] + transversal_[b].permuted(pa) - transversal_[c];
    if (!in_module(defect)) throw std::logic_error("cocycle defect escapes the module");
  }
}

uint32_t LinByFinEnumeration::id_of(const SdElem& canonical_elem) const {
  auto it = index.find(canonical_elem.key());
  if (it == index.end()) throw std::invalid_argument("element not enumerated");
  return it->second;
}

LinByFinEnumeration enumerate_linbyfin(const LinByFin& G, uint64_t cap) {
  uint64_t n = G.order(cap);
  LinByFinEnumeration en;
  en.elements.reserve(n);
  uint32_t rank = G.module_part().rank();
  uint32_t nf = static_cast<uint32_t>(G.quotient().order());
  std::vector<FlVector> rows;
  for (uint32_t r = 0; r < rank; ++r) rows.push_back(G.module_part().basis_row(r));
  for (uint32_t f = 0; f < nf; ++f) {
    const Perm& pf = G.quotient().elements()[f];
    std::vector<uint8_t> digits(rank, 0);
    while (true) {
      FlVector v = G.transversal(f);
      for (uint32_t r = 0; r < rank; ++r)
        if (digits[r]) v = v + rows[r].scaled(digits[r]);
      SdElem x{std::move(v), pf};
      en.index.emplace(x.key(), static_cast<uint32_t>(en.elements.size()));
      en.elements.push_back(std::move(x));
      uint32_t carry = 0;
      while (carry < rank && ++digits[carry] == G.ell()) digits[carry++] = 0;
      if (carry == rank) break;
    }
  }
  return en;
}

Perm linbyfin_regular_perm(const LinByFin& G, const LinByFinEnumeration& en, const SdElem& x) {
  std::vector<uint32_t> m(en.elements.size());
  SdElem cx = G.canonical(x);
  for (uint32_t i = 0; i < en.elements.size(); ++i)
    m[i] = en.id_of(G.canonical(cx * en.elements[i]));
  return Perm(std::move(m));
}

bool SdSubgroup::trivial(const LinByFin& G) const {
  for (const auto& c : components) {
    if (!G.quotient().elements()[c.fid].is_identity()) return false;
    if (c.sols.homogeneous.rank() != 0) return false;
    if (!G.kill().residue(c.sols.particular).is_zero()) return false;
  }
  return true;
}

bool SdSubgroup::contained_in_module(const LinByFin& G, const FlSubspace& sub) const {
  for (const auto& c : components) {
    if (!G.quotient().elements()[c.fid].is_identity()) return false;
    if (!sub.contains(G.kill().residue(c.sols.particular))) return false;
    for (uint32_t r = 0; r < c.sols.homogeneous.rank(); ++r)
      if (!sub.contains(G.kill().residue(c.sols.homogeneous.basis_row(r)))) return false;
  }
  return true;
}

namespace {

// Affine set of vector parts w with (w, f) commuting with every element of
// `against` inside G, or empty.  Conditions: the quotient parts commute and
// w - f_x.w = w_x - f.w_x  (mod kill) for each (w_x, f_x).
std::optional<AffineSolution> commuting_fiber(const LinByFin& G, uint32_t fid,
                                              const std::vector<SdElem>& against) {
  const Perm& pf = G.quotient().elements()[fid];
  std::vector<LinConstraint> constraints;
  for (const auto& x : against) {
    if (!(pf * x.g == x.g * pf)) return std::nullopt;
    Perm px = x.g;
    LinOp op = [&G, px](const FlVector& m) { return G.kill().residue(m - m.permuted(px)); };
    FlVector rhs = G.kill().residue(x.v - x.v.permuted(pf));
    // unknowns range over the module; shift by the transversal offset
    rhs = rhs - op(G.transversal(fid));
    constraints.push_back(LinConstraint{std::move(op), G.kill().residue(rhs)});
  }
  AffineSolution sols = solve_affine(constraints, G.module_part());
  if (sols.empty) return std::nullopt;
  sols.particular = G.kill().residue(G.transversal(fid) + sols.particular);
  return sols;
}

SdSubgroup commuting_subgroup(const LinByFin& G, const std::vector<SdElem>& against) {
  SdSubgroup s;
  uint32_t nf = static_cast<uint32_t>(G.quotient().order());
  std::vector<uint32_t> fids;
  for (uint32_t f = 0; f < nf; ++f) fids.push_back(f);
  std::sort(fids.begin(), fids.end());
  for (uint32_t f : fids) {
    auto sols = commuting_fiber(G, f, against);
    if (sols) s.components.push_back(SdSubgroup::Component{f, std::move(*sols)});
  }
  return s;
}

}  // namespace

SdSubgroup linbyfin_center(const LinByFin& G) {
  return commuting_subgroup(G, G.generators());
}

SdSubgroup linbyfin_centralizer(const LinByFin& G, const SdElem& x) {
  if (!G.contains(x)) throw std::invalid_argument("centralizer of a non-member");
  return commuting_subgroup(G, {G.canonical(x)});
}

FlSubspace normal_closure_module(const LinByFin& G, const SdElem& x) {
  SdElem c = G.canonical(x);
  if (!c.g.is_identity())
    throw std::invalid_argument("normal closure module needs a vector-part element");
  if (!G.contains(x)) throw std::invalid_argument("element not in group");
  std::vector<LinOp> ops;
  for (const auto& g : G.generators()) {
    Perm p = g.g;
    ops.push_back([&G, p](const FlVector& v) { return G.kill().residue(v.permuted(p)); });
  }
  return module_closure(G.ell(), G.dim(), {c.v}, ops);
}

LinByFin quotient_central_cyclic(const LinByFin& G, const FlVector& w, bool* collapsed) {
  for (const auto& g : G.generators())
    if (!(w.permuted(g.g) == w))
      throw std::invalid_argument("vector is not fixed by the action");
  FlVector wr = G.kill().residue(w);
  if (collapsed) *collapsed = false;
  if (wr.is_zero() || !G.module_part().contains(wr)) return G;
  FlSubspace span(G.ell(), G.dim());
  span.insert(wr);
  if (collapsed) *collapsed = true;
  return G.collapse_module(span);
}

}  // namespace csp
