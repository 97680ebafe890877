#include "csp/fingroup.hpp"

#include <algorithm>
#include <deque>
#include <numeric>

namespace csp {

FinGroup::FinGroup(std::vector<Perm> generators, uint64_t cap)
    : gens_(std::move(generators)), cap_(cap) {
  if (gens_.empty()) throw std::invalid_argument("need at least one generator");
  degree_ = gens_.front().degree();
  for (const auto& g : gens_)
    if (g.degree() != degree_) throw std::invalid_argument("generator degree mismatch");
  if (cap_ == 0) throw std::invalid_argument("cap must be positive");
}

void FinGroup::ensure_enumerated() const {
  if (enumerated_) return;
  std::vector<Perm> edge = gens_;
  for (const auto& g : gens_) edge.push_back(g.inverse());
  elems_.clear();
  index_.clear();
  Perm e = Perm::identity(degree_);
  elems_.push_back(e);
  index_.emplace(e.key(), 0);
  std::deque<uint32_t> work{0};
  while (!work.empty()) {
    uint32_t i = work.front();
    work.pop_front();
    for (const auto& g : edge) {
      Perm x = elems_[i] * g;
      auto [it, fresh] = index_.emplace(x.key(), static_cast<uint32_t>(elems_.size()));
      if (fresh) {
        elems_.push_back(std::move(x));
        if (elems_.size() > cap_) throw CapExceededError("group enumeration exceeded cap");
        work.push_back(it->second);
      }
    }
  }
  enumerated_ = true;
}

uint64_t FinGroup::order() const {
  ensure_enumerated();
  return elems_.size();
}

const std::vector<Perm>& FinGroup::elements() const {
  ensure_enumerated();
  return elems_;
}

uint32_t FinGroup::index_of(const Perm& g) const {
  auto i = try_index(g);
  if (!i) throw std::invalid_argument("element not in group");
  return *i;
}

std::optional<uint32_t> FinGroup::try_index(const Perm& g) const {
  ensure_enumerated();
  auto it = index_.find(g.key());
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

const Perm& FinGroup::identity() const {
  ensure_enumerated();
  return elems_.front();
}

std::vector<Perm> FinGroup::center() const {
  ensure_enumerated();
  std::vector<Perm> z;
  for (const auto& x : elems_) {
    bool central = true;
    for (const auto& g : gens_)
      if (!(x * g == g * x)) {
        central = false;
        break;
      }
    if (central) z.push_back(x);
  }
  return z;
}

std::vector<Perm> FinGroup::centralizer(const Perm& g) const {
  ensure_enumerated();
  std::vector<Perm> c;
  for (const auto& x : elems_)
    if (x * g == g * x) c.push_back(x);
  return c;
}

std::vector<std::vector<uint32_t>> FinGroup::conj_classes() const {
  ensure_enumerated();
  std::vector<std::vector<uint32_t>> classes;
  std::vector<bool> seen(elems_.size(), false);
  for (uint32_t i = 0; i < elems_.size(); ++i) {
    if (seen[i]) continue;
    std::vector<uint32_t> cls{i};
    seen[i] = true;
    std::deque<uint32_t> work{i};
    while (!work.empty()) {
      uint32_t j = work.front();
      work.pop_front();
      for (const auto& g : gens_) {
        uint32_t k = index_of(g * elems_[j] * g.inverse());
        if (!seen[k]) {
          seen[k] = true;
          cls.push_back(k);
          work.push_back(k);
        }
      }
    }
    std::sort(cls.begin(), cls.end());
    classes.push_back(std::move(cls));
  }
  return classes;
}

bool FinGroup::is_cyclic() const {
  ensure_enumerated();
  for (const auto& x : elems_)
    if (x.order() == elems_.size()) return true;
  return elems_.size() == 1;
}

bool FinGroup::is_abelian() const {
  for (size_t i = 0; i < gens_.size(); ++i)
    for (size_t j = i + 1; j < gens_.size(); ++j)
      if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i])) return false;
  return true;
}

uint32_t FinGroup::exponent() const {
  ensure_enumerated();
  uint64_t e = 1;
  for (const auto& x : elems_) e = std::lcm<uint64_t>(e, x.order());
  return static_cast<uint32_t>(e);
}

Perm FinGroup::regular_perm(const Perm& g) const {
  ensure_enumerated();
  std::vector<uint32_t> m(elems_.size());
  for (uint32_t i = 0; i < elems_.size(); ++i) m[i] = index_of(g * elems_[i]);
  return Perm(std::move(m));
}

FreeHom FreeHom::by_images(ClassMarkedFreeGroup domain, std::vector<Perm> images,
                           uint64_t cap) {
  domain.validate();
  if (images.size() != domain.rank) throw std::invalid_argument("need one image per generator");
  FreeHom h;
  h.domain = std::move(domain);
  h.images = images;
  h.target = std::make_shared<FinGroup>(std::move(images), cap);
  return h;
}

Perm FreeHom::eval(const Word& w) const {
  Perm r = Perm::identity(degree());
  for (Letter l : w.letters()) {
    const Perm& g = images[std::abs(l) - 1];
    r = r * (l > 0 ? g : g.inverse());
  }
  return r;
}

bool check_kernel_containment(const FreeHom& f, const FreeHom& g, uint64_t cap) {
  if (f.domain.rank != g.domain.rank) throw std::invalid_argument("domain mismatch");
  std::vector<Perm> pair_gens;
  for (uint32_t i = 0; i < f.domain.rank; ++i)
    pair_gens.push_back(Perm::stack(f.images[i], g.images[i]));
  FinGroup D(pair_gens, cap);
  uint32_t df = f.degree();
  for (const auto& x : D.elements()) {
    if (x.block(0, df).is_identity() && !x.block(df, g.degree()).is_identity()) return false;
  }
  return true;
}

FreeHom intersect_kernels(const FreeHom& f, const FreeHom& g, uint64_t cap) {
  if (f.domain.rank != g.domain.rank) throw std::invalid_argument("domain mismatch");
  std::vector<Perm> images;
  for (uint32_t i = 0; i < f.domain.rank; ++i)
    images.push_back(Perm::stack(f.images[i], g.images[i]));
  return FreeHom::by_images(f.domain, std::move(images), cap);
}

QuotientByNormalClosure quotient_by_normal_closure(const FinGroup& G,
                                                   const std::vector<Perm>& S) {
  const auto& elems = G.elements();
  // normal closure: conjugation-orbit of S, then multiplicative closure
  std::vector<bool> in_closure(elems.size(), false);
  std::deque<uint32_t> work;
  auto add = [&](uint32_t i) {
    if (!in_closure[i]) {
      in_closure[i] = true;
      work.push_back(i);
    }
  };
  add(G.index_of(G.identity()));
  for (const auto& s : S) add(G.index_of(s));
  // close under conjugation by generators and under products of members
  std::vector<uint32_t> members;
  while (!work.empty()) {
    uint32_t i = work.front();
    work.pop_front();
    members.push_back(i);
    for (const auto& g : G.generators()) add(G.index_of(g * elems[i] * g.inverse()));
    add(G.index_of(elems[i].inverse()));
    for (uint32_t j : members) {
      add(G.index_of(elems[i] * elems[j]));
      add(G.index_of(elems[j] * elems[i]));
    }
  }
  uint64_t closure_order = members.size();

  // cosets by BFS: coset of identity is 0
  QuotientByNormalClosure q;
  q.closure_order = closure_order;
  q.coset_of.assign(elems.size(), UINT32_MAX);
  for (uint32_t i = 0; i < elems.size(); ++i) {
    if (!in_closure[i]) continue;
    q.coset_of[i] = 0;
  }
  q.coset_rep.push_back(0);
  for (uint32_t i = 0; i < elems.size(); ++i) {
    if (q.coset_of[i] != UINT32_MAX) continue;
    // new coset: elems[i] * closure
    uint32_t c = static_cast<uint32_t>(q.coset_rep.size());
    q.coset_rep.push_back(i);
    for (uint32_t j : members) q.coset_of[G.index_of(elems[i] * elems[j])] = c;
  }
  std::vector<Perm> qgens;
  uint32_t ncosets = static_cast<uint32_t>(q.coset_rep.size());
  for (const auto& g : G.generators()) {
    std::vector<uint32_t> m(ncosets);
    for (uint32_t c = 0; c < ncosets; ++c)
      m[c] = q.coset_of[G.index_of(g * elems[q.coset_rep[c]])];
    qgens.push_back(Perm(std::move(m)));
  }
  q.quotient = std::make_shared<FinGroup>(std::move(qgens), G.cap());
  return q;
}

Perm QuotientByNormalClosure::project(const FinGroup& G, const Perm& g) const {
  uint32_t ncosets = static_cast<uint32_t>(coset_rep.size());
  std::vector<uint32_t> m(ncosets);
  for (uint32_t c = 0; c < ncosets; ++c)
    m[c] = coset_of[G.index_of(g * G.elements()[coset_rep[c]])];
  return Perm(std::move(m));
}

FreeHom abelianization_mod(const ClassMarkedFreeGroup& domain, uint32_t m, uint64_t cap) {
  if (m < 2) throw std::invalid_argument("modulus must be >= 2");
  uint32_t r = domain.rank;
  std::vector<Perm> images;
  for (uint32_t i = 0; i < r; ++i) {
    std::vector<uint32_t> p(r * m);
    std::iota(p.begin(), p.end(), 0u);
    for (uint32_t k = 0; k < m; ++k) p[i * m + k] = i * m + (k + 1) % m;
    images.push_back(Perm(std::move(p)));
  }
  return FreeHom::by_images(domain, std::move(images), cap);
}

}  // namespace csp
