#include "csp/csp_core.hpp"

#include <algorithm>
#include <deque>

namespace csp {

namespace {

Word random_reduced_word(std::mt19937_64& rng, uint32_t rank, uint32_t maxlen) {
  // plain modulo keeps the stream identical across standard libraries
  uint32_t len = static_cast<uint32_t>(rng() % (maxlen + 1));
  std::vector<Letter> out;
  out.reserve(len);
  Letter last = 0;
  while (out.size() < len) {
    uint32_t k = static_cast<uint32_t>(rng() % (2 * rank));
    Letter l = k < rank ? static_cast<Letter>(k + 1) : -static_cast<Letter>(k - rank + 1);
    if (l == -last) continue;
    out.push_back(l);
    last = l;
  }
  return Word::reduce(out);
}

SdHom precompose(const SdHom& h, const FreeAut& tau) {
  SdHom r;
  r.domain = h.domain;
  r.images.reserve(h.domain.rank);
  for (uint32_t i = 1; i <= h.domain.rank; ++i) r.images.push_back(h.eval(tau.image(i)));
  return r;
}

FlVector first_block(const FlVector& v, uint32_t d) {
  FlVector r(v.ell(), d);
  for (uint32_t i = 0; i < d; ++i) r.set(i, v[i]);
  return r;
}

}  // namespace

Perm NonCyclic::factor(const Perm& img) const {
  return replaced ? img.block(0, base_degree) : img;
}

NonCyclic ensure_noncyclic(const FreeHom& base, uint32_t punctures, uint64_t cap) {
  if (punctures <= 3) throw std::invalid_argument("need more than 3 punctures");
  NonCyclic nc;
  nc.base_degree = base.degree();
  if (!base.target->is_cyclic()) {
    nc.hom = base;
    return nc;
  }
  nc.replaced = true;
  nc.modulus = std::max<uint32_t>(2, base.target->exponent());
  FreeHom ab = abelianization_mod(base.domain, nc.modulus, cap);
  nc.hom = intersect_kernels(base, ab, cap);
  return nc;
}

CenterlessStage centerless_quotient(const QuotientSpec& spec) {
  CenterlessStage st;
  st.noncyclic = ensure_noncyclic(spec.base, spec.punctures, spec.limits.cap);
  const FreeHom& q = st.noncyclic.hom;
  const FinGroup& Q = *q.target;
  uint32_t nq = static_cast<uint32_t>(Q.order());
  uint32_t rank = spec.base.domain.rank;
  uint32_t ell = spec.ell;
  std::mt19937_64 vrng(spec.seed ^ 0x9e3779b97f4a7c15ull);

  std::vector<SdElem> gens1;
  for (uint32_t j = 0; j < rank; ++j) {
    SdElem e = SdElem::of_perm(ell, Q.regular_perm(q.images[j]));
    if (j == 0) e.v = FlVector::unit(ell, nq, 0);
    gens1.push_back(std::move(e));
  }
  st.stage_one = LinByFin::from_generators(gens1, spec.limits.cap);
  st.stage_one.verify(vrng);
  st.stage_one_elems = enumerate_linbyfin(st.stage_one, spec.limits.cap);
  uint32_t nr = static_cast<uint32_t>(st.stage_one_elems.elements.size());

  std::vector<SdElem> gens2;
  for (uint32_t j = 0; j < rank; ++j) {
    SdElem e = SdElem::of_perm(ell, linbyfin_regular_perm(st.stage_one, st.stage_one_elems, gens1[j]));
    if (j == 0) e.v = FlVector::unit(ell, nr, 0);
    gens2.push_back(std::move(e));
  }
  LinByFin stage_two = LinByFin::from_generators(gens2, spec.limits.cap);
  stage_two.verify(vrng);
  st.stage_two_rank_before = stage_two.module_part().rank();
  st.collapsed = quotient_central_cyclic(stage_two, FlVector::ones(ell, nr), &st.collapse_happened);
  st.center_trivial = linbyfin_center(st.collapsed).trivial(st.collapsed);

  // keep collapsing while the center still has module-part content; such
  // collapses leave the projection to the earlier stages untouched, so the
  // kernel containment chain survives.  The loop can end with a center that
  // sits over nontrivial quotient elements, and when the whole tower is an
  // ell-group it must: no nontrivial finite p-group is centerless.
  st.final = st.collapsed;
  while (true) {
    SdSubgroup z = linbyfin_center(st.final);
    if (z.trivial(st.final)) {
      st.final_center_trivial = true;
      break;
    }
    FlSubspace span(ell, nr);
    for (const auto& comp : z.components) {
      if (!st.final.quotient().elements()[comp.fid].is_identity()) continue;
      span.insert(st.final.kill().residue(comp.sols.particular));
      for (uint32_t r = 0; r < comp.sols.homogeneous.rank(); ++r)
        span.insert(st.final.kill().residue(comp.sols.homogeneous.basis_row(r)));
    }
    if (span.rank() == 0) {
      st.final_center_trivial = false;
      break;
    }
    st.final = st.final.collapse_module(span);
    ++st.extra_collapses;
  }
  for (const auto& g2 : gens2) st.images.push_back(st.final.canonical(g2));

  // factor chain: every stage's generator image projects back down to the
  // input images, on generators and on sampled words
  SdHom hom2{spec.base.domain, gens2};
  auto chain_to_base = [&](const Word& w) {
    SdElem x2 = st.final.canonical(hom2.eval(w));
    uint32_t rid = x2.g[0];
    const SdElem& x1 = st.stage_one_elems.elements[rid];
    uint32_t qid = x1.g[0];
    return st.noncyclic.factor(Q.elements()[qid]);
  };
  bool ok = true;
  for (uint32_t j = 1; j <= rank && ok; ++j) {
    Word w = Word::generator(j);
    ok = chain_to_base(w) == spec.base.eval(w) &&
         q.eval(w) ==
             Q.elements()[st.stage_one_elems.elements[st.final.canonical(hom2.eval(w)).g[0]].g[0]];
  }
  for (int s = 0; s < 1000 && ok; ++s) {
    Word w = random_reduced_word(vrng, rank, 20);
    ok = chain_to_base(w) == spec.base.eval(w);
  }
  st.chain_verified = ok;
  return st;
}

SdHom build_marker(const FreeHom& p, uint32_t punctures, uint32_t ell) {
  if (p.domain.rank != punctures - 2)
    throw std::invalid_argument("base hom rank does not match puncture count");
  auto sphere = ClassMarkedFreeGroup::punctured_sphere(punctures);
  const FinGroup& P = *p.target;
  uint32_t np = static_cast<uint32_t>(P.order());
  std::vector<SdElem> images;
  for (uint32_t j = 0; j < punctures - 2; ++j)
    images.push_back(SdElem::of_perm(ell, P.regular_perm(p.images[j])));
  images.push_back(SdElem{FlVector::unit(ell, np, 0), Perm::identity(np)});
  return SdHom{sphere, std::move(images)};
}

std::vector<FreeAut> aut_generator_set(const ClassMarkedFreeGroup& g) {
  std::vector<FreeAut> out;
  for (uint32_t i = 1; i <= g.rank; ++i)
    for (uint32_t j = i + 1; j <= g.rank; ++j) out.push_back(artin_twist(g, i, j));
  for (uint32_t k = 1; k <= g.rank; ++k) out.push_back(FreeAut::inner(g, Word::generator(k)));
  size_t n = out.size();
  for (size_t t = 0; t < n; ++t) out.push_back(out[t].inverse());
  return out;
}

std::vector<SdHom> hom_orbit(const SdHom& phi, const std::vector<FreeAut>& gens,
                             uint64_t orbit_cap) {
  std::unordered_map<std::string, uint32_t> seen;
  std::vector<SdHom> members{phi};
  seen.emplace(phi.key(), 0);
  std::deque<uint32_t> work{0};
  while (!work.empty()) {
    uint32_t i = work.front();
    work.pop_front();
    for (const auto& tau : gens) {
      SdHom h = precompose(members[i], tau);
      auto [it, fresh] = seen.emplace(h.key(), static_cast<uint32_t>(members.size()));
      if (fresh) {
        members.push_back(std::move(h));
        if (members.size() > orbit_cap) throw CapExceededError("orbit exceeded cap");
        work.push_back(it->second);
      }
    }
  }
  std::sort(members.begin(), members.end(),
            [](const SdHom& a, const SdHom& b) { return a.key() < b.key(); });
  return members;
}

bool orbit_closed(const std::vector<SdHom>& orbit, const std::vector<FreeAut>& gens) {
  std::vector<std::string> keys;
  keys.reserve(orbit.size());
  for (const auto& m : orbit) keys.push_back(m.key());
  if (!std::is_sorted(keys.begin(), keys.end())) return false;
  for (const auto& m : orbit) {
    const SdElem& lam = m.images.back();
    // conjugates of (unit at identity, 1) are exactly (unit, 1)
    if (!lam.g.is_identity()) return false;
    auto sup = lam.v.support();
    if (sup.size() != 1 || sup[0].second != 1) return false;
    for (const auto& tau : gens) {
      std::string k = precompose(m, tau).key();
      if (!std::binary_search(keys.begin(), keys.end(), k)) return false;
    }
  }
  return true;
}

Diagonal orbit_diagonal(const std::vector<SdHom>& orbit, const SdHom& marker, uint64_t cap) {
  Diagonal d;
  d.blocks = static_cast<uint32_t>(orbit.size());
  d.block_dim = marker.images.front().v.dim();
  std::string mk = marker.key();
  d.marker_index = UINT32_MAX;
  for (uint32_t k = 0; k < orbit.size(); ++k)
    if (orbit[k].key() == mk) {
      d.marker_index = k;
      break;
    }
  if (d.marker_index == UINT32_MAX) throw std::logic_error("marker hom missing from its orbit");
  uint32_t rank = marker.domain.rank;
  uint32_t ell = marker.images.front().v.ell();
  uint32_t dim = d.blocks * d.block_dim;
  std::vector<SdElem> gens;
  for (uint32_t i = 0; i < rank; ++i) {
    FlVector v(ell, dim);
    std::vector<uint32_t> p(dim);
    for (uint32_t k = 0; k < orbit.size(); ++k) {
      const SdElem& x = orbit[k].images[i];
      uint32_t off = k * d.block_dim;
      for (uint32_t c = 0; c < d.block_dim; ++c) {
        v.set(off + c, x.v[c]);
        p[off + c] = off + x.g[c];
      }
    }
    gens.push_back(SdElem{std::move(v), Perm(std::move(p))});
  }
  d.q = SdHom{marker.domain, gens};
  d.image = LinByFin::from_generators(std::move(gens), cap);
  return d;
}

bool sd_kernel_contained(const std::vector<SdElem>& f_images,
                         const std::vector<SdElem>& g_images, uint64_t cap) {
  if (f_images.size() != g_images.size()) throw std::invalid_argument("image count mismatch");
  uint32_t df = f_images.front().v.dim();
  uint32_t ell = f_images.front().v.ell();
  std::vector<SdElem> pairs;
  for (size_t i = 0; i < f_images.size(); ++i)
    pairs.push_back(SdElem::stack(f_images[i], g_images[i]));
  LinByFin D = LinByFin::from_generators(pairs, cap);

  const FlSubspace& M = D.module_part();
  FlSubspace proj(ell, df);
  for (uint32_t r = 0; r < M.rank(); ++r) proj.insert(first_block(M.basis_row(r), df));
  // elements (u, 1) of D with zero first block must be trivial
  if (proj.rank() != M.rank()) return false;
  // quotient elements acting as the identity on the first factor: their
  // fibers must not reach a zero first block
  uint32_t nf = static_cast<uint32_t>(D.quotient().order());
  for (uint32_t fid = 0; fid < nf; ++fid) {
    const Perm& pf = D.quotient().elements()[fid];
    if (pf.is_identity()) continue;
    if (!pf.block(0, df).is_identity()) continue;
    if (proj.contains(first_block(D.transversal(fid), df))) return false;
  }
  return true;
}

bool is_geom_characteristic(const SdHom& q, const std::vector<FreeAut>& gens, uint64_t cap) {
  for (const auto& tau : gens) {
    SdHom qt = precompose(q, tau);
    if (!sd_kernel_contained(q.images, qt.images, cap)) return false;
    if (!sd_kernel_contained(qt.images, q.images, cap)) return false;
  }
  return true;
}

bool is_geom_characteristic(const FreeHom& q, const std::vector<FreeAut>& gens, uint64_t cap) {
  for (const auto& tau : gens) {
    FreeHom qt = q;
    for (uint32_t i = 1; i <= q.domain.rank; ++i) qt.images[i - 1] = q.eval(tau.image(i));
    if (!check_kernel_containment(q, qt, cap)) return false;
    if (!check_kernel_containment(qt, q, cap)) return false;
  }
  return true;
}

FreeHom pullback_hom(const FreeHom& p, uint32_t punctures) {
  if (p.domain.rank != punctures - 2)
    throw std::invalid_argument("base hom rank does not match puncture count");
  auto sphere = ClassMarkedFreeGroup::punctured_sphere(punctures);
  std::vector<Perm> images = p.images;
  images.push_back(Perm::identity(p.degree()));
  return FreeHom::by_images(sphere, std::move(images), p.target->cap());
}

InducedBase induced_base(const Diagonal& diag, std::mt19937_64& rng) {
  InducedBase b;
  const SdHom& q = diag.q;
  const LinByFin& G = diag.image;
  SdElem lam = G.canonical(q.images.back());
  if (!lam.g.is_identity())
    throw std::logic_error("peripheral image must lie in the module part");
  b.closure = normal_closure_module(G, lam);
  b.collapsed = G.collapse_module(b.closure);
  for (uint32_t i = 0; i + 1 < q.domain.rank; ++i)
    b.images.push_back(b.collapsed.canonical(q.images[i]));

  // the collapse of q factors through erasing the peripheral generator
  bool ok = b.collapsed.is_identity_elem(q.images.back());
  for (int s = 0; s < 100 && ok; ++s) {
    Word w = random_reduced_word(rng, q.domain.rank, 30);
    Word u = erase_peripheral(w, q.domain);
    ok = b.collapsed.equal(q.eval(w), q.eval(u));
  }
  b.square_verified = ok;
  return b;
}

CentralizerVerdict centralizer_condition(const Diagonal& diag, const InducedBase& base) {
  const LinByFin& G = diag.image;
  const LinByFin& P0 = base.collapsed;
  SdElem lam = G.canonical(diag.q.images.back());
  SdSubgroup cent = linbyfin_centralizer(G, lam);
  CentralizerVerdict v;
  v.contained = cent.contained_in_module(G, base.closure);
  // the section ambiguity acts on the collapsed group by conjugation, so it
  // is harmless exactly when the centralizer lands in the center there;
  // affine fibers are checked on their corner representatives
  v.image_central = true;
  for (const auto& comp : cent.components) {
    std::vector<FlVector> vecs{comp.sols.particular};
    for (uint32_t r = 0; r < comp.sols.homogeneous.rank(); ++r)
      vecs.push_back(comp.sols.particular + comp.sols.homogeneous.basis_row(r));
    for (const auto& vec : vecs) {
      SdElem x{vec, G.quotient().elements()[comp.fid]};
      for (const auto& img : base.images)
        if (!P0.equal(x * img, img * x)) {
          v.image_central = false;
          break;
        }
      if (!v.image_central) break;
    }
    if (!v.image_central) break;
  }
  return v;
}

bool birman_identity(const Diagonal& diag, const InducedBase& base, const PushFactory& push) {
  const auto& sphere = diag.q.domain;
  PushFactory factory =
      push ? push : [](const ClassMarkedFreeGroup& g, uint32_t j) { return point_push(g, j); };
  const LinByFin& P0 = base.collapsed;
  Word lam = Word::generator(*sphere.peripheral);
  for (uint32_t j = 1; j + 1 <= sphere.rank; ++j) {
    FreeAut tau = factory(sphere, j);
    auto w = conjugator(lam, tau.apply(lam));
    if (!w) throw std::logic_error("push image does not preserve the peripheral class");
    SdElem c = diag.q.eval(*w).inverse();
    Word gj = Word::generator(j);
    for (uint32_t i = 1; i <= sphere.rank; ++i) {
      SdElem lhs = c * diag.q.eval(tau.image(i)) * c.inverse();
      SdElem rhs = diag.q.eval(gj * Word::generator(i) * gj.inverse());
      if (!P0.equal(lhs, rhs)) return false;
    }
  }
  return true;
}

namespace {

FreeHom linbyfin_to_freehom(const LinByFin& L, const std::vector<SdElem>& gen_images,
                            const ClassMarkedFreeGroup& domain, uint64_t cap) {
  // the regular representation stores order^2 points; keep this far below
  // the generic cap
  constexpr uint64_t kRegularRepCap = 4096;
  auto en = enumerate_linbyfin(L, std::min<uint64_t>(cap, kRegularRepCap));
  std::vector<Perm> perms;
  for (const auto& x : gen_images) perms.push_back(linbyfin_regular_perm(L, en, x));
  return FreeHom::by_images(domain, std::move(perms), cap);
}

}  // namespace

PipelineRun run_witness_pipeline(const QuotientSpec& spec, bool allow_noncenterless,
                                 const PushFactory& push, const PipelineMode& mode) {
  spec.base.domain.validate();
  if (spec.punctures < 4) throw std::invalid_argument("need at least 4 punctures");
  if (spec.base.domain.rank != spec.punctures - 2)
    throw std::invalid_argument("base hom rank does not match puncture count");

  PipelineRun run;
  run.spec = spec;
  std::mt19937_64 rng(spec.seed);

  run.working = spec.base;
  bool centerless = spec.base.target->center().size() == 1;
  if (!centerless && !allow_noncenterless) {
    run.stage = centerless_quotient(spec);
    run.used_centerless = true;
    run.working = linbyfin_to_freehom(run.stage->final, run.stage->images,
                                      spec.base.domain, spec.limits.cap);
  }
  run.checks.input_center_trivial = run.working.target->center().size() == 1;

  SdHom marker = build_marker(run.working, spec.punctures, spec.ell);
  auto gens = aut_generator_set(marker.domain);
  run.orbit = hom_orbit(marker, gens, spec.limits.orbit_cap);
  run.diag = orbit_diagonal(run.orbit, marker, spec.limits.cap);
  run.checks.orbit_ok = orbit_closed(run.orbit, gens);
  run.checks.geom_characteristic =
      mode.check_geom && is_geom_characteristic(run.diag.q, gens, spec.limits.cap);
  run.base0 = induced_base(run.diag, rng);
  CentralizerVerdict cz = centralizer_condition(run.diag, run.base0);
  run.checks.centralizer_ok = cz.contained;
  run.checks.delta_well_defined = cz.image_central;
  run.checks.birman_ok = birman_identity(run.diag, run.base0, push);

  const LinByFin& P0 = run.base0.collapsed;
  uint32_t off = run.diag.marker_index * run.diag.block_dim;
  uint32_t rank_base = spec.punctures - 2;

  bool proj_ok = P0.is_identity_elem(run.diag.q.images.back()) && run.base0.square_verified;
  for (uint32_t i = 0; i < rank_base && proj_ok; ++i) {
    Perm blk = run.base0.images[i].g.block(off, run.diag.block_dim);
    proj_ok = run.working.target->elements()[blk[0]] == run.working.images[i];
  }
  run.checks.projection_identity = proj_ok;

  SdSubgroup z = linbyfin_center(P0);
  bool killed = true;
  for (const auto& comp : z.components)
    killed &= P0.quotient().elements()[comp.fid].block(off, run.diag.block_dim).is_identity();
  run.checks.collapsed_center_killed = killed;

  // randomized spot check: words whose collapsed image is central must die
  // under the working hom.  The collapsed group is tiny on the expected
  // path, so words fold through an element-index multiplication table.
  bool fast = false;
  LinByFinEnumeration en;
  try {
    en = enumerate_linbyfin(P0, 4096);
    fast = true;
  } catch (const CapExceededError&) {
  }
  uint64_t n_samples = mode.sample ? (fast ? kSampleWords : 500) : 0;
  std::vector<std::vector<uint32_t>> table;
  std::vector<uint32_t> gen_id(rank_base), gen_inv_id(rank_base);
  std::vector<char> central;
  if (fast && n_samples) {
    uint32_t ne = static_cast<uint32_t>(en.elements.size());
    table.assign(ne, std::vector<uint32_t>(ne));
    for (uint32_t a = 0; a < ne; ++a)
      for (uint32_t b = 0; b < ne; ++b)
        table[a][b] = en.id_of(P0.canonical(en.elements[a] * en.elements[b]));
    for (uint32_t i = 0; i < rank_base; ++i) {
      gen_id[i] = en.id_of(run.base0.images[i]);
      gen_inv_id[i] = en.id_of(P0.canonical(run.base0.images[i].inverse()));
    }
    central.assign(ne, 1);
    for (uint32_t a = 0; a < ne; ++a)
      for (const auto& img : run.base0.images)
        if (!P0.equal(en.elements[a] * img, img * en.elements[a])) {
          central[a] = 0;
          break;
        }
  }
  uint64_t hits = 0, violations = 0;
  for (uint64_t s = 0; s < n_samples; ++s) {
    Word w = random_reduced_word(rng, rank_base, kSampleMaxLen);
    bool is_central;
    if (fast) {
      uint32_t id = 0;
      for (Letter l : w.letters()) id = table[id][l > 0 ? gen_id[l - 1] : gen_inv_id[-l - 1]];
      is_central = central[id];
    } else {
      SdElem x = P0.canonical(run.diag.q.eval(w));
      is_central = true;
      for (const auto& img : run.base0.images)
        if (!P0.equal(x * img, img * x)) {
          is_central = false;
          break;
        }
    }
    if (is_central) {
      ++hits;
      if (!run.working.eval(w).is_identity()) ++violations;
    }
  }
  run.checks.sample_words = n_samples;
  run.checks.central_hits = hits;
  run.checks.violations = violations;
  run.checks.sampling_vacuous = hits == 0;
  run.checks.sample_ok = violations == 0;
  return run;
}

}  // namespace csp
