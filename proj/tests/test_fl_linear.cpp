#include <doctest.h>

#include "oracles.hpp"

using namespace csp;

namespace {

FlVector rand_vec(std::mt19937_64& rng, uint32_t ell, uint32_t dim) {
  FlVector v(ell, dim);
  for (uint32_t i = 0; i < dim; ++i) v.set(i, static_cast<uint32_t>(rng() % ell));
  return v;
}

}  // namespace

TEST_CASE("span insertion keeps reduced echelon form") {
  FlSubspace s(2, 2);
  CHECK(!s.insert(FlVector(2, 2)));  // zero vector
  CHECK(s.insert(FlVector::unit(2, 2, 0)));
  FlVector e12(2, 2);
  e12.set(0, 1);
  e12.set(1, 1);
  CHECK(s.insert(e12));
  CHECK(s.rank() == 2);
  CHECK(s.contains(FlVector::unit(2, 2, 1)));
  // re-inserting basis rows never grows rank
  for (const auto& row : s.basis()) CHECK(!s.insert(row));
}

TEST_CASE("rank never exceeds dimension") {
  std::mt19937_64 rng(17);
  for (uint32_t ell : {2u, 3u, 5u}) {
    FlSubspace s(ell, 7);
    for (int i = 0; i < 100; ++i) s.insert(rand_vec(rng, ell, 7));
    CHECK(s.rank() <= 7);
    CHECK(s.rank() == 7);  // 100 random vectors fill the space
  }
}

TEST_CASE("bit path agrees with the generic path") {
  std::mt19937_64 rng(23);
  for (uint32_t dim : {5u, 17u, 33u, 64u}) {
    FlSubspace fast(2, dim), slow(2, dim, /*force_generic=*/true);
    for (int i = 0; i < 40; ++i) {
      FlVector v = rand_vec(rng, 2, dim);
      CHECK(fast.insert(v) == slow.insert(v));
      CHECK(fast.rank() == slow.rank());
    }
    for (int i = 0; i < 40; ++i) {
      FlVector v = rand_vec(rng, 2, dim);
      CHECK(fast.contains(v) == slow.contains(v));
      CHECK(fast.residue(v) == slow.residue(v));
    }
    auto fb = fast.basis(), sb = slow.basis();
    CHECK(fb.size() == sb.size());
    for (size_t i = 0; i < fb.size(); ++i) CHECK(fb[i] == sb[i]);
  }
}

TEST_CASE("module closure under a regular action spans everything") {
  // left multiplication by all of a group acting regularly: the orbit of a
  // unit vector spans the whole space
  auto klein = FinGroup({Perm::parse_cycles("(1 2)(3 4)"), Perm::parse_cycles("(1 3)(2 4)")});
  std::vector<LinOp> ops;
  for (const auto& g : klein.generators()) ops.push_back(perm_op(klein.regular_perm(g)));
  uint32_t n = static_cast<uint32_t>(klein.order());
  auto full = module_closure(2, n, {FlVector::unit(2, n, 0)}, ops);
  CHECK(full.rank() == n);

  // the all-ones vector is fixed by any permutation action
  auto ones = module_closure(2, n, {FlVector::ones(2, n)}, ops);
  CHECK(ones.rank() == 1);

  // seed (1 + q1).e1 for the Klein regular action: brute-force closure says rank 2
  FlVector seed = FlVector::unit(2, n, 0) + FlVector::unit(2, n, 0).permuted(klein.regular_perm(klein.generators()[0]));
  auto sub = module_closure(2, n, {seed}, ops);
  // oracle: exhaustive closure over all four permutation operators
  std::vector<FlVector> all{seed};
  std::vector<Perm> every;
  for (const auto& e : klein.elements()) every.push_back(klein.regular_perm(e));
  for (size_t i = 0; i < all.size(); ++i) {
    for (const auto& p : every) {
      FlVector cand = all[i].permuted(p);
      bool fresh = true;
      for (const auto& x : all) fresh &= !(x == cand);
      if (fresh) all.push_back(cand);
      FlVector sum = all[i] + seed;
      fresh = true;
      for (const auto& x : all) fresh &= !(x == sum);
      if (fresh) all.push_back(sum);
    }
  }
  FlSubspace oracle(2, n);
  for (const auto& v : all) oracle.insert(v);
  CHECK(sub.rank() == oracle.rank());
  CHECK(sub.rank() == 2);
  // closure is idempotent
  std::vector<FlVector> rows = sub.basis();
  auto again = module_closure(2, n, rows, ops);
  CHECK(again.rank() == sub.rank());
}

TEST_CASE("affine solving") {
  // no constraints: the ambient itself
  FlSubspace amb(2, 3);
  amb.insert(FlVector::unit(2, 3, 0));
  amb.insert(FlVector::unit(2, 3, 1));
  auto sol = solve_affine({}, amb);
  CHECK(!sol.empty);
  CHECK(sol.particular.is_zero());
  CHECK(sol.homogeneous.rank() == 2);

  // v = v + e1 is inconsistent
  LinConstraint impossible{[](const FlVector& v) { return FlVector(v.ell(), v.dim()); },
                           FlVector::unit(2, 3, 0)};
  CHECK(solve_affine({impossible}, amb).empty);

  // fixed vectors of a regular action: only the all-ones line
  auto sym3 = FinGroup({Perm::parse_cycles("(1 2)", 3), Perm::parse_cycles("(2 3)", 3)});
  uint32_t n = static_cast<uint32_t>(sym3.order());
  FlSubspace full(2, n);
  for (uint32_t i = 0; i < n; ++i) full.insert(FlVector::unit(2, n, i));
  std::vector<LinConstraint> fixed;
  for (const auto& g : sym3.generators()) {
    Perm r = sym3.regular_perm(g);
    fixed.push_back(LinConstraint{[r](const FlVector& v) { return v - v.permuted(r); },
                                  FlVector(2, n)});
  }
  auto f = solve_affine(fixed, full);
  CHECK(!f.empty);
  CHECK(f.homogeneous.rank() == 1);
  FlVector rep = f.particular + f.homogeneous.basis_row(0);
  bool is_ones = rep == FlVector::ones(2, n) || f.homogeneous.basis_row(0) == FlVector::ones(2, n);
  CHECK(is_ones);
}

TEST_CASE("affine solving over odd primes") {
  // x restricted to a line, with a scaling constraint
  FlSubspace amb(5, 2);
  FlVector dir(5, 2);
  dir.set(0, 1);
  dir.set(1, 2);
  amb.insert(dir);
  // constraint: first coordinate equals 3
  LinConstraint c{[](const FlVector& v) {
                    FlVector r(v.ell(), 1);
                    r.set(0, v[0]);
                    return r;
                  },
                  [] {
                    FlVector r(5, 1);
                    r.set(0, 3);
                    return r;
                  }()};
  auto sol = solve_affine({c}, amb);
  REQUIRE(!sol.empty);
  CHECK(sol.homogeneous.rank() == 0);
  CHECK(sol.particular[0] == 3);
  CHECK(sol.particular[1] == (3 * 2) % 5);
}
