#include <doctest.h>

#include "oracles.hpp"

using namespace csp;

TEST_CASE("free reduction") {
  CHECK(Word::reduce({1, -1}).empty());
  CHECK(Word::reduce({1, 2, -2, -1}).empty());
  CHECK(Word::reduce({1, 2, -1}) == Word::reduce({1, 2, -1}));
  CHECK(Word::reduce({1, 2, -1}).size() == 3);
  // idempotent and compatible with concatenation
  std::mt19937_64 rng(7);
  for (int i = 0; i < 200; ++i) {
    Word u = oracles::random_word(rng, 3, 12), v = oracles::random_word(rng, 3, 12);
    std::vector<Letter> raw = u.letters();
    raw.insert(raw.end(), v.letters().begin(), v.letters().end());
    CHECK(Word::reduce(raw) == u * v);
  }
}

TEST_CASE("conjugacy by cyclic rotation") {
  Word g1 = Word::generator(1), g2 = Word::generator(2);
  auto w = conjugator(g1, g2 * g1 * g2.inverse());
  REQUIRE(w.has_value());
  CHECK(*w == g2);
  CHECK(!conjugate_test(g1, g2));
  auto r = conjugator(g1 * g2, g2 * g1);
  REQUIRE(r.has_value());
  CHECK(*r == g1.inverse());
  // returned conjugator always satisfies w u w^-1 = v
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    Word u = oracles::random_word(rng, 3, 10);
    Word c = oracles::random_word(rng, 3, 6);
    Word v = u.conjugated_by(c);
    auto got = conjugator(u, v);
    REQUIRE(got.has_value());
    CHECK(u.conjugated_by(*got) == v);
  }
}

TEST_CASE("erase peripheral generator") {
  auto g = ClassMarkedFreeGroup::punctured_sphere(4);  // rank 3, peripheral 3
  Word w = Word::reduce({1, 3, 2, -3});
  CHECK(erase_peripheral(w, g) == Word::reduce({1, 2}));
  CHECK(erase_peripheral(Word::reduce({3, 3, 3}), g).empty());
  CHECK(erase_peripheral(Word::reduce({1, 3, -1}), g).empty());
}

TEST_CASE("word literal syntax") {
  auto g = ClassMarkedFreeGroup::punctured_sphere(4);
  Word w = parse_word("g1 g2^-1 L", g);
  CHECK(w == Word::reduce({1, -2, 3}));
  CHECK(format_word(w, g) == "g1 g2^-1 L");
  CHECK(parse_word("g1 g1 g1^-2", g).empty());
  CHECK(parse_word("g1^2 g1^-1", g) == Word::generator(1));
  CHECK(format_word(Word(), g) == "1");
}

TEST_CASE("inner automorphisms compose like their words") {
  auto g = ClassMarkedFreeGroup::punctured_sphere(4);
  CHECK(FreeAut::inner(g, Word()).is_identity());
  auto a = FreeAut::inner(g, Word::generator(1));
  CHECK(a.image(1) == Word::generator(1));
  CHECK(a.image(2) == Word::reduce({1, 2, -1}));
  std::mt19937_64 rng(3);
  for (int i = 0; i < 100; ++i) {
    Word u = oracles::random_word(rng, 3, 8), v = oracles::random_word(rng, 3, 8);
    CHECK(FreeAut::inner(g, u) * FreeAut::inner(g, v) == FreeAut::inner(g, u * v));
  }
}

TEST_CASE("aut inverses invert on random words") {
  auto g = ClassMarkedFreeGroup::punctured_sphere(5);  // rank 4
  std::mt19937_64 rng(5);
  std::vector<FreeAut> auts;
  for (uint32_t i = 1; i <= 4; ++i)
    for (uint32_t j = i + 1; j <= 4; ++j) auts.push_back(artin_twist(g, i, j));
  auts.push_back(point_push(g, 1));
  auts.push_back(point_push(g, 2));
  auts.push_back(FreeAut::inner(g, Word::reduce({1, -3, 2})));
  for (const auto& a : auts) {
    CHECK((a * a.inverse()).is_identity());
    for (int i = 0; i < 50; ++i) {
      Word w = oracles::random_word(rng, 4, 10);
      CHECK(a.apply_inverse(a.apply(w)) == w);
      CHECK(a.apply(a.apply_inverse(w)) == w);
    }
  }
}

TEST_CASE("artin twists preserve marked classes and the boundary word") {
  for (uint32_t punctures : {4u, 5u, 6u}) {
    auto g = ClassMarkedFreeGroup::punctured_sphere(punctures);
    Word boundary;
    for (uint32_t k = 1; k <= g.rank; ++k) boundary = boundary * Word::generator(k);
    for (uint32_t i = 1; i <= g.rank; ++i)
      for (uint32_t j = i + 1; j <= g.rank; ++j) {
        FreeAut a = artin_twist(g, i, j);
        CHECK(a.class_preserving());
        for (uint32_t k = 1; k <= g.rank; ++k) {
          CHECK(conjugate_test(Word::generator(k), a.image(k)));
          if (k < i || k > j) CHECK(a.image(k) == Word::generator(k));
        }
        CHECK(a.apply(boundary) == boundary);
      }
  }
}

TEST_CASE("point pushing fixes the peripheral generator and erases to conjugation") {
  auto g = ClassMarkedFreeGroup::punctured_sphere(5);
  for (uint32_t j = 1; j <= 3; ++j) {
    FreeAut p = point_push(g, j);
    CHECK(p.apply(Word::generator(4)) == Word::generator(4));
    CHECK(p.class_preserving());
    for (uint32_t i = 1; i <= 3; ++i) {
      Word want = Word::generator(i).conjugated_by(Word::generator(j));
      CHECK(erase_peripheral(p.apply(Word::generator(i)), g) == want);
    }
  }
}

TEST_CASE("point pushing extends multiplicatively") {
  auto g = ClassMarkedFreeGroup::punctured_sphere(4);
  CHECK(point_push_word(g, Word()).is_identity());
  std::mt19937_64 rng(13);
  for (int i = 0; i < 100; ++i) {
    Word u = oracles::random_word(rng, 2, 6), v = oracles::random_word(rng, 2, 6);
    CHECK(point_push_word(g, u) * point_push_word(g, v) == point_push_word(g, u * v));
  }
}

TEST_CASE("normalized section fixes the peripheral generator") {
  auto g = ClassMarkedFreeGroup::punctured_sphere(4);
  Word lam = Word::generator(3);
  // already normalized: returned unchanged
  FreeAut p = point_push(g, 1);
  CHECK(normalize_fixing_peripheral(p) == p);
  // inner automorphisms normalize to the identity
  CHECK(normalize_fixing_peripheral(FreeAut::inner(g, Word::generator(1))).is_identity());
  // artin twists normalize to something fixing the peripheral generator
  for (uint32_t j : {1u, 2u}) {
    FreeAut n = normalize_fixing_peripheral(artin_twist(g, j, 3));
    CHECK(n.apply(lam) == lam);
    CHECK(n.class_preserving());
  }
  // two conjugators differing by a peripheral power give sections differing
  // by an inner automorphism of that power
  FreeAut tau = artin_twist(g, 1, 3);
  FreeAut s = normalize_fixing_peripheral(tau);
  auto w = conjugator(lam, tau.apply(lam));
  REQUIRE(w.has_value());
  Word w2 = *w * lam;  // also conjugates lam to tau(lam)
  CHECK(tau.apply(lam) == lam.conjugated_by(w2));
  FreeAut s2 = FreeAut::inner(g, w2.inverse()) * tau;
  CHECK(s2.apply(lam) == lam);
  FreeAut diff = s2 * s.inverse();
  bool peripheral_power = false;
  for (int m = -3; m <= 3 && !peripheral_power; ++m)
    peripheral_power = (diff == FreeAut::inner(g, lam.pow(m)));
  CHECK(peripheral_power);
}

TEST_CASE("group validation") {
  auto g = ClassMarkedFreeGroup::punctured_sphere(4);
  CHECK(g.rank == 3);
  CHECK(*g.peripheral == 3);
  CHECK(g.erased().rank == 2);
  ClassMarkedFreeGroup bad;
  bad.rank = 2;
  bad.marked = {1, 1};
  CHECK_THROWS(bad.validate());
  ClassMarkedFreeGroup bad2 = ClassMarkedFreeGroup::all_marked(2);
  bad2.peripheral = 5;
  CHECK_THROWS(bad2.validate());
  CHECK_THROWS(Word::reduce({0}));
}
