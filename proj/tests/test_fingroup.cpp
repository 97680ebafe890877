#include <doctest.h>

#include "oracles.hpp"

using namespace csp;

namespace {

FinGroupPtr sym3() {
  return std::make_shared<FinGroup>(
      std::vector<Perm>{Perm::parse_cycles("(1 2)", 3), Perm::parse_cycles("(2 3)", 3)});
}

}  // namespace

TEST_CASE("permutation arithmetic and cycle notation") {
  Perm a = Perm::parse_cycles("(1 2)", 3), b = Perm::parse_cycles("(2 3)", 3);
  CHECK((a * b * a) == Perm::parse_cycles("(1 3)", 3));
  CHECK(Perm::parse_cycles("(1 2)(3 4)").to_cycles() == "(1 2)(3 4)");
  CHECK(Perm::parse_cycles(Perm::parse_cycles("(1 4 2)(3 5)").to_cycles()) ==
        Perm::parse_cycles("(1 4 2)(3 5)"));
  CHECK(Perm::identity(4).to_cycles() == "()");
  CHECK(Perm::parse_cycles("(1 2 3)").order() == 3);
  CHECK_THROWS(Perm::parse_cycles("(1 2", 3));
  CHECK_THROWS(Perm(std::vector<uint32_t>{0, 0}));
}

TEST_CASE("enumeration and caps") {
  auto s3 = sym3();
  CHECK(s3->order() == 6);
  auto klein = FinGroup({Perm::parse_cycles("(1 2)(3 4)"), Perm::parse_cycles("(1 3)(2 4)")});
  CHECK(klein.order() == 4);
  CHECK(klein.is_abelian());
  CHECK(!klein.is_cyclic());
  FinGroup capped({Perm::parse_cycles("(1 2)", 3), Perm::parse_cycles("(2 3)", 3)}, 4);
  CHECK_THROWS_AS(capped.order(), CapExceededError);
}

TEST_CASE("structure queries on sym3") {
  auto s3 = sym3();
  CHECK(s3->center().size() == 1);
  Perm three_cycle = Perm::parse_cycles("(1 2 3)", 3);
  auto c = s3->centralizer(three_cycle);
  CHECK(c.size() == 3);
  for (const auto& x : c) CHECK(x * three_cycle == three_cycle * x);
  auto classes = s3->conj_classes();
  std::vector<size_t> sizes;
  for (const auto& cl : classes) sizes.push_back(cl.size());
  std::sort(sizes.begin(), sizes.end());
  CHECK(sizes == std::vector<size_t>{1, 2, 3});
  CHECK(!s3->is_cyclic());
  CHECK(s3->exponent() == 6);
  CHECK(FinGroup({Perm::parse_cycles("(1 2 3 4 5 6)")}).is_cyclic());
}

TEST_CASE("free homomorphism evaluation") {
  auto dom = ClassMarkedFreeGroup::all_marked(2);
  FreeHom h = FreeHom::by_images(dom, {Perm::parse_cycles("(1 2)", 3), Perm::parse_cycles("(2 3)", 3)});
  CHECK(h.target->order() == 6);  // images generate sym3
  CHECK(h.eval(Word::reduce({1, 2, -1})) == Perm::parse_cycles("(1 3)", 3));
  CHECK(h.eval(Word()).is_identity());
  // trivial hom: kernel is everything
  FreeHom triv = FreeHom::by_images(dom, {Perm::identity(2), Perm::identity(2)});
  CHECK(triv.target->order() == 1);
}

TEST_CASE("kernel containment matches specific derived instances") {
  auto dom = ClassMarkedFreeGroup::all_marked(2);
  // f: both generators to 1 in Z/4; g: both to 1 in Z/2
  FreeHom f = FreeHom::by_images(dom, {Perm::parse_cycles("(1 2 3 4)"), Perm::parse_cycles("(1 2 3 4)")});
  FreeHom g = FreeHom::by_images(dom, {Perm::parse_cycles("(1 2)"), Perm::parse_cycles("(1 2)")});
  CHECK(check_kernel_containment(f, g));
  CHECK(!check_kernel_containment(g, f));  // g1^2 separates
  CHECK(check_kernel_containment(f, f));
  FreeHom triv = FreeHom::by_images(dom, {Perm::identity(1), Perm::identity(1)});
  CHECK(check_kernel_containment(f, triv));
  CHECK(check_kernel_containment(g, triv));
}

TEST_CASE("kernel containment agrees with the word-ball oracle") {
  auto dom = ClassMarkedFreeGroup::all_marked(2);
  auto ball = oracles::word_ball(2, 6);
  auto zoo = oracles::small_group_zoo();
  std::mt19937_64 rng(20260809);
  int checked = 0;
  while (checked < 50) {
    const auto& germsf = zoo[rng() % zoo.size()];
    const auto& germsg = zoo[rng() % zoo.size()];
    FinGroup Gf(germsf), Gg(germsg);
    auto pick = [&rng](const FinGroup& G) { return G.elements()[rng() % G.order()]; };
    FreeHom f = FreeHom::by_images(dom, {pick(Gf), pick(Gf)});
    FreeHom g = FreeHom::by_images(dom, {pick(Gg), pick(Gg)});
    bool goursat = check_kernel_containment(f, g);
    bool ball_contained = oracles::ball_kernel_contained(f, g, ball);
    CHECK(goursat == ball_contained);
    ++checked;
  }
}

TEST_CASE("kernel intersection") {
  auto dom = ClassMarkedFreeGroup::all_marked(2);
  FreeHom mod2 = abelianization_mod(dom, 2);
  FreeHom mod3 = abelianization_mod(dom, 3);
  FreeHom meet = intersect_kernels(mod2, mod3);
  FreeHom mod6 = abelianization_mod(dom, 6);
  CHECK(check_kernel_containment(meet, mod6));
  CHECK(check_kernel_containment(mod6, meet));
  CHECK(meet.target->order() == 36);
  // intersect with itself: kernel unchanged
  FreeHom same = intersect_kernels(mod2, mod2);
  CHECK(check_kernel_containment(same, mod2));
  CHECK(check_kernel_containment(mod2, same));
  // intersect with the trivial hom: kernel of the other side
  FreeHom triv = FreeHom::by_images(dom, {Perm::identity(1), Perm::identity(1)});
  FreeHom with_triv = intersect_kernels(mod2, triv);
  CHECK(check_kernel_containment(with_triv, mod2));
  CHECK(check_kernel_containment(mod2, with_triv));
}

TEST_CASE("quotient by normal closure") {
  auto s3 = sym3();
  // trivial closure: order preserved
  auto q0 = quotient_by_normal_closure(*s3, {s3->identity()});
  CHECK(q0.quotient->order() == 6);
  // quotient of sym3 by a 3-cycle: the alternating part dies
  auto q1 = quotient_by_normal_closure(*s3, {Perm::parse_cycles("(1 2 3)", 3)});
  CHECK(q1.closure_order == 3);
  CHECK(q1.quotient->order() == 2);
  // projection is a surjective homomorphism
  for (const auto& x : s3->elements())
    for (const auto& y : s3->elements())
      CHECK(q1.project(*s3, x * y) == q1.project(*s3, x) * q1.project(*s3, y));
  // abelian group: quotient order divides as expected
  FinGroup z6({Perm::parse_cycles("(1 2 3 4 5 6)")});
  auto q2 = quotient_by_normal_closure(z6, {Perm::parse_cycles("(1 3 5)(2 4 6)")});
  CHECK(q2.quotient->order() == 2);
}

TEST_CASE("lagrange sanity across structure queries") {
  for (const auto& gens : oracles::small_group_zoo()) {
    FinGroup G(gens);
    uint64_t n = G.order();
    CHECK(n % G.center().size() == 0);
    uint64_t class_sum = 0;
    for (const auto& cl : G.conj_classes()) {
      class_sum += cl.size();
      CHECK(n % cl.size() == 0);  // class sizes divide the order
    }
    CHECK(class_sum == n);
    CHECK(n % G.centralizer(G.elements()[n - 1]).size() == 0);
  }
}
