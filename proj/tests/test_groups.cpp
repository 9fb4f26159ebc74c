#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "ratg/groups.hpp"
#include "sampling.hpp"

using namespace ratg;

TEST_CASE("spec dsl") {
  const auto s = GroupSpec::parse("group kind=semidirect rank=2 matrix=[[2,1],[1,1]]");
  CHECK(s->kind() == GroupKind::semidirect);
  CHECK(s->rank() == 2);
  CHECK(s->render() == "group kind=semidirect rank=2 matrix=[[2,1],[1,1]]");
  CHECK(GroupSpec::parse("group kind=metabelian f=[2,-3]")->laurent_modulus()->degree() == 1);
  CHECK(GroupSpec::parse("group kind=lamplighter mod=2")->modulus() == Integer(2));
  CHECK(GroupSpec::parse("group kind=heisenberg")->kind() == GroupKind::heisenberg);
  CHECK(GroupSpec::parse("group kind=free_abelian rank=3")->vector_length() == 3);
  CHECK(GroupSpec::parse("group kind=abelian rank=1 torsion=[2]")->vector_length() == 2);
  CHECK(GroupSpec::parse("group kind=semidirect matrix=[[0, -1], [1, 0]]")->rank() == 2);
  CHECK_THROWS_AS(GroupSpec::parse("group kind=semidirect matrix=[[2,0],[0,1]]"), ParseError);
  CHECK_THROWS_AS(GroupSpec::parse("group kind=metabelian f=[2,4]"), ParseError);
  CHECK_THROWS_AS(GroupSpec::parse("group kind=metabelian f=[2,0]"), ParseError);
  CHECK_THROWS_AS(GroupSpec::parse("group kind=lamplighter mod=1"), ParseError);
  CHECK_THROWS_AS(GroupSpec::parse("group kind=torus"), ParseError);
  CHECK_THROWS_AS(GroupSpec::parse("kind=heisenberg"), ParseError);
  CHECK_THROWS_AS(GroupSpec::parse("group kind=heisenberg colour=red"), ParseError);
}

TEST_CASE("identities") {
  CHECK(identity(GroupSpec::heisenberg()).render() == "(0,0,0)");
  CHECK(identity(GroupSpec::free_abelian(2)).render() == "(0,0)");
  const auto m = GroupSpec::metabelian({2, -3});
  const auto id = identity(m);
  const auto& e = std::get<MetabelianElem>(id.value());
  CHECK(e.k == Integer(0));
  CHECK(e.m.is_zero());
}

TEST_CASE("products from the documented examples") {
  const auto h = GroupSpec::heisenberg();
  CHECK(mul(heisenberg_element(h, 1, 0, 0), heisenberg_element(h, 0, 1, 0)).render() == "(1,1,1)");
  CHECK(inv(heisenberg_element(h, 1, 1, 1)).render() == "(-1,-1,0)");
  CHECK(eval_word(h, parse_word("g^-1 f^-1 g f")).render() == "(0,0,1)");

  const auto sd = GroupSpec::parse("group kind=semidirect rank=2 matrix=[[2,1],[1,1]]");
  CHECK(eval_word(sd, parse_word("h^-1 e1 h")) == semidirect_element(sd, make_vector({2, 1}), 0));

  const auto z2 = GroupSpec::free_abelian(2);
  CHECK(inv(abelian_element(z2, make_vector({3, -2}))).render() == "(-3,2)");

  const auto ll = GroupSpec::lamplighter(2);
  CHECK(inv(lamplighter_element(ll, {{0, 1}}, 1)) == lamplighter_element(ll, {{-1, 1}}, -1));
  const auto l5 = GroupSpec::lamplighter(5);
  CHECK(inv(lamplighter_element(l5, {{0, 1}}, 1)).render() == "{-1:4}t^-1");

  const auto mb = GroupSpec::metabelian({2, -3});
  // a^x a^x = a^3
  CHECK(eval_word(mb, parse_word("x^-1 a x x^-1 a x")) == eval_word(mb, parse_word("a^3")));
  CHECK_FALSE(eval_word(mb, parse_word("x^-1 a x")) == eval_word(mb, parse_word("a^2")));
  const auto g = eval_word(mb, parse_word("a^38 x^5"));
  const auto& v = std::get<MetabelianElem>(g.value());
  CHECK(v.k == Integer(5));
  CHECK(mb->laurent_modulus()->divides(v.m - LaurentPoly::monomial(38, 5)));
  CHECK(eval_word(mb, {}).is_identity());

  CHECK_THROWS_WITH(mul(identity(h), identity(z2)), "spec mismatch");
  CHECK_THROWS_AS(eval_word(h, parse_word("q")), ParseError);
}

TEST_CASE("words") {
  CHECK(render_word(parse_word("a^38 x^5")) == "a^38 x^5");
  CHECK(render_word(parse_word("  e1^(-2) 1 e2 ")) == "e1^-2 e2");
  CHECK(parse_word("").empty());
  CHECK(render_word(inverse_word(parse_word("a^2 x"))) == "x^-1 a^-2");
  CHECK_THROWS_AS(parse_word("a^"), ParseError);
  CHECK_THROWS_AS(parse_word("3a"), ParseError);
}

TEST_CASE("normal-form words evaluate back to the element") {
  std::mt19937_64 rng(3);
  for (const auto& spec : sampling::all_specs()) {
    for (int i = 0; i < 200; ++i) {
      const auto g = sampling::random_element(spec, rng);
      CHECK(eval_word(spec, to_word(g)) == g);
    }
  }
}

TEST_CASE("group axioms on samples") {
  std::mt19937_64 rng(5);
  for (const auto& spec : sampling::all_specs()) {
    const auto e = identity(spec);
    for (int i = 0; i < 300; ++i) {
      const auto a = sampling::random_element(spec, rng);
      const auto b = sampling::random_element(spec, rng);
      const auto c = sampling::random_element(spec, rng);
      CHECK(mul(mul(a, b), c) == mul(a, mul(b, c)));
      CHECK(mul(a, e) == a);
      CHECK(mul(e, a) == a);
      CHECK(mul(a, inv(a)).is_identity());
      CHECK(mul(inv(a), a).is_identity());
      if (a == b) CHECK(a.hash() == b.hash());
    }
  }
}

TEST_CASE("heisenberg center") {
  const auto h = GroupSpec::heisenberg();
  std::mt19937_64 rng(9);
  const auto z = heisenberg_element(h, 0, 0, 7);
  for (int i = 0; i < 200; ++i) {
    const auto a = sampling::random_element(h, rng);
    CHECK(mul(z, a) == mul(a, z));
  }
  const auto c = commutator(heisenberg_element(h, 1, 0, 0), heisenberg_element(h, 0, 1, 0));
  for (int n = 1; n <= 20; ++n) CHECK(pow(c, n) == heisenberg_element(h, 0, 0, n));
}

TEST_CASE("semidirect conjugation is the matrix action") {
  std::mt19937_64 rng(13);
  for (const char* dsl : {"group kind=semidirect rank=2 matrix=[[2,1],[1,1]]",
                          "group kind=semidirect rank=2 matrix=[[0,-1],[1,0]]",
                          "group kind=semidirect rank=3 matrix=[[1,1,0],[0,1,1],[0,0,1]]"}) {
    const auto s = GroupSpec::parse(dsl);
    const auto hh = semidirect_element(s, zero_vector(s->rank()), 1);
    std::uniform_int_distribution<int> d(-20, 20);
    for (int i = 0; i < 100; ++i) {
      IntVector v(s->rank());
      for (Eigen::Index j = 0; j < v.size(); ++j) v(j) = d(rng);
      for (int k = -8; k <= 8; ++k) {
        const auto lhs = mul(mul(pow(hh, -k), semidirect_element(s, v, 0)), pow(hh, k));
        const IntVector mv = matrix_power(s->action(), s->action_inverse(), k) * v;
        CHECK(lhs == semidirect_element(s, mv, 0));
      }
    }
  }
}

TEST_CASE("lamplighter base group") {
  const auto ll = GroupSpec::lamplighter(3);
  const auto a = eval_word(ll, parse_word("a"));
  const auto t = eval_word(ll, parse_word("t"));
  for (int k = -6; k <= 6; ++k) {
    CHECK(mul(mul(pow(t, k), a), pow(t, -k)) == lamplighter_element(ll, {{k, 1}}, 0));
  }
  std::mt19937_64 rng(17);
  for (int i = 0; i < 200; ++i) {
    auto x = sampling::random_element(ll, rng);
    auto y = sampling::random_element(ll, rng);
    x = lamplighter_element(ll, std::get<LamplighterElem>(x.value()).support, 0);
    y = lamplighter_element(ll, std::get<LamplighterElem>(y.value()).support, 0);
    CHECK(mul(x, y) == mul(y, x));
  }
}

TEST_CASE("defining relations hold") {
  for (const auto& spec : sampling::all_specs()) {
    for (const auto& r : defining_relations(*spec)) {
      INFO(spec->render() << " : " << render_word(r));
      CHECK(eval_word(spec, r).is_identity());
    }
  }
}

TEST_CASE("metabelian class hash respects equality") {
  const auto mb = GroupSpec::metabelian({3, 1, -1});
  const auto lhs = eval_word(mb, parse_word("x^-2 a^3 x^2 x^-1 a x a^-1"));
  CHECK(lhs.is_identity());
  CHECK(lhs.hash() == identity(mb).hash());
}
