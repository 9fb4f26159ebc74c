#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "oracles.hpp"
#include "ratg/automaton.hpp"
#include "sampling.hpp"

using namespace ratg;

namespace {

bool same_set(const ElementSet& a, const ElementSet& b) {
  if (a.size() != b.size()) return false;
  for (const auto& g : a) {
    if (!b.count(g)) return false;
  }
  return true;
}

std::vector<std::string> renders(const ElementSet& s) {
  std::vector<std::string> out;
  for (const auto& g : sorted(s)) out.push_back(g.render());
  return out;
}

}  // namespace

TEST_CASE("expression parser") {
  CHECK(render(parse_rat_expr("(w g)*.f*")) == "(w g)* . f*");
  CHECK(render(parse_rat_expr("a | b . c*")) == "a | b . c*");
  CHECK(render(parse_rat_expr("(a^38 x^3)^-1")) == "x^-3 a^-38");
  CHECK(render(parse_rat_expr("((a | b) . c)^-1")) == "c^-1 . (a^-1 | b^-1)");
  CHECK(render(parse_rat_expr("(e1)^3")) == "e1 . e1 . e1");
  CHECK(render(parse_rat_expr("EMPTY*")) == "\xE2\x88\x85*");
  CHECK(render(parse_rat_expr("\xE2\x88\x85 | 1")) == "\xE2\x88\x85 | 1");
  CHECK(render(parse_rat_expr("(e1^2)* e1")) == "(e1^2)* . e1");
  CHECK_THROWS_AS(parse_rat_expr("(a | b"), ParseError);
  CHECK_THROWS_AS(parse_rat_expr("a |"), ParseError);
  CHECK_THROWS_AS(parse_rat_expr("*a"), ParseError);
  CHECK_THROWS_AS(parse_rat_expr("a ^ x"), ParseError);
}

TEST_CASE("compile: empty and star of empty") {
  const auto z1 = GroupSpec::free_abelian(1);
  CHECK(enumerate(compile(parse_rat_expr("EMPTY"), z1), 5).empty());
  const auto s = enumerate(compile(parse_rat_expr("EMPTY*"), z1), 5);
  CHECK(renders(s) == std::vector<std::string>{"(0)"});
  CHECK_THROWS_AS(compile(parse_rat_expr("e2"), z1), ParseError);
}

TEST_CASE("enumerate examples") {
  const auto h = GroupSpec::heisenberg();
  CHECK(renders(enumerate(compile(parse_rat_expr("g"), h), 1)) == std::vector<std::string>{"(1,0,0)"});
  const auto wgf = enumerate(compile(parse_rat_expr("(w g)* . f*"), h), 4);
  const Alphabet al(h);
  CHECK(wgf.count(al.evaluate(parse_word("w g f"))));
  CHECK(wgf.count(al.evaluate(parse_word("w g w g"))));

  const auto sd = GroupSpec::parse("group kind=semidirect rank=2 matrix=[[2,1],[1,1]]");
  const auto orbit = enumerate(compile(parse_rat_expr("(h^-1)* . e1 . h*"), sd), 3);
  CHECK(orbit.count(semidirect_element(sd, make_vector({2, 1}), 0)));
  // every h^-n x h^n with n <= 1 at three edges
  CHECK(orbit.count(semidirect_element(sd, make_vector({1, 0}), 0)));
}

TEST_CASE("member_bounded never answers no") {
  const auto z2 = GroupSpec::free_abelian(2);
  const auto a = compile(parse_rat_expr("(e1 e2)*"), z2);
  CHECK(member_bounded(a, identity(z2), 0) == Membership::yes);
  CHECK(member_bounded(a, abelian_element(z2, make_vector({3, 3})), 3) == Membership::yes);
  CHECK(member_bounded(a, abelian_element(z2, make_vector({3, 3})), 2) == Membership::unknown);
  const auto b = compile(parse_rat_expr("e1*"), z2);
  CHECK(member_bounded(b, abelian_element(z2, make_vector({5, 5})), 12) == Membership::unknown);
}

TEST_CASE("R1 contains a^(x^p) at bound 2") {
  const auto mb = GroupSpec::metabelian({2, -3});
  const auto r1 = compile(parse_rat_expr("((a^38 x^3)^-1)* . (a^38 x^3 | a^39 x^3)*"), mb);
  const auto target = eval_word(mb, parse_word("x^-3 a x^3"));
  CHECK(member_bounded(r1, target, 2) == Membership::yes);
}

TEST_CASE("intersect_bounded examples") {
  const auto z1 = GroupSpec::free_abelian(1);
  const auto s = intersect_bounded(compile(parse_rat_expr("e1*"), z1), compile(parse_rat_expr("(e1^2)*"), z1), 6);
  CHECK(renders(s) == std::vector<std::string>{"(0)", "(2)", "(4)", "(6)"});
  CHECK(intersect_bounded(compile(parse_rat_expr("e1*"), z1), compile(parse_rat_expr("EMPTY"), z1), 6).empty());
}

TEST_CASE("compilation agrees exactly with the set-semantics oracle") {
  std::mt19937_64 rng(21);
  const std::vector<std::pair<SpecPtr, std::vector<std::string>>> cases = {
      {GroupSpec::free_abelian(2), {"e1", "e2"}},
      {GroupSpec::heisenberg(), {"g", "f", "z"}},
      {GroupSpec::lamplighter(2), {"a", "t"}},
      {GroupSpec::metabelian({2, -3}), {"a", "x"}},
  };
  for (const auto& [spec, letters] : cases) {
    const Alphabet alphabet(spec);
    for (int i = 0; i < 40; ++i) {
      const auto expr = sampling::random_expr(rng, letters, 4);
      const auto aut = compile(expr, alphabet);
      for (std::size_t bound : {0, 1, 2, 3, 4}) {
        const auto got = enumerate(aut, bound);
        const auto want = oracle::support(oracle::denote(expr, alphabet, bound));
        INFO(render(expr) << " bound " << bound);
        CHECK(same_set(got, want));
        for (const auto& g : enumerate(aut, bound)) CHECK(enumerate(aut, bound + 1).count(g));
      }
    }
  }
}

TEST_CASE("pump") {
  const auto z1 = GroupSpec::free_abelian(1);
  const auto w = pump(compile(parse_rat_expr("e1*"), z1), 8);
  REQUIRE(w);
  CHECK(w->a.render() == "(0)");
  CHECK(w->q.render() == "(1)");
  CHECK(w->b.render() == "(0)");

  const auto h = GroupSpec::heisenberg();
  CHECK_FALSE(pump(compile(parse_rat_expr("g | f"), h), 8));
  CHECK_FALSE(pump(compile(parse_rat_expr("(g g^-1)*"), h), 8));
  CHECK_FALSE(pump(compile(parse_rat_expr("a*"), GroupSpec::lamplighter(2)), 8));

  const auto sd = GroupSpec::parse("group kind=semidirect rank=2 matrix=[[2,1],[1,1]]");
  const auto aut = compile(parse_rat_expr("(h^-1)* . e1 . h*"), sd);
  const auto p = pump(aut, 8);
  REQUIRE(p);
  CHECK_FALSE(p->q.is_identity());
  for (int n = 0; n <= 10; ++n) {
    const auto word = mul(mul(p->a, pow(p->q, n)), p->b);
    CHECK(member_bounded(aut, word, p->prefix_length + n * p->cycle_length + p->suffix_length) == Membership::yes);
    CHECK(mul(p->a_normalized, pow(p->q_normalized, n)) == word);
  }
}

TEST_CASE("pumping soundness on random automata") {
  std::mt19937_64 rng(23);
  const auto h = GroupSpec::heisenberg();
  for (int i = 0; i < 60; ++i) {
    const auto expr = sampling::random_expr(rng, {"g", "f"}, 4);
    const auto aut = compile(expr, h);
    const auto p = pump(aut, 6);
    if (!p) continue;
    for (int n = 0; n <= 10; ++n) {
      const auto word = mul(mul(p->a, pow(p->q, n)), p->b);
      CHECK(member_bounded(aut, word, p->prefix_length + n * p->cycle_length + p->suffix_length) == Membership::yes);
      CHECK(mul(p->a_normalized, pow(p->q_normalized, n)) == word);
    }
  }
}

TEST_CASE("subgroup generators") {
  const auto h = GroupSpec::heisenberg();
  const auto g = subgroup_generators(compile(parse_rat_expr("g"), h));
  REQUIRE(g.size() == 1);
  CHECK(g.front().render() == "(1,0,0)");
  CHECK(subgroup_generators(compile(parse_rat_expr("EMPTY"), h)).empty());

  const auto z2 = GroupSpec::free_abelian(2);
  const auto aut = compile(parse_rat_expr("e1* . e2*"), z2);
  const auto gens = subgroup_generators(aut);
  const auto reference = oracle::ball(z2, {abelian_element(z2, make_vector({1, 0})), abelian_element(z2, make_vector({0, 1}))}, 6);
  CHECK(same_set(oracle::ball(z2, gens, 6), reference));
}

TEST_CASE("subgroup generators reach the accepted set within twice the bound") {
  std::mt19937_64 rng(29);
  for (const auto& [spec, letters] : std::vector<std::pair<SpecPtr, std::vector<std::string>>>{
           {GroupSpec::heisenberg(), {"g", "f"}}, {GroupSpec::free_abelian(2), {"e1", "e2"}}}) {
    for (int i = 0; i < 25; ++i) {
      const auto expr = sampling::random_expr(rng, letters, 3);
      const auto aut = compile(expr, spec);
      const auto gens = subgroup_generators(aut);
      for (std::size_t bound = 1; bound <= 4; ++bound) {
        const auto accepted = enumerate(aut, bound);
        const auto reach = oracle::ball(spec, gens, 2 * bound);
        for (const auto& x : accepted) CHECK(reach.count(x));
      }
    }
  }
}

TEST_CASE("image and preimage") {
  const auto sd = GroupSpec::parse("group kind=semidirect rank=2 matrix=[[2,1],[1,1]]");
  const auto z1 = GroupSpec::free_abelian(1);
  const auto kill = GroupHom::from_words(sd, Alphabet(z1), {{"e1", "1"}, {"e2", "1"}, {"h", "e1"}});
  CHECK(kill.broken_relations().empty());
  const auto aut = compile(parse_rat_expr("(h^-1)* . e1 . h*"), sd);
  const auto img = image(aut, kill);
  CHECK(renders(enumerate(img, 2)) == std::vector<std::string>{"(-1)", "(0)", "(1)"});
  CHECK(renders(enumerate(img, 3)) == std::vector<std::string>{"(-1)", "(-2)", "(0)", "(1)", "(2)"});
  for (std::size_t bound = 0; bound <= 5; ++bound) {
    ElementSet mapped;
    for (const auto& g : enumerate(aut, bound)) mapped.insert(kill.apply(g));
    CHECK(same_set(mapped, enumerate(img, bound)));
  }

  const auto bad = GroupHom::from_words(sd, Alphabet(z1), {{"e1", "e1"}, {"e2", "1"}, {"h", "1"}});
  CHECK_FALSE(bad.broken_relations().empty());

  const auto mb = GroupSpec::metabelian({2, -3});
  const auto to_z = GroupHom::from_words(mb, Alphabet(z1), {{"a", "1"}, {"x", "e1"}});
  CHECK(to_z.broken_relations().empty());
  const auto r2 = compile(parse_rat_expr("(x^-3)* . (x^3 | a x^3)*"), mb);
  for (const auto& v : enumerate(image(r2, to_z), 4)) {
    CHECK((std::get<AbelianVec>(v.value()).v(0) % Integer(3)).is_zero());
  }

  // Z x Z_2 onto Z, kernel {0, e2}
  const auto g = GroupSpec::parse("group kind=abelian rank=1 torsion=[2]");
  auto phi = GroupHom::from_words(g, Alphabet(z1), {{"e1", "e1"}, {"e2", "1"}});
  CHECK(phi.broken_relations().empty());
  CHECK_THROWS_WITH(preimage_finite_kernel(compile(parse_rat_expr("(e1^2)*"), z1), phi), "finite kernel required");
  phi.set_kernel({eval_word(g, parse_word("e2"))});
  phi.set_section({{"e1", eval_word(g, parse_word("e1"))}});
  const auto evens = compile(parse_rat_expr("(e1^2)* | (e1^-2)*"), z1);
  const auto pre = preimage_finite_kernel(evens, phi);
  const auto lifted = enumerate(pre, 7);
  std::vector<std::string> want;
  for (int k = -12; k <= 12; k += 2) {
    for (int eps : {0, 1}) want.push_back(abelian_element(g, make_vector({k, eps})).render());
  }
  std::sort(want.begin(), want.end());
  CHECK(renders(lifted) == want);
  ElementSet projected;
  for (const auto& x : lifted) projected.insert(phi.apply(x));
  CHECK(same_set(projected, enumerate(evens, 6)));
  CHECK(enumerate(preimage_finite_kernel(compile(parse_rat_expr("EMPTY"), z1), phi), 6).empty());

  auto trivial = GroupHom::from_words(z1, Alphabet(z1), {{"e1", "e1"}});
  trivial.set_kernel({});
  trivial.set_section({{"e1", eval_word(z1, parse_word("e1"))}});
  const auto pre2 = preimage_finite_kernel(evens, trivial);
  CHECK(same_set(enumerate(pre2, 7), enumerate(evens, 6)));
}
