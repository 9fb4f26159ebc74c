#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <fstream>
#include <random>
#include <sstream>

#include "ratg/cli.hpp"
#include "ratg/presburger.hpp"
#include "sampling.hpp"

namespace {

struct Result {
  int code;
  std::string out, err;
};

Result ratg_run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = ratg::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

const std::string z1 = "group kind=free_abelian rank=1";
const std::string z2 = "group kind=free_abelian rank=2";

}  // namespace

TEST_CASE("heisenberg intersection window") {
  const auto r = ratg_run({"--spec", "group kind=heisenberg", "intersect", "(w g)*.f*", "w*.(g f)*", "--max", "8"});
  CHECK(r.code == 0);
  // with w=(0,0,1), g=(1,0,0), f=(0,1,0): (wg)^n f^n = (n, n, n + n^2) = w^(n(n+1)/2) (gf)^n,
  // reachable in R2 within 8 edges iff n(n+1)/2 + n <= 8
  std::vector<std::string> want;
  for (long n = 0; n * (n + 1) / 2 + n <= 8; ++n) {
    want.push_back("(" + std::to_string(n) + "," + std::to_string(n) + "," + std::to_string(n + n * n) + ")");
  }
  want.push_back("# " + std::to_string(want.size()) + " elements");
  CHECK(lines(r.out) == want);
}

TEST_CASE("set decisions") {
  auto r = ratg_run({"--spec", z1, "decide", "--equal", "(e1^2)*|(e1^2)*.e1", "e1*"});
  CHECK(r.code == 0);
  CHECK(r.out == "true\n");
  CHECK(r.err.starts_with("stats elapsed_ms="));
  CHECK(ratg_run({"--spec", z1, "decide", "--subset", "(e1^2)*", "e1*"}).out == "true\n");
  CHECK(ratg_run({"--spec", z1, "decide", "--subset", "e1*", "(e1^2)*"}).out == "false\n");
  CHECK(ratg_run({"--spec", z1, "decide", "--empty", "(e1^2)*", "(e1^2)* . e1"}).out == "true\n");
  CHECK(ratg_run({"--spec", z1, "decide", "--empty", "(e1^2)*"}).out == "false\n");
  // malformed: a stray argument after --empty
  CHECK(ratg_run({"--spec", z1, "decide", "--empty", "(e1^2)* . e1", "∩-form", "via", "--subset"}).code == 1);
  CHECK(ratg_run({"--spec", "group kind=heisenberg", "decide", "--empty", "g*"}).code == 1);
}

TEST_CASE("formula decisions") {
  CHECK(ratg_run({"decide", "E x. A y. (2|x & x+y<=3) | x=0"}).out == "true\n");
  CHECK(ratg_run({"decide", "E x. 2|x & 3|x & 0 < x & x < 6"}).out == "false\n");
  const auto open = ratg_run({"decide", "x <= 0"});
  CHECK(open.code == 1);
  CHECK(open.err == "error: free variables present: x\n");
  CHECK(ratg_run({"decide", "E x. x <="}).code == 1);
  CHECK(ratg_run({"decide", "true", "--equal", "a", "b"}).code == 1);
}

TEST_CASE("automaton verbs") {
  CHECK(ratg_run({"--spec", z1, "enumerate", "e1* | (e1^-1)*", "--max", "2"}).out == "(-1)\n(-2)\n(0)\n(1)\n(2)\n# 5 elements\n");
  CHECK(ratg_run({"--spec", z1, "--porcelain", "enumerate", "e1^3", "--max", "1"}).out == "element\t(3)\n");
  CHECK(ratg_run({"--spec", z2, "member", "e1* . e2*", "e1^3 e2", "--max", "4"}).out == "yes\n");
  CHECK(ratg_run({"--spec", z2, "member", "e1* . e2*", "e1^3 e2", "--max", "3"}).out == "unknown\n");
  CHECK(ratg_run({"--spec", z1, "pump", "e1^2 . e1^3"}).out == "none\n");
  const auto p = lines(ratg_run({"--spec", z1, "pump", "e1*"}).out);
  REQUIRE(p.size() == 7);
  CHECK(p[0] == "a (0)");
  CHECK(p[1] == "q (1)");
  CHECK(ratg_run({"--spec", z2, "gens", "(e1 e2)* . e2^2"}).out == "(0,2)\n(1,1)\n");
  CHECK(ratg_run({"--spec", z2, "intersect", "--exact", "e1* . e2*", "(e1 e2)*"}).out == "L((0,0); (1,1))\n");
  CHECK(ratg_run({"--spec", "group kind=heisenberg", "intersect", "--exact", "g*", "f*"}).code == 1);
  CHECK(ratg_run({"--spec", z2, "semilinear", "(e1 e2)* . e1^3*"}).out == "L((0,0); (1,1), (3,0))\n");
  CHECK(ratg_run({"enumerate", "e1*"}).code == 1);
  CHECK(ratg_run({"--spec", z1, "enumerate", "e1 |"}).code == 1);
  CHECK(ratg_run({"--spec", "group kind=nope", "enumerate", "e1"}).code == 1);
  CHECK(ratg_run({}).code == 1);
  CHECK(ratg_run({"--help"}).code == 0);
}

TEST_CASE("image and preimage verbs") {
  const std::string sd = "group kind=semidirect rank=2 matrix=[[2,1],[1,1]]";
  const auto img = ratg_run({"--spec", sd, "image", "(h^-1)* . e1 . h*", "--target", z1, "--map", "e1=1", "e2=1", "h=e1",
                             "--max", "2"});
  CHECK(img.code == 0);
  CHECK(img.out == "(-1)\n(0)\n(1)\n# 3 elements\n");
  CHECK(ratg_run({"--spec", sd, "image", "e1", "--target", z1, "--map", "e1=e1", "e2=1", "h=1"}).code == 1);

  const std::string zz2 = "group kind=abelian rank=1 torsion=[2]";
  const auto pre = ratg_run({"--spec", zz2, "preimage", "(e1^2)*", "--target", z1, "--map", "e1=e1", "e2=1", "--kernel",
                             "e2", "--section", "e1=e1", "--max", "4"});
  CHECK(pre.code == 0);
  CHECK(lines(pre.out).size() == 9);
  const auto missing = ratg_run({"--spec", zz2, "preimage", "(e1^2)*", "--target", z1, "--map", "e1=e1", "e2=1"});
  CHECK(missing.code == 1);
  CHECK(missing.err == "error: finite kernel required\n");
  const auto desc = lines(ratg_run({"--spec", zz2, "preimage", "e1", "--target", z1, "--map", "e1=e1", "e2=1",
                                    "--kernel", "e2", "--section", "e1=e1"})
                              .out);
  REQUIRE(!desc.empty());
  CHECK(desc[0].starts_with("states "));
}

TEST_CASE("witness verb") {
  const auto ok = ratg_run({"witness", "heisenberg_diagonal"});
  CHECK(ok.code == 0);
  CHECK(ok.out.find("fact pump-1-2 pass") != std::string::npos);
  CHECK(ok.out.find("verdict consistent-with-paper") != std::string::npos);
  const auto violated = ratg_run({"witness", "heisenberg_diagonal", "--param", "w=z", "g=g", "f=f"});
  CHECK(violated.code == 2);
  const auto aliased = ratg_run({"--gen", "w=g", "--gen", "u=z", "witness", "heisenberg_diagonal", "--param", "g=u"});
  CHECK(aliased.code == 0);
  CHECK(ratg_run({"witness", "nope"}).code == 1);
  CHECK(ratg_run({"witness", "polycyclic_orbit", "--param", "N"}).code == 1);
  CHECK(ratg_run({"witness", "polycyclic_orbit", "--param", "x=1"}).code == 1);
  const auto orbit = ratg_run({"--spec", "group kind=semidirect rank=2 matrix=[[0,-1],[1,0]]", "--porcelain", "witness",
                               "polycyclic_orbit"});
  CHECK(orbit.code == 0);
  CHECK(orbit.out.find("finding\trepetition\t4\n") != std::string::npos);
  CHECK(orbit.out.find("fact\tcommutation\tpass\t") != std::string::npos);
}

TEST_CASE("spec file") {
  const std::string path = "ratg_test_spec.txt";
  {
    std::ofstream f(path);
    f << "group kind=free_abelian\n  rank=1\n";
  }
  CHECK(ratg_run({"--spec-file", path, "enumerate", "e1", "--max", "1"}).out == "(1)\n# 1 element\n");
  std::remove(path.c_str());
  CHECK(ratg_run({"--spec-file", path, "enumerate", "e1"}).code == 1);
}

TEST_CASE("identical invocations give identical output") {
  const std::vector<std::vector<std::string>> calls = {
      {"--spec", "group kind=lamplighter mod=3", "enumerate", "(a t)* . t^-1*", "--max", "5"},
      {"--spec", "group kind=metabelian f=[2,-3]", "enumerate", "(x^-3)* . (x^3 | a x^3)*", "--max", "4"},
      {"--spec", z2, "semilinear", "(e1 | e2^-1)* . e1^2"},
      {"witness", "metabelian_r1r4"},
      {"witness", "lamplighter_howson"},
  };
  for (const auto& c : calls) {
    const auto a = ratg_run(c);
    const auto b = ratg_run(c);
    CHECK(a.code == 0);
    CHECK(a.out == b.out);
  }
}

TEST_CASE("rendered semilinear sets re-parse to equal sets") {
  std::mt19937_64 rng(51);
  for (int i = 0; i < 20; ++i) {
    const auto expr = sampling::random_expr(rng, {"e1", "e2"}, 3);
    const auto r = ratg_run({"--spec", z2, "semilinear", ratg::render(expr)});
    REQUIRE(r.code == 0);
    const auto text = r.out.substr(0, r.out.size() - 1);
    const auto original = ratg::from_automaton(ratg::compile(expr, ratg::GroupSpec::free_abelian(2)));
    CHECK(ratg::decide_equal(ratg::SemilinearSet::parse(text, 2), original));
  }
}
