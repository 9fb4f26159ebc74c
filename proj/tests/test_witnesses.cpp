#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <random>
#include <set>

#include "oracles.hpp"
#include "ratg/witnesses.hpp"

using namespace ratg;

namespace {

WitnessConfig config(std::string name, SpecPtr spec = nullptr, std::map<std::string, std::string> params = {}) {
  WitnessConfig c;
  c.name = std::move(name);
  c.spec = std::move(spec);
  c.params = std::move(params);
  return c;
}

bool all_pass(const WitnessReport& r, std::string_view prefix) {
  bool seen = false;
  for (const auto& f : r.facts) {
    if (!f.id.starts_with(prefix)) continue;
    seen = true;
    if (!f.pass) return false;
  }
  return seen;
}

using Mat2 = std::array<long, 4>;

// Orbit of (1,0) under M^n for |n| <= bound, with plain 2x2 arithmetic; M must have det +-1.
std::vector<std::array<long, 2>> orbit2(const Mat2& m, long bound) {
  const long det = m[0] * m[3] - m[1] * m[2];
  const Mat2 minv{m[3] * det, -m[1] * det, -m[2] * det, m[0] * det};
  std::vector<std::array<long, 2>> out;
  for (long n = -bound; n <= bound; ++n) {
    std::array<long, 2> v{1, 0};
    const Mat2& s = n < 0 ? minv : m;
    for (long i = 0; i < std::abs(n); ++i) v = {s[0] * v[0] + s[1] * v[1], s[2] * v[0] + s[3] * v[1]};
    out.push_back(v);
  }
  return out;
}

SpecPtr semidirect2(const Mat2& m) { return GroupSpec::semidirect(make_matrix({{m[0], m[1]}, {m[2], m[3]}})); }

}  // namespace

TEST_CASE("polycyclic orbit examples") {
  const auto rotation = polycyclic_orbit(config("polycyclic_orbit", semidirect2({0, -1, 1, 0})));
  CHECK(rotation.verdict() == Verdict::consistent);
  CHECK(rotation.findings.at("repetition") == "4");
  REQUIRE(rotation.find("commutation"));
  CHECK(rotation.find("commutation")->pass);

  const auto fibonacci = polycyclic_orbit(config("polycyclic_orbit", semidirect2({2, 1, 1, 1})));
  CHECK(fibonacci.verdict() == Verdict::consistent);
  CHECK(fibonacci.findings.at("injective") == "true");
  const auto orbit = orbit2({2, 1, 1, 1}, 8);
  CHECK(std::set<std::array<long, 2>>(orbit.begin(), orbit.end()).size() == orbit.size());

  const auto ident = polycyclic_orbit(config("polycyclic_orbit", semidirect2({1, 0, 0, 1}), {{"x", "e2"}}));
  CHECK(ident.findings.at("repetition") == "1");
  CHECK(ident.verdict() == Verdict::consistent);

  CHECK_THROWS_WITH(polycyclic_orbit(config("polycyclic_orbit", nullptr, {{"x", "1"}})), "x must not be the identity");
  CHECK_THROWS_AS(polycyclic_orbit(config("polycyclic_orbit", nullptr, {{"x", "h"}})), std::invalid_argument);
  CHECK_THROWS_AS(polycyclic_orbit(config("polycyclic_orbit", GroupSpec::heisenberg())), std::invalid_argument);
  CHECK_THROWS_AS(polycyclic_orbit(config("polycyclic_orbit", nullptr, {{"bogus", "1"}})), std::invalid_argument);
}

TEST_CASE("finite-order matrices repeat within N = 12") {
  const std::vector<std::pair<Mat2, long>> cases = {
      {{-1, 0, 0, -1}, 2}, {{0, -1, 1, -1}, 3}, {{0, -1, 1, 0}, 4}, {{1, -1, 1, 0}, 6}, {{0, 1, 1, 0}, 2}};
  for (const auto& [m, order] : cases) {
    const auto r = polycyclic_orbit(config("polycyclic_orbit", semidirect2(m), {{"N", "12"}}));
    CHECK(r.verdict() == Verdict::consistent);
    const auto gap = std::stol(r.findings.at("repetition"));
    CHECK(order % gap == 0);
    // the oracle orbit has the same minimal period
    const auto orbit = orbit2(m, 12);
    long period = 1;
    while (orbit[12 + period] != orbit[12]) ++period;
    CHECK(period == gap);
  }
}

TEST_CASE("heisenberg diagonal") {
  const auto r = heisenberg_diagonal(config("heisenberg_diagonal"));
  CHECK(r.verdict() == Verdict::consistent);
  CHECK(r.findings.at("three-term-hits") == "0");
  CHECK(r.findings.at("noncommuting-pairs") == "72");
  REQUIRE(r.find("pump-1-2"));
  CHECK(r.find("pump-1-2")->evidence.find("in_S=no") != std::string::npos);

  // w central and g, f not commuting: (gf)^n != g^n f^n, so the window equality breaks
  const auto central = heisenberg_diagonal(config("heisenberg_diagonal", nullptr, {{"w", "z"}, {"g", "g"}, {"f", "f"}}));
  CHECK(central.findings.at("noncommuting-pairs") == "0");
  CHECK_FALSE(central.find("R-window")->pass);
  CHECK(central.verdict() == Verdict::violation);

  const auto commuting = heisenberg_diagonal(config("heisenberg_diagonal", nullptr, {{"f", "g"}}));
  CHECK(commuting.findings.at("noncommuting-pairs") == "0");
  CHECK(all_pass(commuting, "pump-"));
  CHECK(commuting.findings.at("three-term-hits") != "0");

  const auto trivial_f = heisenberg_diagonal(config("heisenberg_diagonal", nullptr, {{"f", "1"}}));
  CHECK(trivial_f.verdict() == Verdict::consistent);

  CHECK_THROWS_WITH(heisenberg_diagonal(config("heisenberg_diagonal", nullptr, {{"g", "f"}})),
                    "hypothesis violated: [g,w] != 1");
}

TEST_CASE("heisenberg windows against the product formula") {
  const auto spec = GroupSpec::heisenberg();
  const auto r = heisenberg_diagonal(config("heisenberg_diagonal", spec, {{"N", "4"}}));
  CHECK(r.find("R-window")->pass);
  CHECK(r.find("S-window")->pass);
  // w^n g^n f^n = (n, n, n + n^2) and w^n f^n = (n, n, n^2) with w=(1,0,0), g=(0,0,1), f=(0,1,0)
  const Alphabet alphabet(spec);
  for (long n = 0; n <= 8; ++n) {
    const auto w = alphabet.lookup("g"), g = alphabet.lookup("z"), f = alphabet.lookup("f");
    CHECK(pow(w, n) * pow(g, n) * pow(f, n) == heisenberg_element(spec, n, n, n + n * n));
    CHECK(pow(w, n) * pow(f, n) == heisenberg_element(spec, n, n, n * n));
  }
}

TEST_CASE("metabelian sets and equalities") {
  for (const auto& coeffs : std::vector<std::vector<Integer>>{{2, -3}, {3, 1, -1}}) {
    const auto r = metabelian_r1r4(config("metabelian_r1r4", GroupSpec::metabelian(coeffs)));
    CHECK(r.verdict() == Verdict::consistent);
    CHECK(all_pass(r, "member-"));
    CHECK(all_pass(r, "factor-"));
    CHECK(all_pass(r, "power-"));
    CHECK(all_pass(r, "split-"));
    CHECK(all_pass(r, "tail-"));
  }
  CHECK_THROWS_AS(metabelian_r1r4(config("metabelian_r1r4", GroupSpec::metabelian({1, 1, -1}))), std::invalid_argument);
}

TEST_CASE("metabelian membership facts for sampled f") {
  std::mt19937_64 rng(21);
  std::uniform_int_distribution<int> coeff(-3, 3), degree(1, 3);
  int tried = 0;
  while (tried < 12) {
    std::vector<Integer> f(static_cast<std::size_t>(degree(rng)) + 1);
    for (auto& c : f) c = coeff(rng);
    if (abs(f.front()) < Integer(2) || abs(f.back()) < Integer(2)) continue;
    Integer g = 0;
    for (const auto& c : f) g = gcd(g, c);
    if (!g.is_one()) continue;
    ++tried;
    const auto r = metabelian_r1r4(config("metabelian_r1r4", GroupSpec::metabelian(f), {{"N", "3"}}));
    CHECK(all_pass(r, "member-"));
    CHECK(all_pass(r, "factor-"));
    CHECK(all_pass(r, "power-"));
  }
}

TEST_CASE("lamplighter howson") {
  const auto whole = lamplighter_howson(config("lamplighter_howson", nullptr, {{"H", "t, a"}, {"K", "t"}}));
  CHECK(whole.verdict() == Verdict::consistent);
  CHECK(whole.findings.at("profile") == "1,3,5,7,9,11,13");
  CHECK(whole.findings.at("growing") == "false");

  const auto diagonal = lamplighter_howson(config("lamplighter_howson", nullptr, {{"H", "a t"}, {"K", "t"}}));
  CHECK(diagonal.findings.at("intersection") == "{" + identity(GroupSpec::lamplighter(2)).render() + "}");

  const auto standard = lamplighter_howson(config("lamplighter_howson"));
  CHECK(standard.verdict() == Verdict::consistent);
  CHECK(standard.findings.count("new-profile"));

  CHECK_THROWS_WITH(lamplighter_howson(config("lamplighter_howson", nullptr, {{"H", " "}})), "empty generator list");
}

TEST_CASE("balls agree with the oracle") {
  const auto spec = GroupSpec::lamplighter(3);
  const Alphabet alphabet(spec);
  const std::vector<GroupElement> gens{alphabet.lookup("a"), alphabet.lookup("t")};
  const auto layers = ball_layers(spec, gens, 5);
  ElementSet all;
  for (const auto& [r, set] : layers) all.insert(set.begin(), set.end());
  CHECK(all == oracle::ball(spec, gens, 5));
}

TEST_CASE("witnesses are deterministic") {
  for (const auto& name : witness_names()) {
    const auto a = run_witness(config(name));
    const auto b = run_witness(config(name));
    CHECK(a.render() == b.render());
    CHECK(a.verdict() == Verdict::consistent);
  }
  CHECK_THROWS_AS(run_witness(config("nope")), std::invalid_argument);
}
