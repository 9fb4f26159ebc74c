#include "ratg/witnesses.hpp"

#include <algorithm>
#include <random>
#include <set>
#include <sstream>
#include <unordered_map>
#include <stdexcept>

#include "ratg/linalg.hpp"
#include "ratg/rat_expr.hpp"

namespace ratg {

std::string_view verdict_name(Verdict v) {
  return v == Verdict::consistent ? "consistent-with-paper" : "violation-found";
}

Verdict WitnessReport::verdict() const {
  const bool failed = std::any_of(facts.begin(), facts.end(), [](const WitnessFact& f) { return !f.pass; });
  return failed ? Verdict::violation : Verdict::consistent;
}

const WitnessFact* WitnessReport::find(std::string_view id) const {
  for (const auto& f : facts) {
    if (f.id == id) return &f;
  }
  return nullptr;
}

std::string WitnessReport::render() const {
  std::ostringstream os;
  const auto failed = std::count_if(facts.begin(), facts.end(), [](const WitnessFact& f) { return !f.pass; });
  os << name << ": " << verdict_name(verdict()) << " (" << facts.size() - static_cast<std::size_t>(failed) << "/"
     << facts.size() << " facts hold)\n";
  if (!bounds.empty()) {
    os << "  bounds:";
    for (const auto& [k, v] : bounds) os << ' ' << k << '=' << v;
    os << '\n';
  }
  for (const auto& n : notes) os << "  note: " << n << '\n';
  for (const auto& f : facts) {
    if (!f.pass) os << "  FAILED: " << f.description << '\n';
  }
  for (const auto& [k, v] : findings) os << "finding " << k << ' ' << v << '\n';
  for (const auto& f : facts) os << "fact " << f.id << ' ' << (f.pass ? "pass" : "fail") << ' ' << f.evidence << '\n';
  os << "verdict " << verdict_name(verdict()) << '\n';
  return os.str();
}

std::vector<std::string> witness_names() {
  return {"polycyclic_orbit", "heisenberg_diagonal", "metabelian_r1r4", "lamplighter_howson"};
}

SpecPtr default_witness_spec(const std::string& name) {
  if (name == "polycyclic_orbit") return GroupSpec::semidirect(make_matrix({{2, 1}, {1, 1}}));
  if (name == "heisenberg_diagonal") return GroupSpec::heisenberg();
  if (name == "metabelian_r1r4") return GroupSpec::metabelian({2, -3});
  if (name == "lamplighter_howson") return GroupSpec::lamplighter(2);
  throw std::invalid_argument("unknown witness '" + name + "'");
}

std::map<std::size_t, ElementSet> ball_layers(const SpecPtr& spec, const std::vector<GroupElement>& gens,
                                              std::size_t radius) {
  std::vector<GroupElement> steps;
  for (const auto& g : gens) {
    steps.push_back(g);
    steps.push_back(inv(g));
  }
  std::map<std::size_t, ElementSet> layers;
  ElementSet seen{identity(spec)};
  layers[0] = seen;
  for (std::size_t r = 1; r <= radius; ++r) {
    ElementSet next;
    for (const auto& g : sorted(layers[r - 1])) {
      for (const auto& s : steps) {
        auto h = g * s;
        if (seen.insert(h).second) next.insert(std::move(h));
      }
    }
    layers[r] = std::move(next);
  }
  return layers;
}

namespace {

class Params {
 public:
  Params(const WitnessConfig& cfg, std::vector<std::string> allowed) : cfg_(cfg) {
    for (const auto& [k, v] : cfg.params) {
      if (std::find(allowed.begin(), allowed.end(), k) == allowed.end()) {
        throw std::invalid_argument("unknown parameter '" + k + "' for witness " + cfg.name);
      }
    }
  }

  [[nodiscard]] std::string text(const std::string& key, const std::string& fallback) const {
    const auto it = cfg_.params.find(key);
    return it == cfg_.params.end() ? fallback : it->second;
  }

  [[nodiscard]] long count(const std::string& key, long fallback, long min = 1) const {
    const auto it = cfg_.params.find(key);
    if (it == cfg_.params.end()) return fallback;
    long v = 0;
    try {
      v = Integer::parse(it->second).to_int64();
    } catch (const std::exception&) {
      throw std::invalid_argument("parameter " + key + " must be an integer");
    }
    if (v < min || v > 1'000'000) {
      throw std::invalid_argument("parameter " + key + " out of range");
    }
    return v;
  }

 private:
  const WitnessConfig& cfg_;
};

SpecPtr spec_for(const WitnessConfig& cfg, GroupKind kind) {
  SpecPtr spec = cfg.spec ? cfg.spec : default_witness_spec(cfg.name);
  if (spec->kind() != kind) {
    throw std::invalid_argument(cfg.name + " needs a group of kind " + std::string(kind_name(kind)));
  }
  return spec;
}

Alphabet alphabet_for(const WitnessConfig& cfg, const SpecPtr& spec) {
  Alphabet alphabet(spec);
  for (const auto& [name, word] : cfg.gens) alphabet.alias(name, parse_word(word));
  return alphabet;
}

GroupElement element(const Alphabet& alphabet, const std::string& word) {
  return alphabet.evaluate(parse_word(word));
}

std::string join(const std::vector<GroupElement>& elems) {
  std::string s;
  for (const auto& g : elems) s += (s.empty() ? "" : ",") + g.render();
  return "{" + s + "}";
}

std::string join_set(const ElementSet& set) { return join(sorted(set)); }

void add(WitnessReport& r, std::string id, std::string description, bool pass, std::string evidence) {
  r.facts.push_back({std::move(id), std::move(description), pass, std::move(evidence)});
}

}  // namespace

// ---------------------------------------------------------------------------

WitnessReport polycyclic_orbit(const WitnessConfig& cfg) {
  const Params params(cfg, {"x", "N"});
  const SpecPtr spec = spec_for(cfg, GroupKind::semidirect);
  Alphabet alphabet = alphabet_for(cfg, spec);
  const long n_max = params.count("N", 8);
  const GroupElement x = element(alphabet, params.text("x", "e1"));
  if (x.is_identity()) throw std::invalid_argument("x must not be the identity");
  const auto& xv = std::get<SemidirectElem>(x.value());
  if (!xv.k.is_zero()) throw std::invalid_argument("x must lie in the abelian normal subgroup");
  const GroupElement h = alphabet.lookup("h");
  alphabet.bind("x", x);

  WitnessReport r;
  r.name = "polycyclic_orbit";
  r.bounds["N"] = std::to_string(n_max);

  std::map<long, GroupElement> orbit;
  bool conj_ok = true;
  std::string conj_evidence = "all n";
  for (long n = -n_max; n <= n_max; ++n) {
    const GroupElement c = conj(x, pow(h, n));
    const IntVector expected = matrix_power(spec->action(), spec->action_inverse(), n) * xv.v;
    if (!same_vector(std::get<SemidirectElem>(c.value()).v, expected)) {
      conj_ok = false;
      conj_evidence = "n=" + std::to_string(n) + " h^-n x h^n=" + c.render() + " M^n x=" + render(expected);
    }
    orbit.emplace(n, c);
  }
  add(r, "conjugation", "h^-n x h^n equals M^n x for |n| <= N", conj_ok, conj_evidence);

  // smallest positive gap n - t with M^n x = M^t x inside the window
  std::optional<long> gap;
  for (long d = 1; d <= 2 * n_max && !gap; ++d) {
    for (long t = -n_max; t + d <= n_max; ++t) {
      if (orbit.at(t) == orbit.at(t + d)) {
        gap = d;
        break;
      }
    }
  }
  if (gap) {
    const GroupElement c = commutator(x, pow(h, *gap));
    add(r, "commutation", "repetition forces [x, h^(n-t)] = 1", c.is_identity(),
        "n-t=" + std::to_string(*gap) + " [x,h^" + std::to_string(*gap) + "]=" + c.render());
    r.findings["repetition"] = std::to_string(*gap);
    r.findings["injective"] = "false";
    r.notes.push_back("orbit repeats with period " + std::to_string(*gap) + "; R is finite");
  } else {
    r.findings["repetition"] = "none";
    r.findings["injective"] = "true";
    r.notes.push_back("orbit injective on the window: evidence that R is infinite");
  }

  const auto aut = compile(parse_rat_expr("(h^-1)* . x . h*"), alphabet);
  ElementSet rebuilt;
  for (const auto& g : enumerate(aut, static_cast<std::size_t>(2 * n_max + 1))) {
    if (std::get<SemidirectElem>(g.value()).k.is_zero()) rebuilt.insert(g);
  }
  ElementSet expected;
  for (long n = 0; n <= n_max; ++n) expected.insert(orbit.at(n));
  add(r, "rebuilt-R", "(h^-1)* x h* ∩ A matches {M^n x : 0 <= n <= N}", rebuilt == expected,
      "size=" + std::to_string(rebuilt.size()) + " expected=" + std::to_string(expected.size()));
  return r;
}

// ---------------------------------------------------------------------------

WitnessReport heisenberg_diagonal(const WitnessConfig& cfg) {
  const Params params(cfg, {"w", "g", "f", "N"});
  const SpecPtr spec = spec_for(cfg, GroupKind::heisenberg);
  Alphabet alphabet = alphabet_for(cfg, spec);
  const long n_max = params.count("N", 8);
  const GroupElement w = element(alphabet, params.text("w", "g"));
  const GroupElement g = element(alphabet, params.text("g", "z"));
  const GroupElement f = element(alphabet, params.text("f", "f"));
  if (!commutator(g, w).is_identity()) throw std::invalid_argument("hypothesis violated: [g,w] != 1");
  alphabet.bind("w", w);
  alphabet.bind("g", g);
  alphabet.bind("f", f);

  WitnessReport r;
  r.name = "heisenberg_diagonal";
  r.bounds["N"] = std::to_string(n_max);
  const long big = 2 * n_max;
  r.bounds["window"] = std::to_string(big);
  add(r, "hypothesis", "[g, w] = 1", true, "[g,w]=" + commutator(g, w).render());

  auto diag = [&](long n, bool with_g) {
    GroupElement e = pow(w, n);
    if (with_g) e = e * pow(g, n);
    return e * pow(f, n);
  };

  const auto r1 = compile(parse_rat_expr("(w g)* . f*"), alphabet);
  const auto r2 = compile(parse_rat_expr("w* . (g f)*"), alphabet);
  const ElementSet r_window = intersect_bounded(r1, r2, static_cast<std::size_t>(2 * big));
  ElementSet r_expected;
  for (long n = 0; n <= big; ++n) r_expected.insert(diag(n, true));
  add(r, "R-window", "(wg)*f* ∩ w*(gf)* equals {w^n g^n f^n} in the window", r_window == r_expected,
      "size=" + std::to_string(r_window.size()) + " expected=" + std::to_string(r_expected.size()));

  ElementSet shifted;
  for (const auto& e : r_window) {
    for (long j = -big; j <= big; ++j) shifted.insert(e * pow(g, j));
  }
  ElementSet s_window;
  for (const auto& e : enumerate(compile(parse_rat_expr("w* . f*"), alphabet), static_cast<std::size_t>(2 * big))) {
    if (shifted.count(e)) s_window.insert(e);
  }
  ElementSet s_expected;
  for (long n = 0; n <= big; ++n) s_expected.insert(diag(n, false));
  add(r, "S-window", "R(g* ∪ (g^-1)*) ∩ w*f* equals {w^n f^n} in the window", s_window == s_expected,
      "size=" + std::to_string(s_window.size()) + " expected=" + std::to_string(s_expected.size()));

  std::size_t hits = 0, noncommuting = 0;
  for (long n = 0; n <= n_max; ++n) {
    for (long m = 0; m <= n_max; ++m) {
      if (n == m) continue;
      const GroupElement a = diag(n, false);
      const GroupElement aq = diag(m, false);
      const GroupElement aq2 = aq * inv(a) * aq;
      const bool in_s = s_window.count(aq2) > 0;
      const GroupElement c = commutator(f, pow(w, m - n));
      hits += in_s ? 1 : 0;
      noncommuting += c.is_identity() ? 0 : 1;
      add(r, "pump-" + std::to_string(n) + "-" + std::to_string(m),
          "a=w^n f^n, aq=w^m f^m: aq^2 in S implies [f, w^(m-n)] = 1", !in_s || c.is_identity(),
          "aq^2=" + aq2.render() + " in_S=" + (in_s ? "yes" : "no") + " [f,w^" + std::to_string(m - n) +
              "]=" + c.render());
    }
  }
  r.findings["three-term-hits"] = std::to_string(hits);
  r.findings["noncommuting-pairs"] = std::to_string(noncommuting);
  if (hits == 0) {
    r.notes.push_back("no in-window a q* with three terms lies in S: the pumping structure fails");
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

// Every vector in {-1,0,1}^n, or a fixed-seed sample of `cap` of them.
std::vector<std::vector<int>> eps_vectors(std::size_t n, std::size_t cap, bool& sampled) {
  std::size_t total = 1;
  for (std::size_t i = 0; i < n && total <= cap; ++i) total *= 3;
  std::vector<std::vector<int>> out;
  if (total <= cap) {
    for (std::size_t code = 0; code < total; ++code) {
      std::vector<int> e(n);
      std::size_t c = code;
      for (std::size_t i = 0; i < n; ++i, c /= 3) e[i] = static_cast<int>(c % 3) - 1;
      out.push_back(std::move(e));
    }
    return out;
  }
  sampled = true;
  std::mt19937_64 rng(0x5eed);
  std::uniform_int_distribution<int> digit(-1, 1);
  for (std::size_t s = 0; s < cap; ++s) {
    std::vector<int> e(n);
    for (auto& v : e) v = digit(rng);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace

WitnessReport metabelian_r1r4(const WitnessConfig& cfg) {
  const Params params(cfg, {"d", "p", "N"});
  const SpecPtr spec = spec_for(cfg, GroupKind::metabelian);
  const auto& q = spec->laurent_modulus()->coeffs();
  if (abs(q.front()).is_one() && abs(q.back()).is_one()) {
    throw std::invalid_argument("polycyclic case: witness not applicable (|q0| = |qm| = 1)");
  }
  const auto m = static_cast<long>(spec->laurent_modulus()->degree());
  const long d = params.count("d", 38);
  const long p = params.count("p", m + 2);
  const long n_max = params.count("N", 4);
  const Alphabet alphabet = alphabet_for(cfg, spec);
  const GroupElement a = alphabet.lookup("a");
  const GroupElement x = alphabet.lookup("x");

  WitnessReport r;
  r.name = "metabelian_r1r4";
  r.bounds["d"] = std::to_string(d);
  r.bounds["p"] = std::to_string(p);
  r.bounds["N"] = std::to_string(n_max);

  const std::string ds = std::to_string(d), d1 = std::to_string(d + 1), ps = std::to_string(p);
  // each factor of {a^d, a^(d+1)} x^p is one word, so a^(x^(kp)) needs exactly 2k edges
  const std::vector<std::string> texts = {
      "(x^-" + ps + " a^-" + ds + ")* . (a^" + ds + " x^" + ps + " | a^" + d1 + " x^" + ps + ")*",
      "(x^-" + ps + ")* . (x^" + ps + " | a x^" + ps + ")*",
      "(x^" + ps + " a^-" + ds + ")* . (a^" + ds + " x^-" + ps + " | a^" + d1 + " x^-" + ps + ")*",
      "(x^" + ps + ")* . (x^-" + ps + " | a x^-" + ps + ")*",
  };
  std::vector<GroupAutomaton> sets;
  for (const auto& t : texts) sets.push_back(compile(parse_rat_expr(t), alphabet));

  const GroupElement ad = pow(a, d), xp = pow(x, p), xmp = pow(x, -p);
  const GroupElement u_plus = ad * xp, u_minus = ad * xmp;
  auto conj_a = [&](long power, long e) { return conj(pow(a, power), pow(x, e)); };

  for (long k = 1; k <= n_max; ++k) {
    const GroupElement target_plus = conj_a(1, k * p);
    const GroupElement target_minus = conj_a(1, -k * p);
    const std::vector<std::pair<GroupElement, GroupElement>> factorizations = {
        {pow(inv(u_plus), k) * (a * u_plus) * pow(u_plus, k - 1), target_plus},
        {pow(xmp, k) * (a * xp) * pow(xp, k - 1), target_plus},
        {pow(inv(u_minus), k) * (a * u_minus) * pow(u_minus, k - 1), target_minus},
        {pow(xp, k) * (a * xmp) * pow(xmp, k - 1), target_minus},
    };
    for (std::size_t i = 0; i < 4; ++i) {
      const std::string tag = "R" + std::to_string(i + 1) + "-" + std::to_string(k);
      const auto& [product, target] = factorizations[i];
      add(r, "factor-" + tag, "factorization of a^(x^(±kp)) in R" + std::to_string(i + 1), product == target,
          "product=" + product.render() + " target=" + target.render());
      const bool in = member_bounded(sets[i], target, static_cast<std::size_t>(2 * k)) == Membership::yes;
      add(r, "member-" + tag, "a^(x^(±kp)) accepted by R" + std::to_string(i + 1) + " within 2k edges", in,
          "element=" + target.render() + " bound=" + std::to_string(2 * k));
    }
  }

  // Left sides of the four equalities that must all differ from the identity.
  constexpr std::size_t cap = 4096;
  bool sampled = false;
  struct Family {
    std::string id;
    std::size_t instances = 0;
    std::vector<std::string> hits;
  };
  std::vector<Family> families{{"split-pos", 0, {}}, {"tail-pos", 0, {}}, {"split-neg", 0, {}}, {"tail-neg", 0, {}}};
  auto record = [](Family& fam, const GroupElement& value, const std::string& where) {
    ++fam.instances;
    if (value.is_identity() && fam.hits.size() < 5) fam.hits.push_back(where);
  };
  auto eps_text = [](const std::vector<int>& e) {
    std::string s;
    for (const int v : e) s += (s.empty() ? "" : ",") + std::to_string(v);
    return "(" + s + ")";
  };
  for (long n = 1; n <= n_max; ++n) {
    const auto eps_list = eps_vectors(static_cast<std::size_t>(n), cap, sampled);
    for (const auto& eps : eps_list) {
      auto e = [&](long i) { return static_cast<long>(eps[static_cast<std::size_t>(i - 1)]); };
      for (long k = 1; k <= n; ++k) {
        const std::string where = "n=" + std::to_string(n) + " k=" + std::to_string(k) + " eps=" + eps_text(eps);
        GroupElement lhs_split_pos = identity(spec), lhs_split_neg = identity(spec);
        for (long i = n; i >= k + 1; --i) lhs_split_pos = lhs_split_pos * conj_a(e(i), i * p);
        for (long i = k; i >= 1; --i) lhs_split_pos = lhs_split_pos * conj_a(d + e(i), i * p);
        for (long i = 1; i <= k; ++i) lhs_split_neg = lhs_split_neg * conj_a(d + e(i), -i * p);
        for (long i = k + 1; i <= n; ++i) lhs_split_neg = lhs_split_neg * conj_a(e(i), -i * p);
        record(families[0], lhs_split_pos, where);
        record(families[2], lhs_split_neg, where);
      }
      for (long l = 0; l <= n_max; ++l) {
        const std::string where = "n=" + std::to_string(n) + " l=" + std::to_string(l) + " eps=" + eps_text(eps);
        GroupElement lhs_tail_pos = identity(spec), lhs_tail_neg = identity(spec);
        for (long i = n; i >= 1; --i) lhs_tail_pos = lhs_tail_pos * conj_a(e(i), i * p);
        for (long j = 0; j <= l; ++j) lhs_tail_pos = lhs_tail_pos * conj_a(-d, -j * p);
        for (long j = l; j >= 0; --j) lhs_tail_neg = lhs_tail_neg * conj_a(-d, j * p);
        for (long i = 1; i <= n; ++i) lhs_tail_neg = lhs_tail_neg * conj_a(e(i), -i * p);
        record(families[1], lhs_tail_pos, where);
        record(families[3], lhs_tail_neg, where);
      }
    }
  }
  for (const auto& fam : families) {
    std::string evidence = "instances=" + std::to_string(fam.instances) + " identities=" + std::to_string(fam.hits.size());
    if (!fam.hits.empty()) evidence += " first: " + fam.hits.front();
    add(r, fam.id, "every in-window instance of " + fam.id + " differs from the identity", fam.hits.empty(), evidence);
    r.findings[fam.id + "-instances"] = std::to_string(fam.instances);
  }
  if (sampled) r.notes.push_back("epsilon windows above 4096 vectors were sampled with a fixed seed");
  r.notes.push_back("tail-pos read with last factor (a^-d)^(x^(-lp)); tail-neg read as (a^-d)^(x^(lp))...(a^-d) followed by "
                    "(a^eps_i)^(x^(-ip)) for i = 1..n");

  for (long n = 1; n <= n_max; ++n) {
    GroupElement rhs1 = pow(x, n * p), rhs3 = pow(x, -n * p);
    for (long i = n; i >= 1; --i) {
      rhs1 = rhs1 * conj_a(d, i * p);
      rhs3 = rhs3 * conj_a(d, -i * p);
    }
    GroupElement rhs2 = pow(x, -n * p), rhs4 = pow(x, n * p);
    for (long i = n - 1; i >= 1; --i) {
      rhs2 = rhs2 * conj_a(-d, -i * p);
      rhs4 = rhs4 * conj_a(-d, i * p);
    }
    rhs2 = rhs2 * pow(a, -d);
    rhs4 = rhs4 * pow(a, -d);
    const std::vector<std::pair<GroupElement, GroupElement>> identities = {
        {pow(u_plus, n), rhs1}, {pow(u_plus, -n), rhs2}, {pow(u_minus, n), rhs3}, {pow(u_minus, -n), rhs4}};
    for (std::size_t i = 0; i < identities.size(); ++i) {
      const auto& [lhs, rhs] = identities[i];
      add(r, "power-" + std::to_string(i + 1) + "-" + std::to_string(n), "power identity for (a^d x^(±p))^(±n)",
          lhs == rhs, "lhs=" + lhs.render() + " rhs=" + rhs.render());
    }
  }
  return r;
}

// ---------------------------------------------------------------------------

namespace {

std::vector<GroupElement> generator_list(const Alphabet& alphabet, const std::string& text) {
  std::vector<GroupElement> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(element(alphabet, item));
  }
  if (out.empty()) throw std::invalid_argument("empty generator list");
  return out;
}

std::unordered_map<GroupElement, std::size_t, GroupElementHash> lengths(const std::map<std::size_t, ElementSet>& layers) {
  std::unordered_map<GroupElement, std::size_t, GroupElementHash> out;
  for (const auto& [r, set] : layers) {
    for (const auto& g : set) out.emplace(g, r);
  }
  return out;
}

}  // namespace

WitnessReport lamplighter_howson(const WitnessConfig& cfg) {
  const Params params(cfg, {"H", "K", "N"});
  const SpecPtr spec = spec_for(cfg, GroupKind::lamplighter);
  const Alphabet alphabet = alphabet_for(cfg, spec);
  const auto radius = static_cast<std::size_t>(params.count("N", 6));
  const auto h_gens = generator_list(alphabet, params.text("H", "a, t^2"));
  const auto k_gens = generator_list(alphabet, params.text("K", "a t"));

  WitnessReport r;
  r.name = "lamplighter_howson";
  r.bounds["N"] = std::to_string(radius);
  r.findings["H"] = join(h_gens);
  r.findings["K"] = join(k_gens);

  const auto len_h = lengths(ball_layers(spec, h_gens, radius));
  const auto len_k = lengths(ball_layers(spec, k_gens, radius));
  std::map<std::size_t, ElementSet> within;  // radius -> intersection of both balls of that radius
  for (const auto& [g, lh] : len_h) {
    const auto it = len_k.find(g);
    if (it == len_k.end()) continue;
    for (std::size_t rr = std::max(lh, it->second); rr <= radius; ++rr) within[rr].insert(g);
  }
  const ElementSet& all = within[radius];
  add(r, "identity", "identity lies in both balls", all.count(identity(spec)) > 0, "size=" + std::to_string(all.size()));
  bool symmetric = true;
  for (const auto& g : all) symmetric = symmetric && all.count(inv(g)) > 0;
  add(r, "symmetric", "intersection window closed under inverses", symmetric, "size=" + std::to_string(all.size()));

  // elements of radius rr that are not products of two elements of radius rr-1
  std::vector<std::size_t> sizes, fresh;
  for (std::size_t rr = 0; rr <= radius; ++rr) {
    sizes.push_back(within[rr].size());
    if (rr == 0) {
      fresh.push_back(0);
      continue;
    }
    const ElementSet& prev = within[rr - 1];
    ElementSet generated = prev;
    for (const auto& u : prev) {
      for (const auto& v : prev) generated.insert(u * v);
    }
    std::size_t count = 0;
    for (const auto& g : within[rr]) count += generated.count(g) ? 0 : 1;
    fresh.push_back(count);
  }
  auto csv = [](const std::vector<std::size_t>& v) {
    std::string s;
    for (const auto x : v) s += (s.empty() ? "" : ",") + std::to_string(x);
    return s;
  };
  r.findings["intersection"] = join_set(all);
  r.findings["profile"] = csv(sizes);
  r.findings["new-profile"] = csv(fresh);
  bool growing = false;
  for (std::size_t i = 1; i + 2 < fresh.size(); ++i) {
    growing = growing || (fresh[i] < fresh[i + 1] && fresh[i + 1] < fresh[i + 2]);
  }
  r.findings["growing"] = growing ? "true" : "false";
  r.notes.push_back(growing ? "heuristic: new non-generated intersection elements keep appearing (evidence of a "
                              "non-finitely generated intersection, not a proof)"
                            : "heuristic: no sustained growth of new intersection elements in the window");
  return r;
}

WitnessReport run_witness(const WitnessConfig& cfg) {
  if (cfg.name == "polycyclic_orbit") return polycyclic_orbit(cfg);
  if (cfg.name == "heisenberg_diagonal") return heisenberg_diagonal(cfg);
  if (cfg.name == "metabelian_r1r4") return metabelian_r1r4(cfg);
  if (cfg.name == "lamplighter_howson") return lamplighter_howson(cfg);
  throw std::invalid_argument("unknown witness '" + cfg.name + "'");
}

}  // namespace ratg
