#include "ratg/presburger.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <cstdlib>
#include <functional>
#include <set>
#include <stdexcept>

namespace ratg {

// ---------------------------------------------------------------------------
// Term

Term Term::var(const std::string& name, const Integer& coeff) {
  Term t;
  if (!coeff.is_zero()) t.coeffs_.emplace(name, coeff);
  return t;
}

Integer Term::coeff(const std::string& name) const {
  const auto it = coeffs_.find(name);
  return it == coeffs_.end() ? Integer(0) : it->second;
}

Term Term::without(const std::string& name) const {
  Term t = *this;
  t.coeffs_.erase(name);
  return t;
}

Term Term::substitute(const std::string& name, const Term& value) const {
  const auto it = coeffs_.find(name);
  if (it == coeffs_.end()) return *this;
  const Integer c = it->second;
  return without(name) + value * c;
}

Integer Term::evaluate(const std::map<std::string, Integer>& env) const {
  Integer acc = constant_;
  for (const auto& [name, c] : coeffs_) {
    const auto it = env.find(name);
    if (it == env.end()) throw std::invalid_argument("unbound variable '" + name + "'");
    acc += c * it->second;
  }
  return acc;
}

std::string Term::render() const {
  std::string s;
  for (const auto& [name, c] : coeffs_) {
    const Integer m = abs(c);
    if (s.empty()) {
      if (c.sign() < 0) s += "-";
    } else {
      s += c.sign() < 0 ? " - " : " + ";
    }
    if (!m.is_one()) s += m.str();
    s += name;
  }
  if (s.empty()) return constant_.str();
  if (!constant_.is_zero()) s += (constant_.sign() < 0 ? " - " : " + ") + abs(constant_).str();
  return s;
}

Term& Term::operator+=(const Term& o) {
  for (const auto& [name, c] : o.coeffs_) {
    auto [it, inserted] = coeffs_.try_emplace(name, c);
    if (!inserted) {
      it->second += c;
      if (it->second.is_zero()) coeffs_.erase(it);
    }
  }
  constant_ += o.constant_;
  return *this;
}

Term& Term::operator-=(const Term& o) { return *this += -o; }

Term& Term::operator*=(const Integer& k) {
  if (k.is_zero()) {
    coeffs_.clear();
    constant_ = 0;
    return *this;
  }
  for (auto& [name, c] : coeffs_) c *= k;
  constant_ *= k;
  return *this;
}

// ---------------------------------------------------------------------------
// Formula construction

namespace {

using Kind = Formula::Kind;

std::atomic<unsigned long> fresh_counter{0};

std::string fresh(const std::string& base) {
  return base.substr(0, base.find('\'')) + "'" + std::to_string(++fresh_counter);
}

std::shared_ptr<Formula> node(Kind kind) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  return f;
}

FormulaPtr atom(Kind kind, Term t, Integer modulus = 0) {
  auto f = std::make_shared<Formula>();
  f->kind = kind;
  f->term = std::move(t);
  f->modulus = std::move(modulus);
  return f;
}

bool is_atom(const FormulaPtr& f) { return f->kind == Kind::le || f->kind == Kind::eq || f->kind == Kind::divides; }

void collect_free(const FormulaPtr& f, std::set<std::string>& bound, std::set<std::string>& out) {
  if (is_atom(f)) {
    for (const auto& [name, c] : f->term.coeffs()) {
      if (!bound.count(name)) out.insert(name);
    }
    return;
  }
  if (f->kind == Kind::exists || f->kind == Kind::forall) {
    const bool inserted = bound.insert(f->var).second;
    collect_free(f->children.front(), bound, out);
    if (inserted) bound.erase(f->var);
    return;
  }
  for (const auto& c : f->children) collect_free(c, bound, out);
}

bool mentions(const FormulaPtr& f, const std::string& var) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return out.count(var) > 0;
}

}  // namespace

FormulaPtr Formula::top() {
  static const FormulaPtr t = node(Kind::truth);
  return t;
}

FormulaPtr Formula::bottom() {
  static const FormulaPtr f = node(Kind::falsity);
  return f;
}

FormulaPtr Formula::le(Term t) {
  if (t.is_constant()) return t.constant().sign() <= 0 ? top() : bottom();
  return atom(Kind::le, std::move(t));
}

FormulaPtr Formula::eq(Term t) {
  if (t.is_constant()) return t.constant().is_zero() ? top() : bottom();
  return atom(Kind::eq, std::move(t));
}

FormulaPtr Formula::divides(const Integer& d, Term t) {
  const Integer m = abs(d);
  if (m.is_zero()) return eq(std::move(t));
  if (m.is_one()) return top();
  if (t.is_constant()) return (t.constant() % m).is_zero() ? top() : bottom();
  return atom(Kind::divides, std::move(t), m);
}

FormulaPtr Formula::negate(FormulaPtr f) {
  switch (f->kind) {
    case Kind::truth: return bottom();
    case Kind::falsity: return top();
    case Kind::negation: return f->children.front();
    default: break;
  }
  auto n = node(Kind::negation);
  n->children.push_back(std::move(f));
  return n;
}

FormulaPtr Formula::conj(std::vector<FormulaPtr> fs) {
  std::vector<FormulaPtr> kept;
  for (auto& f : fs) {
    if (f->kind == Kind::falsity) return bottom();
    if (f->kind == Kind::truth) continue;
    if (f->kind == Kind::conjunction) {
      kept.insert(kept.end(), f->children.begin(), f->children.end());
    } else {
      kept.push_back(std::move(f));
    }
  }
  if (kept.empty()) return top();
  if (kept.size() == 1) return kept.front();
  auto n = node(Kind::conjunction);
  n->children = std::move(kept);
  return n;
}

FormulaPtr Formula::disj(std::vector<FormulaPtr> fs) {
  std::vector<FormulaPtr> kept;
  for (auto& f : fs) {
    if (f->kind == Kind::truth) return top();
    if (f->kind == Kind::falsity) continue;
    if (f->kind == Kind::disjunction) {
      kept.insert(kept.end(), f->children.begin(), f->children.end());
    } else {
      kept.push_back(std::move(f));
    }
  }
  if (kept.empty()) return bottom();
  if (kept.size() == 1) return kept.front();
  auto n = node(Kind::disjunction);
  n->children = std::move(kept);
  return n;
}

FormulaPtr Formula::implies(FormulaPtr a, FormulaPtr b) { return disj({negate(std::move(a)), std::move(b)}); }

FormulaPtr Formula::exists(const std::string& var, FormulaPtr body) {
  if (!mentions(body, var)) return body;
  auto n = node(Kind::exists);
  n->var = var;
  n->children.push_back(std::move(body));
  return n;
}

FormulaPtr Formula::forall(const std::string& var, FormulaPtr body) {
  if (!mentions(body, var)) return body;
  auto n = node(Kind::forall);
  n->var = var;
  n->children.push_back(std::move(body));
  return n;
}

std::vector<std::string> free_variables(const FormulaPtr& f) {
  std::set<std::string> bound, out;
  collect_free(f, bound, out);
  return {out.begin(), out.end()};
}

bool is_quantifier_free(const FormulaPtr& f) {
  if (f->kind == Kind::exists || f->kind == Kind::forall) return false;
  return std::all_of(f->children.begin(), f->children.end(), is_quantifier_free);
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

int precedence(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::exists:
    case Kind::forall: return 0;
    case Kind::disjunction: return 1;
    case Kind::conjunction: return 2;
    default: return 3;
  }
}

std::string render_at(const FormulaPtr& f, int context) {
  std::string s;
  switch (f->kind) {
    case Kind::truth: return "true";
    case Kind::falsity: return "false";
    case Kind::le: s = f->term.render() + " <= 0"; break;
    case Kind::eq: s = f->term.render() + " = 0"; break;
    case Kind::divides: s = f->modulus.str() + " | " + f->term.render(); break;
    case Kind::negation: return "~" + render_at(f->children.front(), 4);
    case Kind::conjunction:
    case Kind::disjunction: {
      const char* op = f->kind == Kind::conjunction ? " & " : " | ";
      const int mine = precedence(f);
      for (std::size_t i = 0; i < f->children.size(); ++i) {
        if (i) s += op;
        s += render_at(f->children[i], mine + 1);
      }
      break;
    }
    case Kind::exists:
    case Kind::forall:
      s = std::string(f->kind == Kind::exists ? "E " : "A ") + f->var + ". " + render_at(f->children.front(), 0);
      break;
  }
  // atoms containing '|' or relations are wrapped when they sit inside a junction or negation
  const int mine = precedence(f);
  if (mine < context || (is_atom(f) && context >= 4)) return "(" + s + ")";
  if (f->kind == Kind::divides && context >= 1) return "(" + s + ")";
  return s;
}

}  // namespace

std::string render(const FormulaPtr& f) { return render_at(f, 0); }

// ---------------------------------------------------------------------------
// Parsing

namespace {

class FormulaParser {
 public:
  explicit FormulaParser(std::string_view t) : t_(t) {}

  FormulaPtr parse() {
    auto f = formula();
    skip();
    if (pos_ != t_.size()) fail("unexpected '" + std::string(t_.substr(pos_, 1)) + "'");
    return f;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw ParseError("formula: " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  bool at(std::string_view s) {
    skip();
    return t_.substr(pos_).starts_with(s);
  }
  bool eat(std::string_view s) {
    if (!at(s)) return false;
    pos_ += s.size();
    return true;
  }
  static bool ident_char(char c) { return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '\''; }
  std::string peek_ident() {
    skip();
    std::size_t p = pos_;
    if (p >= t_.size() || !(std::isalpha(static_cast<unsigned char>(t_[p])) || t_[p] == '_')) return {};
    while (p < t_.size() && ident_char(t_[p])) ++p;
    return std::string(t_.substr(pos_, p - pos_));
  }
  std::string ident() {
    std::string id = peek_ident();
    if (id.empty()) fail("expected identifier");
    pos_ += id.size();
    return id;
  }
  bool at_quantifier() {
    const std::string id = peek_ident();
    return id == "E" || id == "A" || id == "exists" || id == "forall";
  }

  FormulaPtr formula() {
    if (at_quantifier()) return quantified();
    auto lhs = disjunction();
    if (eat("->")) return Formula::implies(lhs, formula());
    if (eat("<->")) {
      auto rhs = formula();
      return Formula::conj({Formula::implies(lhs, rhs), Formula::implies(rhs, lhs)});
    }
    return lhs;
  }

  FormulaPtr quantified() {
    const std::string q = ident();
    const bool ex = q == "E" || q == "exists";
    std::vector<std::string> vars{ident()};
    while (eat(",")) vars.push_back(ident());
    if (!eat(".")) fail("expected '.' after quantified variables");
    FormulaPtr body = formula();
    for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
      body = ex ? Formula::exists(*it, body) : Formula::forall(*it, body);
    }
    return body;
  }

  FormulaPtr disjunction() {
    std::vector<FormulaPtr> parts{conjunction()};
    while (at("|") && !at("||")) {
      ++pos_;
      parts.push_back(conjunction());
    }
    return parts.size() == 1 ? parts.front() : Formula::disj(std::move(parts));
  }

  FormulaPtr conjunction() {
    std::vector<FormulaPtr> parts{unary()};
    while (eat("&")) parts.push_back(unary());
    return parts.size() == 1 ? parts.front() : Formula::conj(std::move(parts));
  }

  FormulaPtr unary() {
    if (eat("~") || eat("!")) return Formula::negate(unary());
    if (at_quantifier()) return quantified();
    const std::string id = peek_ident();
    if (id == "true" || id == "false") {
      pos_ += id.size();
      return id == "true" ? Formula::top() : Formula::bottom();
    }
    if (at("(")) {
      const std::size_t save = pos_;
      ++pos_;
      try {
        auto f = formula();
        if (eat(")") && !at_relation() && !at_arith()) return f;
      } catch (const ParseError&) {
      }
      pos_ = save;
    }
    // d | t
    {
      const std::size_t save = pos_;
      skip();
      std::size_t p = pos_;
      if (p < t_.size() && (t_[p] == '-' || t_[p] == '+')) ++p;
      const std::size_t digits = p;
      while (p < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p]))) ++p;
      if (p > digits) {
        std::size_t q = p;
        while (q < t_.size() && std::isspace(static_cast<unsigned char>(t_[q]))) ++q;
        if (q < t_.size() && t_[q] == '|' && !(q + 1 < t_.size() && t_[q + 1] == '|')) {
          const Integer d = Integer::parse(t_.substr(pos_, p - pos_));
          pos_ = q + 1;
          return Formula::divides(d, term());
        }
      }
      pos_ = save;
    }
    return relation();
  }

  bool at_relation() { return at("<") || at(">") || at("=") || at("!="); }
  bool at_arith() { return at("+") || (at("-") && !at("->")) || at("*"); }

  FormulaPtr relation() {
    const Term lhs = term();
    if (eat("<=")) return Formula::le(lhs, term());
    if (eat(">=")) return Formula::le(term(), lhs);
    if (eat("!=")) return Formula::negate(Formula::eq(lhs, term()));
    if (eat("<")) return Formula::lt(lhs, term());
    if (eat(">")) return Formula::lt(term(), lhs);
    if (eat("=")) return Formula::eq(lhs, term());
    fail("expected a relation");
  }

  Term term() {
    Term t;
    bool negative = false;
    if (eat("-")) {
      negative = true;
    } else {
      eat("+");
    }
    Term first = product();
    t = negative ? -first : first;
    while (true) {
      if (at("->")) break;
      if (eat("+")) {
        t += product();
      } else if (eat("-")) {
        t -= product();
      } else {
        break;
      }
    }
    return t;
  }

  Term product() {
    Term t = factor();
    while (eat("*")) {
      const Term rhs = factor();
      if (t.is_constant()) {
        t = rhs * t.constant();
      } else if (rhs.is_constant()) {
        t = t * rhs.constant();
      } else {
        fail("nonlinear product");
      }
    }
    return t;
  }

  Term factor() {
    skip();
    if (eat("(")) {
      Term t = term();
      if (!eat(")")) fail("expected ')'");
      return t;
    }
    if (eat("-")) return -factor();
    std::size_t p = pos_;
    while (p < t_.size() && std::isdigit(static_cast<unsigned char>(t_[p]))) ++p;
    if (p > pos_) {
      const Integer n = Integer::parse(t_.substr(pos_, p - pos_));
      pos_ = p;
      // juxtaposed coefficient: 2x
      if (pos_ < t_.size() && (std::isalpha(static_cast<unsigned char>(t_[pos_])) || t_[pos_] == '_')) {
        return Term::var(ident(), n);
      }
      return Term(n);
    }
    const std::string id = ident();
    if (id == "E" || id == "A" || id == "true" || id == "false") fail("unexpected keyword '" + id + "'");
    return Term::var(id);
  }

  std::string_view t_;
  std::size_t pos_ = 0;
};

}  // namespace

FormulaPtr parse_formula(std::string_view text) { return FormulaParser(text).parse(); }

// ---------------------------------------------------------------------------
// Simplification

namespace {

Integer content_of(const Term& t) {
  Integer g = 0;
  for (const auto& [name, c] : t.coeffs()) g = gcd(g, c);
  return g;
}

Term divide_coeffs(const Term& t, const Integer& g, const Integer& constant) {
  Term out(constant);
  for (const auto& [name, c] : t.coeffs()) out += Term::var(name, c / g);
  return out;
}

FormulaPtr normalize_le(const Term& t) {
  if (t.is_constant()) return Formula::le(t);
  const Integer g = content_of(t);
  return atom(Kind::le, divide_coeffs(t, g, ceil_div(t.constant(), g)));
}

FormulaPtr normalize_eq(const Term& t) {
  if (t.is_constant()) return Formula::eq(t);
  const Integer g = content_of(t);
  if (!(t.constant() % g).is_zero()) return Formula::bottom();
  Term n = divide_coeffs(t, g, t.constant() / g);
  if (n.coeffs().begin()->second.sign() < 0) n = -n;
  return atom(Kind::eq, std::move(n));
}

FormulaPtr normalize_divides(const Integer& d, const Term& t) {
  Term r(floor_mod(t.constant(), d));
  for (const auto& [name, c] : t.coeffs()) r += Term::var(name, floor_mod(c, d));
  if (r.is_constant()) return Formula::divides(d, r);
  Integer g = gcd(d, content_of(r));
  const Integer all = gcd(g, r.constant());
  Integer m = d;
  if (!all.is_one()) {
    m = d / all;
    r = divide_coeffs(r, all, r.constant() / all);
    g = g / all;
  }
  // g | coefficients and g | m: solvable only if g | constant
  if (!(r.constant() % g).is_zero()) return Formula::bottom();
  return Formula::divides(m, r);
}

std::string key(const FormulaPtr& f) { return render(f); }

FormulaPtr simplify_node(const FormulaPtr& f) {
  switch (f->kind) {
    case Kind::truth:
    case Kind::falsity: return f;
    case Kind::le: return normalize_le(f->term);
    case Kind::eq: return normalize_eq(f->term);
    case Kind::divides: return normalize_divides(f->modulus, f->term);
    case Kind::negation: return Formula::negate(simplify_node(f->children.front()));
    case Kind::conjunction:
    case Kind::disjunction: {
      const bool is_and = f->kind == Kind::conjunction;
      std::vector<FormulaPtr> parts;
      std::set<std::string> seen;
      std::vector<FormulaPtr> flat;
      for (const auto& c : f->children) flat.push_back(simplify_node(c));
      const FormulaPtr joined = is_and ? Formula::conj(flat) : Formula::disj(flat);
      if (joined->kind != f->kind) return joined;
      for (const auto& c : joined->children) {
        std::string k = key(c);
        if (seen.insert(k).second) parts.push_back(c);
      }
      // complementary literals
      for (const auto& c : parts) {
        if (c->kind == Kind::negation && seen.count(key(c->children.front()))) {
          return is_and ? Formula::bottom() : Formula::top();
        }
      }
      return is_and ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case Kind::exists: return Formula::exists(f->var, simplify_node(f->children.front()));
    case Kind::forall: return Formula::forall(f->var, simplify_node(f->children.front()));
  }
  return f;
}

// Negation normal form; negations remain only in front of divisibility atoms.
FormulaPtr nnf(const FormulaPtr& f, bool negated) {
  switch (f->kind) {
    case Kind::truth:
    case Kind::falsity: return negated ? Formula::negate(f) : f;
    case Kind::le: return negated ? Formula::le(-f->term + Term(1)) : f;
    case Kind::eq:
      return negated ? Formula::disj({Formula::le(f->term + Term(1)), Formula::le(-f->term + Term(1))}) : f;
    case Kind::divides: return negated ? Formula::negate(f) : f;
    case Kind::negation: return nnf(f->children.front(), !negated);
    case Kind::conjunction:
    case Kind::disjunction: {
      std::vector<FormulaPtr> parts;
      for (const auto& c : f->children) parts.push_back(nnf(c, negated));
      const bool is_and = (f->kind == Kind::conjunction) != negated;
      return is_and ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case Kind::exists:
    case Kind::forall: {
      const bool ex = (f->kind == Kind::exists) != negated;
      auto body = nnf(f->children.front(), negated);
      return ex ? Formula::exists(f->var, body) : Formula::forall(f->var, body);
    }
  }
  return f;
}

// Applies fn to every atom (le, eq, divides), including those under negation.
FormulaPtr map_atoms(const FormulaPtr& f, const std::function<FormulaPtr(const FormulaPtr&)>& fn) {
  switch (f->kind) {
    case Kind::truth:
    case Kind::falsity: return f;
    case Kind::le:
    case Kind::eq:
    case Kind::divides: return fn(f);
    case Kind::negation: return Formula::negate(map_atoms(f->children.front(), fn));
    case Kind::conjunction:
    case Kind::disjunction: {
      std::vector<FormulaPtr> parts;
      parts.reserve(f->children.size());
      for (const auto& c : f->children) parts.push_back(map_atoms(c, fn));
      return f->kind == Kind::conjunction ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    case Kind::exists:
    case Kind::forall: throw std::logic_error("map_atoms on a quantified formula");
  }
  return f;
}

FormulaPtr with_term(const FormulaPtr& a, Term t, Integer modulus) {
  switch (a->kind) {
    case Kind::le: return Formula::le(std::move(t));
    case Kind::eq: return Formula::eq(std::move(t));
    default: return Formula::divides(modulus, std::move(t));
  }
}

FormulaPtr substitute(const FormulaPtr& f, const std::string& x, const Term& value) {
  return map_atoms(f, [&](const FormulaPtr& a) {
    if (a->term.coeff(x).is_zero()) return a;
    return with_term(a, a->term.substitute(x, value), a->modulus);
  });
}

FormulaPtr rename_bound(const FormulaPtr& f, const std::string& from, const std::string& to) {
  switch (f->kind) {
    case Kind::le:
    case Kind::eq:
    case Kind::divides:
      if (f->term.coeff(from).is_zero()) return f;
      return with_term(f, f->term.substitute(from, Term::var(to)), f->modulus);
    case Kind::exists:
    case Kind::forall: {
      if (f->var == from) return f;
      auto body = rename_bound(f->children.front(), from, to);
      return f->kind == Kind::exists ? Formula::exists(f->var, body) : Formula::forall(f->var, body);
    }
    case Kind::negation: return Formula::negate(rename_bound(f->children.front(), from, to));
    case Kind::conjunction:
    case Kind::disjunction: {
      std::vector<FormulaPtr> parts;
      for (const auto& c : f->children) parts.push_back(rename_bound(c, from, to));
      return f->kind == Kind::conjunction ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    default: return f;
  }
}

void collect_atoms(const FormulaPtr& f, std::vector<FormulaPtr>& out) {
  if (is_atom(f)) {
    out.push_back(f);
    return;
  }
  for (const auto& c : f->children) collect_atoms(c, out);
}

class Eliminator {
 public:
  explicit Eliminator(const QeOptions& options) : options_(options) {}

  FormulaPtr qe(const FormulaPtr& f) {
    switch (f->kind) {
      case Kind::negation: return simplify_node(Formula::negate(qe(f->children.front())));
      case Kind::conjunction:
      case Kind::disjunction: {
        std::vector<FormulaPtr> parts;
        for (const auto& c : f->children) parts.push_back(qe(c));
        return simplify_node(f->kind == Kind::conjunction ? Formula::conj(std::move(parts))
                                                          : Formula::disj(std::move(parts)));
      }
      case Kind::forall: {
        const auto inner = qe_exists({f->var}, Formula::negate(f->children.front()));
        return simplify_node(Formula::negate(inner));
      }
      case Kind::exists: {
        std::vector<std::string> vars{f->var};
        FormulaPtr body = f->children.front();
        while (body->kind == Kind::exists) {
          vars.push_back(body->var);
          body = body->children.front();
        }
        return qe_exists(vars, body);
      }
      default: return simplify_node(f);
    }
  }

 private:
  // Moves existentials that occur as conjuncts to the front, renaming them apart.
  FormulaPtr pull(std::vector<std::string>& vars, FormulaPtr body) {
    while (true) {
      if (body->kind == Kind::exists) {
        std::string v = body->var;
        FormulaPtr inner = body->children.front();
        if (std::find(vars.begin(), vars.end(), v) != vars.end()) {
          const std::string renamed = fresh(v);
          inner = rename_bound(inner, v, renamed);
          v = renamed;
        }
        vars.push_back(v);
        body = inner;
        continue;
      }
      if (body->kind != Kind::conjunction) return body;
      const bool any = std::any_of(body->children.begin(), body->children.end(),
                                   [](const FormulaPtr& c) { return c->kind == Kind::exists; });
      if (!any) return body;
      std::vector<FormulaPtr> parts;
      for (const auto& c : body->children) {
        if (c->kind != Kind::exists) {
          parts.push_back(c);
          continue;
        }
        const std::string renamed = fresh(c->var);
        vars.push_back(renamed);
        parts.push_back(rename_bound(c->children.front(), c->var, renamed));
      }
      body = Formula::conj(std::move(parts));
    }
  }

  FormulaPtr qe_exists(std::vector<std::string> vars, FormulaPtr body) {
    body = pull(vars, nnf(body, false));
    if (body->kind == Kind::disjunction) {
      std::vector<FormulaPtr> parts;
      for (const auto& c : body->children) parts.push_back(qe_exists(vars, c));
      return simplify_node(Formula::disj(std::move(parts)));
    }
    body = nnf(qe(body), false);
    return eliminate_block(vars, simplify_node(body));
  }

  FormulaPtr eliminate_block(std::vector<std::string> vars, FormulaPtr f) {
    std::erase_if(vars, [&](const std::string& v) { return !mentions(f, v); });
    if (vars.empty()) return f;
    if (f->kind == Kind::disjunction) {
      std::vector<FormulaPtr> parts;
      for (const auto& c : f->children) {
        parts.push_back(eliminate_block(vars, c));
        if (parts.back()->kind == Kind::truth) return Formula::top();
      }
      return simplify_node(Formula::disj(std::move(parts)));
    }
    const std::string x = choose(vars, f);
    std::erase(vars, x);
    return eliminate_block(vars, eliminate(x, f));
  }

  static std::vector<FormulaPtr> top_conjuncts(const FormulaPtr& f) {
    if (f->kind == Kind::conjunction) return f->children;
    return {f};
  }

  // Prefer a variable with a unit equality, then any equality, then the rarest variable.
  static std::string choose(const std::vector<std::string>& vars, const FormulaPtr& f) {
    const auto conjuncts = top_conjuncts(f);
    for (const bool unit : {true, false}) {
      for (const auto& v : vars) {
        for (const auto& c : conjuncts) {
          if (c->kind != Kind::eq) continue;
          const Integer a = c->term.coeff(v);
          if (!a.is_zero() && (!unit || abs(a).is_one())) return v;
        }
      }
    }
    std::vector<FormulaPtr> atoms;
    collect_atoms(f, atoms);
    std::string best;
    std::size_t best_count = 0;
    for (const auto& v : vars) {
      std::size_t count = 0;
      for (const auto& a : atoms) count += a->term.coeff(v).is_zero() ? 0 : 1;
      if (best.empty() || count < best_count) {
        best = v;
        best_count = count;
      }
    }
    return best;
  }

  void guard(const Integer& value) const {
    if (value > options_.max_lcm) {
      throw std::runtime_error("lcm guardrail exceeded: " + value.str() + " > " + options_.max_lcm.str() +
                               " (set RATG_MAX_LCM to raise it)");
    }
  }

  // exists x. f, with f quantifier-free, in NNF, and not a disjunction.
  FormulaPtr eliminate(const std::string& x, const FormulaPtr& f) {
    const auto conjuncts = top_conjuncts(f);
    const Formula* pivot = nullptr;
    for (const auto& c : conjuncts) {
      if (c->kind != Kind::eq) continue;
      const Integer a = c->term.coeff(x);
      if (a.is_zero()) continue;
      if (!pivot || abs(a) < abs(pivot->term.coeff(x))) pivot = c.get();
    }
    if (pivot) return eliminate_by_equality(x, f, *pivot);
    return cooper(x, f);
  }

  // a x + t = 0: substitute a x := -t into every atom scaled by |a|, and require |a| | t.
  FormulaPtr eliminate_by_equality(const std::string& x, const FormulaPtr& f, const Formula& pivot) {
    const Integer a = pivot.term.coeff(x);
    const Integer m = abs(a);
    const Term t = pivot.term.without(x);
    std::vector<FormulaPtr> parts{Formula::divides(m, t)};
    for (const auto& c : top_conjuncts(f)) {
      if (c.get() == &pivot) continue;
      parts.push_back(map_atoms(c, [&](const FormulaPtr& atom_f) {
        const Integer c_x = atom_f->term.coeff(x);
        if (c_x.is_zero()) return atom_f;
        // |a| (c x + r) = c sign(a) (a x) + |a| r = -c sign(a) t + |a| r
        const Term scaled = atom_f->term.without(x) * m - t * (c_x * Integer(a.sign()));
        return with_term(atom_f, scaled, atom_f->modulus * m);
      }));
    }
    return simplify_node(Formula::conj(std::move(parts)));
  }

  FormulaPtr cooper(const std::string& x, const FormulaPtr& f) {
    std::vector<FormulaPtr> atoms;
    collect_atoms(f, atoms);
    Integer delta = 1;
    for (const auto& a : atoms) {
      const Integer c = a->term.coeff(x);
      if (!c.is_zero()) delta = lcm(delta, abs(c));
    }
    guard(delta);
    // make every coefficient of x equal to +-1 for the new variable x' = delta x
    FormulaPtr g = map_atoms(f, [&](const FormulaPtr& a) {
      const Integer c = a->term.coeff(x);
      if (c.is_zero()) return a;
      const Integer scale = delta / abs(c);
      Term t = a->term.without(x) * scale + Term::var(x, Integer(c.sign()));
      return with_term(a, std::move(t), a->modulus * scale);
    });
    g = Formula::conj({g, Formula::divides(delta, Term::var(x))});

    atoms.clear();
    collect_atoms(g, atoms);
    Integer period = 1;
    std::vector<Term> lower;
    std::set<std::string> lower_keys;
    auto add_lower = [&](Term b) {
      if (lower_keys.insert(b.render()).second) lower.push_back(std::move(b));
    };
    for (const auto& a : atoms) {
      const Integer c = a->term.coeff(x);
      if (c.is_zero()) continue;
      const Term rest = a->term.without(x);
      switch (a->kind) {
        case Kind::divides: period = lcm(period, a->modulus); break;
        case Kind::le:
          // -x + rest <= 0 is x >= rest, i.e. x > rest - 1
          if (c.sign() < 0) add_lower(rest - Term(1));
          break;
        case Kind::eq:
          // x = -rest (c = 1) or x = rest (c = -1)
          add_lower((c.sign() > 0 ? -rest : rest) - Term(1));
          break;
        default: break;
      }
    }
    guard(period);

    const FormulaPtr minus_inf = map_atoms(g, [&](const FormulaPtr& a) -> FormulaPtr {
      const Integer c = a->term.coeff(x);
      if (c.is_zero() || a->kind == Kind::divides) return a;
      if (a->kind == Kind::eq) return Formula::bottom();
      return c.sign() > 0 ? Formula::top() : Formula::bottom();
    });
    std::vector<FormulaPtr> parts;
    for (Integer j = 1; j <= period; j += 1) {
      auto p = simplify_node(substitute(minus_inf, x, Term(j)));
      if (p->kind == Kind::truth) return p;
      parts.push_back(std::move(p));
    }
    for (const auto& b : lower) {
      for (Integer j = 1; j <= period; j += 1) {
        auto p = simplify_node(substitute(g, x, b + Term(j)));
        if (p->kind == Kind::truth) return p;
        parts.push_back(std::move(p));
      }
    }
    return simplify_node(Formula::disj(std::move(parts)));
  }

  const QeOptions& options_;
};

bool eval_qf(const FormulaPtr& f, const std::map<std::string, Integer>& env) {
  switch (f->kind) {
    case Kind::truth: return true;
    case Kind::falsity: return false;
    case Kind::le: return f->term.evaluate(env).sign() <= 0;
    case Kind::eq: return f->term.evaluate(env).is_zero();
    case Kind::divides: return (f->term.evaluate(env) % f->modulus).is_zero();
    case Kind::negation: return !eval_qf(f->children.front(), env);
    case Kind::conjunction:
      return std::all_of(f->children.begin(), f->children.end(), [&](const FormulaPtr& c) { return eval_qf(c, env); });
    case Kind::disjunction:
      return std::any_of(f->children.begin(), f->children.end(), [&](const FormulaPtr& c) { return eval_qf(c, env); });
    default: throw std::logic_error("quantifier in eval_qf");
  }
}

FormulaPtr bind_free(const FormulaPtr& f, const std::map<std::string, Integer>& env) {
  switch (f->kind) {
    case Kind::le:
    case Kind::eq:
    case Kind::divides: {
      Term t = f->term;
      for (const auto& [name, c] : f->term.coeffs()) {
        const auto it = env.find(name);
        if (it != env.end()) t = t.substitute(name, Term(it->second));
      }
      return with_term(f, std::move(t), f->modulus);
    }
    case Kind::exists:
    case Kind::forall: {
      auto inner = env;
      inner.erase(f->var);
      auto body = bind_free(f->children.front(), inner);
      return f->kind == Kind::exists ? Formula::exists(f->var, body) : Formula::forall(f->var, body);
    }
    case Kind::negation: return Formula::negate(bind_free(f->children.front(), env));
    case Kind::conjunction:
    case Kind::disjunction: {
      std::vector<FormulaPtr> parts;
      for (const auto& c : f->children) parts.push_back(bind_free(c, env));
      return f->kind == Kind::conjunction ? Formula::conj(std::move(parts)) : Formula::disj(std::move(parts));
    }
    default: return f;
  }
}

}  // namespace

Integer QeOptions::default_max_lcm() {
  if (const char* env = std::getenv("RATG_MAX_LCM")) {
    try {
      const Integer v = Integer::parse(env);
      if (v.sign() > 0) return v;
    } catch (const std::invalid_argument&) {
    }
    throw std::invalid_argument("RATG_MAX_LCM must be a positive integer");
  }
  return 1'000'000;
}

FormulaPtr simplify(const FormulaPtr& f) { return simplify_node(f); }

FormulaPtr cooper_qe(const FormulaPtr& f, const QeOptions& options) { return Eliminator(options).qe(f); }

bool evaluate(const FormulaPtr& f, const std::map<std::string, Integer>& env, const QeOptions& options) {
  if (is_quantifier_free(f)) return eval_qf(f, env);
  const FormulaPtr bound = bind_free(f, env);
  const auto open = free_variables(bound);
  if (!open.empty()) throw std::invalid_argument("unbound variable '" + open.front() + "'");
  return eval_qf(cooper_qe(bound, options), {});
}

bool decide(const FormulaPtr& sentence, const QeOptions& options) {
  const auto open = free_variables(sentence);
  if (!open.empty()) {
    std::string names;
    for (const auto& v : open) names += (names.empty() ? "" : ", ") + v;
    throw std::invalid_argument("free variables present: " + names);
  }
  return eval_qf(cooper_qe(sentence, options), {});
}

// ---------------------------------------------------------------------------
// Semilinear sets as formulas

FormulaPtr from_semilinear(const SemilinearSet& s, const std::vector<std::string>& vars) {
  if (static_cast<Eigen::Index>(vars.size()) != s.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<FormulaPtr> comps;
  for (const auto& l : s.components()) {
    std::vector<std::string> ns;
    for (std::size_t j = 0; j < l.periods().size(); ++j) ns.push_back(fresh("n"));
    std::vector<FormulaPtr> parts;
    for (const auto& n : ns) parts.push_back(Formula::le(-Term::var(n)));
    for (Eigen::Index i = 0; i < s.dim(); ++i) {
      Term rhs(l.base()(i));
      for (std::size_t j = 0; j < ns.size(); ++j) rhs += Term::var(ns[j], l.periods()[j](i));
      parts.push_back(Formula::eq(Term::var(vars[static_cast<std::size_t>(i)]), rhs));
    }
    FormulaPtr body = Formula::conj(std::move(parts));
    for (auto it = ns.rbegin(); it != ns.rend(); ++it) body = Formula::exists(*it, body);
    comps.push_back(body);
  }
  return Formula::disj(std::move(comps));
}

SetExprPtr SetExpr::atom(SemilinearSet s) {
  auto e = std::make_shared<SetExpr>();
  e->dim = s.dim();
  e->set = std::make_shared<const SemilinearSet>(std::move(s));
  return e;
}

namespace {

SetExprPtr binary(SetExpr::Kind kind, SetExprPtr a, SetExprPtr b) {
  if (a->dim != b->dim) throw std::invalid_argument("dimension mismatch");
  auto e = std::make_shared<SetExpr>();
  e->kind = kind;
  e->dim = a->dim;
  e->left = std::move(a);
  e->right = std::move(b);
  return e;
}

std::vector<std::string> coordinate_names(Eigen::Index dim) {
  std::vector<std::string> vars;
  for (Eigen::Index i = 1; i <= dim; ++i) vars.push_back("x" + std::to_string(i));
  return vars;
}

}  // namespace

SetExprPtr SetExpr::unite(SetExprPtr a, SetExprPtr b) { return binary(Kind::union_of, std::move(a), std::move(b)); }
SetExprPtr SetExpr::intersect(SetExprPtr a, SetExprPtr b) {
  return binary(Kind::intersection, std::move(a), std::move(b));
}
SetExprPtr SetExpr::minus(SetExprPtr a, SetExprPtr b) { return binary(Kind::difference, std::move(a), std::move(b)); }
SetExprPtr SetExpr::complement(SetExprPtr a) {
  auto e = std::make_shared<SetExpr>();
  e->kind = Kind::complement;
  e->dim = a->dim;
  e->left = std::move(a);
  return e;
}

FormulaPtr set_formula(const SetExprPtr& e, const std::vector<std::string>& vars) {
  switch (e->kind) {
    case SetExpr::Kind::atom: return from_semilinear(*e->set, vars);
    case SetExpr::Kind::union_of: return Formula::disj({set_formula(e->left, vars), set_formula(e->right, vars)});
    case SetExpr::Kind::intersection: return Formula::conj({set_formula(e->left, vars), set_formula(e->right, vars)});
    case SetExpr::Kind::difference:
      return Formula::conj({set_formula(e->left, vars), Formula::negate(set_formula(e->right, vars))});
    case SetExpr::Kind::complement: return Formula::negate(set_formula(e->left, vars));
  }
  throw std::logic_error("unreachable");
}

bool decide_empty(const SetExprPtr& e, const QeOptions& options) {
  const auto vars = coordinate_names(e->dim);
  FormulaPtr sentence = set_formula(e, vars);
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) sentence = Formula::exists(*it, sentence);
  return !decide(sentence, options);
}

bool decide_inclusion(const SemilinearSet& a, const SemilinearSet& b, const QeOptions& options) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  const auto vars = coordinate_names(a.dim());
  // a is contained in b iff no c + P n (n >= 0) of a component of a lies outside b
  const FormulaPtr outside = Formula::negate(cooper_qe(from_semilinear(b, vars), options));
  for (const auto& l : a.components()) {
    std::vector<std::string> ns;
    std::vector<FormulaPtr> parts;
    for (std::size_t j = 0; j < l.periods().size(); ++j) {
      ns.push_back(fresh("n"));
      parts.push_back(Formula::le(-Term::var(ns.back())));
    }
    FormulaPtr body = outside;
    for (Eigen::Index i = 0; i < a.dim(); ++i) {
      Term value(l.base()(i));
      for (std::size_t j = 0; j < ns.size(); ++j) value += Term::var(ns[j], l.periods()[j](i));
      body = substitute(body, vars[static_cast<std::size_t>(i)], value);
    }
    parts.push_back(body);
    FormulaPtr sentence = Formula::conj(std::move(parts));
    for (auto it = ns.rbegin(); it != ns.rend(); ++it) sentence = Formula::exists(*it, sentence);
    if (decide(sentence, options)) return false;
  }
  return true;
}

bool decide_equal(const SemilinearSet& a, const SemilinearSet& b, const QeOptions& options) {
  return decide_inclusion(a, b, options) && decide_inclusion(b, a, options);
}

bool member_complement(const SemilinearSet& s, const IntVector& v, const QeOptions& options) {
  if (v.size() != s.dim()) throw std::invalid_argument("dimension mismatch");
  const auto vars = coordinate_names(s.dim());
  std::map<std::string, Integer> env;
  for (Eigen::Index i = 0; i < v.size(); ++i) env.emplace(vars[static_cast<std::size_t>(i)], v(i));
  return decide(bind_free(Formula::negate(from_semilinear(s, vars)), env), options);
}

}  // namespace ratg
