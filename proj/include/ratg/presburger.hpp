#pragma once

#include <map>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ratg/integer.hpp"
#include "ratg/semilinear.hpp"

namespace ratg {

/// sum a_i x_i + c over named variables; zero coefficients are never stored.
class Term {
 public:
  Term() = default;
  Term(Integer constant) : constant_(std::move(constant)) {}  // NOLINT(google-explicit-constructor)
  static Term var(const std::string& name, const Integer& coeff = 1);

  [[nodiscard]] const std::map<std::string, Integer>& coeffs() const { return coeffs_; }
  [[nodiscard]] const Integer& constant() const { return constant_; }
  [[nodiscard]] Integer coeff(const std::string& name) const;
  [[nodiscard]] bool is_constant() const { return coeffs_.empty(); }
  [[nodiscard]] Term without(const std::string& name) const;
  [[nodiscard]] Term substitute(const std::string& name, const Term& value) const;
  [[nodiscard]] Integer evaluate(const std::map<std::string, Integer>& env) const;
  [[nodiscard]] std::string render() const;

  Term& operator+=(const Term& o);
  Term& operator-=(const Term& o);
  Term& operator*=(const Integer& k);
  friend Term operator+(Term a, const Term& b) { return a += b; }
  friend Term operator-(Term a, const Term& b) { return a -= b; }
  friend Term operator*(Term a, const Integer& k) { return a *= k; }
  Term operator-() const { return *this * Integer(-1); }
  friend bool operator==(const Term&, const Term&) = default;

 private:
  std::map<std::string, Integer> coeffs_;
  Integer constant_{0};
};

struct Formula;
using FormulaPtr = std::shared_ptr<const Formula>;

/// Presburger formula. Atoms: t <= 0, t = 0, d | t (d >= 2).
struct Formula {
  enum class Kind { truth, falsity, le, eq, divides, negation, conjunction, disjunction, exists, forall };

  Kind kind = Kind::truth;
  Term term;
  Integer modulus{0};
  std::vector<FormulaPtr> children;
  std::string var;

  static FormulaPtr top();
  static FormulaPtr bottom();
  static FormulaPtr le(Term t);
  static FormulaPtr eq(Term t);
  /// d | t; d = 1 gives true, d = 0 means t = 0, negative d is replaced by |d|.
  static FormulaPtr divides(const Integer& d, Term t);
  static FormulaPtr negate(FormulaPtr f);
  static FormulaPtr conj(std::vector<FormulaPtr> fs);
  static FormulaPtr disj(std::vector<FormulaPtr> fs);
  static FormulaPtr implies(FormulaPtr a, FormulaPtr b);
  static FormulaPtr exists(const std::string& var, FormulaPtr body);
  static FormulaPtr forall(const std::string& var, FormulaPtr body);

  // Relational sugar.
  static FormulaPtr le(const Term& a, const Term& b) { return le(a - b); }
  static FormulaPtr lt(const Term& a, const Term& b) { return le(a - b + Term(1)); }
  static FormulaPtr eq(const Term& a, const Term& b) { return eq(a - b); }
};

/// `E x. A y. (2|x & x+y<=3) | x=0`; also `exists`/`forall`, `~`/`!`, `->`, `true`/`false`,
/// relations `<= < >= > = !=`, terms with `*` or juxtaposed coefficients (`2x`).
FormulaPtr parse_formula(std::string_view text);
std::string render(const FormulaPtr& f);

std::vector<std::string> free_variables(const FormulaPtr& f);
bool is_quantifier_free(const FormulaPtr& f);

struct QeOptions {
  /// Largest coefficient or modulus lcm accepted during elimination; defaults to
  /// RATG_MAX_LCM from the environment, else 10^6.
  Integer max_lcm = default_max_lcm();
  static Integer default_max_lcm();
};

/// Equivalent quantifier-free formula (Cooper's elimination).
FormulaPtr cooper_qe(const FormulaPtr& f, const QeOptions& options = {});
/// Removes trivial atoms, folds constants, flattens and deduplicates; equivalence-preserving.
FormulaPtr simplify(const FormulaPtr& f);
/// Truth value under env; quantified subformulas are decided by elimination.
bool evaluate(const FormulaPtr& f, const std::map<std::string, Integer>& env, const QeOptions& options = {});
/// Throws std::invalid_argument("free variables present: ...") for open formulas.
bool decide(const FormulaPtr& sentence, const QeOptions& options = {});

/// or over components of exists n >= 0: x = c + P n.
FormulaPtr from_semilinear(const SemilinearSet& s, const std::vector<std::string>& vars);

/// Boolean combination of semilinear sets of one dimension.
struct SetExpr;
using SetExprPtr = std::shared_ptr<const SetExpr>;
struct SetExpr {
  enum class Kind { atom, union_of, intersection, difference, complement };
  Kind kind = Kind::atom;
  std::shared_ptr<const SemilinearSet> set;
  SetExprPtr left, right;
  Eigen::Index dim = 0;

  static SetExprPtr atom(SemilinearSet s);
  static SetExprPtr unite(SetExprPtr a, SetExprPtr b);
  static SetExprPtr intersect(SetExprPtr a, SetExprPtr b);
  static SetExprPtr minus(SetExprPtr a, SetExprPtr b);
  static SetExprPtr complement(SetExprPtr a);
};

FormulaPtr set_formula(const SetExprPtr& e, const std::vector<std::string>& vars);
bool decide_empty(const SetExprPtr& e, const QeOptions& options = {});
bool decide_inclusion(const SemilinearSet& a, const SemilinearSet& b, const QeOptions& options = {});
bool decide_equal(const SemilinearSet& a, const SemilinearSet& b, const QeOptions& options = {});
/// v lies outside s.
bool member_complement(const SemilinearSet& s, const IntVector& v, const QeOptions& options = {});

}  // namespace ratg
