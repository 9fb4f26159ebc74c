// Random inputs shared by the unit and acceptance tests.
#pragma once

#include <random>
#include <vector>

#include "ratg/groups.hpp"

namespace sampling {

inline std::vector<ratg::SpecPtr> all_specs() {
  using ratg::GroupSpec;
  return {
      GroupSpec::free_abelian(3),
      GroupSpec::parse("group kind=abelian rank=1 torsion=[2,3]"),
      GroupSpec::parse("group kind=semidirect rank=2 matrix=[[2,1],[1,1]]"),
      GroupSpec::parse("group kind=semidirect rank=2 matrix=[[0,-1],[1,0]]"),
      GroupSpec::heisenberg(),
      GroupSpec::lamplighter(2),
      GroupSpec::lamplighter(5),
      GroupSpec::metabelian({2, -3}),
      GroupSpec::metabelian({3, 1, -1}),
  };
}

template <class Rng>
ratg::GroupElement random_element(const ratg::SpecPtr& spec, Rng& rng, int bound = 20) {
  using namespace ratg;
  std::uniform_int_distribution<int> coef(-bound, bound);
  std::uniform_int_distribution<int> shift(-4, 4);
  std::uniform_int_distribution<int> count(0, 4);
  switch (spec->kind()) {
    case GroupKind::free_abelian:
    case GroupKind::abelian: {
      IntVector v(spec->vector_length());
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = coef(rng);
      return abelian_element(spec, v);
    }
    case GroupKind::semidirect: {
      IntVector v(spec->rank());
      for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = coef(rng);
      return semidirect_element(spec, v, shift(rng));
    }
    case GroupKind::heisenberg: return heisenberg_element(spec, coef(rng), coef(rng), coef(rng));
    case GroupKind::lamplighter: {
      std::map<Integer, Integer> support;
      const int n = count(rng);
      for (int i = 0; i < n; ++i) support[Integer(coef(rng) / 3)] = coef(rng);
      return lamplighter_element(spec, std::move(support), coef(rng));
    }
    case GroupKind::metabelian: {
      LaurentPoly m;
      const int n = count(rng);
      for (int i = 0; i < n; ++i) m += LaurentPoly::monomial(coef(rng), shift(rng));
      return metabelian_element(spec, shift(rng), std::move(m));
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace sampling

#include "ratg/rat_expr.hpp"

namespace sampling {

// Random rational expression over the given letters; words have one or two letters.
template <class Rng>
ratg::RatExprPtr random_expr(Rng& rng, const std::vector<std::string>& letters, int depth) {
  using ratg::RatExpr;
  std::uniform_int_distribution<int> pick(0, depth <= 0 ? 0 : 5);
  std::uniform_int_distribution<std::size_t> letter(0, letters.size() - 1);
  std::uniform_int_distribution<int> exponent(-2, 2);
  std::uniform_int_distribution<int> len(1, 2);
  switch (pick(rng)) {
    case 0:
    case 1: {
      ratg::Word w;
      const int n = len(rng);
      for (int i = 0; i < n; ++i) {
        int e = exponent(rng);
        if (e == 0) e = 1;
        w.push_back({letters[letter(rng)], e});
      }
      return RatExpr::singleton(std::move(w));
    }
    case 2: return RatExpr::unite(random_expr(rng, letters, depth - 1), random_expr(rng, letters, depth - 1));
    case 3:
    case 4: return RatExpr::concat(random_expr(rng, letters, depth - 1), random_expr(rng, letters, depth - 1));
    default: return RatExpr::star(random_expr(rng, letters, depth - 1));
  }
}

}  // namespace sampling

#include "ratg/presburger.hpp"
#include "ratg/semilinear.hpp"

namespace sampling {

template <class Rng>
ratg::IntVector random_vector(Rng& rng, Eigen::Index dim, int bound) {
  std::uniform_int_distribution<int> d(-bound, bound);
  ratg::IntVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = d(rng);
  return v;
}

// Up to `max_components` components with up to `max_periods` periods, entries in [-3,3].
template <class Rng>
ratg::SemilinearSet random_semilinear(Rng& rng, Eigen::Index dim, int max_components = 2, int max_periods = 3) {
  std::uniform_int_distribution<int> comps(0, max_components), pers(0, max_periods);
  std::vector<ratg::LinearSet> out;
  const int n = comps(rng);
  for (int i = 0; i < n; ++i) {
    std::vector<ratg::IntVector> periods;
    const int k = pers(rng);
    for (int j = 0; j < k; ++j) periods.push_back(random_vector(rng, dim, 3));
    out.emplace_back(random_vector(rng, dim, 3), std::move(periods));
  }
  return ratg::SemilinearSet(dim, std::move(out));
}

template <class Rng>
ratg::FormulaPtr random_atom(Rng& rng, const std::vector<std::string>& vars) {
  std::uniform_int_distribution<int> coeff(-4, 4), constant(-10, 10), kind(0, 5), modulus(2, 5);
  ratg::Term t(constant(rng));
  for (const auto& v : vars) {
    if (rng() % 3 != 0) t += ratg::Term::var(v, coeff(rng));
  }
  switch (kind(rng)) {
    case 0:
    case 1:
    case 2: return ratg::Formula::le(t);
    case 3: return ratg::Formula::eq(t);
    default: return ratg::Formula::divides(modulus(rng), t);
  }
}

template <class Rng>
ratg::FormulaPtr random_qf(Rng& rng, const std::vector<std::string>& vars, int depth) {
  if (depth == 0 || rng() % 3 == 0) return random_atom(rng, vars);
  switch (rng() % 3) {
    case 0: return ratg::Formula::conj({random_qf(rng, vars, depth - 1), random_qf(rng, vars, depth - 1)});
    case 1: return ratg::Formula::disj({random_qf(rng, vars, depth - 1), random_qf(rng, vars, depth - 1)});
    default: return ratg::Formula::negate(random_qf(rng, vars, depth - 1));
  }
}

// At most `quantifiers` nested quantifiers over variables y1, y2, ...; with `guard` > 0 every
// bound variable is restricted to [-guard, guard] inside the formula.
template <class Rng>
ratg::FormulaPtr random_formula(Rng& rng, std::vector<std::string> vars, int quantifiers, long guard = 0) {
  using ratg::Formula;
  using ratg::Term;
  if (quantifiers == 0) return random_qf(rng, vars, 2);
  switch (rng() % 4) {
    case 0: return Formula::negate(random_formula(rng, vars, quantifiers, guard));
    case 1: {
      auto q = random_formula(rng, vars, quantifiers, guard);
      auto r = random_qf(rng, vars, 1);
      return rng() % 2 ? Formula::conj({q, r}) : Formula::disj({q, r});
    }
    default: {
      const std::string y = "y" + std::to_string(vars.size());
      vars.push_back(y);
      auto body = random_formula(rng, vars, quantifiers - 1, guard);
      const bool ex = rng() % 2 == 0;
      if (guard > 0) {
        auto in_range = Formula::conj({Formula::le(Term::var(y), Term(guard)), Formula::le(Term(-guard), Term::var(y))});
        body = ex ? Formula::conj({in_range, body}) : Formula::implies(in_range, body);
      }
      return ex ? Formula::exists(y, body) : Formula::forall(y, body);
    }
  }
}

}  // namespace sampling
