#pragma once

#include <memory>
#include <string>
#include <string_view>

#include "ratg/groups.hpp"

namespace ratg {

struct RatExpr;
using RatExprPtr = std::shared_ptr<const RatExpr>;

/// Rational expression over the generators of a group backend.
struct RatExpr {
  enum class Kind { empty, singleton, union_of, concat, star };

  Kind kind = Kind::empty;
  Word word;  // singleton only; the empty word denotes the identity
  RatExprPtr left, right;  // right is unused by star

  static RatExprPtr make_empty();
  static RatExprPtr singleton(Word word);
  static RatExprPtr unite(RatExprPtr a, RatExprPtr b);
  static RatExprPtr concat(RatExprPtr a, RatExprPtr b);
  static RatExprPtr star(RatExprPtr a);
};

/// expr := term ('|' term)*, term := factor ('.'? factor)*, factor := atom ('*' | '^' INT)*,
/// atom := '∅' | 'EMPTY' | word | '(' expr ')'.
/// A word is a maximal run of `name^exp` tokens (and `1`). `^-1` after a factor is the
/// structural inverse, `^n` with n >= 0 the n-fold product.
RatExprPtr parse_rat_expr(std::string_view text);

std::string render(const RatExprPtr& e);

/// Denotes {g^-1 : g in e}.
RatExprPtr inverse(const RatExprPtr& e);

}  // namespace ratg
