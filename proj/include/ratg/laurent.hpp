#pragma once

#include <array>
#include <map>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "ratg/integer.hpp"

namespace ratg {

/// Integer Laurent polynomial, sparse: exponent -> nonzero coefficient.
class LaurentPoly {
 public:
  LaurentPoly() = default;
  explicit LaurentPoly(const Integer& constant);
  /// c * x^e
  static LaurentPoly monomial(const Integer& c, const Integer& e);

  [[nodiscard]] bool is_zero() const { return terms_.empty(); }
  [[nodiscard]] const std::map<Integer, Integer>& terms() const { return terms_; }
  [[nodiscard]] Integer coefficient(const Integer& e) const;
  [[nodiscard]] std::string render() const;

  /// Multiplication by x^k.
  [[nodiscard]] LaurentPoly shifted(const Integer& k) const;

  LaurentPoly& operator+=(const LaurentPoly& o);
  LaurentPoly& operator-=(const LaurentPoly& o);
  LaurentPoly& operator*=(const Integer& c);
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) { return a += b; }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) { return a -= b; }
  friend LaurentPoly operator*(LaurentPoly a, const Integer& c) { return a *= c; }
  LaurentPoly operator-() const;
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b);

  /// Syntactic equality of the polynomials (not of their classes).
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) { return a.terms_ == b.terms_; }

 private:
  void add_term(const Integer& e, const Integer& c);
  std::map<Integer, Integer> terms_;
};

/// The module Z[x, 1/x] / (f) for a primitive f = q0 x^m + ... + qm.
class LaurentModulus {
 public:
  /// Coefficients from the leading one down to the constant term.
  explicit LaurentModulus(std::vector<Integer> coeffs);

  [[nodiscard]] const std::vector<Integer>& coeffs() const { return coeffs_; }
  [[nodiscard]] std::size_t degree() const { return coeffs_.size() - 1; }
  [[nodiscard]] std::string render() const;

  /// True iff x^s p is divisible by f in Z[x] for the clearing power s.
  [[nodiscard]] bool divides(const LaurentPoly& p) const;
  /// Invariant of the class of p: evaluation at roots of f modulo small primes.
  [[nodiscard]] std::size_t class_hash(const LaurentPoly& p) const;

 private:
  std::vector<Integer> coeffs_;
  // (prime, root of f mod prime, inverse of root)
  std::vector<std::array<std::int64_t, 3>> residue_roots_;
};

/// Element of Z[x, 1/x] / (f). Equality is the exact divisibility predicate.
struct LaurentClass {
  LaurentPoly poly;
  std::shared_ptr<const LaurentModulus> modulus;
};

bool laurent_equal(const LaurentClass& p, const LaurentClass& q);

}  // namespace ratg
