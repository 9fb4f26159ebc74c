#pragma once

#include <compare>
#include <concepts>
#include <cstdint>
#include <functional>
#include <iosfwd>
#include <memory>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>
#include <Eigen/Core>

namespace ratg {

/// Arbitrary-precision integer. Values that fit in 64 bits stay inline; every
/// operation checks for overflow and promotes to cpp_int, so nothing wraps.
class Integer {
 public:
  using Big = boost::multiprecision::cpp_int;

  Integer() noexcept = default;
  template <std::integral T>
  Integer(T v) {  // NOLINT(google-explicit-constructor)
    if constexpr (std::is_signed_v<T> || sizeof(T) < sizeof(std::int64_t)) {
      small_ = static_cast<std::int64_t>(v);
    } else {
      if (v <= static_cast<T>(INT64_MAX)) {
        small_ = static_cast<std::int64_t>(v);
      } else {
        big_ = std::make_unique<Big>(v);
      }
    }
  }
  explicit Integer(const Big& v) { assign(v); }

  Integer(const Integer& o) : small_(o.small_), big_(o.big_ ? std::make_unique<Big>(*o.big_) : nullptr) {}
  Integer(Integer&&) noexcept = default;
  Integer& operator=(const Integer& o) {
    if (this != &o) {
      small_ = o.small_;
      big_ = o.big_ ? std::make_unique<Big>(*o.big_) : nullptr;
    }
    return *this;
  }
  Integer& operator=(Integer&&) noexcept = default;
  ~Integer() = default;

  /// Parses an optionally signed decimal literal; throws std::invalid_argument.
  static Integer parse(std::string_view text);

  [[nodiscard]] bool is_small() const noexcept { return !big_; }
  [[nodiscard]] std::int64_t small() const noexcept { return small_; }
  [[nodiscard]] Big to_big() const { return big_ ? *big_ : Big(small_); }
  /// Throws std::overflow_error when the value does not fit.
  [[nodiscard]] std::int64_t to_int64() const;
  [[nodiscard]] bool fits_int64() const noexcept { return !big_; }

  [[nodiscard]] int sign() const noexcept;
  [[nodiscard]] bool is_zero() const noexcept { return !big_ && small_ == 0; }
  [[nodiscard]] bool is_one() const noexcept { return !big_ && small_ == 1; }
  [[nodiscard]] std::string str() const;
  [[nodiscard]] std::size_t hash() const noexcept;
  [[nodiscard]] double to_double() const;

  Integer& operator+=(const Integer& o);
  Integer& operator-=(const Integer& o);
  Integer& operator*=(const Integer& o);
  /// Truncating division, like the built-in operator.
  Integer& operator/=(const Integer& o);
  Integer& operator%=(const Integer& o);

  friend Integer operator+(Integer a, const Integer& b) { return a += b; }
  friend Integer operator-(Integer a, const Integer& b) { return a -= b; }
  friend Integer operator*(Integer a, const Integer& b) { return a *= b; }
  friend Integer operator/(Integer a, const Integer& b) { return a /= b; }
  friend Integer operator%(Integer a, const Integer& b) { return a %= b; }
  Integer operator-() const;
  Integer operator+() const { return *this; }

  friend bool operator==(const Integer& a, const Integer& b) noexcept;
  friend std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept;

 private:
  void assign(const Big& v);

  std::int64_t small_ = 0;
  std::unique_ptr<Big> big_;
};

std::ostream& operator<<(std::ostream& os, const Integer& v);

Integer abs(const Integer& v);
Integer gcd(const Integer& a, const Integer& b);
Integer lcm(const Integer& a, const Integer& b);
/// Quotient rounded toward negative infinity.
Integer floor_div(const Integer& a, const Integer& b);
/// Quotient rounded toward positive infinity.
Integer ceil_div(const Integer& a, const Integer& b);
/// Remainder in [0, |b|).
Integer floor_mod(const Integer& a, const Integer& b);
Integer pow(const Integer& base, unsigned exponent);

/// Exact rational number with positive denominator in lowest terms.
class Rational {
 public:
  Rational() = default;
  Rational(Integer n) : num_(std::move(n)), den_(1) {}  // NOLINT(google-explicit-constructor)
  template <std::integral T>
  Rational(T n) : num_(n), den_(1) {}  // NOLINT(google-explicit-constructor)
  Rational(Integer n, Integer d);

  [[nodiscard]] const Integer& num() const { return num_; }
  [[nodiscard]] const Integer& den() const { return den_; }
  [[nodiscard]] int sign() const { return num_.sign(); }
  [[nodiscard]] bool is_zero() const { return num_.is_zero(); }
  [[nodiscard]] bool is_integer() const { return den_.is_one(); }
  [[nodiscard]] std::string str() const;

  Rational& operator+=(const Rational& o);
  Rational& operator-=(const Rational& o);
  Rational& operator*=(const Rational& o);
  Rational& operator/=(const Rational& o);
  friend Rational operator+(Rational a, const Rational& b) { return a += b; }
  friend Rational operator-(Rational a, const Rational& b) { return a -= b; }
  friend Rational operator*(Rational a, const Rational& b) { return a *= b; }
  friend Rational operator/(Rational a, const Rational& b) { return a /= b; }
  Rational operator-() const { return Rational(-num_, den_); }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend std::strong_ordering operator<=>(const Rational& a, const Rational& b) {
    return a.num_ * b.den_ <=> b.num_ * a.den_;
  }

 private:
  void normalize();
  Integer num_{0};
  Integer den_{1};
};

std::ostream& operator<<(std::ostream& os, const Rational& v);

}  // namespace ratg

template <>
struct std::hash<ratg::Integer> {
  std::size_t operator()(const ratg::Integer& v) const noexcept { return v.hash(); }
};

namespace Eigen {

template <>
struct NumTraits<ratg::Integer> : GenericNumTraits<ratg::Integer> {
  using Real = ratg::Integer;
  using NonInteger = ratg::Rational;
  using Literal = ratg::Integer;
  using Nested = ratg::Integer;
  enum {
    IsComplex = 0,
    IsInteger = 1,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 3,
    MulCost = 3
  };
  static inline int digits10() { return 0; }
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline Real highest() { return INT64_MAX; }
  static inline Real lowest() { return INT64_MIN; }
};

template <>
struct NumTraits<ratg::Rational> : GenericNumTraits<ratg::Rational> {
  using Real = ratg::Rational;
  using NonInteger = ratg::Rational;
  using Literal = ratg::Rational;
  using Nested = ratg::Rational;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = 1,
    AddCost = 6,
    MulCost = 6
  };
  static inline int digits10() { return 0; }
  static inline Real epsilon() { return 0; }
  static inline Real dummy_precision() { return 0; }
  static inline Real highest() { return INT64_MAX; }
  static inline Real lowest() { return INT64_MIN; }
};

}  // namespace Eigen
