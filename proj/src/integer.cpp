#include "ratg/integer.hpp"

#include <ostream>
#include <stdexcept>

namespace ratg {

namespace {

bool fits(const Integer::Big& v) {
  static const Integer::Big lo(INT64_MIN);
  static const Integer::Big hi(INT64_MAX);
  return v >= lo && v <= hi;
}

}  // namespace

void Integer::assign(const Big& v) {
  if (fits(v)) {
    small_ = static_cast<std::int64_t>(v);
    big_.reset();
  } else {
    small_ = 0;
    big_ = std::make_unique<Big>(v);
  }
}

Integer Integer::parse(std::string_view text) {
  std::size_t i = 0;
  bool negative = false;
  if (i < text.size() && (text[i] == '+' || text[i] == '-')) {
    negative = text[i] == '-';
    ++i;
  }
  if (i == text.size()) {
    throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
  }
  Big value = 0;
  for (; i < text.size(); ++i) {
    const char c = text[i];
    if (c < '0' || c > '9') {
      throw std::invalid_argument("malformed integer '" + std::string(text) + "'");
    }
    value = value * 10 + (c - '0');
  }
  if (negative) value = -value;
  return Integer(value);
}

std::int64_t Integer::to_int64() const {
  if (big_) throw std::overflow_error("integer " + str() + " exceeds 64 bits");
  return small_;
}

int Integer::sign() const noexcept {
  if (big_) return big_->sign();
  return (small_ > 0) - (small_ < 0);
}

std::string Integer::str() const {
  if (big_) return big_->str();
  return std::to_string(small_);
}

std::size_t Integer::hash() const noexcept {
  if (!big_) return std::hash<std::int64_t>{}(small_);
  std::size_t h = static_cast<std::size_t>(big_->sign()) * 0x9e3779b97f4a7c15ULL;
  const auto& backend = big_->backend();
  for (unsigned i = 0; i < backend.size(); ++i) {
    h ^= std::hash<std::uint64_t>{}(backend.limbs()[i]) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

double Integer::to_double() const {
  if (big_) return big_->convert_to<double>();
  return static_cast<double>(small_);
}

Integer& Integer::operator+=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_add_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign(to_big() + o.to_big());
  return *this;
}

Integer& Integer::operator-=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_sub_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign(to_big() - o.to_big());
  return *this;
}

Integer& Integer::operator*=(const Integer& o) {
  if (!big_ && !o.big_) {
    std::int64_t r;
    if (!__builtin_mul_overflow(small_, o.small_, &r)) {
      small_ = r;
      return *this;
    }
  }
  assign(to_big() * o.to_big());
  return *this;
}

Integer& Integer::operator/=(const Integer& o) {
  if (o.is_zero()) throw std::domain_error("integer division by zero");
  if (!big_ && !o.big_ && !(small_ == INT64_MIN && o.small_ == -1)) {
    small_ /= o.small_;
    return *this;
  }
  assign(to_big() / o.to_big());
  return *this;
}

Integer& Integer::operator%=(const Integer& o) {
  if (o.is_zero()) throw std::domain_error("integer division by zero");
  if (!big_ && !o.big_) {
    small_ = o.small_ == -1 ? 0 : small_ % o.small_;
    return *this;
  }
  assign(to_big() % o.to_big());
  return *this;
}

Integer Integer::operator-() const {
  if (!big_ && small_ != INT64_MIN) return Integer(-small_);
  return Integer(Big(-to_big()));
}

bool operator==(const Integer& a, const Integer& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ == b.small_;
  if (a.big_ && b.big_) return *a.big_ == *b.big_;
  return false;  // normalized: a big value never fits in 64 bits
}

std::strong_ordering operator<=>(const Integer& a, const Integer& b) noexcept {
  if (!a.big_ && !b.big_) return a.small_ <=> b.small_;
  const int c = a.to_big().compare(b.to_big());
  return c < 0 ? std::strong_ordering::less
               : (c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::ostream& operator<<(std::ostream& os, const Integer& v) { return os << v.str(); }

Integer abs(const Integer& v) { return v.sign() < 0 ? -v : v; }

Integer gcd(const Integer& a, const Integer& b) {
  if (a.is_small() && b.is_small() && a.small() != INT64_MIN && b.small() != INT64_MIN) {
    std::int64_t x = a.small() < 0 ? -a.small() : a.small();
    std::int64_t y = b.small() < 0 ? -b.small() : b.small();
    while (y != 0) {
      const std::int64_t t = x % y;
      x = y;
      y = t;
    }
    return Integer(x);
  }
  return Integer(Integer::Big(boost::multiprecision::gcd(a.to_big(), b.to_big())));
}

Integer lcm(const Integer& a, const Integer& b) {
  if (a.is_zero() || b.is_zero()) return 0;
  return abs(a / gcd(a, b) * b);
}

Integer floor_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (!(q * b == a) && ((a.sign() < 0) != (b.sign() < 0))) q -= 1;
  return q;
}

Integer ceil_div(const Integer& a, const Integer& b) {
  Integer q = a / b;
  if (!(q * b == a) && ((a.sign() < 0) == (b.sign() < 0))) q += 1;
  return q;
}

Integer floor_mod(const Integer& a, const Integer& b) {
  Integer r = a % b;
  if (r.sign() < 0) r += abs(b);
  return r;
}

Integer pow(const Integer& base, unsigned exponent) {
  Integer result = 1;
  Integer b = base;
  while (exponent > 0) {
    if (exponent & 1U) result *= b;
    exponent >>= 1U;
    if (exponent > 0) b *= b;
  }
  return result;
}

Rational::Rational(Integer n, Integer d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("rational with zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (den_.is_one()) return;
  const Integer g = gcd(num_, den_);
  if (!g.is_one() && !g.is_zero()) {
    num_ /= g;
    den_ /= g;
  }
  if (num_.is_zero()) den_ = 1;
}

std::string Rational::str() const {
  return den_.is_one() ? num_.str() : num_.str() + "/" + den_.str();
}

Rational& Rational::operator+=(const Rational& o) {
  if (den_.is_one() && o.den_.is_one()) {
    num_ += o.num_;
    return *this;
  }
  num_ = num_ * o.den_ + o.num_ * den_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator-=(const Rational& o) { return *this += -o; }

Rational& Rational::operator*=(const Rational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

Rational& Rational::operator/=(const Rational& o) {
  if (o.num_.is_zero()) throw std::domain_error("rational division by zero");
  num_ *= o.den_;
  den_ *= o.num_;
  normalize();
  return *this;
}

std::ostream& operator<<(std::ostream& os, const Rational& v) { return os << v.str(); }

}  // namespace ratg
