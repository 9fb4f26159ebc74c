#include "ratg/laurent.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

namespace ratg {

LaurentPoly::LaurentPoly(const Integer& constant) { add_term(0, constant); }

LaurentPoly LaurentPoly::monomial(const Integer& c, const Integer& e) {
  LaurentPoly p;
  p.add_term(e, c);
  return p;
}

void LaurentPoly::add_term(const Integer& e, const Integer& c) {
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(e, c);
  if (!inserted) {
    it->second += c;
    if (it->second.is_zero()) terms_.erase(it);
  }
}

Integer LaurentPoly::coefficient(const Integer& e) const {
  const auto it = terms_.find(e);
  return it == terms_.end() ? Integer(0) : it->second;
}

std::string LaurentPoly::render() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
    const auto& [e, c] = *it;
    Integer magnitude = abs(c);
    if (first) {
      if (c.sign() < 0) os << '-';
    } else {
      os << (c.sign() < 0 ? " - " : " + ");
    }
    first = false;
    if (e.is_zero()) {
      os << magnitude;
      continue;
    }
    if (!magnitude.is_one()) os << magnitude;
    os << 'x';
    if (!e.is_one()) os << '^' << e;
  }
  return os.str();
}

LaurentPoly LaurentPoly::shifted(const Integer& k) const {
  if (k.is_zero()) return *this;
  LaurentPoly out;
  for (const auto& [e, c] : terms_) out.terms_.emplace_hint(out.terms_.end(), e + k, c);
  return out;
}

LaurentPoly& LaurentPoly::operator+=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, c);
  return *this;
}

LaurentPoly& LaurentPoly::operator-=(const LaurentPoly& o) {
  for (const auto& [e, c] : o.terms_) add_term(e, -c);
  return *this;
}

LaurentPoly& LaurentPoly::operator*=(const Integer& c) {
  if (c.is_zero()) {
    terms_.clear();
    return *this;
  }
  for (auto& [e, v] : terms_) v *= c;
  return *this;
}

LaurentPoly LaurentPoly::operator-() const {
  LaurentPoly out = *this;
  for (auto& [e, v] : out.terms_) v = -v;
  return out;
}

LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
  LaurentPoly out;
  for (const auto& [ea, ca] : a.terms_) {
    for (const auto& [eb, cb] : b.terms_) out.add_term(ea + eb, ca * cb);
  }
  return out;
}

namespace {

std::int64_t mod_pow(std::int64_t b, std::int64_t e, std::int64_t m) {
  std::int64_t r = 1 % m;
  b %= m;
  if (b < 0) b += m;
  while (e > 0) {
    if (e & 1) r = static_cast<std::int64_t>((static_cast<__int128>(r) * b) % m);
    b = static_cast<std::int64_t>((static_cast<__int128>(b) * b) % m);
    e >>= 1;
  }
  return r;
}

std::int64_t residue(const Integer& v, std::int64_t m) {
  return floor_mod(v, Integer(m)).to_int64();
}

}  // namespace

LaurentModulus::LaurentModulus(std::vector<Integer> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.size() < 2) throw std::invalid_argument("f must have degree at least 1");
  if (coeffs_.front().is_zero() || coeffs_.back().is_zero()) {
    throw std::invalid_argument("f must have nonzero leading and constant coefficients");
  }
  Integer g = 0;
  for (const auto& c : coeffs_) g = gcd(g, c);
  if (!g.is_one()) throw std::invalid_argument("f must be primitive (coefficient gcd 1)");

  static constexpr std::array<std::int64_t, 24> primes = {1009, 1013, 1019, 1021, 1031, 1033, 1039, 1049,
                                                           1051, 1061, 1063, 1069, 1087, 1091, 1093, 1097,
                                                           1103, 1109, 1117, 1123, 1129, 1151, 1153, 1163};
  for (const std::int64_t p : primes) {
    if (residue(coeffs_.front(), p) == 0 || residue(coeffs_.back(), p) == 0) continue;
    for (std::int64_t rho = 1; rho < p; ++rho) {
      std::int64_t acc = 0;
      for (const auto& c : coeffs_) acc = (acc * rho + residue(c, p)) % p;
      if (acc == 0) {
        residue_roots_.push_back({p, rho, mod_pow(rho, p - 2, p)});
        break;
      }
    }
    if (residue_roots_.size() == 3) break;
  }
}

std::string LaurentModulus::render() const {
  std::ostringstream os;
  os << '[';
  for (std::size_t i = 0; i < coeffs_.size(); ++i) {
    if (i > 0) os << ',';
    os << coeffs_[i];
  }
  os << ']';
  return os.str();
}

bool LaurentModulus::divides(const LaurentPoly& p) const {
  if (p.is_zero()) return true;
  const Integer low = p.terms().begin()->first;
  const Integer high = p.terms().rbegin()->first;
  const std::int64_t span = (high - low).to_int64();
  const auto m = static_cast<std::int64_t>(degree());
  if (span < m) return false;
  // Dense coefficients, highest power first.
  std::vector<Integer> r(static_cast<std::size_t>(span + 1), Integer(0));
  for (const auto& [e, c] : p.terms()) r[static_cast<std::size_t>((high - e).to_int64())] = c;
  const Integer& lead = coeffs_.front();
  for (std::int64_t i = 0; i + m <= span; ++i) {
    const auto& top = r[static_cast<std::size_t>(i)];
    if (top.is_zero()) continue;
    if (!(top % lead).is_zero()) return false;
    const Integer q = top / lead;
    for (std::int64_t j = 0; j <= m; ++j) r[static_cast<std::size_t>(i + j)] -= q * coeffs_[static_cast<std::size_t>(j)];
  }
  for (std::int64_t i = span - m + 1; i <= span; ++i) {
    if (!r[static_cast<std::size_t>(i)].is_zero()) return false;
  }
  return true;
}

std::size_t LaurentModulus::class_hash(const LaurentPoly& p) const {
  std::size_t h = 0x51ed270b;
  for (const auto& [prime, rho, rho_inv] : residue_roots_) {
    std::int64_t acc = 0;
    for (const auto& [e, c] : p.terms()) {
      const std::int64_t base = e.sign() >= 0 ? rho : rho_inv;
      const std::int64_t ee = residue(abs(e), prime - 1);
      const std::int64_t term = static_cast<std::int64_t>(
          (static_cast<__int128>(residue(c, prime)) * mod_pow(base, ee, prime)) % prime);
      acc = (acc + term) % prime;
    }
    h = h * 1000003U ^ static_cast<std::size_t>(acc);
  }
  return h;
}

bool laurent_equal(const LaurentClass& p, const LaurentClass& q) {
  if (p.modulus && q.modulus && p.modulus != q.modulus && p.modulus->coeffs() != q.modulus->coeffs()) {
    throw std::invalid_argument("laurent classes have different moduli");
  }
  const auto& modulus = p.modulus ? p.modulus : q.modulus;
  if (!modulus) return p.poly == q.poly;
  return modulus->divides(p.poly - q.poly);
}

}  // namespace ratg
