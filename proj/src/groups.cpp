#include "ratg/groups.hpp"

#include <cctype>
#include <sstream>

namespace ratg {

std::string_view kind_name(GroupKind kind) {
  switch (kind) {
    case GroupKind::free_abelian: return "free_abelian";
    case GroupKind::abelian: return "abelian";
    case GroupKind::semidirect: return "semidirect";
    case GroupKind::heisenberg: return "heisenberg";
    case GroupKind::lamplighter: return "lamplighter";
    case GroupKind::metabelian: return "metabelian";
  }
  return "?";
}

// ---------------------------------------------------------------------------
// GroupSpec

SpecPtr GroupSpec::free_abelian(int rank) {
  if (rank < 1) throw std::invalid_argument("free_abelian rank must be positive");
  auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
  s->kind_ = GroupKind::free_abelian;
  s->rank_ = rank;
  return s;
}

SpecPtr GroupSpec::abelian(int rank, std::vector<Integer> torsion) {
  if (rank < 0) throw std::invalid_argument("abelian rank must be nonnegative");
  if (rank == 0 && torsion.empty()) throw std::invalid_argument("abelian group needs at least one factor");
  for (const auto& m : torsion) {
    if (m < Integer(2)) throw std::invalid_argument("torsion moduli must be >= 2");
  }
  if (torsion.empty()) return free_abelian(rank);
  auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
  s->kind_ = GroupKind::abelian;
  s->rank_ = rank;
  s->torsion_ = std::move(torsion);
  return s;
}

SpecPtr GroupSpec::semidirect(const IntMatrix& action) {
  if (action.rows() < 1 || action.rows() != action.cols()) {
    throw std::invalid_argument("semidirect action must be a nonempty square matrix");
  }
  auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
  s->kind_ = GroupKind::semidirect;
  s->rank_ = static_cast<int>(action.rows());
  s->action_ = action;
  s->action_inverse_ = unimodular_inverse(action);
  return s;
}

SpecPtr GroupSpec::heisenberg() {
  auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
  s->kind_ = GroupKind::heisenberg;
  return s;
}

SpecPtr GroupSpec::lamplighter(const Integer& modulus) {
  if (modulus < Integer(2)) throw std::invalid_argument("lamplighter modulus must be >= 2");
  auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
  s->kind_ = GroupKind::lamplighter;
  s->modulus_ = modulus;
  return s;
}

SpecPtr GroupSpec::metabelian(std::vector<Integer> f_coeffs) {
  auto s = std::shared_ptr<GroupSpec>(new GroupSpec());
  s->kind_ = GroupKind::metabelian;
  s->laurent_ = std::make_shared<const LaurentModulus>(std::move(f_coeffs));
  return s;
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

// Splits on whitespace outside brackets.
std::vector<std::string> split_fields(std::string_view text) {
  std::vector<std::string> out;
  std::string current;
  int depth = 0;
  for (const char c : text) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (std::isspace(static_cast<unsigned char>(c)) && depth == 0) {
      if (!current.empty()) out.push_back(std::move(current));
      current.clear();
    } else if (!std::isspace(static_cast<unsigned char>(c))) {
      current += c;
    }
  }
  if (depth != 0) throw ParseError("unbalanced brackets in group spec");
  if (!current.empty()) out.push_back(std::move(current));
  return out;
}

std::vector<std::string> split_top_level(std::string_view s) {
  std::vector<std::string> parts;
  std::string current;
  int depth = 0;
  for (const char c : s) {
    if (c == '[') ++depth;
    if (c == ']') --depth;
    if (c == ',' && depth == 0) {
      parts.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  if (!current.empty() || !parts.empty()) parts.push_back(current);
  return parts;
}

std::string_view unbracket(std::string_view s) {
  s = trim(s);
  if (s.size() < 2 || s.front() != '[' || s.back() != ']') {
    throw ParseError("expected bracketed list, got '" + std::string(s) + "'");
  }
  return s.substr(1, s.size() - 2);
}

std::vector<Integer> parse_int_list(std::string_view s) {
  std::vector<Integer> out;
  for (const auto& part : split_top_level(unbracket(s))) out.push_back(Integer::parse(trim(part)));
  return out;
}

IntMatrix parse_int_matrix(std::string_view s) {
  std::vector<std::vector<Integer>> rows;
  for (const auto& part : split_top_level(unbracket(s))) rows.push_back(parse_int_list(part));
  if (rows.empty()) throw ParseError("empty matrix");
  IntMatrix m(static_cast<Eigen::Index>(rows.size()), static_cast<Eigen::Index>(rows.front().size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != rows.front().size()) throw ParseError("ragged matrix");
    for (std::size_t j = 0; j < rows[i].size(); ++j) {
      m(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    }
  }
  return m;
}

int parse_small(const std::string& s) {
  const Integer v = Integer::parse(s);
  if (v < Integer(0) || v > Integer(4096)) throw ParseError("rank out of range: " + s);
  return static_cast<int>(v.to_int64());
}

}  // namespace

SpecPtr GroupSpec::parse(std::string_view dsl) {
  const auto fields = split_fields(trim(dsl));
  if (fields.empty() || fields.front() != "group") throw ParseError("group spec must start with 'group'");
  std::map<std::string, std::string> kv;
  for (std::size_t i = 1; i < fields.size(); ++i) {
    const auto eq = fields[i].find('=');
    if (eq == std::string::npos) throw ParseError("expected key=value in group spec, got '" + fields[i] + "'");
    kv[fields[i].substr(0, eq)] = fields[i].substr(eq + 1);
  }
  auto take = [&](const std::string& key) -> std::optional<std::string> {
    const auto it = kv.find(key);
    if (it == kv.end()) return std::nullopt;
    std::string v = it->second;
    kv.erase(it);
    return v;
  };
  const auto kind = take("kind");
  if (!kind) throw ParseError("group spec is missing kind=");
  SpecPtr spec;
  try {
    if (*kind == "free_abelian") {
      const auto rank = take("rank");
      if (!rank) throw ParseError("free_abelian requires rank=");
      spec = free_abelian(parse_small(*rank));
    } else if (*kind == "abelian") {
      const auto rank = take("rank");
      const auto torsion = take("torsion");
      spec = abelian(rank ? parse_small(*rank) : 0, torsion ? parse_int_list(*torsion) : std::vector<Integer>{});
    } else if (*kind == "semidirect") {
      const auto matrix = take("matrix");
      if (!matrix) throw ParseError("semidirect requires matrix=");
      const IntMatrix m = parse_int_matrix(*matrix);
      if (const auto rank = take("rank"); rank && parse_small(*rank) != m.rows()) {
        throw ParseError("semidirect rank does not match matrix size");
      }
      spec = semidirect(m);
    } else if (*kind == "heisenberg") {
      spec = heisenberg();
    } else if (*kind == "lamplighter") {
      auto mod = take("mod");
      if (!mod) mod = take("modulus");
      if (!mod) throw ParseError("lamplighter requires mod=");
      spec = lamplighter(Integer::parse(*mod));
    } else if (*kind == "metabelian") {
      const auto f = take("f");
      if (!f) throw ParseError("metabelian requires f=");
      spec = metabelian(parse_int_list(*f));
    } else {
      throw ParseError("unknown group kind '" + *kind + "'");
    }
  } catch (const ParseError&) {
    throw;
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
  if (!kv.empty()) throw ParseError("unexpected key '" + kv.begin()->first + "' in group spec");
  return spec;
}

std::vector<std::string> GroupSpec::canonical_generators() const {
  std::vector<std::string> out;
  switch (kind_) {
    case GroupKind::free_abelian:
    case GroupKind::abelian:
      for (int i = 1; i <= vector_length(); ++i) out.push_back("e" + std::to_string(i));
      break;
    case GroupKind::semidirect:
      for (int i = 1; i <= rank_; ++i) out.push_back("e" + std::to_string(i));
      out.emplace_back("h");
      break;
    case GroupKind::heisenberg: out = {"g", "f", "z"}; break;
    case GroupKind::lamplighter: out = {"a", "t"}; break;
    case GroupKind::metabelian: out = {"a", "x"}; break;
  }
  return out;
}

std::string GroupSpec::render() const {
  std::ostringstream os;
  os << "group kind=" << kind_name(kind_);
  switch (kind_) {
    case GroupKind::free_abelian: os << " rank=" << rank_; break;
    case GroupKind::abelian: {
      os << " rank=" << rank_ << " torsion=[";
      for (std::size_t i = 0; i < torsion_.size(); ++i) os << (i ? "," : "") << torsion_[i];
      os << ']';
      break;
    }
    case GroupKind::semidirect: os << " rank=" << rank_ << " matrix=" << ratg::render(action_); break;
    case GroupKind::heisenberg: break;
    case GroupKind::lamplighter: os << " mod=" << modulus_; break;
    case GroupKind::metabelian: os << " f=" << laurent_->render(); break;
  }
  return os.str();
}

bool operator==(const GroupSpec& a, const GroupSpec& b) {
  if (a.kind_ != b.kind_ || a.rank_ != b.rank_ || a.torsion_ != b.torsion_) return false;
  switch (a.kind_) {
    case GroupKind::semidirect: return a.action_ == b.action_;
    case GroupKind::lamplighter: return a.modulus_ == b.modulus_;
    case GroupKind::metabelian: return a.laurent_->coeffs() == b.laurent_->coeffs();
    default: return true;
  }
}

bool same_spec(const SpecPtr& a, const SpecPtr& b) { return a == b || (a && b && *a == *b); }

// ---------------------------------------------------------------------------
// GroupElement

namespace {

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::size_t mix(std::size_t h, std::size_t v) { return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2)); }

void check_shape(const GroupSpec& spec, const GroupElement::Value& value) {
  const bool ok = std::visit(
      overloaded{
          [&](const AbelianVec& e) {
            return (spec.kind() == GroupKind::free_abelian || spec.kind() == GroupKind::abelian) &&
                   e.v.size() == spec.vector_length();
          },
          [&](const SemidirectElem& e) { return spec.kind() == GroupKind::semidirect && e.v.size() == spec.rank(); },
          [&](const HeisenbergElem&) { return spec.kind() == GroupKind::heisenberg; },
          [&](const LamplighterElem&) { return spec.kind() == GroupKind::lamplighter; },
          [&](const MetabelianElem&) { return spec.kind() == GroupKind::metabelian; },
      },
      value);
  if (!ok) throw std::invalid_argument("element does not belong to " + spec.render());
}

}  // namespace

GroupElement::GroupElement(SpecPtr spec, Value value) : spec_(std::move(spec)), value_(std::move(value)) {
  if (!spec_) throw std::invalid_argument("element without group spec");
  check_shape(*spec_, value_);
  std::visit(overloaded{
                 [&](AbelianVec& e) {
                   const auto& torsion = spec_->torsion();
                   for (std::size_t i = 0; i < torsion.size(); ++i) {
                     auto& c = e.v(spec_->rank() + static_cast<Eigen::Index>(i));
                     c = floor_mod(c, torsion[i]);
                   }
                   hash_ = IntVectorHash{}(e.v);
                 },
                 [&](SemidirectElem& e) { hash_ = mix(IntVectorHash{}(e.v), e.k.hash()); },
                 [&](HeisenbergElem& e) { hash_ = mix(mix(e.alpha.hash(), e.beta.hash()), e.gamma.hash()); },
                 [&](LamplighterElem& e) {
                   std::size_t h = e.k.hash();
                   for (auto it = e.support.begin(); it != e.support.end();) {
                     it->second = floor_mod(it->second, spec_->modulus());
                     if (it->second.is_zero()) {
                       it = e.support.erase(it);
                     } else {
                       h = mix(mix(h, it->first.hash()), it->second.hash());
                       ++it;
                     }
                   }
                   hash_ = h;
                 },
                 [&](MetabelianElem& e) { hash_ = mix(e.k.hash(), spec_->laurent_modulus()->class_hash(e.m)); },
             },
             value_);
}

bool GroupElement::is_identity() const { return *this == identity(spec_); }

bool operator==(const GroupElement& a, const GroupElement& b) {
  if (!same_spec(a.spec_, b.spec_)) return false;
  if (a.hash_ != b.hash_) return false;
  return std::visit(
      overloaded{
          [&](const AbelianVec& x) { return same_vector(x.v, std::get<AbelianVec>(b.value_).v); },
          [&](const SemidirectElem& x) {
            const auto& y = std::get<SemidirectElem>(b.value_);
            return x.k == y.k && same_vector(x.v, y.v);
          },
          [&](const HeisenbergElem& x) {
            const auto& y = std::get<HeisenbergElem>(b.value_);
            return x.alpha == y.alpha && x.beta == y.beta && x.gamma == y.gamma;
          },
          [&](const LamplighterElem& x) {
            const auto& y = std::get<LamplighterElem>(b.value_);
            return x.k == y.k && x.support == y.support;
          },
          [&](const MetabelianElem& x) {
            const auto& y = std::get<MetabelianElem>(b.value_);
            return x.k == y.k && a.spec_->laurent_modulus()->divides(x.m - y.m);
          },
      },
      a.value_);
}

std::string GroupElement::render() const {
  return std::visit(
      overloaded{
          [](const AbelianVec& e) { return ratg::render(e.v); },
          [](const SemidirectElem& e) {
            std::string s = ratg::render(e.v);
            if (!e.k.is_zero()) s += "h^" + e.k.str();
            return s;
          },
          [](const HeisenbergElem& e) {
            return "(" + e.alpha.str() + "," + e.beta.str() + "," + e.gamma.str() + ")";
          },
          [](const LamplighterElem& e) {
            std::string s = "{";
            bool first = true;
            for (const auto& [pos, val] : e.support) {
              if (!first) s += ",";
              first = false;
              s += pos.str() + ":" + val.str();
            }
            s += "}";
            if (!e.k.is_zero()) s += "t^" + e.k.str();
            return s;
          },
          [](const MetabelianElem& e) {
            std::string s;
            if (!e.k.is_zero()) s += "x^" + e.k.str();
            if (!e.m.is_zero()) {
              if (!s.empty()) s += " ";
              s += "a^(" + e.m.render() + ")";
            }
            return s.empty() ? std::string("1") : s;
          },
      },
      value_);
}

GroupElement identity(const SpecPtr& spec) {
  switch (spec->kind()) {
    case GroupKind::free_abelian:
    case GroupKind::abelian: return {spec, AbelianVec{zero_vector(spec->vector_length())}};
    case GroupKind::semidirect: return {spec, SemidirectElem{zero_vector(spec->rank()), 0}};
    case GroupKind::heisenberg: return {spec, HeisenbergElem{0, 0, 0}};
    case GroupKind::lamplighter: return {spec, LamplighterElem{{}, 0}};
    case GroupKind::metabelian: return {spec, MetabelianElem{0, LaurentPoly()}};
  }
  throw std::logic_error("unreachable");
}

GroupElement mul(const GroupElement& a, const GroupElement& b) {
  if (!same_spec(a.spec(), b.spec())) throw std::invalid_argument("spec mismatch");
  const SpecPtr& spec = a.spec();
  return std::visit(
      overloaded{
          [&](const AbelianVec& x) -> GroupElement {
            return {spec, AbelianVec{x.v + std::get<AbelianVec>(b.value()).v}};
          },
          [&](const SemidirectElem& x) -> GroupElement {
            const auto& y = std::get<SemidirectElem>(b.value());
            // v h^k v' h^k' = (v + h^k v' h^-k) h^(k+k'), and h^k v' h^-k = M^-k v'.
            IntVector moved = x.k.is_zero() ? y.v
                                            : IntVector(matrix_power(spec->action(), spec->action_inverse(), -x.k) * y.v);
            return {spec, SemidirectElem{x.v + moved, x.k + y.k}};
          },
          [&](const HeisenbergElem& x) -> GroupElement {
            const auto& y = std::get<HeisenbergElem>(b.value());
            return {spec, HeisenbergElem{x.alpha + y.alpha, x.beta + y.beta, x.gamma + y.gamma + x.alpha * y.beta}};
          },
          [&](const LamplighterElem& x) -> GroupElement {
            const auto& y = std::get<LamplighterElem>(b.value());
            LamplighterElem out{x.support, x.k + y.k};
            for (const auto& [pos, val] : y.support) {
              auto [it, inserted] = out.support.try_emplace(pos + x.k, val);
              if (!inserted) it->second += val;
            }
            return {spec, std::move(out)};
          },
          [&](const MetabelianElem& x) -> GroupElement {
            const auto& y = std::get<MetabelianElem>(b.value());
            // x^k a^m x^k' a^m' = x^(k+k') a^(m x^k' + m')
            return {spec, MetabelianElem{x.k + y.k, x.m.shifted(y.k) + y.m}};
          },
      },
      a.value());
}

GroupElement inv(const GroupElement& g) {
  const SpecPtr& spec = g.spec();
  return std::visit(
      overloaded{
          [&](const AbelianVec& x) -> GroupElement { return {spec, AbelianVec{-x.v}}; },
          [&](const SemidirectElem& x) -> GroupElement {
            IntVector back = x.k.is_zero() ? x.v
                                           : IntVector(matrix_power(spec->action(), spec->action_inverse(), x.k) * x.v);
            return {spec, SemidirectElem{-back, -x.k}};
          },
          [&](const HeisenbergElem& x) -> GroupElement {
            return {spec, HeisenbergElem{-x.alpha, -x.beta, x.alpha * x.beta - x.gamma}};
          },
          [&](const LamplighterElem& x) -> GroupElement {
            LamplighterElem out{{}, -x.k};
            for (const auto& [pos, val] : x.support) out.support.emplace(pos - x.k, -val);
            return {spec, std::move(out)};
          },
          [&](const MetabelianElem& x) -> GroupElement {
            return {spec, MetabelianElem{-x.k, -x.m.shifted(-x.k)}};
          },
      },
      g.value());
}

GroupElement pow(const GroupElement& g, const Integer& n) {
  GroupElement base = n.sign() < 0 ? inv(g) : g;
  Integer e = abs(n);
  GroupElement result = identity(g.spec());
  while (!e.is_zero()) {
    if (!(e % Integer(2)).is_zero()) result = mul(result, base);
    e /= Integer(2);
    if (!e.is_zero()) base = mul(base, base);
  }
  return result;
}

GroupElement conj(const GroupElement& a, const GroupElement& b) { return mul(mul(inv(b), a), b); }

GroupElement commutator(const GroupElement& a, const GroupElement& b) {
  return mul(mul(inv(a), inv(b)), mul(a, b));
}

bool has_infinite_order(const GroupElement& g) {
  const auto& spec = *g.spec();
  if (const auto* a = std::get_if<AbelianVec>(&g.value())) {
    for (Eigen::Index i = 0; i < spec.rank(); ++i) {
      if (!a->v(i).is_zero()) return true;
    }
    return false;
  }
  if (const auto* l = std::get_if<LamplighterElem>(&g.value())) return !l->k.is_zero();
  return !g.is_identity();
}

GroupElement abelian_element(const SpecPtr& spec, const IntVector& v) { return {spec, AbelianVec{v}}; }
GroupElement semidirect_element(const SpecPtr& spec, const IntVector& v, const Integer& k) {
  return {spec, SemidirectElem{v, k}};
}
GroupElement heisenberg_element(const SpecPtr& spec, const Integer& alpha, const Integer& beta, const Integer& gamma) {
  return {spec, HeisenbergElem{alpha, beta, gamma}};
}
GroupElement lamplighter_element(const SpecPtr& spec, std::map<Integer, Integer> support, const Integer& k) {
  return {spec, LamplighterElem{std::move(support), k}};
}
GroupElement metabelian_element(const SpecPtr& spec, const Integer& k, LaurentPoly m) {
  return {spec, MetabelianElem{k, std::move(m)}};
}

// ---------------------------------------------------------------------------
// Words

Word parse_word(std::string_view text) {
  Word word;
  std::size_t i = 0;
  auto skip_space = [&] {
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
  };
  skip_space();
  while (i < text.size()) {
    const std::size_t start = i;
    if (text[i] == '1' && (i + 1 == text.size() || std::isspace(static_cast<unsigned char>(text[i + 1])))) {
      ++i;
      skip_space();
      continue;
    }
    if (!(std::isalpha(static_cast<unsigned char>(text[i])) || text[i] == '_')) {
      throw ParseError("malformed word near '" + std::string(text.substr(start)) + "'");
    }
    while (i < text.size() && (std::isalnum(static_cast<unsigned char>(text[i])) || text[i] == '_')) ++i;
    Letter letter{std::string(text.substr(start, i - start)), 1};
    if (i < text.size() && text[i] == '^') {
      ++i;
      const bool paren = i < text.size() && text[i] == '(';
      if (paren) ++i;
      const std::size_t num = i;
      if (i < text.size() && (text[i] == '-' || text[i] == '+')) ++i;
      while (i < text.size() && std::isdigit(static_cast<unsigned char>(text[i]))) ++i;
      try {
        letter.exponent = Integer::parse(text.substr(num, i - num));
      } catch (const std::invalid_argument&) {
        throw ParseError("malformed exponent in word near '" + std::string(text.substr(start)) + "'");
      }
      if (paren) {
        if (i >= text.size() || text[i] != ')') throw ParseError("unclosed exponent in word");
        ++i;
      }
    }
    if (i < text.size() && !std::isspace(static_cast<unsigned char>(text[i]))) {
      throw ParseError("malformed word near '" + std::string(text.substr(start)) + "'");
    }
    if (!letter.exponent.is_zero()) word.push_back(std::move(letter));
    skip_space();
  }
  return word;
}

std::string render_word(const Word& word) {
  if (word.empty()) return "1";
  std::string s;
  for (const auto& l : word) {
    if (!s.empty()) s += ' ';
    s += l.name;
    if (!l.exponent.is_one()) s += "^" + l.exponent.str();
  }
  return s;
}

Word inverse_word(const Word& word) {
  Word out(word.rbegin(), word.rend());
  for (auto& l : out) l.exponent = -l.exponent;
  return out;
}

Alphabet::Alphabet(SpecPtr spec) : spec_(std::move(spec)) {
  const auto& s = spec_;
  switch (s->kind()) {
    case GroupKind::free_abelian:
    case GroupKind::abelian:
      for (int i = 0; i < s->vector_length(); ++i) {
        IntVector v = zero_vector(s->vector_length());
        v(i) = 1;
        bind("e" + std::to_string(i + 1), abelian_element(s, v));
      }
      break;
    case GroupKind::semidirect:
      for (int i = 0; i < s->rank(); ++i) {
        IntVector v = zero_vector(s->rank());
        v(i) = 1;
        bind("e" + std::to_string(i + 1), semidirect_element(s, v, 0));
      }
      bind("h", semidirect_element(s, zero_vector(s->rank()), 1));
      break;
    case GroupKind::heisenberg:
      bind("g", heisenberg_element(s, 1, 0, 0));
      bind("f", heisenberg_element(s, 0, 1, 0));
      bind("z", heisenberg_element(s, 0, 0, 1));
      bind("w", heisenberg_element(s, 0, 0, 1));
      break;
    case GroupKind::lamplighter:
      bind("a", lamplighter_element(s, {{0, 1}}, 0));
      bind("t", lamplighter_element(s, {}, 1));
      break;
    case GroupKind::metabelian:
      bind("a", metabelian_element(s, 0, LaurentPoly(1)));
      bind("x", metabelian_element(s, 1, LaurentPoly()));
      break;
  }
}

void Alphabet::alias(const std::string& name, const Word& word) { bind(name, evaluate(word)); }

void Alphabet::bind(const std::string& name, GroupElement value) {
  if (!same_spec(value.spec(), spec_)) throw std::invalid_argument("spec mismatch");
  table_.insert_or_assign(name, std::move(value));
}

const GroupElement& Alphabet::lookup(const std::string& name) const {
  const auto it = table_.find(name);
  if (it == table_.end()) {
    throw ParseError("unknown generator '" + name + "' for " + spec_->render());
  }
  return it->second;
}

GroupElement Alphabet::evaluate(const Word& word) const {
  GroupElement acc = identity(spec_);
  for (const auto& l : word) acc = mul(acc, pow(lookup(l.name), l.exponent));
  return acc;
}

GroupElement eval_word(const SpecPtr& spec, const Word& word) { return Alphabet(spec).evaluate(word); }
GroupElement eval_word(const Alphabet& alphabet, const Word& word) { return alphabet.evaluate(word); }

namespace {

void push(Word& w, const std::string& name, const Integer& e) {
  if (e.is_zero()) return;
  if (!w.empty() && w.back().name == name) {
    w.back().exponent += e;
    if (w.back().exponent.is_zero()) w.pop_back();
    return;
  }
  w.push_back({name, e});
}

Word vector_word(const IntVector& v) {
  Word w;
  for (Eigen::Index i = 0; i < v.size(); ++i) push(w, "e" + std::to_string(i + 1), v(i));
  return w;
}

Word commutator_word(const Word& a, const Word& b) {
  Word w = inverse_word(a);
  for (const auto& l : inverse_word(b)) push(w, l.name, l.exponent);
  for (const auto& l : a) push(w, l.name, l.exponent);
  for (const auto& l : b) push(w, l.name, l.exponent);
  return w;
}

Word concat(Word a, const Word& b) {
  for (const auto& l : b) push(a, l.name, l.exponent);
  return a;
}

}  // namespace

Word to_word(const GroupElement& g) {
  return std::visit(overloaded{
                        [](const AbelianVec& e) { return vector_word(e.v); },
                        [](const SemidirectElem& e) {
                          Word w = vector_word(e.v);
                          push(w, "h", e.k);
                          return w;
                        },
                        [](const HeisenbergElem& e) {
                          Word w;
                          push(w, "g", e.alpha);
                          push(w, "f", e.beta);
                          push(w, "z", e.gamma - e.alpha * e.beta);
                          return w;
                        },
                        [](const LamplighterElem& e) {
                          Word w;
                          Integer at = 0;
                          for (const auto& [pos, val] : e.support) {
                            push(w, "t", pos - at);
                            push(w, "a", val);
                            at = pos;
                          }
                          push(w, "t", e.k - at);
                          return w;
                        },
                        [](const MetabelianElem& e) {
                          // x^k * prod x^-j a^c x^j
                          Word w;
                          Integer at = e.k;
                          for (const auto& [j, c] : e.m.terms()) {
                            push(w, "x", at - j);
                            push(w, "a", c);
                            at = j;
                          }
                          push(w, "x", at);
                          return w;
                        },
                    },
                    g.value());
}

std::vector<Word> defining_relations(const GroupSpec& spec) {
  std::vector<Word> rel;
  auto e = [](int i) { return Word{{"e" + std::to_string(i + 1), 1}}; };
  switch (spec.kind()) {
    case GroupKind::free_abelian:
    case GroupKind::abelian:
      for (int i = 0; i < spec.vector_length(); ++i) {
        for (int j = i + 1; j < spec.vector_length(); ++j) rel.push_back(commutator_word(e(i), e(j)));
      }
      for (std::size_t i = 0; i < spec.torsion().size(); ++i) {
        rel.push_back({{"e" + std::to_string(spec.rank() + static_cast<int>(i) + 1), spec.torsion()[i]}});
      }
      break;
    case GroupKind::semidirect:
      for (int i = 0; i < spec.rank(); ++i) {
        for (int j = i + 1; j < spec.rank(); ++j) rel.push_back(commutator_word(e(i), e(j)));
        Word w{{"h", -1}, {"e" + std::to_string(i + 1), 1}, {"h", 1}};
        rel.push_back(concat(w, inverse_word(vector_word(spec.action().col(i)))));
      }
      break;
    case GroupKind::heisenberg:
      rel.push_back(concat(Word{{"z", -1}}, commutator_word({{"g", 1}}, {{"f", 1}})));
      rel.push_back(commutator_word({{"g", 1}}, {{"z", 1}}));
      rel.push_back(commutator_word({{"f", 1}}, {{"z", 1}}));
      break;
    case GroupKind::lamplighter:
      rel.push_back({{"a", spec.modulus()}});
      for (int i = 1; i <= 6; ++i) rel.push_back(commutator_word({{"a", 1}}, {{"t", i}, {"a", 1}, {"t", -i}}));
      break;
    case GroupKind::metabelian: {
      for (int i = -6; i <= 6; ++i) {
        if (i == 0) continue;
        rel.push_back(commutator_word({{"a", 1}}, {{"x", -i}, {"a", 1}, {"x", i}}));
      }
      const auto& q = spec.laurent_modulus()->coeffs();
      const auto m = static_cast<int>(q.size()) - 1;
      Word w;
      for (int j = 0; j <= m; ++j) {
        // (a^(x^(m-j)))^qj = x^-(m-j) a^qj x^(m-j)
        w = concat(w, Word{{"x", -(m - j)}, {"a", q[static_cast<std::size_t>(j)]}, {"x", m - j}});
      }
      rel.push_back(w);
      break;
    }
  }
  return rel;
}

}  // namespace ratg
