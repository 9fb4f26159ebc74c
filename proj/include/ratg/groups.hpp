#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "ratg/integer.hpp"
#include "ratg/laurent.hpp"
#include "ratg/linalg.hpp"

namespace ratg {

/// Raised for malformed input (specs, words, expressions, formulas).
class ParseError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

enum class GroupKind { free_abelian, abelian, semidirect, heisenberg, lamplighter, metabelian };

std::string_view kind_name(GroupKind kind);

class GroupSpec;
using SpecPtr = std::shared_ptr<const GroupSpec>;

/// One of the concrete group backends together with its parameters.
///
///   free_abelian  Z^r, generators e1..er
///   abelian       Z^r x Z_m1 x ... x Z_ms, generators e1..e(r+s)
///   semidirect    Z^r x| <h>, with h^-1 v h = M v; generators e1..er, h
///   heisenberg    UT3(Z), generators g=(1,0,0), f=(0,1,0), z=(0,0,1), w=z
///   lamplighter   Z_mu wr Z, generators a (lamp at 0), t (shift)
///   metabelian    <a, x | [a, a^(x^i)] = 1, a^f(x) = 1>, generators a, x
class GroupSpec {
 public:
  static SpecPtr free_abelian(int rank);
  static SpecPtr abelian(int rank, std::vector<Integer> torsion);
  static SpecPtr semidirect(const IntMatrix& action);
  static SpecPtr heisenberg();
  static SpecPtr lamplighter(const Integer& modulus);
  static SpecPtr metabelian(std::vector<Integer> f_coeffs);
  /// `group kind=semidirect rank=2 matrix=[[2,1],[1,1]]` and friends.
  static SpecPtr parse(std::string_view dsl);

  [[nodiscard]] GroupKind kind() const { return kind_; }
  /// Free rank for abelian kinds and semidirect; 0 otherwise.
  [[nodiscard]] int rank() const { return rank_; }
  /// Length of the abelian coordinate vector (free rank plus torsion factors).
  [[nodiscard]] int vector_length() const { return rank_ + static_cast<int>(torsion_.size()); }
  [[nodiscard]] const std::vector<Integer>& torsion() const { return torsion_; }
  [[nodiscard]] const IntMatrix& action() const { return action_; }
  [[nodiscard]] const IntMatrix& action_inverse() const { return action_inverse_; }
  [[nodiscard]] const Integer& modulus() const { return modulus_; }
  [[nodiscard]] const std::shared_ptr<const LaurentModulus>& laurent_modulus() const { return laurent_; }

  /// Canonical generators, in the order used by normal-form words.
  [[nodiscard]] std::vector<std::string> canonical_generators() const;
  [[nodiscard]] std::string render() const;

  friend bool operator==(const GroupSpec& a, const GroupSpec& b);

 private:
  GroupSpec() = default;

  GroupKind kind_ = GroupKind::free_abelian;
  int rank_ = 0;
  std::vector<Integer> torsion_;
  IntMatrix action_;
  IntMatrix action_inverse_;
  Integer modulus_{0};
  std::shared_ptr<const LaurentModulus> laurent_;
};

bool same_spec(const SpecPtr& a, const SpecPtr& b);

struct AbelianVec {
  IntVector v;
};
/// v * h^k
struct SemidirectElem {
  IntVector v;
  Integer k;
};
/// The unitriangular matrix with superdiagonal (alpha, beta) and corner gamma.
struct HeisenbergElem {
  Integer alpha, beta, gamma;
};
/// (lamp configuration) * t^k; the support never stores a zero residue.
struct LamplighterElem {
  std::map<Integer, Integer> support;
  Integer k;
};
/// x^k a^m with m in Z[x, 1/x]/(f), using a^(x) = x^-1 a x <-> x.
struct MetabelianElem {
  Integer k;
  LaurentPoly m;
};

/// Element of a concrete group in normal form. Immutable.
class GroupElement {
 public:
  using Value = std::variant<AbelianVec, SemidirectElem, HeisenbergElem, LamplighterElem, MetabelianElem>;

  GroupElement(SpecPtr spec, Value value);

  [[nodiscard]] const SpecPtr& spec() const { return spec_; }
  [[nodiscard]] const Value& value() const { return value_; }
  [[nodiscard]] bool is_identity() const;
  [[nodiscard]] std::size_t hash() const { return hash_; }
  [[nodiscard]] std::string render() const;

  friend bool operator==(const GroupElement& a, const GroupElement& b);

 private:
  SpecPtr spec_;
  Value value_;
  std::size_t hash_ = 0;
};

struct GroupElementHash {
  std::size_t operator()(const GroupElement& g) const noexcept { return g.hash(); }
};

GroupElement identity(const SpecPtr& spec);
/// Throws std::invalid_argument("spec mismatch") for elements of different groups.
GroupElement mul(const GroupElement& a, const GroupElement& b);
GroupElement inv(const GroupElement& g);
GroupElement pow(const GroupElement& g, const Integer& n);
/// b^-1 a b
GroupElement conj(const GroupElement& a, const GroupElement& b);
/// a^-1 b^-1 a b
GroupElement commutator(const GroupElement& a, const GroupElement& b);

/// False exactly for torsion elements (possible only in lamplighter and abelian-with-torsion).
bool has_infinite_order(const GroupElement& g);

inline GroupElement operator*(const GroupElement& a, const GroupElement& b) { return mul(a, b); }

// Convenience constructors.
GroupElement abelian_element(const SpecPtr& spec, const IntVector& v);
GroupElement semidirect_element(const SpecPtr& spec, const IntVector& v, const Integer& k);
GroupElement heisenberg_element(const SpecPtr& spec, const Integer& alpha, const Integer& beta, const Integer& gamma);
GroupElement lamplighter_element(const SpecPtr& spec, std::map<Integer, Integer> support, const Integer& k);
GroupElement metabelian_element(const SpecPtr& spec, const Integer& k, LaurentPoly m);

// ---------------------------------------------------------------------------
// Words

struct Letter {
  std::string name;
  Integer exponent{1};
  friend bool operator==(const Letter&, const Letter&) = default;
};
using Word = std::vector<Letter>;

/// Whitespace-separated `name^exp` tokens; the empty string and `1` are the empty word.
Word parse_word(std::string_view text);
std::string render_word(const Word& word);
Word inverse_word(const Word& word);

/// Generator names bound to elements of one group.
class Alphabet {
 public:
  /// The documented fixed alphabet of the backend.
  explicit Alphabet(SpecPtr spec);

  [[nodiscard]] const SpecPtr& spec() const { return spec_; }
  /// Binds (or rebinds) `name` to the value of `word` evaluated in this alphabet.
  void alias(const std::string& name, const Word& word);
  void bind(const std::string& name, GroupElement value);
  [[nodiscard]] bool contains(const std::string& name) const { return table_.count(name) > 0; }
  /// Throws ParseError for unknown generators.
  [[nodiscard]] const GroupElement& lookup(const std::string& name) const;
  [[nodiscard]] GroupElement evaluate(const Word& word) const;

 private:
  SpecPtr spec_;
  std::map<std::string, GroupElement> table_;
};

GroupElement eval_word(const SpecPtr& spec, const Word& word);
GroupElement eval_word(const Alphabet& alphabet, const Word& word);

/// A word in the canonical generators whose value is g.
Word to_word(const GroupElement& g);

/// Defining relations of the backend as words in the canonical generators.
/// Infinite families are truncated to conjugates with |i| <= 6.
std::vector<Word> defining_relations(const GroupSpec& spec);

}  // namespace ratg
