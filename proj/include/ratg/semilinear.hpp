#pragma once

#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "ratg/automaton.hpp"
#include "ratg/hilbert.hpp"
#include "ratg/linalg.hpp"

namespace ratg {

/// {c + sum n_i p_i : n_i in N}. Zero periods are dropped; periods are kept sorted and unique.
class LinearSet {
 public:
  LinearSet(IntVector base, std::vector<IntVector> periods);

  [[nodiscard]] Eigen::Index dim() const { return base_.size(); }
  [[nodiscard]] const IntVector& base() const { return base_; }
  [[nodiscard]] const std::vector<IntVector>& periods() const { return periods_; }
  [[nodiscard]] bool contains(const IntVector& v) const;
  /// "L((1,1); (2,1))"
  [[nodiscard]] std::string render() const;

  friend bool operator==(const LinearSet& a, const LinearSet& b);

 private:
  struct Decomposition;
  Decomposition& decomposition() const;

  IntVector base_;
  std::vector<IntVector> periods_;
  std::shared_ptr<Decomposition> cache_;
};

/// Finite union of linear sets of a common dimension; no components denotes the empty set.
class SemilinearSet {
 public:
  explicit SemilinearSet(Eigen::Index dim, std::vector<LinearSet> components = {});

  static SemilinearSet empty(Eigen::Index dim) { return SemilinearSet(dim); }
  static SemilinearSet point(const IntVector& v);
  static SemilinearSet linear(IntVector base, std::vector<IntVector> periods);
  /// `L((0,0); (1,0), (0,1)) ∪ L((1,1))`, `∅` (ASCII: `U`, `EMPTY`). Dimension is
  /// inferred unless the text is empty.
  static SemilinearSet parse(std::string_view text, Eigen::Index dim = -1);

  [[nodiscard]] Eigen::Index dim() const { return dim_; }
  [[nodiscard]] const std::vector<LinearSet>& components() const { return components_; }
  [[nodiscard]] bool is_empty_syntactically() const { return components_.empty(); }
  [[nodiscard]] std::string render() const;

 private:
  Eigen::Index dim_;
  std::vector<LinearSet> components_;
};

bool member(const SemilinearSet& s, const IntVector& v);
SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet sum(const SemilinearSet& a, const SemilinearSet& b);
SemilinearSet star(const SemilinearSet& s);
SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b, const HilbertLimits& limits = {});
/// Drops duplicate components and components contained in another one.
SemilinearSet simplify(const SemilinearSet& s);
/// Kleene state elimination; labels must be abelian vectors without torsion.
SemilinearSet from_automaton(const GroupAutomaton& aut);
/// Members in the box lo <= v <= hi, lexicographically sorted.
std::vector<IntVector> enumerate_box(const SemilinearSet& s, const IntVector& lo, const IntVector& hi);
bool is_finite(const SemilinearSet& s);

}  // namespace ratg
