#pragma once

#include <optional>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ratg/integer.hpp"

namespace ratg {

template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

using IntVector = Vector<Integer>;
using IntMatrix = Matrix<Integer>;
using RatVector = Vector<Rational>;
using RatMatrix = Matrix<Rational>;

IntVector make_vector(std::initializer_list<Integer> values);
IntMatrix make_matrix(std::initializer_list<std::initializer_list<Integer>> rows);
IntVector zero_vector(Eigen::Index n);

template <typename Derived>
bool is_zero(const Eigen::MatrixBase<Derived>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (!v(i).is_zero()) return false;
  }
  return true;
}

template <typename Derived>
bool is_nonnegative(const Eigen::MatrixBase<Derived>& v) {
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (v(i).sign() < 0) return false;
  }
  return true;
}

/// Componentwise a <= b.
template <typename A, typename B>
bool dominated_by(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) > b(i)) return false;
  }
  return true;
}

template <typename A, typename B>
bool same_vector(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  if (a.size() != b.size()) return false;
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (!(a(i) == b(i))) return false;
  }
  return true;
}

/// Lexicographic order; shorter vectors first.
bool lex_less(const IntVector& a, const IntVector& b);

struct IntVectorHash {
  std::size_t operator()(const IntVector& v) const noexcept;
};
struct IntVectorEqual {
  bool operator()(const IntVector& a, const IntVector& b) const { return same_vector(a, b); }
};
struct IntVectorLess {
  bool operator()(const IntVector& a, const IntVector& b) const { return lex_less(a, b); }
};

/// "(1,-2,3)"
std::string render(const IntVector& v);
/// "[[2,1],[1,1]]"
std::string render(const IntMatrix& m);

Integer dot(const IntVector& a, const IntVector& b);
Integer content(const IntVector& v);

Integer determinant(const IntMatrix& m);
/// Inverse of a matrix with determinant +-1; throws std::invalid_argument otherwise.
IntMatrix unimodular_inverse(const IntMatrix& m);
IntMatrix identity_matrix(Eigen::Index n);
/// m^k for k >= 0, or inverse^(-k) for k < 0.
IntMatrix matrix_power(const IntMatrix& m, const IntMatrix& inverse, const Integer& k);

/// Integer lattice spanned by a finite set of vectors, kept as a row-style Hermite
/// basis. `reduce` maps every vector to a canonical representative of its coset.
class HermiteLattice {
 public:
  HermiteLattice() = default;
  HermiteLattice(Eigen::Index dim, const std::vector<IntVector>& generators);

  [[nodiscard]] Eigen::Index dim() const { return dim_; }
  [[nodiscard]] std::size_t rank() const { return basis_.size(); }
  [[nodiscard]] const std::vector<IntVector>& basis() const { return basis_; }
  [[nodiscard]] IntVector reduce(IntVector v) const;
  [[nodiscard]] bool contains(const IntVector& v) const { return is_zero(reduce(v)); }

 private:
  Eigen::Index dim_ = 0;
  std::vector<IntVector> basis_;
  std::vector<Eigen::Index> pivots_;
};

/// Exact dense simplex for: minimize c.x subject to A x = b, x >= 0.
struct LinearProgramResult {
  enum class Status { optimal, infeasible, unbounded } status = Status::infeasible;
  RatVector x;
  Rational value;
};
LinearProgramResult solve_linear_program(const RatMatrix& a, const RatVector& b, const RatVector& c);

/// Rank over the rationals.
Eigen::Index rational_rank(const IntMatrix& m);

}  // namespace ratg
