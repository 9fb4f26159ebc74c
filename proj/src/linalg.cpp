#include "ratg/linalg.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace ratg {

IntVector make_vector(std::initializer_list<Integer> values) {
  IntVector v(static_cast<Eigen::Index>(values.size()));
  Eigen::Index i = 0;
  for (const auto& x : values) v(i++) = x;
  return v;
}

IntMatrix make_matrix(std::initializer_list<std::initializer_list<Integer>> rows) {
  const auto r = static_cast<Eigen::Index>(rows.size());
  const auto c = r == 0 ? 0 : static_cast<Eigen::Index>(rows.begin()->size());
  IntMatrix m(r, c);
  Eigen::Index i = 0;
  for (const auto& row : rows) {
    if (static_cast<Eigen::Index>(row.size()) != c) throw std::invalid_argument("ragged matrix");
    Eigen::Index j = 0;
    for (const auto& x : row) m(i, j++) = x;
    ++i;
  }
  return m;
}

IntVector zero_vector(Eigen::Index n) {
  IntVector v(n);
  for (Eigen::Index i = 0; i < n; ++i) v(i) = 0;
  return v;
}

bool lex_less(const IntVector& a, const IntVector& b) {
  if (a.size() != b.size()) return a.size() < b.size();
  for (Eigen::Index i = 0; i < a.size(); ++i) {
    if (a(i) != b(i)) return a(i) < b(i);
  }
  return false;
}

std::size_t IntVectorHash::operator()(const IntVector& v) const noexcept {
  std::size_t h = static_cast<std::size_t>(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    h ^= v(i).hash() + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  }
  return h;
}

std::string render(const IntVector& v) {
  std::ostringstream os;
  os << '(';
  for (Eigen::Index i = 0; i < v.size(); ++i) {
    if (i > 0) os << ',';
    os << v(i);
  }
  os << ')';
  return os.str();
}

std::string render(const IntMatrix& m) {
  std::ostringstream os;
  os << '[';
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    if (i > 0) os << ',';
    os << '[';
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      if (j > 0) os << ',';
      os << m(i, j);
    }
    os << ']';
  }
  os << ']';
  return os.str();
}

Integer dot(const IntVector& a, const IntVector& b) {
  Integer s = 0;
  for (Eigen::Index i = 0; i < a.size(); ++i) s += a(i) * b(i);
  return s;
}

Integer content(const IntVector& v) {
  Integer g = 0;
  for (Eigen::Index i = 0; i < v.size(); ++i) g = gcd(g, v(i));
  return g;
}

Integer determinant(const IntMatrix& input) {
  if (input.rows() != input.cols()) throw std::invalid_argument("determinant of non-square matrix");
  const Eigen::Index n = input.rows();
  if (n == 0) return 1;
  IntMatrix m = input;
  Integer sign = 1;
  Integer previous = 1;
  for (Eigen::Index k = 0; k + 1 < n; ++k) {
    if (m(k, k).is_zero()) {
      Eigen::Index swap = k + 1;
      while (swap < n && m(swap, k).is_zero()) ++swap;
      if (swap == n) return 0;
      m.row(k).swap(m.row(swap));
      sign = -sign;
    }
    for (Eigen::Index i = k + 1; i < n; ++i) {
      for (Eigen::Index j = k + 1; j < n; ++j) {
        m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / previous;
      }
    }
    previous = m(k, k);
  }
  return sign * m(n - 1, n - 1);
}

IntMatrix identity_matrix(Eigen::Index n) {
  IntMatrix m(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) m(i, j) = i == j ? 1 : 0;
  }
  return m;
}

IntMatrix unimodular_inverse(const IntMatrix& m) {
  const Eigen::Index n = m.rows();
  if (m.cols() != n) throw std::invalid_argument("inverse of non-square matrix");
  if (abs(determinant(m)) != Integer(1)) {
    throw std::invalid_argument("matrix " + render(m) + " is not invertible over Z (|det| != 1)");
  }
  RatMatrix a(n, 2 * n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) {
      a(i, j) = Rational(m(i, j));
      a(i, n + j) = Rational(i == j ? 1 : 0);
    }
  }
  for (Eigen::Index col = 0; col < n; ++col) {
    Eigen::Index p = col;
    while (a(p, col).is_zero()) ++p;
    if (p != col) a.row(p).swap(a.row(col));
    const Rational pivot = a(col, col);
    for (Eigen::Index j = 0; j < 2 * n; ++j) a(col, j) /= pivot;
    for (Eigen::Index i = 0; i < n; ++i) {
      if (i == col || a(i, col).is_zero()) continue;
      const Rational f = a(i, col);
      for (Eigen::Index j = 0; j < 2 * n; ++j) a(i, j) -= f * a(col, j);
    }
  }
  IntMatrix inv(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) inv(i, j) = a(i, n + j).num();
  }
  return inv;
}

IntMatrix matrix_power(const IntMatrix& m, const IntMatrix& inverse, const Integer& k) {
  IntMatrix base = k.sign() < 0 ? inverse : m;
  std::int64_t e = abs(k).to_int64();
  IntMatrix result = identity_matrix(m.rows());
  while (e > 0) {
    if (e & 1) result = (result * base).eval();
    e >>= 1;
    if (e > 0) base = (base * base).eval();
  }
  return result;
}

HermiteLattice::HermiteLattice(Eigen::Index dim, const std::vector<IntVector>& generators) : dim_(dim) {
  std::vector<IntVector> rows;
  for (const auto& g : generators) {
    if (g.size() != dim) throw std::invalid_argument("lattice generator has wrong dimension");
    if (!is_zero(g)) rows.push_back(g);
  }
  std::size_t r = 0;
  for (Eigen::Index col = 0; col < dim && r < rows.size(); ++col) {
    while (true) {
      std::size_t best = rows.size();
      for (std::size_t i = r; i < rows.size(); ++i) {
        if (rows[i](col).is_zero()) continue;
        if (best == rows.size() || abs(rows[i](col)) < abs(rows[best](col))) best = i;
      }
      if (best == rows.size()) break;
      std::swap(rows[r], rows[best]);
      bool others = false;
      for (std::size_t i = r + 1; i < rows.size(); ++i) {
        if (rows[i](col).is_zero()) continue;
        const Integer q = floor_div(rows[i](col), rows[r](col));
        rows[i] -= q * rows[r];
        if (!rows[i](col).is_zero()) others = true;
      }
      if (!others) break;
    }
    if (r < rows.size() && !rows[r](col).is_zero()) {
      if (rows[r](col).sign() < 0) rows[r] = -rows[r];
      pivots_.push_back(col);
      ++r;
    }
  }
  rows.resize(r);
  for (std::size_t i = 0; i < r; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      const Integer q = floor_div(rows[j](pivots_[i]), rows[i](pivots_[i]));
      if (!q.is_zero()) rows[j] -= q * rows[i];
    }
  }
  basis_ = std::move(rows);
}

IntVector HermiteLattice::reduce(IntVector v) const {
  for (std::size_t i = 0; i < basis_.size(); ++i) {
    const Integer q = floor_div(v(pivots_[i]), basis_[i](pivots_[i]));
    if (!q.is_zero()) v -= q * basis_[i];
  }
  return v;
}

Eigen::Index rational_rank(const IntMatrix& m) {
  RatMatrix a = m.unaryExpr([](const Integer& x) { return Rational(x); });
  Eigen::Index rank = 0;
  for (Eigen::Index col = 0; col < a.cols() && rank < a.rows(); ++col) {
    Eigen::Index p = rank;
    while (p < a.rows() && a(p, col).is_zero()) ++p;
    if (p == a.rows()) continue;
    a.row(p).swap(a.row(rank));
    for (Eigen::Index i = rank + 1; i < a.rows(); ++i) {
      if (a(i, col).is_zero()) continue;
      const Rational f = a(i, col) / a(rank, col);
      for (Eigen::Index j = col; j < a.cols(); ++j) a(i, j) -= f * a(rank, j);
    }
    ++rank;
  }
  return rank;
}

namespace {

class Tableau {
 public:
  Tableau(const RatMatrix& a, const RatVector& b)
      : rows_(static_cast<std::size_t>(a.rows())), n_(a.cols()), width_(a.cols() + a.rows() + 1) {
    const Eigen::Index m = a.rows();
    for (Eigen::Index i = 0; i < m; ++i) {
      auto& row = rows_[static_cast<std::size_t>(i)];
      row.assign(static_cast<std::size_t>(width_), Rational(0));
      const bool flip = b(i).sign() < 0;
      for (Eigen::Index j = 0; j < n_; ++j) row[static_cast<std::size_t>(j)] = flip ? -a(i, j) : a(i, j);
      row[static_cast<std::size_t>(n_ + i)] = 1;
      row.back() = flip ? -b(i) : b(i);
      basis_.push_back(n_ + i);
    }
  }

  // Bland's rule; returns false when unbounded.
  bool minimize(const std::vector<Rational>& cost, Eigen::Index allowed) {
    while (true) {
      Eigen::Index entering = -1;
      for (Eigen::Index j = 0; j < allowed; ++j) {
        if (std::find(basis_.begin(), basis_.end(), j) != basis_.end()) continue;
        Rational reduced = cost[static_cast<std::size_t>(j)];
        for (std::size_t i = 0; i < rows_.size(); ++i) {
          const auto& entry = rows_[i][static_cast<std::size_t>(j)];
          if (!entry.is_zero()) reduced -= cost[static_cast<std::size_t>(basis_[i])] * entry;
        }
        if (reduced.sign() < 0) {
          entering = j;
          break;
        }
      }
      if (entering < 0) return true;
      std::size_t leaving = rows_.size();
      Rational best;
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const auto& entry = rows_[i][static_cast<std::size_t>(entering)];
        if (entry.sign() <= 0) continue;
        const Rational ratio = rows_[i].back() / entry;
        if (leaving == rows_.size() || ratio < best || (ratio == best && basis_[i] < basis_[leaving])) {
          leaving = i;
          best = ratio;
        }
      }
      if (leaving == rows_.size()) return false;
      pivot(leaving, entering);
    }
  }

  void pivot(std::size_t r, Eigen::Index col) {
    auto& prow = rows_[r];
    const Rational p = prow[static_cast<std::size_t>(col)];
    for (auto& x : prow) x /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      const Rational f = rows_[i][static_cast<std::size_t>(col)];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j < prow.size(); ++j) {
        if (!prow[j].is_zero()) rows_[i][j] -= f * prow[j];
      }
    }
    basis_[r] = col;
  }

  // After phase one: pivot artificial variables out, dropping redundant rows.
  void expel_artificials() {
    for (std::size_t i = 0; i < rows_.size();) {
      if (basis_[i] < n_) {
        ++i;
        continue;
      }
      Eigen::Index col = -1;
      for (Eigen::Index j = 0; j < n_; ++j) {
        if (!rows_[i][static_cast<std::size_t>(j)].is_zero()) {
          col = j;
          break;
        }
      }
      if (col >= 0) {
        pivot(i, col);
        ++i;
      } else {
        rows_.erase(rows_.begin() + static_cast<std::ptrdiff_t>(i));
        basis_.erase(basis_.begin() + static_cast<std::ptrdiff_t>(i));
      }
    }
  }

  [[nodiscard]] Rational objective(const std::vector<Rational>& cost) const {
    Rational v = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      v += cost[static_cast<std::size_t>(basis_[i])] * rows_[i].back();
    }
    return v;
  }

  [[nodiscard]] RatVector solution() const {
    RatVector x(n_);
    for (Eigen::Index j = 0; j < n_; ++j) x(j) = 0;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < n_) x(basis_[i]) = rows_[i].back();
    }
    return x;
  }

  [[nodiscard]] Eigen::Index width() const { return width_ - 1; }
  [[nodiscard]] Eigen::Index structural() const { return n_; }

 private:
  std::vector<std::vector<Rational>> rows_;
  std::vector<Eigen::Index> basis_;
  Eigen::Index n_;
  Eigen::Index width_;
};

}  // namespace

LinearProgramResult solve_linear_program(const RatMatrix& a, const RatVector& b, const RatVector& c) {
  if (a.rows() != b.size() || a.cols() != c.size()) throw std::invalid_argument("LP dimension mismatch");
  Tableau t(a, b);
  const auto total = static_cast<std::size_t>(t.width());
  std::vector<Rational> phase1(total, Rational(0));
  for (std::size_t j = static_cast<std::size_t>(a.cols()); j < total; ++j) phase1[j] = 1;
  t.minimize(phase1, t.width());
  LinearProgramResult result;
  if (t.objective(phase1).sign() > 0) {
    result.status = LinearProgramResult::Status::infeasible;
    return result;
  }
  t.expel_artificials();
  std::vector<Rational> phase2(total, Rational(0));
  for (Eigen::Index j = 0; j < a.cols(); ++j) phase2[static_cast<std::size_t>(j)] = c(j);
  if (!t.minimize(phase2, t.structural())) {
    result.status = LinearProgramResult::Status::unbounded;
    return result;
  }
  result.status = LinearProgramResult::Status::optimal;
  result.x = t.solution();
  result.value = t.objective(phase2);
  return result;
}

}  // namespace ratg
