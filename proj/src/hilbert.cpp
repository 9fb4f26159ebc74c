#include "ratg/hilbert.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace ratg {

namespace {

using Key = std::vector<std::int64_t>;

Key key_of(const IntVector& v) {
  Key k(static_cast<std::size_t>(v.size()));
  for (Eigen::Index i = 0; i < v.size(); ++i) k[static_cast<std::size_t>(i)] = v(i).to_int64();
  return k;
}

bool dominates(const Key& big, const Key& small) {
  for (std::size_t i = 0; i < big.size(); ++i) {
    if (small[i] > big[i]) return false;
  }
  return true;
}

// Contejean-Devie over the columns of a. Coordinates listed in `capped` never exceed 1.
std::vector<Key> complete(const IntMatrix& a, const std::vector<bool>& capped, const HilbertLimits& limits) {
  const auto k = static_cast<std::size_t>(a.cols());
  std::vector<IntVector> columns;
  for (Eigen::Index j = 0; j < a.cols(); ++j) columns.push_back(a.col(j));

  std::vector<Key> basis;
  std::set<Key> frontier;
  for (std::size_t j = 0; j < k; ++j) {
    Key e(k, 0);
    e[j] = 1;
    frontier.insert(e);
  }
  std::size_t nodes = 0;
  while (!frontier.empty()) {
    // Solutions of this layer first; the layer is ordered lexicographically.
    std::vector<std::pair<Key, IntVector>> open;
    for (const auto& x : frontier) {
      IntVector ax = zero_vector(a.rows());
      for (std::size_t j = 0; j < k; ++j) {
        if (x[j] != 0) ax += columns[j] * Integer(x[j]);
      }
      if (is_zero(ax)) {
        const bool redundant = std::any_of(basis.begin(), basis.end(), [&](const Key& b) { return dominates(x, b); });
        if (!redundant) basis.push_back(x);
      } else {
        open.emplace_back(x, std::move(ax));
      }
    }
    std::set<Key> next;
    for (const auto& [x, ax] : open) {
      for (std::size_t j = 0; j < k; ++j) {
        if (capped[j] && x[j] >= 1) continue;
        if (dot(ax, columns[j]).sign() >= 0) continue;
        Key y = x;
        ++y[j];
        if (std::any_of(basis.begin(), basis.end(), [&](const Key& b) { return dominates(y, b); })) continue;
        next.insert(std::move(y));
        if (++nodes > limits.max_nodes) throw std::length_error("instance too large");
      }
    }
    frontier = std::move(next);
  }
  return basis;
}

IntVector to_vector(const Key& k, std::size_t len) {
  IntVector v(static_cast<Eigen::Index>(len));
  for (std::size_t i = 0; i < len; ++i) v(static_cast<Eigen::Index>(i)) = k[i];
  return v;
}

void check_size(const IntMatrix& a, const HilbertLimits& limits) {
  if (a.rows() > limits.max_rows || a.cols() > limits.max_cols) throw std::length_error("instance too large");
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      if (abs(a(i, j)) > Integer(1'000'000)) throw std::length_error("instance too large");
    }
  }
}

}  // namespace

std::vector<IntVector> hilbert_basis(const IntMatrix& a, const HilbertLimits& limits) {
  check_size(a, limits);
  const auto cols = static_cast<std::size_t>(a.cols());
  if (cols == 0) return {};
  std::vector<IntVector> out;
  for (const auto& k : complete(a, std::vector<bool>(cols, false), limits)) out.push_back(to_vector(k, cols));
  std::sort(out.begin(), out.end(), lex_less);
  return out;
}

DiophantineSolutionSet solve_nonneg(const IntMatrix& a, const IntVector& b, const HilbertLimits& limits) {
  if (b.size() != a.rows()) throw std::invalid_argument("dimension mismatch");
  IntMatrix h(a.rows(), a.cols() + 1);
  h << a, -b;
  check_size(h, limits);
  const auto cols = static_cast<std::size_t>(a.cols());
  std::vector<bool> capped(cols + 1, false);
  capped[cols] = true;
  DiophantineSolutionSet out;
  if (is_zero(b)) out.particulars.push_back(zero_vector(a.cols()));
  for (const auto& k : complete(h, capped, limits)) {
    const IntVector v = to_vector(k, cols);
    if (k[cols] == 1) {
      if (!is_zero(b)) out.particulars.push_back(v);
    } else {
      out.homogeneous_basis.push_back(v);
    }
  }
  std::sort(out.particulars.begin(), out.particulars.end(), lex_less);
  std::sort(out.homogeneous_basis.begin(), out.homogeneous_basis.end(), lex_less);
  return out;
}

}  // namespace ratg
