#pragma once

#include <cstddef>
#include <vector>

#include "ratg/linalg.hpp"

namespace ratg {

struct HilbertLimits {
  Eigen::Index max_rows = 6;
  Eigen::Index max_cols = 12;
  /// Bound on frontier vectors generated before giving up.
  std::size_t max_nodes = 2'000'000;
};

/// Solutions of A n = b over the naturals: particulars + N-combinations of the basis.
struct DiophantineSolutionSet {
  std::vector<IntVector> particulars;
  std::vector<IntVector> homogeneous_basis;
};

/// Minimal generating set of {n in N^k : A n = 0} (Contejean-Devie completion).
/// Throws std::length_error("instance too large") beyond the limits.
std::vector<IntVector> hilbert_basis(const IntMatrix& a, const HilbertLimits& limits = {});

/// Minimal solutions of A n = b (particulars) and of A n = 0 (basis).
DiophantineSolutionSet solve_nonneg(const IntMatrix& a, const IntVector& b, const HilbertLimits& limits = {});

}  // namespace ratg
