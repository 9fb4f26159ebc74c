#include "ratg/semilinear.hpp"

#include <algorithm>
#include <cctype>
#include <mutex>
#include <optional>
#include <stdexcept>
#include <unordered_set>

namespace ratg {

// Membership structure of a linear set. Periods in the support of the nonnegative
// kernel cone generate a lattice; the remaining periods are strictly positive under
// a functional y vanishing on that lattice, so membership reduces to a finite search
// over lattice cosets bounded by the y-level.
struct LinearSet::Decomposition {
  std::once_flag built;
  HermiteLattice lattice;
  std::vector<IntVector> rest;  // reduced modulo the lattice
  IntVector y;

  std::mutex mutex;
  Integer searched_level{-1};
  std::unordered_set<IntVector, IntVectorHash, IntVectorEqual> reached;
};

namespace {

RatVector to_rational(const IntVector& v) {
  RatVector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(i) = Rational(v(i));
  return out;
}

// Indices of periods p_i admitting a relation sum n_j p_j = 0, n >= 0, n_i > 0.
std::vector<bool> kernel_support(const std::vector<IntVector>& periods, Eigen::Index dim) {
  const auto k = static_cast<Eigen::Index>(periods.size());
  // variables n, t, s, u (each k): P n = 0, t + s - n = 0, t + u = 1; maximize sum t
  RatMatrix a = RatMatrix::Constant(dim + 2 * k, 4 * k, Rational(0));
  RatVector b = RatVector::Constant(dim + 2 * k, Rational(0));
  RatVector c = RatVector::Constant(4 * k, Rational(0));
  for (Eigen::Index j = 0; j < k; ++j) {
    const auto& p = periods[static_cast<std::size_t>(j)];
    for (Eigen::Index i = 0; i < dim; ++i) a(i, j) = Rational(p(i));
    a(dim + j, k + j) = Rational(1);
    a(dim + j, 2 * k + j) = Rational(1);
    a(dim + j, j) = Rational(-1);
    a(dim + k + j, k + j) = Rational(1);
    a(dim + k + j, 3 * k + j) = Rational(1);
    b(dim + k + j) = Rational(1);
    c(k + j) = Rational(-1);
  }
  const auto res = solve_linear_program(a, b, c);
  if (res.status != LinearProgramResult::Status::optimal) throw std::logic_error("kernel support program failed");
  std::vector<bool> support(static_cast<std::size_t>(k));
  for (Eigen::Index j = 0; j < k; ++j) support[static_cast<std::size_t>(j)] = res.x(k + j) == Rational(1);
  return support;
}

// Integer y with y.p = 0 on `zero` and y.p >= 1 on `positive`.
IntVector separating_functional(const std::vector<IntVector>& zero, const std::vector<IntVector>& positive,
                                Eigen::Index dim) {
  const auto z = static_cast<Eigen::Index>(zero.size());
  const auto m = static_cast<Eigen::Index>(positive.size());
  // variables y+ (dim), y- (dim), slack (m)
  RatMatrix a = RatMatrix::Constant(z + m, 2 * dim + m, Rational(0));
  RatVector b = RatVector::Constant(z + m, Rational(0));
  RatVector c = RatVector::Constant(2 * dim + m, Rational(0));
  for (Eigen::Index i = 0; i < dim; ++i) {
    c(i) = Rational(1);
    c(dim + i) = Rational(1);
  }
  auto fill_row = [&](Eigen::Index row, const IntVector& p) {
    for (Eigen::Index i = 0; i < dim; ++i) {
      a(row, i) = Rational(p(i));
      a(row, dim + i) = Rational(-p(i));
    }
  };
  for (Eigen::Index j = 0; j < z; ++j) fill_row(j, zero[static_cast<std::size_t>(j)]);
  for (Eigen::Index j = 0; j < m; ++j) {
    fill_row(z + j, positive[static_cast<std::size_t>(j)]);
    a(z + j, 2 * dim + j) = Rational(-1);
    b(z + j) = Rational(1);
  }
  const auto res = solve_linear_program(a, b, c);
  if (res.status != LinearProgramResult::Status::optimal) throw std::logic_error("no separating functional");
  Integer den = 1;
  for (Eigen::Index i = 0; i < 2 * dim; ++i) den = lcm(den, res.x(i).den());
  IntVector y(dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Rational v = (res.x(i) - res.x(dim + i)) * Rational(den);
    y(i) = v.num();
  }
  return y;
}

}  // namespace

LinearSet::LinearSet(IntVector base, std::vector<IntVector> periods)
    : base_(std::move(base)), cache_(std::make_shared<Decomposition>()) {
  for (auto& p : periods) {
    if (p.size() != base_.size()) throw std::invalid_argument("dimension mismatch");
    if (!is_zero(p)) periods_.push_back(std::move(p));
  }
  std::sort(periods_.begin(), periods_.end(), lex_less);
  periods_.erase(std::unique(periods_.begin(), periods_.end(),
                             [](const IntVector& a, const IntVector& b) { return same_vector(a, b); }),
                 periods_.end());
}

LinearSet::Decomposition& LinearSet::decomposition() const {
  std::call_once(cache_->built, [&] {
    const auto support = kernel_support(periods_, dim());
    std::vector<IntVector> in_lattice, positive;
    for (std::size_t i = 0; i < periods_.size(); ++i) (support[i] ? in_lattice : positive).push_back(periods_[i]);
    cache_->lattice = HermiteLattice(dim(), in_lattice);
    if (!positive.empty()) {
      cache_->y = separating_functional(in_lattice, positive, dim());
      for (const auto& p : positive) cache_->rest.push_back(cache_->lattice.reduce(p));
    }
    cache_->reached.insert(zero_vector(dim()));
    cache_->searched_level = 0;
  });
  return *cache_;
}

bool LinearSet::contains(const IntVector& v) const {
  if (v.size() != dim()) throw std::invalid_argument("dimension mismatch");
  auto& d = decomposition();
  const IntVector w = v - base_;
  if (d.rest.empty()) return d.lattice.contains(w);
  const Integer level = dot(d.y, w);
  if (level.sign() < 0) return false;
  std::lock_guard lock(d.mutex);
  if (level > d.searched_level) {
    std::vector<IntVector> work(d.reached.begin(), d.reached.end());
    while (!work.empty()) {
      const IntVector x = std::move(work.back());
      work.pop_back();
      for (const auto& p : d.rest) {
        IntVector z = d.lattice.reduce(x + p);
        if (dot(d.y, z) > level) continue;
        if (d.reached.insert(z).second) work.push_back(std::move(z));
      }
    }
    d.searched_level = level;
  }
  return d.reached.count(d.lattice.reduce(w)) > 0;
}

std::string LinearSet::render() const {
  std::string s = "L(" + ratg::render(base_);
  for (std::size_t i = 0; i < periods_.size(); ++i) s += (i == 0 ? "; " : ", ") + ratg::render(periods_[i]);
  return s + ")";
}

bool operator==(const LinearSet& a, const LinearSet& b) {
  if (!same_vector(a.base_, b.base_) || a.periods_.size() != b.periods_.size()) return false;
  for (std::size_t i = 0; i < a.periods_.size(); ++i) {
    if (!same_vector(a.periods_[i], b.periods_[i])) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------

SemilinearSet::SemilinearSet(Eigen::Index dim, std::vector<LinearSet> components)
    : dim_(dim), components_(std::move(components)) {
  if (dim < 1) throw std::invalid_argument("semilinear sets need dimension >= 1");
  for (const auto& c : components_) {
    if (c.dim() != dim_) throw std::invalid_argument("dimension mismatch");
  }
}

SemilinearSet SemilinearSet::point(const IntVector& v) { return SemilinearSet(v.size(), {LinearSet(v, {})}); }

SemilinearSet SemilinearSet::linear(IntVector base, std::vector<IntVector> periods) {
  const auto dim = base.size();
  return SemilinearSet(dim, {LinearSet(std::move(base), std::move(periods))});
}

std::string SemilinearSet::render() const {
  if (components_.empty()) return "\xE2\x88\x85";
  std::string s;
  for (std::size_t i = 0; i < components_.size(); ++i) {
    if (i) s += " \xE2\x88\xAA ";
    s += components_[i].render();
  }
  return s;
}

namespace {

class SetParser {
 public:
  explicit SetParser(std::string_view t) : t_(t) {}

  std::vector<LinearSet> parse() {
    std::vector<LinearSet> out;
    skip();
    if (eat("\xE2\x88\x85") || eat("EMPTY")) {
      skip();
      if (pos_ != t_.size()) fail("trailing input");
      return out;
    }
    while (true) {
      out.push_back(linear());
      skip();
      if (pos_ == t_.size()) break;
      if (!(eat("\xE2\x88\xAA") || eat("U") || eat("|"))) fail("expected union");
    }
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw std::invalid_argument("semilinear set: " + what + " at offset " + std::to_string(pos_));
  }
  void skip() {
    while (pos_ < t_.size() && std::isspace(static_cast<unsigned char>(t_[pos_]))) ++pos_;
  }
  bool eat(std::string_view s) {
    skip();
    if (t_.substr(pos_).starts_with(s)) {
      pos_ += s.size();
      return true;
    }
    return false;
  }
  void expect(std::string_view s) {
    if (!eat(s)) fail("expected '" + std::string(s) + "'");
  }
  Integer integer() {
    skip();
    const std::size_t start = pos_;
    if (pos_ < t_.size() && (t_[pos_] == '-' || t_[pos_] == '+')) ++pos_;
    while (pos_ < t_.size() && std::isdigit(static_cast<unsigned char>(t_[pos_]))) ++pos_;
    if (pos_ == start) fail("expected integer");
    return Integer::parse(t_.substr(start, pos_ - start));
  }
  IntVector vector() {
    std::vector<Integer> xs;
    if (eat("(")) {
      xs.push_back(integer());
      while (eat(",")) xs.push_back(integer());
      expect(")");
    } else {
      xs.push_back(integer());
    }
    IntVector v(static_cast<Eigen::Index>(xs.size()));
    for (std::size_t i = 0; i < xs.size(); ++i) v(static_cast<Eigen::Index>(i)) = xs[i];
    return v;
  }
  LinearSet linear() {
    expect("L");
    expect("(");
    IntVector base = vector();
    std::vector<IntVector> periods;
    if (eat(";")) {
      const bool braced = eat("{");
      skip();
      if (!(braced && eat("}")) && !(pos_ < t_.size() && t_[pos_] == ')')) {
        periods.push_back(vector());
        while (eat(",")) periods.push_back(vector());
        if (braced) expect("}");
      }
    }
    expect(")");
    return LinearSet(std::move(base), std::move(periods));
  }

  std::string_view t_;
  std::size_t pos_ = 0;
};

}  // namespace

SemilinearSet SemilinearSet::parse(std::string_view text, Eigen::Index dim) {
  auto comps = SetParser(text).parse();
  if (comps.empty()) {
    if (dim < 1) throw std::invalid_argument("semilinear set: dimension of the empty set is unknown");
    return SemilinearSet(dim);
  }
  const auto d = comps.front().dim();
  if (dim >= 1 && dim != d) throw std::invalid_argument("semilinear set: dimension mismatch");
  return SemilinearSet(d, std::move(comps));
}

// ---------------------------------------------------------------------------

bool member(const SemilinearSet& s, const IntVector& v) {
  if (v.size() != s.dim()) throw std::invalid_argument("dimension mismatch");
  return std::any_of(s.components().begin(), s.components().end(), [&](const LinearSet& l) { return l.contains(v); });
}

SemilinearSet unite(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  auto comps = a.components();
  comps.insert(comps.end(), b.components().begin(), b.components().end());
  return SemilinearSet(a.dim(), std::move(comps));
}

SemilinearSet sum(const SemilinearSet& a, const SemilinearSet& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  std::vector<LinearSet> comps;
  for (const auto& x : a.components()) {
    for (const auto& y : b.components()) {
      auto periods = x.periods();
      periods.insert(periods.end(), y.periods().begin(), y.periods().end());
      comps.emplace_back(IntVector(x.base() + y.base()), std::move(periods));
    }
  }
  return SemilinearSet(a.dim(), std::move(comps));
}

SemilinearSet star(const SemilinearSet& s) {
  SemilinearSet acc = SemilinearSet::point(zero_vector(s.dim()));
  for (const auto& l : s.components()) {
    auto periods = l.periods();
    periods.push_back(l.base());
    const SemilinearSet one(s.dim(), {LinearSet(zero_vector(s.dim()), {}), LinearSet(l.base(), std::move(periods))});
    acc = simplify(sum(acc, one));
  }
  return acc;
}

SemilinearSet intersect(const SemilinearSet& a, const SemilinearSet& b, const HilbertLimits& limits) {
  if (a.dim() != b.dim()) throw std::invalid_argument("dimension mismatch");
  const auto r = a.dim();
  std::vector<LinearSet> comps;
  for (const auto& x : a.components()) {
    for (const auto& y : b.components()) {
      const auto k = static_cast<Eigen::Index>(x.periods().size());
      const auto k2 = static_cast<Eigen::Index>(y.periods().size());
      IntMatrix p(r, k);
      for (Eigen::Index j = 0; j < k; ++j) p.col(j) = x.periods()[static_cast<std::size_t>(j)];
      IntMatrix sys(r, k + k2);
      for (Eigen::Index j = 0; j < k; ++j) sys.col(j) = x.periods()[static_cast<std::size_t>(j)];
      for (Eigen::Index j = 0; j < k2; ++j) sys.col(k + j) = -y.periods()[static_cast<std::size_t>(j)];
      const IntVector rhs = y.base() - x.base();
      if (k + k2 == 0) {
        if (is_zero(rhs)) comps.emplace_back(x.base(), std::vector<IntVector>{});
        continue;
      }
      const auto sol = solve_nonneg(sys, rhs, limits);
      if (sol.particulars.empty()) continue;
      std::vector<IntVector> periods;
      for (const auto& beta : sol.homogeneous_basis) periods.emplace_back(p * IntVector(beta.head(k)));
      for (const auto& sigma : sol.particulars) {
        comps.emplace_back(IntVector(x.base() + p * IntVector(sigma.head(k))), periods);
      }
    }
  }
  return simplify(SemilinearSet(r, std::move(comps)));
}

namespace {

bool same_periods(const std::vector<IntVector>& a, const std::vector<IntVector>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (!same_vector(a[i], b[i])) return false;
  }
  return true;
}

// L(c; Q) ∪ L(c + p; Q ∪ {p}) = L(c; Q ∪ {p}), applied until nothing merges.
std::vector<LinearSet> merge_steps(std::vector<LinearSet> comps) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i < comps.size() && !changed; ++i) {
      for (std::size_t j = 0; j < comps.size() && !changed; ++j) {
        if (i == j) continue;
        const auto& big = comps[j].periods();
        for (std::size_t k = 0; k < big.size(); ++k) {
          std::vector<IntVector> rest = big;
          rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
          if (!same_periods(rest, comps[i].periods())) continue;
          if (!same_vector(IntVector(comps[i].base() + big[k]), comps[j].base())) continue;
          comps[i] = LinearSet(comps[i].base(), big);
          comps.erase(comps.begin() + static_cast<std::ptrdiff_t>(j));
          changed = true;
          break;
        }
      }
    }
  }
  return comps;
}

}  // namespace

SemilinearSet simplify(const SemilinearSet& s) {
  const std::vector<LinearSet> in = merge_steps(s.components());
  std::vector<bool> dropped(in.size(), false);
  std::vector<LinearSet> cones;
  for (const auto& l : in) cones.emplace_back(zero_vector(s.dim()), l.periods());
  auto covers = [&](std::size_t big, std::size_t small) {
    if (!in[big].contains(in[small].base())) return false;
    return std::all_of(in[small].periods().begin(), in[small].periods().end(),
                       [&](const IntVector& p) { return cones[big].contains(p); });
  };
  for (std::size_t i = 0; i < in.size(); ++i) {
    for (std::size_t j = 0; j < in.size() && !dropped[i]; ++j) {
      if (i == j || dropped[j]) continue;
      // equal components: keep the first
      if (in[i] == in[j]) {
        if (j < i) dropped[i] = true;
        continue;
      }
      if (covers(j, i)) dropped[i] = true;
    }
  }
  std::vector<LinearSet> out;
  for (std::size_t i = 0; i < in.size(); ++i) {
    if (!dropped[i]) out.push_back(in[i]);
  }
  return SemilinearSet(s.dim(), std::move(out));
}

SemilinearSet from_automaton(const GroupAutomaton& input) {
  const auto& spec = input.spec();
  if (spec->kind() != GroupKind::free_abelian) {
    throw std::invalid_argument("semilinear conversion needs a free_abelian group");
  }
  const GroupAutomaton aut = input.trimmed();
  const Eigen::Index dim = spec->rank();
  const std::size_t n = aut.state_count();
  const std::size_t start = n, finish = n + 1;
  std::vector<std::vector<std::optional<SemilinearSet>>> r(n + 2, std::vector<std::optional<SemilinearSet>>(n + 2));
  auto add = [&](std::size_t p, std::size_t q, const SemilinearSet& s) {
    r[p][q] = r[p][q] ? simplify(unite(*r[p][q], s)) : s;
  };
  const SemilinearSet zero = SemilinearSet::point(zero_vector(dim));
  add(start, aut.initial(), zero);
  for (const auto t : aut.terminals()) add(t, finish, zero);
  for (const auto& e : aut.edges()) add(e.source, e.target, SemilinearSet::point(std::get<AbelianVec>(e.label.value()).v));

  std::vector<bool> gone(n + 2, false);
  for (std::size_t round = 0; round < n; ++round) {
    // eliminate the state with the fewest in*out pairs
    std::size_t best = n, best_cost = 0;
    for (std::size_t k = 0; k < n; ++k) {
      if (gone[k]) continue;
      std::size_t in = 0, out = 0;
      for (std::size_t p = 0; p < n + 2; ++p) {
        if (p == k || gone[p]) continue;
        in += r[p][k] ? 1 : 0;
        out += r[k][p] ? 1 : 0;
      }
      if (best == n || in * out < best_cost) {
        best = k;
        best_cost = in * out;
      }
    }
    const std::size_t k = best;
    const SemilinearSet loop = r[k][k] ? star(*r[k][k]) : zero;
    for (std::size_t p = 0; p < n + 2; ++p) {
      if (p == k || gone[p] || !r[p][k]) continue;
      const SemilinearSet head = simplify(sum(*r[p][k], loop));
      for (std::size_t q = 0; q < n + 2; ++q) {
        if (q == k || gone[q] || !r[k][q]) continue;
        add(p, q, simplify(sum(head, *r[k][q])));
      }
    }
    gone[k] = true;
    for (std::size_t p = 0; p < n + 2; ++p) {
      r[p][k].reset();
      r[k][p].reset();
    }
  }
  return r[start][finish] ? *r[start][finish] : SemilinearSet::empty(dim);
}

std::vector<IntVector> enumerate_box(const SemilinearSet& s, const IntVector& lo, const IntVector& hi) {
  if (lo.size() != s.dim() || hi.size() != s.dim()) throw std::invalid_argument("dimension mismatch");
  if (!dominated_by(lo, hi)) throw std::invalid_argument("empty box: lo must be <= hi");
  std::vector<IntVector> out;
  if (s.components().empty()) return out;
  IntVector v = lo;
  while (true) {
    if (member(s, v)) out.push_back(v);
    Eigen::Index i = s.dim() - 1;
    while (i >= 0 && v(i) == hi(i)) {
      v(i) = lo(i);
      --i;
    }
    if (i < 0) break;
    v(i) += 1;
  }
  return out;
}

bool is_finite(const SemilinearSet& s) {
  return std::all_of(s.components().begin(), s.components().end(),
                     [](const LinearSet& l) { return l.periods().empty(); });
}

}  // namespace ratg
