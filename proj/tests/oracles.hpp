// Independent reference implementations used to check the library.
#pragma once

#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "ratg/automaton.hpp"
#include "ratg/presburger.hpp"
#include "ratg/rat_expr.hpp"

namespace oracle {

using ratg::GroupElement;
using ratg::GroupElementHash;
using Counted = std::unordered_map<GroupElement, std::size_t, GroupElementHash>;

inline void keep_min(Counted& m, const GroupElement& g, std::size_t n) {
  auto [it, inserted] = m.try_emplace(g, n);
  if (!inserted && n < it->second) it->second = n;
}

// Denotation of e restricted to products of at most `limit` singleton factors,
// with the least number of factors needed for each element.
inline Counted denote(const ratg::RatExprPtr& e, const ratg::Alphabet& alphabet, std::size_t limit) {
  using K = ratg::RatExpr::Kind;
  Counted out;
  switch (e->kind) {
    case K::empty: break;
    case K::singleton:
      if (limit >= 1) out.emplace(alphabet.evaluate(e->word), 1);
      break;
    case K::union_of: {
      out = denote(e->left, alphabet, limit);
      for (const auto& [g, n] : denote(e->right, alphabet, limit)) keep_min(out, g, n);
      break;
    }
    case K::concat: {
      const Counted a = denote(e->left, alphabet, limit);
      const Counted b = denote(e->right, alphabet, limit);
      for (const auto& [x, i] : a) {
        for (const auto& [y, j] : b) {
          if (i + j <= limit) keep_min(out, x * y, i + j);
        }
      }
      break;
    }
    case K::star: {
      const Counted a = denote(e->left, alphabet, limit);
      out.emplace(ratg::identity(alphabet.spec()), 0);
      bool changed = true;
      while (changed) {
        changed = false;
        const Counted current = out;
        for (const auto& [x, i] : current) {
          for (const auto& [y, j] : a) {
            if (i + j > limit) continue;
            const auto p = x * y;
            const auto it = out.find(p);
            if (it == out.end() || it->second > i + j) {
              out[p] = i + j;
              changed = true;
            }
          }
        }
      }
      break;
    }
  }
  return out;
}

inline ratg::ElementSet support(const Counted& c) {
  ratg::ElementSet s;
  for (const auto& [g, n] : c) s.insert(g);
  return s;
}

// Elements that are products of at most `radius` generators or their inverses.
inline ratg::ElementSet ball(const ratg::SpecPtr& spec, const std::vector<GroupElement>& gens, std::size_t radius) {
  std::vector<GroupElement> steps;
  for (const auto& g : gens) {
    steps.push_back(g);
    steps.push_back(ratg::inv(g));
  }
  ratg::ElementSet seen{ratg::identity(spec)};
  std::vector<GroupElement> frontier{ratg::identity(spec)};
  for (std::size_t r = 0; r < radius; ++r) {
    std::vector<GroupElement> next;
    for (const auto& x : frontier) {
      for (const auto& s : steps) {
        auto y = x * s;
        if (seen.insert(y).second) next.push_back(std::move(y));
      }
    }
    frontier = std::move(next);
  }
  return seen;
}

}  // namespace oracle

#include <array>
#include <set>

#include "ratg/semilinear.hpp"

namespace oracle {

using Point = std::vector<long>;

// Members of a linear set inside [lo, hi]^r by breadth-first search over partial sums.
// Some ordering of the summands keeps every partial sum within 2*r*max|p| of the segment
// from c to the target, so searching the enlarged bounding box is exhaustive.
inline std::set<Point> box_members(const ratg::LinearSet& l, long lo, long hi) {
  const auto r = static_cast<std::size_t>(l.dim());
  Point c(r);
  for (std::size_t i = 0; i < r; ++i) c[i] = l.base()(static_cast<Eigen::Index>(i)).to_int64();
  std::vector<Point> periods;
  long pmax = 0;
  for (const auto& p : l.periods()) {
    Point q(r);
    for (std::size_t i = 0; i < r; ++i) {
      q[i] = p(static_cast<Eigen::Index>(i)).to_int64();
      pmax = std::max(pmax, std::abs(q[i]));
    }
    periods.push_back(q);
  }
  const long slack = 2 * static_cast<long>(r) * pmax;
  Point blo(r), bhi(r);
  for (std::size_t i = 0; i < r; ++i) {
    blo[i] = std::min(lo, c[i]) - slack;
    bhi[i] = std::max(hi, c[i]) + slack;
  }
  // flat bitmap over the enlarged box
  std::vector<long> extent(r), stride(r);
  long total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    extent[i] = bhi[i] - blo[i] + 1;
    stride[i] = total;
    total *= extent[i];
  }
  auto index = [&](const Point& x) {
    long idx = 0;
    for (std::size_t i = 0; i < r; ++i) idx += (x[i] - blo[i]) * stride[i];
    return idx;
  };
  std::vector<char> seen(static_cast<std::size_t>(total), 0);
  seen[static_cast<std::size_t>(index(c))] = 1;
  std::vector<Point> stack{c};
  std::set<Point> out;
  while (!stack.empty()) {
    const Point x = stack.back();
    stack.pop_back();
    if (std::all_of(x.begin(), x.end(), [&](long v) { return v >= lo && v <= hi; })) out.insert(x);
    for (const auto& p : periods) {
      Point y = x;
      bool inside = true;
      for (std::size_t i = 0; i < r; ++i) {
        y[i] += p[i];
        inside = inside && y[i] >= blo[i] && y[i] <= bhi[i];
      }
      if (!inside) continue;
      auto& mark = seen[static_cast<std::size_t>(index(y))];
      if (!mark) {
        mark = 1;
        stack.push_back(y);
      }
    }
  }
  return out;
}

inline std::set<Point> box_members(const ratg::SemilinearSet& s, long lo, long hi) {
  std::set<Point> out;
  for (const auto& l : s.components()) {
    const auto part = box_members(l, lo, hi);
    out.insert(part.begin(), part.end());
  }
  return out;
}

inline std::set<Point> to_points(const std::vector<ratg::IntVector>& vs) {
  std::set<Point> out;
  for (const auto& v : vs) {
    Point p(static_cast<std::size_t>(v.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) p[static_cast<std::size_t>(i)] = v(i).to_int64();
    out.insert(p);
  }
  return out;
}

// All n in [0, bound]^k with A n = 0, then the componentwise-minimal nonzero ones.
inline std::vector<Point> brute_solutions(const ratg::IntMatrix& a, long bound) {
  const auto k = static_cast<std::size_t>(a.cols());
  std::vector<Point> sols;
  Point n(k, 0);
  while (true) {
    bool ok = true;
    for (Eigen::Index i = 0; i < a.rows() && ok; ++i) {
      long acc = 0;
      for (std::size_t j = 0; j < k; ++j) acc += a(i, static_cast<Eigen::Index>(j)).to_int64() * n[j];
      ok = acc == 0;
    }
    if (ok && std::any_of(n.begin(), n.end(), [](long v) { return v != 0; })) sols.push_back(n);
    std::size_t i = 0;
    while (i < k && n[i] == bound) n[i++] = 0;
    if (i == k) break;
    ++n[i];
  }
  return sols;
}

inline std::vector<Point> minimal_elements(const std::vector<Point>& sols) {
  std::vector<Point> out;
  for (const auto& s : sols) {
    bool minimal = true;
    for (const auto& t : sols) {
      if (t == s) continue;
      bool le = true;
      for (std::size_t i = 0; i < s.size() && le; ++i) le = t[i] <= s[i];
      if (le) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Exhaustive check that s is an N-combination of the basis.
inline bool decomposes(const Point& s, const std::vector<Point>& basis) {
  if (std::all_of(s.begin(), s.end(), [](long v) { return v == 0; })) return true;
  for (const auto& b : basis) {
    bool le = true;
    for (std::size_t i = 0; i < s.size() && le; ++i) le = b[i] <= s[i];
    if (!le) continue;
    Point rest = s;
    for (std::size_t i = 0; i < s.size(); ++i) rest[i] -= b[i];
    if (decomposes(rest, basis)) return true;
  }
  return false;
}

// Direct evaluation with every quantifier ranging over [-window, window].
// Exact when all bound variables are guarded inside the window.
inline bool eval_window(const ratg::FormulaPtr& f, std::map<std::string, long>& env, long window) {
  using K = ratg::Formula::Kind;
  auto value = [&](const ratg::Term& t) {
    long acc = t.constant().to_int64();
    for (const auto& [name, c] : t.coeffs()) acc += c.to_int64() * env.at(name);
    return acc;
  };
  switch (f->kind) {
    case K::truth: return true;
    case K::falsity: return false;
    case K::le: return value(f->term) <= 0;
    case K::eq: return value(f->term) == 0;
    case K::divides: return value(f->term) % f->modulus.to_int64() == 0;
    case K::negation: return !eval_window(f->children.front(), env, window);
    case K::conjunction:
      for (const auto& c : f->children) {
        if (!eval_window(c, env, window)) return false;
      }
      return true;
    case K::disjunction:
      for (const auto& c : f->children) {
        if (eval_window(c, env, window)) return true;
      }
      return false;
    case K::exists:
    case K::forall: {
      const bool ex = f->kind == K::exists;
      const auto saved = env.find(f->var) == env.end() ? std::optional<long>{} : std::optional<long>{env[f->var]};
      bool result = !ex;
      for (long v = -window; v <= window; ++v) {
        env[f->var] = v;
        if (eval_window(f->children.front(), env, window) == ex) {
          result = ex;
          break;
        }
      }
      if (saved) {
        env[f->var] = *saved;
      } else {
        env.erase(f->var);
      }
      return result;
    }
  }
  return false;
}

}  // namespace oracle
