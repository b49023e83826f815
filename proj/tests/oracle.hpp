#pragma once

// Brute-force reference computations used by the test suites. They share only
// the Rational type with the library.

#include "tilingobs/rational.hpp"

#include <algorithm>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using tilingobs::Rational;

struct RBox {
  std::vector<Rational> lo, hi;
};
using RSet = std::vector<RBox>;

inline bool inside_open(const RBox& b, const std::vector<Rational>& p) {
  for (std::size_t i = 0; i < p.size(); ++i)
    if (!(b.lo[i] < p[i] && p[i] < b.hi[i])) return false;
  return true;
}

inline bool member(const RSet& s, const std::vector<Rational>& p) {
  for (const auto& b : s)
    if (inside_open(b, p)) return true;
  return false;
}

inline RSet shift(const RSet& s, const std::vector<Rational>& t) {
  RSet out = s;
  for (auto& b : out)
    for (std::size_t i = 0; i < t.size(); ++i) {
      b.lo[i] += t[i];
      b.hi[i] += t[i];
    }
  return out;
}

/// Σ over elementary cells of the coordinate grid spanned by every set whose
/// midpoint membership pattern satisfies `keep`.
inline Rational measure_where(const std::vector<RSet>& sets, int dim,
                              const std::function<bool(const std::vector<bool>&)>& keep) {
  std::vector<std::vector<Rational>> cuts(static_cast<std::size_t>(dim));
  for (const auto& s : sets)
    for (const auto& b : s)
      for (int i = 0; i < dim; ++i) {
        cuts[i].push_back(b.lo[i]);
        cuts[i].push_back(b.hi[i]);
      }
  for (auto& c : cuts) {
    std::sort(c.begin(), c.end());
    c.erase(std::unique(c.begin(), c.end()), c.end());
  }
  Rational total = 0;
  std::vector<bool> pattern(sets.size());
  auto visit = [&](const std::vector<Rational>& mid, const Rational& vol) {
    for (std::size_t k = 0; k < sets.size(); ++k) pattern[k] = member(sets[k], mid);
    if (keep(pattern)) total += vol;
  };
  if (dim == 1) {
    for (std::size_t a = 0; a + 1 < cuts[0].size(); ++a)
      visit({(cuts[0][a] + cuts[0][a + 1]) / 2}, cuts[0][a + 1] - cuts[0][a]);
  } else {
    for (std::size_t a = 0; a + 1 < cuts[0].size(); ++a)
      for (std::size_t b = 0; b + 1 < cuts[1].size(); ++b)
        visit({(cuts[0][a] + cuts[0][a + 1]) / 2, (cuts[1][b] + cuts[1][b + 1]) / 2},
              (cuts[0][a + 1] - cuts[0][a]) * (cuts[1][b + 1] - cuts[1][b]));
  }
  return total;
}

inline Rational measure(const RSet& s, int dim) {
  return measure_where({s}, dim, [](const std::vector<bool>& p) { return p[0]; });
}

inline Rational overlap(const RSet& s, const std::vector<Rational>& t, int dim) {
  return measure_where({s, shift(s, t)}, dim, [](const std::vector<bool>& p) { return p[0] && p[1]; });
}

inline Rational symdiff(const RSet& a, const RSet& b, int dim) {
  return measure_where({a, b}, dim, [](const std::vector<bool>& p) { return p[0] != p[1]; });
}

inline Rational difference(const RSet& a, const RSet& b, int dim) {
  return measure_where({a, b}, dim, [](const std::vector<bool>& p) { return p[0] && !p[1]; });
}

/// Random sets with endpoints on the grid (1/den)Z inside [0, span].
class SetGen {
 public:
  explicit SetGen(unsigned seed, long den = 12, long span = 3) : rng_(seed), den_(den), span_(span) {}

  Rational coord() { return tilingobs::rational(std::uniform_int_distribution<long>(0, span_ * den_)(rng_), den_); }

  RBox box(int dim) {
    RBox b;
    for (int i = 0; i < dim; ++i) {
      long a = std::uniform_int_distribution<long>(0, span_ * den_ - 1)(rng_);
      long c = std::uniform_int_distribution<long>(a + 1, std::min(span_ * den_, a + den_))(rng_);
      b.lo.push_back(tilingobs::rational(a, den_));
      b.hi.push_back(tilingobs::rational(c, den_));
    }
    return b;
  }

  RSet set(int dim, int max_boxes = 4) {
    int n = std::uniform_int_distribution<int>(1, max_boxes)(rng_);
    RSet s;
    for (int k = 0; k < n; ++k) s.push_back(box(dim));
    return s;
  }

  /// A translation off the grid (1/den)Z, so it avoids every difference endpoint.
  std::vector<Rational> off_grid_shift(int dim, long reach) {
    std::vector<Rational> t;
    for (int i = 0; i < dim; ++i) {
      long k = std::uniform_int_distribution<long>(-reach * den_, reach * den_ - 1)(rng_);
      t.push_back(tilingobs::rational(2 * k + 1, 2 * den_));
    }
    return t;
  }

  std::vector<Rational> on_grid_shift(int dim, long reach) {
    std::vector<Rational> t;
    for (int i = 0; i < dim; ++i)
      t.push_back(tilingobs::rational(std::uniform_int_distribution<long>(-reach * den_, reach * den_)(rng_), den_));
    return t;
  }

  std::mt19937& rng() { return rng_; }

 private:
  std::mt19937 rng_;
  long den_;
  long span_;
};

}  // namespace oracle
