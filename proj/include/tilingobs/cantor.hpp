#pragma once

// Symmetric Cantor sets E(ξ1, ξ2, ...) with 0 < ξk < 1/2: finite stages,
// measure enclosures, exact essential difference sets, the quantitative
// overlap bounds used in the weak-tiling argument, a planar Cantor generator
// and a finite-stage fat-Cantor partition of [0,1].

#include "tilingobs/setalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace tilingobs {

/// Closed-form tail ξ_{p+j} = (1 - c q^j) / 2 for j >= 1.
struct GeometricTail {
  Rational c;
  Rational q;
};

class RatioSequence {
 public:
  RatioSequence() = default;
  RatioSequence(std::vector<Rational> prefix, std::optional<GeometricTail> tail = std::nullopt)
      : prefix_(std::move(prefix)), tail_(std::move(tail)) {
    const Rational half(1, 2);
    for (std::size_t i = 0; i < prefix_.size(); ++i)
      if (!(prefix_[i] > 0 && prefix_[i] < half))
        throw InputError("ratio xi_" + std::to_string(i + 1) + " = " + to_string(prefix_[i]) +
                         " is outside (0, 1/2)");
    if (tail_) {
      if (!(tail_->c > 0)) throw InputError("tail constant c must be positive");
      if (!(tail_->q > 0 && tail_->q < 1)) throw InputError("tail ratio q must lie in (0, 1)");
      if (!(tail_->c * tail_->q < 1)) throw InputError("tail needs c*q < 1 so that xi > 0");
    }
  }

  static RatioSequence constant(const Rational& xi, std::size_t count) {
    return RatioSequence(std::vector<Rational>(count, xi));
  }

  const std::vector<Rational>& prefix() const { return prefix_; }
  const std::optional<GeometricTail>& tail() const { return tail_; }
  std::size_t prefix_length() const { return prefix_.size(); }

  bool has(std::size_t k) const { return tail_.has_value() || k <= prefix_.size(); }

  /// ξ_k, 1-based.
  Rational xi(std::size_t k) const {
    if (k == 0) throw InputError("ratio index is 1-based");
    if (k <= prefix_.size()) return prefix_[k - 1];
    if (!tail_)
      throw InputError("ratio xi_" + std::to_string(k) + " requested but the sequence has only " +
                       std::to_string(prefix_.size()) + " terms and no tail");
    Rational half(1, 2);
    return half * (1 - tail_->c * pow(tail_->q, k - prefix_.size()));
  }

  /// The sequence ξ_{k+1}, ξ_{k+2}, ...
  RatioSequence shift(std::size_t k) const {
    if (k <= prefix_.size())
      return RatioSequence(std::vector<Rational>(prefix_.begin() + static_cast<long>(k), prefix_.end()),
                           tail_);
    if (!tail_) throw InputError("cannot shift a finite sequence past its end");
    GeometricTail t{tail_->c * pow(tail_->q, k - prefix_.size()), tail_->q};
    return RatioSequence({}, t);
  }

 private:
  std::vector<Rational> prefix_;
  std::optional<GeometricTail> tail_;
};

struct CantorStage {
  std::size_t k = 0;
  std::vector<Rational> gaps;     // r_1..r_k, r_j = ξ1···ξ_{j-1}(1 - ξ_j)
  std::vector<Rational> offsets;  // T_k, 2^k points in increasing order
  Rational cell_length = 1;       // ξ1···ξk
  BoxSet set;                     // T_k + cell_length * [0,1]
};

inline CantorStage stage(const RatioSequence& xi, std::size_t k) {
  if (k > 30) throw InputError("stage index too large (2^k intervals)");
  CantorStage st;
  st.k = k;
  st.offsets = {Rational(0)};
  Rational prod = 1;
  for (std::size_t j = 1; j <= k; ++j) {
    Rational x = xi.xi(j);
    Rational r = prod * (1 - x);
    st.gaps.push_back(r);
    std::vector<Rational> next;
    next.reserve(2 * st.offsets.size());
    for (const auto& t : st.offsets) next.push_back(t);
    for (const auto& t : st.offsets) next.push_back(t + r);
    st.offsets = std::move(next);
    prod *= x;
  }
  st.cell_length = prod;
  std::vector<Box> boxes;
  boxes.reserve(st.offsets.size());
  for (const auto& t : st.offsets) boxes.push_back(Box::interval(t, t + prod));
  st.set = normalize(BoxSet(1, std::move(boxes)));
  return st;
}

/// Rational enclosure [lo, hi] of m(E).
struct Enclosure {
  Rational lo;
  Rational hi;
  std::size_t terms = 0;  // exact factors used
  bool exact = false;
};

namespace detail {

// Π_{i>K}(1 - a_i) >= 1 - Σ_{i>K} a_i, with a_i = 1 - 2ξ_i = c q^{i-p} on the tail.
inline Rational tail_product_lower_bound(const GeometricTail& t, std::size_t first_tail_power) {
  Rational sum = t.c * pow(t.q, first_tail_power) / (1 - t.q);
  Rational lb = 1 - sum;
  return lb > 0 ? lb : Rational(0);
}

}  // namespace detail

/// Encloses m(E) = lim 2^k ξ1···ξk to width <= tol. The partial products are
/// nonincreasing, so hi is a partial product and lo a tail-bounded one.
inline Enclosure measure_limit(const RatioSequence& xi, const Rational& tol) {
  if (!(tol > 0)) throw InputError("tolerance must be positive");
  Enclosure e;
  Rational prod = 1;
  for (const auto& x : xi.prefix()) prod *= 2 * x;
  std::size_t k = xi.prefix_length();
  if (!xi.tail()) {
    e.lo = e.hi = prod;
    e.terms = k;
    e.exact = true;
    return e;
  }
  const auto& tail = *xi.tail();
  for (std::size_t guard = 0; guard < 100000; ++guard) {
    Rational lb = prod * detail::tail_product_lower_bound(tail, k - xi.prefix_length() + 1);
    if (prod - lb <= tol) {
      e.lo = lb;
      e.hi = prod;
      e.terms = k;
      return e;
    }
    ++k;
    prod *= 2 * xi.xi(k);
  }
  throw InvariantError("measure enclosure did not converge");
}

/// Tail measure a shifted Cantor set must certify before Δ(E) = Δ(E_k).
inline Rational tail_measure_threshold() { return Rational(4, 5); }

/// Certified lower bound for inf_n 2^n ξ_{k+1}···ξ_{k+n}: exact factors up to
/// the prefix, then 1 - Σ c q^j for the tail.
inline Rational certified_tail_measure(const RatioSequence& xi, std::size_t k) {
  if (!xi.tail()) throw InputError("no tail: the measure of E is not certified positive");
  Rational prod = 1;
  for (std::size_t i = k + 1; i <= xi.prefix_length(); ++i) prod *= 2 * xi.xi(i);
  std::size_t past = k > xi.prefix_length() ? k - xi.prefix_length() : 0;
  return prod * detail::tail_product_lower_bound(*xi.tail(), past + 1);
}

/// Smallest k whose shifted Cantor set certifiably has measure >= 4/5.
inline std::size_t tail_index(const RatioSequence& xi) {
  if (!xi.tail())
    throw InputError(
        "sequence has no tail: positive measure of E (needed for a finite essential "
        "difference set) is not certified");
  const Rational threshold = tail_measure_threshold();
  for (std::size_t k = 0; k < 4096; ++k)
    if (certified_tail_measure(xi, k) >= threshold) return k;
  throw InputError("no index k certifies a tail measure of at least 4/5");
}

struct DeltaExact {
  std::size_t k = 0;
  BoxSet delta;   // Δ(E) = Δ(E_k)
  BoxSet region;  // E_k: a packing region containing E with m(E_k) > m(E)
};

/// Δ(E) = T_k - T_k + ξ1···ξk (-1, 1) for the certified index k.
inline DeltaExact delta_exact(const RatioSequence& xi) {
  DeltaExact out;
  out.k = tail_index(xi);
  CantorStage st = stage(xi, out.k);
  std::vector<Box> boxes;
  boxes.reserve(st.offsets.size() * st.offsets.size());
  for (const auto& a : st.offsets)
    for (const auto& b : st.offsets)
      boxes.push_back(Box::interval(a - b - st.cell_length, a - b + st.cell_length));
  out.delta = normalize(BoxSet(1, std::move(boxes), true));
  out.region = st.set;
  return out;
}

struct OverlapReport {
  std::size_t n = 0;
  Rational ell;        // ℓ_n = ξ1···ξn
  Rational gap;        // d_n = ξ1···ξ_{n-1}(1 - 2ξn)
  Rational measure_removed;  // m(A_n), A_n = E_{n-1} \ E_n, computed from the sets
  Rational measure_stage;    // m(E_n)
  Rational lower_bound;      // (1/2 - d_n/(2ℓ_n)) m(E_n)
};

inline OverlapReport overlap_report(const RatioSequence& xi, std::size_t n) {
  if (n == 0) throw InputError("overlap report needs n >= 1 (a removal step)");
  CantorStage prev = stage(xi, n - 1);
  CantorStage cur = stage(xi, n);
  OverlapReport r;
  r.n = n;
  r.ell = cur.cell_length;
  r.gap = prev.cell_length * (1 - 2 * xi.xi(n));
  r.measure_removed = measure(set_difference(prev.set, cur.set));
  r.measure_stage = measure(cur.set);
  const Rational half(1, 2);
  if (r.measure_removed != r.gap / (2 * r.ell) * r.measure_stage)
    throw InvariantError("m(A_n) != d_n/(2 l_n) m(E_n)");
  r.lower_bound = (half - r.gap / (2 * r.ell)) * r.measure_stage;
  return r;
}

struct CrucialInequality {
  Rational lhs;  // (ℓ-d)/d · m((E_n+t) ∩ A_n)
  Rational rhs;  // m((E_n+t) ∩ E_n)
  bool holds = false;
};

inline CrucialInequality crucial_inequality_check(const RatioSequence& xi, std::size_t n,
                                                  const Rational& t) {
  if (n == 0) throw InputError("crucial inequality needs n >= 1");
  CantorStage prev = stage(xi, n - 1);
  CantorStage cur = stage(xi, n);
  Rational ell = cur.cell_length;
  Rational gap = prev.cell_length * (1 - 2 * xi.xi(n));
  if (!(gap < ell))
    throw InputError("precondition d_n < l_n fails (needs xi_n > 1/3); the inequality is not claimed");
  BoxSet removed = set_difference(prev.set, cur.set);
  BoxSet shifted = translate(cur.set, {t});
  CrucialInequality out;
  out.lhs = (ell - gap) / gap * measure(set_intersection(shifted, removed));
  out.rhs = measure(set_intersection(shifted, cur.set));
  out.holds = out.lhs <= out.rhs;
  return out;
}

/// Cells (grid-aligned squares) of the planar Cantor stage: each cube of stage
/// j-1 is split into M_j x M_j cells and the cell containing its centre (ties
/// toward lower coordinates) is dropped.
inline std::vector<Box> cantor2d_cells(const std::vector<long>& M, std::size_t n) {
  if (n > M.size()) throw InputError("stage n exceeds the length of M");
  for (std::size_t j = 0; j < n; ++j)
    if (M[j] < 4) throw InputError("M_" + std::to_string(j + 1) + " < 4: no middle-third cell");
  std::vector<Box> cells = {Box::rect(0, 0, 1, 1)};
  Rational side = 1;
  for (std::size_t j = 0; j < n; ++j) {
    const long m = M[j];
    const long centre = (m - 1) / 2;
    Rational sub = side / m;
    std::vector<Box> next;
    next.reserve(cells.size() * static_cast<std::size_t>(m * m - 1));
    for (const auto& c : cells) {
      for (long ix = 0; ix < m; ++ix) {
        for (long iy = 0; iy < m; ++iy) {
          if (ix == centre && iy == centre) continue;
          Rational x0 = c.lo[0] + sub * ix;
          Rational y0 = c.lo[1] + sub * iy;
          next.push_back(Box::rect(x0, y0, x0 + sub, y0 + sub));
        }
      }
    }
    cells = std::move(next);
    side = sub;
  }
  return cells;
}

inline BoxSet cantor2d_stage(const std::vector<long>& M, std::size_t n) {
  return normalize(BoxSet(2, cantor2d_cells(M, n)));
}

struct FatCantorTiling {
  std::vector<BoxSet> pieces;  // pieces[i] ⊂ [0,1], pairwise a.e. disjoint
  Rational residual;           // 1 - Σ m(pieces)
};

/// Fat-Cantor partition of [0,1] up to an explicit residual. Level 1 places a
/// finite Cantor stage of relative measure 1 - shrink in [0,1]; each further
/// level fills every remaining gap the same way, so residual = shrink^levels.
inline FatCantorTiling fat_cantor_tiler(std::size_t levels, const Rational& shrink,
                                        std::size_t stages_per_piece = 3) {
  if (levels == 0) throw InputError("levels must be >= 1");
  if (!(shrink > 0 && shrink < 1)) throw InputError("shrink must lie in (0, 1)");
  if (stages_per_piece == 0) throw InputError("stages_per_piece must be >= 1");
  // ξ_i for i >= 2 has 2ξ_i = 1 - shrink 2^{-i}; ξ_1 closes the product at 1 - shrink.
  std::vector<Rational> ratios(stages_per_piece);
  Rational rest = 1;
  for (std::size_t i = 2; i <= stages_per_piece; ++i) {
    Rational two_xi = 1 - shrink / pow(Rational(2), i);
    ratios[i - 1] = two_xi / 2;
    rest *= two_xi;
  }
  ratios[0] = (1 - shrink) / (2 * rest);
  const CantorStage unit = stage(RatioSequence(ratios), stages_per_piece);
  if (measure(unit.set) != 1 - shrink) throw InvariantError("fat Cantor stage has the wrong measure");

  const BoxSet unit_set = normalize(unit.set);
  const auto& iv = unit_set.boxes();
  FatCantorTiling out;
  std::vector<detail::Interval> gaps = {{Rational(0), Rational(1)}};
  for (std::size_t level = 0; level < levels; ++level) {
    std::vector<Box> boxes;
    std::vector<detail::Interval> next_gaps;
    for (const auto& g : gaps) {
      Rational len = g.hi - g.lo;
      for (std::size_t i = 0; i < iv.size(); ++i) {
        boxes.push_back(Box::interval(g.lo + len * iv[i].lo[0], g.lo + len * iv[i].hi[0]));
        if (i + 1 < iv.size())
          next_gaps.push_back({g.lo + len * iv[i].hi[0], g.lo + len * iv[i + 1].lo[0]});
      }
    }
    out.pieces.push_back(normalize(BoxSet(1, std::move(boxes))));
    gaps = std::move(next_gaps);
  }
  Rational covered = 0;
  for (const auto& p : out.pieces) covered += p.raw_volume();
  out.residual = 1 - covered;
  if (out.residual != pow(shrink, levels)) throw InvariantError("residual != shrink^levels");
  return out;
}

}  // namespace tilingobs
