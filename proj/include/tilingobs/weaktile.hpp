#pragma once

// Weak tilings 1_A * ν = 1_{A^c} on a finite window: exact verification for
// atomic measures, the product-measure composition, and a grid LP whose
// infeasibility (with a replayable Farkas vector) rules out every weak tiling.

#include "tilingobs/setalg.hpp"
#include "tilingobs/simplex.hpp"

#include <map>
#include <set>
#include <string>
#include <vector>

namespace tilingobs {

struct Atom {
  Point p;
  Rational w;
  friend bool operator==(const Atom&, const Atom&) = default;
};

/// Finite positive point-mass measure; atoms sorted by position, distinct.
class AtomicMeasure {
 public:
  AtomicMeasure() = default;
  AtomicMeasure(int dim, std::vector<Atom> atoms) : dim_(dim) {
    if (dim < 1 || dim > 2) throw InputError("measure dimension must be 1 or 2");
    std::map<Point, Rational> merged;
    for (auto& a : atoms) {
      if (static_cast<int>(a.p.size()) != dim) throw InputError("atom dimension mismatch");
      if (!(a.w > 0)) throw InputError("atom weights must be strictly positive");
      merged[a.p] += a.w;
    }
    for (auto& [p, w] : merged) atoms_.push_back({p, w});
  }

  /// Σ_t δ_t over a list of 1D points with unit weights.
  static AtomicMeasure unit_masses(const std::vector<Rational>& points) {
    std::vector<Atom> atoms;
    for (const auto& t : points) atoms.push_back({{t}, Rational(1)});
    return AtomicMeasure(1, std::move(atoms));
  }

  int dim() const { return dim_; }
  const std::vector<Atom>& atoms() const { return atoms_; }
  std::size_t size() const { return atoms_.size(); }
  friend bool operator==(const AtomicMeasure&, const AtomicMeasure&) = default;

 private:
  int dim_ = 1;
  std::vector<Atom> atoms_;
};

/// ν = ν1 × δ0 + δ0 × ν2 + ν1 × ν2, so that δ0 + ν = (δ0 + ν1) × (δ0 + ν2).
inline AtomicMeasure compose_product_measure(const AtomicMeasure& nu1, const AtomicMeasure& nu2) {
  const int dim = nu1.dim() + nu2.dim();
  if (dim > 2) throw InputError("composed measure would exceed dimension 2");
  auto concat = [](const Point& a, const Point& b) {
    Point p = a;
    p.insert(p.end(), b.begin(), b.end());
    return p;
  };
  const Point zero1(static_cast<std::size_t>(nu1.dim()), Rational(0));
  const Point zero2(static_cast<std::size_t>(nu2.dim()), Rational(0));
  std::vector<Atom> atoms;
  for (const auto& a : nu1.atoms()) atoms.push_back({concat(a.p, zero2), a.w});
  for (const auto& b : nu2.atoms()) atoms.push_back({concat(zero1, b.p), b.w});
  for (const auto& a : nu1.atoms())
    for (const auto& b : nu2.atoms()) atoms.push_back({concat(a.p, b.p), a.w * b.w});
  return AtomicMeasure(dim, std::move(atoms));
}

namespace detail {

inline Rational overlap_with(const BoxSet& a, const Box& cell) {
  Rational total = 0, vol;
  for (const auto& b : a.boxes())
    if (box_overlap(b, cell, vol)) total += vol;
  return total;
}

inline Box shifted(const Box& c, const Point& t, int sign) {
  Box out = c;
  for (std::size_t i = 0; i < t.size(); ++i) {
    out.lo[i] += sign * t[i];
    out.hi[i] += sign * t[i];
  }
  return out;
}

}  // namespace detail

/// Constant value of (1_A * ν) on the interior of a cell: Σ w_t 1_A(x − t).
/// Throws when some translate cuts the cell (the value would not be constant).
inline Rational convolve_indicator(const BoxSet& a, const AtomicMeasure& nu, const Box& cell) {
  if (a.dim() != nu.dim() || cell.dim() != a.dim()) throw InputError("dimension mismatch");
  const BoxSet n = normalize(a);
  const Rational vol = cell.volume();
  Rational value = 0;
  for (const auto& atom : nu.atoms()) {
    Rational ov = detail::overlap_with(n, detail::shifted(cell, atom.p, -1));
    if (ov == 0) continue;
    if (ov != vol)
      throw InputError("atom at an off-grid position: the convolution is not constant on the cell");
    value += atom.w;
  }
  return value;
}

struct WeakTileInstance {
  BoxSet a;
  Box window;  // inner verification window
  Rational h;  // grid step

  int dim() const { return a.dim(); }

  void validate() const {
    if (!(h > 0)) throw InputError("grid step must be positive");
    if (window.dim() != a.dim()) throw InputError("window dimension does not match the set");
    if (!(measure(a) > 0)) throw InputError("the set must have positive measure");
    const BoxSet normalized = normalize(a);
    for (const auto& b : normalized.boxes())
      for (int i = 0; i < a.dim(); ++i)
        if (!is_multiple_of(b.lo[i], h) || !is_multiple_of(b.hi[i], h))
          throw InputError("set endpoints are not multiples of the grid step");
    for (int i = 0; i < a.dim(); ++i)
      if (!is_multiple_of(window.lo[i], h) || !is_multiple_of(window.hi[i], h))
        throw InputError("window endpoints are not multiples of the grid step");
  }

  /// Grid cells inside the window, lexicographic by lower corner.
  std::vector<Box> cells() const {
    std::vector<Box> out;
    const long x0 = to_long_exact(window.lo[0] / h), x1 = to_long_exact(window.hi[0] / h);
    if (dim() == 1) {
      for (long i = x0; i < x1; ++i) out.push_back(Box::interval(h * i, h * (i + 1)));
      return out;
    }
    const long y0 = to_long_exact(window.lo[1] / h), y1 = to_long_exact(window.hi[1] / h);
    for (long i = x0; i < x1; ++i)
      for (long j = y0; j < y1; ++j) out.push_back(Box::rect(h * i, h * j, h * (i + 1), h * (j + 1)));
    return out;
  }

  /// Grid translates t ≠ 0 whose copy A + t can meet the window:
  /// t ∈ [min W − max A, max W − min A] componentwise.
  std::vector<Point> candidate_translates() const {
    const BoxSet n = normalize(a);
    std::vector<std::pair<long, long>> range(static_cast<std::size_t>(dim()));
    for (int i = 0; i < dim(); ++i) {
      Rational amin = n.boxes().front().lo[i], amax = n.boxes().front().hi[i];
      for (const auto& b : n.boxes()) {
        if (b.lo[i] < amin) amin = b.lo[i];
        if (amax < b.hi[i]) amax = b.hi[i];
      }
      range[i] = {to_long_exact((window.lo[i] - amax) / h), to_long_exact((window.hi[i] - amin) / h)};
    }
    std::vector<Point> out;
    if (dim() == 1) {
      for (long i = range[0].first; i <= range[0].second; ++i)
        if (i != 0) out.push_back({h * i});
      return out;
    }
    for (long i = range[0].first; i <= range[0].second; ++i)
      for (long j = range[1].first; j <= range[1].second; ++j)
        if (i != 0 || j != 0) out.push_back({h * i, h * j});
    return out;
  }
};

struct CellDefect {
  Box cell;
  Rational value;   // (1_A * ν) on the cell
  Rational target;  // 1_{A^c} on the cell
  Rational defect;  // |value − target|
};

struct WeakTilingReport {
  Rational max_defect = 0;
  std::vector<CellDefect> defect_cells;  // cells with nonzero defect
  std::size_t cells_checked = 0;
};

inline WeakTilingReport verify_weak_tiling(const WeakTileInstance& inst, const AtomicMeasure& nu) {
  inst.validate();
  if (nu.dim() != inst.dim()) throw InputError("measure dimension does not match the set");
  const BoxSet n = normalize(inst.a);
  WeakTilingReport rep;
  for (const auto& c : inst.cells()) {
    Rational inside = detail::overlap_with(n, c);
    Rational target = inside == 0 ? Rational(1) : Rational(0);
    if (inside != 0 && inside != c.volume()) throw InvariantError("cell straddles the set boundary");
    Rational value = convolve_indicator(n, nu, c);
    Rational defect = rabs(value - target);
    ++rep.cells_checked;
    if (defect != 0) {
      if (rep.max_defect < defect) rep.max_defect = defect;
      rep.defect_cells.push_back({c, value, target, defect});
    }
  }
  return rep;
}

struct FarkasEntry {
  Box cell;
  Rational y;
};

enum class LpStatus { Feasible, Infeasible };

inline std::string to_string(LpStatus s) { return s == LpStatus::Feasible ? "Feasible" : "Infeasible"; }

struct LpOutcome {
  LpStatus status = LpStatus::Feasible;
  AtomicMeasure measure;             // when feasible
  std::vector<FarkasEntry> farkas;   // when infeasible; one entry per window cell
  std::size_t rows = 0;
  std::size_t columns = 0;
  std::size_t pivots = 0;
};

namespace detail {

using GridIndex = std::vector<long>;

inline GridIndex grid_index(const Point& p, const Rational& h) {
  GridIndex g;
  for (const auto& x : p) g.push_back(to_long_exact(x / h));
  return g;
}

// The set as a collection of grid cells, by lower-corner index.
inline std::set<GridIndex> grid_cells_of(const BoxSet& a, const Rational& h) {
  std::set<GridIndex> out;
  const BoxSet normalized = normalize(a);
  for (const auto& b : normalized.boxes()) {
    GridIndex lo = grid_index(b.lo, h), hi = grid_index(b.hi, h);
    if (a.dim() == 1) {
      for (long i = lo[0]; i < hi[0]; ++i) out.insert({i});
    } else {
      for (long i = lo[0]; i < hi[0]; ++i)
        for (long j = lo[1]; j < hi[1]; ++j) out.insert({i, j});
    }
  }
  return out;
}

}  // namespace detail

/// Grid LP: w_t >= 0 on candidate translates, one equation per window cell,
/// Σ_t w_t [c − t ⊆ A] = 1_{A^c}(c). Integrating any weak tiling over the
/// cells and splitting each bin's mass onto its grid corners (the cell
/// functions are piecewise (multi)linear with grid breakpoints) yields a
/// solution, so Infeasible excludes weak tilings by arbitrary measures.
/// Feasible only means "no obstruction at this scale".
inline LpOutcome lp_feasibility(const WeakTileInstance& inst) {
  inst.validate();
  const auto a_cells = detail::grid_cells_of(inst.a, inst.h);
  const auto cells = inst.cells();
  const auto translates = inst.candidate_translates();

  std::vector<detail::GridIndex> cell_idx;
  for (const auto& c : cells) cell_idx.push_back(detail::grid_index(c.lo, inst.h));
  std::vector<Rational> b;
  for (const auto& ci : cell_idx) b.push_back(a_cells.count(ci) ? Rational(0) : Rational(1));

  DenseMatrix m(cells.size());
  std::vector<std::size_t> kept;
  for (std::size_t k = 0; k < translates.size(); ++k) {
    auto ti = detail::grid_index(translates[k], inst.h);
    std::vector<Rational> col(cells.size());
    bool any = false;
    for (std::size_t r = 0; r < cells.size(); ++r) {
      detail::GridIndex d = cell_idx[r];
      for (std::size_t i = 0; i < d.size(); ++i) d[i] -= ti[i];
      if (a_cells.count(d)) {
        col[r] = 1;
        any = true;
      }
    }
    if (!any) continue;
    kept.push_back(k);
    for (std::size_t r = 0; r < cells.size(); ++r) m[r].push_back(col[r]);
  }

  LpOutcome out;
  out.rows = cells.size();
  out.columns = kept.size();
  if (kept.empty()) {
    // no translate reaches the window: feasible iff every cell lies in A
    bool ok = true;
    for (const auto& v : b) ok = ok && v == 0;
    if (ok) {
      out.status = LpStatus::Feasible;
      out.measure = AtomicMeasure(inst.dim(), {});
    } else {
      out.status = LpStatus::Infeasible;
      for (std::size_t r = 0; r < cells.size(); ++r) out.farkas.push_back({cells[r], b[r]});
    }
    return out;
  }
  auto res = solve_feasibility(m, b);
  out.pivots = res.pivots;
  if (res.feasible) {
    out.status = LpStatus::Feasible;
    std::vector<Atom> atoms;
    for (std::size_t j = 0; j < kept.size(); ++j)
      if (res.x[j] > 0) atoms.push_back({translates[kept[j]], res.x[j]});
    out.measure = AtomicMeasure(inst.dim(), std::move(atoms));
    return out;
  }
  out.status = LpStatus::Infeasible;
  for (std::size_t r = 0; r < cells.size(); ++r) out.farkas.push_back({cells[r], res.y[r]});
  return out;
}

/// Replays a Farkas certificate against the instance, rebuilding every
/// coefficient from box overlaps: yᵀM_t <= 0 for all translates t and yᵀb > 0.
inline bool farkas_verify(const WeakTileInstance& inst, const std::vector<FarkasEntry>& cert) {
  inst.validate();
  const auto cells = inst.cells();
  if (cert.size() != cells.size())
    throw InputError("certificate has " + std::to_string(cert.size()) + " entries but the system has " +
                     std::to_string(cells.size()) + " rows");
  for (std::size_t r = 0; r < cells.size(); ++r)
    if (!(cert[r].cell == cells[r])) throw InputError("certificate cell order does not match the window");
  const BoxSet n = normalize(inst.a);
  Rational yb = 0;
  for (std::size_t r = 0; r < cells.size(); ++r) {
    Rational frac_in = detail::overlap_with(n, cells[r]) / cells[r].volume();
    yb += cert[r].y * (1 - frac_in);
  }
  if (!(yb > 0)) return false;
  for (const auto& t : inst.candidate_translates()) {
    Rational col = 0;
    for (std::size_t r = 0; r < cells.size(); ++r) {
      if (cert[r].y == 0) continue;
      Rational coeff = detail::overlap_with(n, detail::shifted(cells[r], t, -1)) / cells[r].volume();
      col += cert[r].y * coeff;
    }
    if (col > 0) return false;
  }
  return true;
}

struct LatticeCellDefect {
  Box cell;
  Rational covered;    // m(cell ∩ ∪_m (tile + m·period))
  Rational integral;   // ∫_cell Σ_m 1_{tile + m·period}
  Rational defect;     // (m(cell) − covered) + (integral − covered)
};

/// Exact per-cell accounting of the 1D lattice sum Σ_m 1_{tile}(x − m·period)
/// against the constant 1 on a window.
inline std::vector<LatticeCellDefect> lattice_cover_defects(const BoxSet& tile, const Rational& period,
                                                            const Box& window, const Rational& cell) {
  if (tile.dim() != 1 || window.dim() != 1) throw InputError("lattice cover check is one-dimensional");
  if (!(period > 0) || !(cell > 0)) throw InputError("period and cell length must be positive");
  const BoxSet n = normalize(tile);
  if (n.empty()) throw InputError("empty tile");
  const Rational tmin = n.boxes().front().lo[0], tmax = n.boxes().back().hi[0];
  Rational lo_r = (window.lo[0] - tmax) / period, hi_r = (window.hi[0] - tmin) / period;
  Integer mlo, mhi;
  mpz_fdiv_q(mlo.get_mpz_t(), lo_r.get_num_mpz_t(), lo_r.get_den_mpz_t());
  mpz_cdiv_q(mhi.get_mpz_t(), hi_r.get_num_mpz_t(), hi_r.get_den_mpz_t());
  std::vector<BoxSet> copies;
  BoxSet unite(1);
  for (Integer k = mlo; k <= mhi; ++k) {
    copies.push_back(translate(n, {period * Rational(k)}));
    unite = set_union(unite, copies.back());
  }
  std::vector<LatticeCellDefect> out;
  for (Rational x = window.lo[0]; x < window.hi[0]; x += cell) {
    Rational x1 = x + cell < window.hi[0] ? Rational(x + cell) : window.hi[0];
    Box c = Box::interval(x, x1);
    LatticeCellDefect d{c, detail::overlap_with(unite, c), 0, 0};
    for (const auto& cp : copies) d.integral += detail::overlap_with(cp, c);
    d.defect = (c.volume() - d.covered) + (d.integral - d.covered);
    out.push_back(std::move(d));
  }
  return out;
}

}  // namespace tilingobs
