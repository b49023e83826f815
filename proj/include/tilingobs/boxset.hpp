#pragma once

// Finite unions of axis-aligned rational boxes in dimension 1 or 2, treated
// up to null sets. A normalized BoxSet is the unique "maximal x-slab"
// decomposition of its indicator, so two normalized sets are a.e. equal iff
// they compare equal.

#include "tilingobs/rational.hpp"

#include <algorithm>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace tilingobs {

using Point = std::vector<Rational>;

struct Box {
  Point lo;
  Point hi;

  Box() = default;
  Box(Point l, Point h) : lo(std::move(l)), hi(std::move(h)) {
    if (lo.size() != hi.size() || lo.empty() || lo.size() > 2)
      throw InputError("box corners must share a dimension of 1 or 2");
    for (std::size_t i = 0; i < lo.size(); ++i)
      if (!(lo[i] < hi[i]))
        throw InputError("box has empty interior along axis " + std::to_string(i));
  }

  static Box interval(const Rational& a, const Rational& b) { return Box({a}, {b}); }
  static Box rect(const Rational& x0, const Rational& y0, const Rational& x1,
                  const Rational& y1) {
    return Box({x0, y0}, {x1, y1});
  }

  int dim() const { return static_cast<int>(lo.size()); }

  Rational volume() const {
    Rational v = 1;
    for (std::size_t i = 0; i < lo.size(); ++i) v *= hi[i] - lo[i];
    return v;
  }

  friend bool operator==(const Box&, const Box&) = default;
  friend auto operator<=>(const Box& a, const Box& b) {
    if (auto c = a.lo <=> b.lo; c != 0) return c;
    return a.hi <=> b.hi;
  }
};

namespace detail {

struct Interval {
  Rational lo, hi;
  friend bool operator==(const Interval&, const Interval&) = default;
};
using IntervalList = std::vector<Interval>;

// Sorted, merged, interior-disjoint. Touching intervals merge (a.e. semantics).
inline IntervalList merge_intervals(IntervalList v) {
  std::sort(v.begin(), v.end(), [](const Interval& a, const Interval& b) {
    return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
  });
  IntervalList out;
  for (auto& iv : v) {
    if (!(iv.lo < iv.hi)) continue;
    if (!out.empty() && iv.lo <= out.back().hi) {
      if (out.back().hi < iv.hi) out.back().hi = iv.hi;
    } else {
      out.push_back(std::move(iv));
    }
  }
  return out;
}

// Boolean combination of two merged interval lists.
inline IntervalList combine_intervals(const IntervalList& a, const IntervalList& b,
                                      const std::function<bool(bool, bool)>& op) {
  std::vector<Rational> cuts;
  cuts.reserve(2 * (a.size() + b.size()));
  for (const auto& iv : a) { cuts.push_back(iv.lo); cuts.push_back(iv.hi); }
  for (const auto& iv : b) { cuts.push_back(iv.lo); cuts.push_back(iv.hi); }
  std::sort(cuts.begin(), cuts.end());
  cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());
  IntervalList out;
  std::size_t ia = 0, ib = 0;
  for (std::size_t k = 0; k + 1 < cuts.size(); ++k) {
    const Rational& x0 = cuts[k];
    const Rational& x1 = cuts[k + 1];
    while (ia < a.size() && a[ia].hi <= x0) ++ia;
    while (ib < b.size() && b[ib].hi <= x0) ++ib;
    bool in_a = ia < a.size() && a[ia].lo <= x0 && x1 <= a[ia].hi;
    bool in_b = ib < b.size() && b[ib].lo <= x0 && x1 <= b[ib].hi;
    if (op(in_a, in_b)) {
      if (!out.empty() && out.back().hi == x0)
        out.back().hi = x1;
      else
        out.push_back({x0, x1});
    }
  }
  return out;
}

inline Rational interval_measure(const IntervalList& v) {
  Rational m = 0;
  for (const auto& iv : v) m += iv.hi - iv.lo;
  return m;
}

}  // namespace detail

class BoxSet {
 public:
  BoxSet() = default;
  explicit BoxSet(int dim, std::vector<Box> boxes = {}, bool open = false)
      : dim_(dim), boxes_(std::move(boxes)), open_(open) {
    if (dim_ != 1 && dim_ != 2) throw InputError("BoxSet dimension must be 1 or 2");
    for (const auto& b : boxes_)
      if (b.dim() != dim_) throw InputError("box dimension does not match BoxSet dimension");
  }

  static BoxSet interval(const Rational& a, const Rational& b) {
    return BoxSet(1, {Box::interval(a, b)});
  }

  static BoxSet intervals(std::initializer_list<std::pair<Rational, Rational>> ivs) {
    std::vector<Box> boxes;
    for (const auto& [a, b] : ivs) boxes.push_back(Box::interval(a, b));
    return BoxSet(1, std::move(boxes));
  }

  int dim() const { return dim_; }
  const std::vector<Box>& boxes() const { return boxes_; }
  bool empty() const { return boxes_.empty(); }
  std::size_t size() const { return boxes_.size(); }

  /// Display flag only; all algebra is modulo null sets.
  bool is_open() const { return open_; }
  BoxSet with_open(bool open) const {
    BoxSet out = *this;
    out.open_ = open;
    return out;
  }

  /// Sum of raw box volumes; equals measure() only when interiors are disjoint.
  Rational raw_volume() const {
    Rational v = 0;
    for (const auto& b : boxes_) v += b.volume();
    return v;
  }

  friend bool operator==(const BoxSet& a, const BoxSet& b) {
    return a.dim_ == b.dim_ && a.boxes_ == b.boxes_;
  }

 private:
  int dim_ = 1;
  std::vector<Box> boxes_;
  bool open_ = false;
};

namespace detail {

// Per-slab cross sections of a 2D set: x-breakpoints and the merged y-lists
// on each elementary slab (x_k, x_{k+1}).
struct SlabView {
  std::vector<Rational> xs;
  std::vector<IntervalList> sections;
};

inline SlabView slabs_of(const std::vector<Box>& boxes, std::vector<Rational> xs) {
  SlabView v;
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  v.xs = std::move(xs);
  if (v.xs.size() < 2) return v;
  std::vector<IntervalList> raw(v.xs.size() - 1);
  for (const auto& b : boxes) {
    auto first = std::lower_bound(v.xs.begin(), v.xs.end(), b.lo[0]) - v.xs.begin();
    for (auto k = static_cast<std::size_t>(first); k + 1 < v.xs.size() && v.xs[k + 1] <= b.hi[0];
         ++k)
      raw[k].push_back({b.lo[1], b.hi[1]});
  }
  v.sections.reserve(raw.size());
  for (auto& r : raw) v.sections.push_back(merge_intervals(std::move(r)));
  return v;
}

inline std::vector<Rational> x_cuts(const std::vector<Box>& boxes) {
  std::vector<Rational> xs;
  xs.reserve(2 * boxes.size());
  for (const auto& b : boxes) { xs.push_back(b.lo[0]); xs.push_back(b.hi[0]); }
  return xs;
}

// Rebuilds canonical boxes from slabs, fusing neighbours with equal sections.
inline std::vector<Box> boxes_from_slabs(const SlabView& v) {
  std::vector<std::pair<std::pair<Rational, Rational>, const IntervalList*>> runs;
  for (std::size_t k = 0; k + 1 < v.xs.size(); ++k) {
    const auto& sec = v.sections[k];
    if (!runs.empty() && runs.back().first.second == v.xs[k] && *runs.back().second == sec) {
      runs.back().first.second = v.xs[k + 1];
    } else {
      runs.push_back({{v.xs[k], v.xs[k + 1]}, &sec});
    }
  }
  std::vector<Box> out;
  for (const auto& [span, sec] : runs)
    for (const auto& iv : *sec) out.push_back(Box::rect(span.first, iv.lo, span.second, iv.hi));
  return out;
}

inline IntervalList to_intervals(const BoxSet& s) {
  IntervalList v;
  v.reserve(s.size());
  for (const auto& b : s.boxes()) v.push_back({b.lo[0], b.hi[0]});
  return v;
}

inline BoxSet from_intervals(const IntervalList& v, bool open = false) {
  std::vector<Box> boxes;
  boxes.reserve(v.size());
  for (const auto& iv : v) boxes.push_back(Box::interval(iv.lo, iv.hi));
  return BoxSet(1, std::move(boxes), open);
}

}  // namespace detail

/// Canonical interior-disjoint form; idempotent, preserves the indicator a.e.
inline BoxSet normalize(const BoxSet& s) {
  if (s.dim() == 1)
    return detail::from_intervals(detail::merge_intervals(detail::to_intervals(s)), s.is_open());
  auto view = detail::slabs_of(s.boxes(), detail::x_cuts(s.boxes()));
  return BoxSet(2, detail::boxes_from_slabs(view), s.is_open());
}

inline Rational measure(const BoxSet& s) { return normalize(s).raw_volume(); }

inline void require_same_dim(const BoxSet& a, const BoxSet& b) {
  if (a.dim() != b.dim())
    throw InputError("dimension mismatch: " + std::to_string(a.dim()) + " vs " +
                     std::to_string(b.dim()));
}

/// Boolean combination, evaluated on the common refinement of both sets.
inline BoxSet combine(const BoxSet& a, const BoxSet& b, const std::function<bool(bool, bool)>& op) {
  require_same_dim(a, b);
  if (a.dim() == 1) {
    auto ia = detail::merge_intervals(detail::to_intervals(a));
    auto ib = detail::merge_intervals(detail::to_intervals(b));
    return detail::from_intervals(detail::combine_intervals(ia, ib, op));
  }
  auto xs = detail::x_cuts(a.boxes());
  auto xb = detail::x_cuts(b.boxes());
  xs.insert(xs.end(), xb.begin(), xb.end());
  auto va = detail::slabs_of(a.boxes(), xs);
  auto vb = detail::slabs_of(b.boxes(), xs);
  detail::SlabView out{va.xs, {}};
  out.sections.reserve(va.sections.size());
  for (std::size_t k = 0; k < va.sections.size(); ++k)
    out.sections.push_back(detail::combine_intervals(va.sections[k], vb.sections[k], op));
  return BoxSet(2, detail::boxes_from_slabs(out));
}

inline BoxSet set_union(const BoxSet& a, const BoxSet& b) {
  return combine(a, b, [](bool x, bool y) { return x || y; });
}
inline BoxSet set_intersection(const BoxSet& a, const BoxSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && y; });
}
inline BoxSet set_difference(const BoxSet& a, const BoxSet& b) {
  return combine(a, b, [](bool x, bool y) { return x && !y; });
}
inline BoxSet set_symdiff(const BoxSet& a, const BoxSet& b) {
  return combine(a, b, [](bool x, bool y) { return x != y; });
}

inline BoxSet translate(const BoxSet& s, const Point& t) {
  if (static_cast<int>(t.size()) != s.dim()) throw InputError("translation dimension mismatch");
  std::vector<Box> out;
  out.reserve(s.size());
  for (const auto& b : s.boxes()) {
    Box c = b;
    for (int i = 0; i < s.dim(); ++i) { c.lo[i] += t[i]; c.hi[i] += t[i]; }
    out.push_back(std::move(c));
  }
  return BoxSet(s.dim(), std::move(out), s.is_open());
}

/// Image under x -> factor * x, factor > 0.
inline BoxSet scale(const BoxSet& s, const Rational& factor) {
  if (!(factor > 0)) throw InputError("scale factor must be positive");
  std::vector<Box> out;
  out.reserve(s.size());
  for (const auto& b : s.boxes()) {
    Box c = b;
    for (int i = 0; i < s.dim(); ++i) { c.lo[i] *= factor; c.hi[i] *= factor; }
    out.push_back(std::move(c));
  }
  return BoxSet(s.dim(), std::move(out), s.is_open());
}

/// -S, renormalized.
inline BoxSet reflect(const BoxSet& s) {
  std::vector<Box> out;
  out.reserve(s.size());
  for (const auto& b : s.boxes()) {
    Point lo(b.lo.size()), hi(b.hi.size());
    for (std::size_t i = 0; i < lo.size(); ++i) { lo[i] = -b.hi[i]; hi[i] = -b.lo[i]; }
    out.emplace_back(std::move(lo), std::move(hi));
  }
  return normalize(BoxSet(s.dim(), std::move(out), s.is_open()));
}

/// Volume of a ∩ b in `vol`; false when the interiors are disjoint.
inline bool box_overlap(const Box& a, const Box& b, Rational& vol) {
  vol = 1;
  for (std::size_t i = 0; i < a.lo.size(); ++i) {
    const Rational& lo = a.lo[i] < b.lo[i] ? b.lo[i] : a.lo[i];
    const Rational& hi = a.hi[i] < b.hi[i] ? a.hi[i] : b.hi[i];
    if (!(lo < hi)) { vol = 0; return false; }
    vol *= hi - lo;
  }
  return true;
}

/// Rational text such as "(-1,1)" or "(-2,2)x(-3,3) U ...".
inline std::string display(const BoxSet& s) {
  if (s.empty()) return "{}";
  const char* open = s.is_open() ? "(" : "[";
  const char* close = s.is_open() ? ")" : "]";
  std::ostringstream os;
  bool first = true;
  for (const auto& b : s.boxes()) {
    if (!first) os << " U ";
    first = false;
    for (int i = 0; i < b.dim(); ++i) {
      if (i) os << "x";
      os << open << to_string(b.lo[i]) << "," << to_string(b.hi[i]) << close;
    }
  }
  return os.str();
}

inline std::ostream& operator<<(std::ostream& os, const BoxSet& s) { return os << display(s); }

}  // namespace tilingobs
