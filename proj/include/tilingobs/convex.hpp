#pragma once

// Exact convex polygons and polytopes: central symmetry, facets, belts, the
// Venkov-McMullen tiling conditions, Minkowski sums and difference bodies.

#include "tilingobs/rational.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

namespace tilingobs {

struct Vec2 {
  Rational x, y;
  friend Vec2 operator+(const Vec2& a, const Vec2& b) { return {a.x + b.x, a.y + b.y}; }
  friend Vec2 operator-(const Vec2& a, const Vec2& b) { return {a.x - b.x, a.y - b.y}; }
  friend Vec2 operator*(const Rational& s, const Vec2& a) { return {s * a.x, s * a.y}; }
  friend bool operator==(const Vec2&, const Vec2&) = default;
  friend bool operator<(const Vec2& a, const Vec2& b) {
    return a.x < b.x || (a.x == b.x && a.y < b.y);
  }
};

inline Rational cross(const Vec2& a, const Vec2& b) { return a.x * b.y - a.y * b.x; }

struct Vec3 {
  Rational x, y, z;
  friend Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
  friend Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
  friend Vec3 operator*(const Rational& s, const Vec3& a) { return {s * a.x, s * a.y, s * a.z}; }
  friend bool operator==(const Vec3&, const Vec3&) = default;
  friend bool operator<(const Vec3& a, const Vec3& b) {
    if (a.x != b.x) return a.x < b.x;
    if (a.y != b.y) return a.y < b.y;
    return a.z < b.z;
  }
  const Rational& operator[](int i) const { return i == 0 ? x : (i == 1 ? y : z); }
};

inline Rational dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
  return {a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
}
inline bool is_zero(const Vec3& v) { return v.x == 0 && v.y == 0 && v.z == 0; }

/// Convex hull of a point cloud, counterclockwise, collinear points dropped
/// (Andrew's monotone chain).
inline std::vector<Vec2> convex_hull_2d(std::vector<Vec2> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;
  std::vector<Vec2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    const auto& p = pts[i];
    while (k >= lower && cross(hull[k - 1] - hull[k - 2], p - hull[k - 2]) <= 0) --k;
    hull[k++] = p;
  }
  hull.resize(k - 1);
  return hull;
}

/// Strictly convex polygon, counterclockwise.
class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  explicit ConvexPolygon(std::vector<Vec2> vertices) : v_(std::move(vertices)) {
    if (v_.size() < 3) throw InputError("a convex polygon needs at least 3 vertices");
    const std::size_t n = v_.size();
    for (std::size_t i = 0; i < n; ++i) {
      const auto& a = v_[i];
      const auto& b = v_[(i + 1) % n];
      const auto& c = v_[(i + 2) % n];
      if (!(cross(b - a, c - b) > 0))
        throw InputError("polygon is not strictly convex and counterclockwise at vertex " +
                         std::to_string((i + 1) % n));
    }
  }

  static ConvexPolygon hull_of(std::vector<Vec2> pts) {
    return ConvexPolygon(convex_hull_2d(std::move(pts)));
  }

  const std::vector<Vec2>& vertices() const { return v_; }
  std::size_t size() const { return v_.size(); }

  Rational area() const {
    Rational twice = 0;
    for (std::size_t i = 0; i < v_.size(); ++i) twice += cross(v_[i], v_[(i + 1) % v_.size()]);
    return twice / 2;
  }

 private:
  std::vector<Vec2> v_;
};

/// Vertex-pairing test: v_i + v_{i+n/2} is the same point for every i.
inline std::optional<Vec2> symmetry_center(const std::vector<Vec2>& v) {
  const std::size_t n = v.size();
  if (n % 2 != 0) return std::nullopt;
  const Vec2 twice = v[0] + v[n / 2];
  for (std::size_t i = 1; i < n / 2; ++i)
    if (!(v[i] + v[i + n / 2] == twice)) return std::nullopt;
  return Rational(1, 2) * twice;
}

inline std::optional<Vec2> is_centrally_symmetric(const ConvexPolygon& p) {
  return symmetry_center(p.vertices());
}

namespace detail {

inline std::vector<Vec2> rotate_to_lowest(std::vector<Vec2> v) {
  auto it = std::min_element(v.begin(), v.end(), [](const Vec2& a, const Vec2& b) {
    return a.y < b.y || (a.y == b.y && a.x < b.x);
  });
  std::rotate(v.begin(), it, v.end());
  return v;
}

inline std::vector<Vec2> drop_collinear(const std::vector<Vec2>& v) {
  if (v.size() < 3) return v;
  std::vector<Vec2> out;
  const std::size_t n = v.size();
  for (std::size_t i = 0; i < n; ++i) {
    const auto& prev = v[(i + n - 1) % n];
    const auto& next = v[(i + 1) % n];
    if (cross(v[i] - prev, next - v[i]) != 0) out.push_back(v[i]);
  }
  return out;
}

}  // namespace detail

/// Minkowski sum of two convex CCW vertex chains (a single point or segment
/// is allowed) by merging edge vectors in angular order.
inline std::vector<Vec2> minkowski_sum_vertices(const std::vector<Vec2>& p_in,
                                                const std::vector<Vec2>& q_in) {
  if (p_in.empty() || q_in.empty()) throw InputError("Minkowski sum of an empty polygon");
  auto p = detail::rotate_to_lowest(p_in);
  auto q = detail::rotate_to_lowest(q_in);
  const std::size_t n = p.size(), m = q.size();
  p.push_back(p[0]);
  p.push_back(p[1 % n]);
  q.push_back(q[0]);
  q.push_back(q[1 % m]);
  std::vector<Vec2> out;
  std::size_t i = 0, j = 0;
  while (i < n || j < m) {
    out.push_back(p[i] + q[j]);
    Rational c = cross(p[i + 1] - p[i], q[j + 1] - q[j]);
    if (c >= 0 && i < n) ++i;
    if (c <= 0 && j < m) ++j;
  }
  return detail::drop_collinear(out);
}

inline ConvexPolygon minkowski_sum_2d(const ConvexPolygon& p, const ConvexPolygon& q) {
  return ConvexPolygon(minkowski_sum_vertices(p.vertices(), q.vertices()));
}

inline ConvexPolygon negate(const ConvexPolygon& p) {
  std::vector<Vec2> v;
  v.reserve(p.size());
  for (const auto& x : p.vertices()) v.push_back({-x.x, -x.y});
  return ConvexPolygon(v);  // point reflection keeps orientation
}

inline ConvexPolygon scale(const ConvexPolygon& p, const Rational& s) {
  if (!(s > 0)) throw InputError("scale factor must be positive");
  std::vector<Vec2> v;
  v.reserve(p.size());
  for (const auto& x : p.vertices()) v.push_back(s * x);
  return ConvexPolygon(v);
}

inline ConvexPolygon translate(const ConvexPolygon& p, const Vec2& t) {
  std::vector<Vec2> v;
  v.reserve(p.size());
  for (const auto& x : p.vertices()) v.push_back(x + t);
  return ConvexPolygon(v);
}

/// ½(P ⊕ (−P)), centred at the origin.
inline ConvexPolygon difference_body_2d(const ConvexPolygon& p) {
  return scale(minkowski_sum_2d(p, negate(p)), Rational(1, 2));
}

/// Δ(P) = 2·int(P) for a centrally symmetric P recentred at the origin.
inline ConvexPolygon delta_of_symmetric_convex_2d(const ConvexPolygon& p) {
  auto c = is_centrally_symmetric(p);
  if (!c) throw InputError("polygon is not centrally symmetric");
  return scale(translate(p, {-c->x, -c->y}), Rational(2));
}

// ---------------------------------------------------------------------------
// 3D

struct Facet {
  std::vector<std::size_t> cycle;  // vertex indices, CCW seen from outside
  Vec3 normal;                     // outward, not normalized
  Rational offset;                 // normal · x = offset on the facet
  int dropped_axis = 2;            // coordinate removed for the 2D embedding
  ConvexPolygon polygon;           // 2D coordinates of the facet
};

namespace detail {

inline Vec2 project(const Vec3& p, int drop) {
  // keep the remaining axes in cyclic order so orientation is preserved
  return {p[(drop + 1) % 3], p[(drop + 2) % 3]};
}

inline int dominant_axis(const Vec3& n) {
  Rational ax = rabs(n.x), ay = rabs(n.y), az = rabs(n.z);
  if (ax >= ay && ax >= az) return 0;
  if (ay >= az) return 1;
  return 2;
}

// Orders coplanar points around the outward normal and drops non-extreme ones.
inline std::vector<std::size_t> order_facet(const std::vector<Vec3>& pts,
                                            const std::vector<std::size_t>& idx, const Vec3& normal) {
  const int drop = dominant_axis(normal);
  std::vector<Vec2> proj;
  std::map<std::pair<Rational, Rational>, std::size_t> back;
  for (auto i : idx) {
    Vec2 q = project(pts[i], drop);
    proj.push_back(q);
    back[{q.x, q.y}] = i;
  }
  auto hull = convex_hull_2d(proj);
  if (normal[drop] < 0) std::reverse(hull.begin(), hull.end());
  std::vector<std::size_t> out;
  out.reserve(hull.size());
  for (const auto& h : hull) out.push_back(back.at({h.x, h.y}));
  return out;
}

}  // namespace detail

class ConvexPolytope3 {
 public:
  ConvexPolytope3() = default;
  /// Validates planarity, outward orientation, convexity and closedness.
  ConvexPolytope3(std::vector<Vec3> vertices, std::vector<std::vector<std::size_t>> facets)
      : v_(std::move(vertices)) {
    if (v_.size() < 4) throw InputError("a 3D polytope needs at least 4 vertices");
    if (facets.size() < 4) throw InputError("a 3D polytope needs at least 4 facets");
    std::vector<int> used(v_.size(), 0);
    for (std::size_t f = 0; f < facets.size(); ++f) {
      const auto& cyc = facets[f];
      if (cyc.size() < 3) throw InputError("facet " + std::to_string(f) + " has fewer than 3 vertices");
      for (auto i : cyc) {
        if (i >= v_.size()) throw InputError("facet " + std::to_string(f) + " references a missing vertex");
        used[i] = 1;
      }
      Vec3 n{0, 0, 0};
      for (std::size_t k = 0; k < cyc.size(); ++k) n = n + cross(v_[cyc[k]], v_[cyc[(k + 1) % cyc.size()]]);
      if (is_zero(n)) throw InputError("facet " + std::to_string(f) + " is degenerate");
      const Rational off = dot(n, v_[cyc[0]]);
      for (auto i : cyc)
        if (dot(n, v_[i]) != off) throw InputError("facet " + std::to_string(f) + " is not planar");
      bool below = true, above = true;
      for (const auto& p : v_) {
        Rational s = dot(n, p) - off;
        if (s > 0) below = false;
        if (s < 0) above = false;
      }
      if (!below && !above) throw InputError("facet " + std::to_string(f) + " is not a supporting plane");
      if (!below) {  // listed clockwise from outside
        n = Rational(-1) * n;
      }
      Facet facet;
      facet.normal = n;
      facet.offset = dot(n, v_[cyc[0]]);
      facet.cycle = detail::order_facet(v_, cyc, n);
      facet.dropped_axis = detail::dominant_axis(n);
      std::vector<Vec2> poly;
      for (auto i : facet.cycle) poly.push_back(detail::project(v_[i], facet.dropped_axis));
      if (n[facet.dropped_axis] < 0) {
        // the projection flips orientation for these facets; the polygon is
        // stored counterclockwise in its own chart
        std::reverse(poly.begin(), poly.end());
      }
      facet.polygon = ConvexPolygon(poly);
      facets_.push_back(std::move(facet));
    }
    for (std::size_t i = 0; i < used.size(); ++i)
      if (!used[i]) throw InputError("vertex " + std::to_string(i) + " lies on no facet");
    std::map<std::pair<std::size_t, std::size_t>, int> edge_use;
    for (const auto& f : facets_)
      for (std::size_t k = 0; k < f.cycle.size(); ++k) {
        auto a = f.cycle[k], b = f.cycle[(k + 1) % f.cycle.size()];
        edge_use[{std::min(a, b), std::max(a, b)}]++;
      }
    for (const auto& [e, count] : edge_use)
      if (count != 2)
        throw InputError("edge (" + std::to_string(e.first) + "," + std::to_string(e.second) +
                         ") is shared by " + std::to_string(count) + " facets");
  }

  const std::vector<Vec3>& vertices() const { return v_; }
  const std::vector<Facet>& facet_list() const { return facets_; }

 private:
  std::vector<Vec3> v_;
  std::vector<Facet> facets_;
};

/// Builds the polytope spanned by a point set (brute-force supporting planes;
/// desk-scale inputs only).
inline ConvexPolytope3 hull_3d(std::vector<Vec3> pts) {
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  const std::size_t n = pts.size();
  std::set<std::vector<std::size_t>> seen;
  std::vector<std::pair<std::vector<std::size_t>, Vec3>> planes;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j)
      for (std::size_t k = j + 1; k < n; ++k) {
        Vec3 nrm = cross(pts[j] - pts[i], pts[k] - pts[i]);
        if (is_zero(nrm)) continue;
        bool pos = false, neg = false;
        std::vector<std::size_t> on;
        for (std::size_t m = 0; m < n; ++m) {
          int s = sgn(dot(nrm, pts[m] - pts[i]));
          if (s > 0) pos = true;
          if (s < 0) neg = true;
          if (s == 0) on.push_back(m);
          if (pos && neg) break;
        }
        if (pos && neg) continue;
        if (!neg && !pos) throw InputError("points are coplanar");
        if (pos) nrm = Rational(-1) * nrm;
        if (seen.insert(on).second) planes.emplace_back(on, nrm);
      }
  std::vector<std::vector<std::size_t>> facets;
  std::vector<int> keep(n, 0);
  for (const auto& [on, nrm] : planes) {
    auto cyc = detail::order_facet(pts, on, nrm);
    for (auto i : cyc) keep[i] = 1;
    facets.push_back(std::move(cyc));
  }
  std::vector<std::size_t> remap(n, 0);
  std::vector<Vec3> verts;
  for (std::size_t i = 0; i < n; ++i)
    if (keep[i]) {
      remap[i] = verts.size();
      verts.push_back(pts[i]);
    }
  for (auto& f : facets)
    for (auto& i : f) i = remap[i];
  return ConvexPolytope3(std::move(verts), std::move(facets));
}

inline std::vector<Facet> facets(const ConvexPolytope3& p) { return p.facet_list(); }

/// Centre c with 2c − V = V, found by matching the vertex multiset.
inline std::optional<Vec3> is_centrally_symmetric(const ConvexPolytope3& p) {
  const auto& v = p.vertices();
  Vec3 sum{0, 0, 0};
  for (const auto& x : v) sum = sum + x;
  Vec3 c = Rational(1, static_cast<long>(v.size())) * sum;
  c.x.canonicalize();
  c.y.canonicalize();
  c.z.canonicalize();
  std::vector<Vec3> a = v, b;
  b.reserve(v.size());
  for (const auto& x : v) b.push_back(Rational(2) * c - x);
  std::sort(a.begin(), a.end());
  std::sort(b.begin(), b.end());
  if (a != b) return std::nullopt;
  return c;
}

/// Primitive integer direction of an edge, sign fixed so the first nonzero
/// component is positive.
using EdgeClass = std::array<Integer, 3>;

inline EdgeClass edge_class(const Vec3& d) {
  Integer l = 1;
  for (int i = 0; i < 3; ++i) l = lcm(l, Integer(d[i].get_den()));
  std::array<Integer, 3> v;
  for (int i = 0; i < 3; ++i) v[i] = Integer(d[i] * Rational(l));
  Integer g = 0;
  for (const auto& x : v) g = gcd(g, Integer(abs(x)));
  if (g == 0) throw InvariantError("zero-length edge");
  for (auto& x : v) x /= g;
  for (const auto& x : v) {
    if (x == 0) continue;
    if (x < 0)
      for (auto& y : v) y = -y;
    break;
  }
  return {v[0], v[1], v[2]};
}

struct Belt {
  EdgeClass direction;
  std::vector<std::size_t> facets;  // facet indices containing an edge of this class
  std::size_t count() const { return facets.size(); }
};

enum class FailedCondition { None, NotCentrallySymmetric, FacetNotSymmetric, BadBelt };

inline std::string to_string(FailedCondition f) {
  switch (f) {
    case FailedCondition::None: return "none";
    case FailedCondition::NotCentrallySymmetric: return "NotCentrallySymmetric";
    case FailedCondition::FacetNotSymmetric: return "FacetNotSymmetric";
    case FailedCondition::BadBelt: return "BadBelt";
  }
  return "none";
}

/// Belts of a centrally symmetric polytope with centrally symmetric facets,
/// ordered by edge direction.
inline std::vector<Belt> belts(const ConvexPolytope3& p) {
  if (!is_centrally_symmetric(p)) throw InputError("belts need a centrally symmetric polytope");
  const auto& fs = p.facet_list();
  for (std::size_t f = 0; f < fs.size(); ++f)
    if (!is_centrally_symmetric(fs[f].polygon))
      throw InputError("belts need centrally symmetric facets; facet " + std::to_string(f) + " is not");
  std::map<EdgeClass, std::set<std::size_t>> classes;
  const auto& v = p.vertices();
  for (std::size_t f = 0; f < fs.size(); ++f) {
    const auto& cyc = fs[f].cycle;
    for (std::size_t k = 0; k < cyc.size(); ++k)
      classes[edge_class(v[cyc[(k + 1) % cyc.size()]] - v[cyc[k]])].insert(f);
  }
  std::vector<Belt> out;
  for (const auto& [dir, members] : classes) out.push_back({dir, {members.begin(), members.end()}});
  return out;
}

struct TilingDecision {
  bool tiles = false;
  FailedCondition failed = FailedCondition::None;
  long belt_id = -1;     // index into belts() for BadBelt
  std::size_t belt_count = 0;
  std::optional<std::size_t> facet;  // offending facet for FacetNotSymmetric
};

/// A convex polygon tiles by translations iff it is a centrally symmetric
/// quadrilateral or hexagon. A symmetric polygon with more sides is reported
/// as BadBelt: the extrusion belt of the prism P × [0,1] has that many facets.
inline TilingDecision venkov_mcmullen(const ConvexPolygon& p) {
  TilingDecision d;
  if (!is_centrally_symmetric(p)) {
    d.failed = FailedCondition::NotCentrallySymmetric;
    return d;
  }
  if (p.size() != 4 && p.size() != 6) {
    d.failed = FailedCondition::BadBelt;
    d.belt_id = 0;
    d.belt_count = p.size();
    return d;
  }
  d.tiles = true;
  return d;
}

inline TilingDecision venkov_mcmullen(const ConvexPolytope3& p) {
  TilingDecision d;
  if (!is_centrally_symmetric(p)) {
    d.failed = FailedCondition::NotCentrallySymmetric;
    return d;
  }
  const auto& fs = p.facet_list();
  for (std::size_t f = 0; f < fs.size(); ++f)
    if (!is_centrally_symmetric(fs[f].polygon)) {
      d.failed = FailedCondition::FacetNotSymmetric;
      d.facet = f;
      return d;
    }
  auto bs = belts(p);
  for (std::size_t b = 0; b < bs.size(); ++b)
    if (bs[b].count() != 4 && bs[b].count() != 6) {
      d.failed = FailedCondition::BadBelt;
      d.belt_id = static_cast<long>(b);
      d.belt_count = bs[b].count();
      return d;
    }
  d.tiles = true;
  return d;
}

}  // namespace tilingobs
