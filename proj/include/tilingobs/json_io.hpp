#pragma once

// JSON schemas. Rationals always travel as "p/q" strings.

#include "tilingobs/cantor.hpp"
#include "tilingobs/convex.hpp"
#include "tilingobs/fourier.hpp"
#include "tilingobs/weaktile.hpp"

#include <json.hpp>

#include <variant>

namespace tilingobs::io {

using json = nlohmann::ordered_json;

inline Rational rational_from(const json& j) {
  if (j.is_string()) return parse_rational(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw InputError("expected a rational string \"p/q\", got " + j.dump());
}

inline json to_json(const Rational& r) { return to_string(r); }

inline Point point_from(const json& j) {
  if (!j.is_array()) throw InputError("expected an array of rationals, got " + j.dump());
  Point p;
  for (const auto& x : j) p.push_back(rational_from(x));
  return p;
}

inline json to_json(const Point& p) {
  json a = json::array();
  for (const auto& x : p) a.push_back(to_json(x));
  return a;
}

inline json to_json(const Box& b) { return json{{"lo", to_json(b.lo)}, {"hi", to_json(b.hi)}}; }

inline Box box_from(const json& j) { return Box(point_from(j.at("lo")), point_from(j.at("hi"))); }

// {"dim": 1|2, "boxes": [{"lo": [...], "hi": [...]}]}
inline json to_json(const BoxSet& s) {
  json boxes = json::array();
  for (const auto& b : s.boxes()) boxes.push_back(to_json(b));
  json out{{"dim", s.dim()}, {"boxes", boxes}};
  if (s.is_open()) out["open"] = true;
  return out;
}

inline BoxSet boxset_from(const json& j) {
  try {
    int dim = j.at("dim").get<int>();
    std::vector<Box> boxes;
    for (const auto& b : j.at("boxes")) boxes.push_back(box_from(b));
    return BoxSet(dim, std::move(boxes), j.value("open", false));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed set JSON: ") + e.what());
  }
}

// {"prefix": ["1/3"], "tail": {"c": "1/8", "q": "1/2"}}; tail may be null or absent
inline json to_json(const RatioSequence& xi) {
  json prefix = json::array();
  for (const auto& x : xi.prefix()) prefix.push_back(to_json(x));
  json out{{"prefix", prefix}};
  if (xi.tail())
    out["tail"] = json{{"c", to_json(xi.tail()->c)}, {"q", to_json(xi.tail()->q)}};
  else
    out["tail"] = nullptr;
  return out;
}

inline RatioSequence ratio_sequence_from(const json& j) {
  try {
    std::vector<Rational> prefix;
    for (const auto& x : j.value("prefix", json::array())) prefix.push_back(rational_from(x));
    std::optional<GeometricTail> tail;
    if (j.contains("tail") && !j.at("tail").is_null())
      tail = GeometricTail{rational_from(j.at("tail").at("c")), rational_from(j.at("tail").at("q"))};
    return RatioSequence(std::move(prefix), tail);
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed ratio sequence JSON: ") + e.what());
  }
}

// {"dim": 1|2, "atoms": [{"p": ["3/2"], "w": "1/2"}]}
inline json to_json(const AtomicMeasure& nu) {
  json atoms = json::array();
  for (const auto& a : nu.atoms()) atoms.push_back(json{{"p", to_json(a.p)}, {"w", to_json(a.w)}});
  return json{{"dim", nu.dim()}, {"atoms", atoms}};
}

inline AtomicMeasure measure_from(const json& j) {
  try {
    std::vector<Atom> atoms;
    for (const auto& a : j.at("atoms")) atoms.push_back({point_from(a.at("p")), rational_from(a.at("w"))});
    return AtomicMeasure(j.at("dim").get<int>(), std::move(atoms));
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed measure JSON: ") + e.what());
  }
}

using Polytope = std::variant<ConvexPolygon, ConvexPolytope3>;

inline json vertex_json(const Vec2& v) { return json::array({to_json(v.x), to_json(v.y)}); }
inline json vertex_json(const Vec3& v) { return json::array({to_json(v.x), to_json(v.y), to_json(v.z)}); }

inline json to_json(const ConvexPolygon& p) {
  json verts = json::array();
  for (const auto& v : p.vertices()) verts.push_back(vertex_json(v));
  return json{{"dim", 2}, {"vertices", verts}};
}

inline json to_json(const ConvexPolytope3& p) {
  json verts = json::array(), fs = json::array();
  for (const auto& v : p.vertices()) verts.push_back(vertex_json(v));
  for (const auto& f : p.facet_list()) fs.push_back(f.cycle);
  return json{{"dim", 3}, {"vertices", verts}, {"facets", fs}};
}

// {"dim": 2|3, "vertices": [["0","0"], ...], "facets": [[0,1,2,3], ...]}
// 2D vertices may come in any order (their hull must be all of them); 3D
// facets are optional and computed from the hull when absent.
inline Polytope polytope_from(const json& j) {
  try {
    const int dim = j.at("dim").get<int>();
    if (dim == 2) {
      std::vector<Vec2> pts;
      for (const auto& v : j.at("vertices")) {
        auto p = point_from(v);
        if (p.size() != 2) throw InputError("2D vertex with wrong arity");
        pts.push_back({p[0], p[1]});
      }
      auto hull = convex_hull_2d(pts);
      if (hull.size() != pts.size())
        throw InputError("2D vertices are not in strictly convex position");
      return ConvexPolygon(hull);
    }
    if (dim == 3) {
      std::vector<Vec3> pts;
      for (const auto& v : j.at("vertices")) {
        auto p = point_from(v);
        if (p.size() != 3) throw InputError("3D vertex with wrong arity");
        pts.push_back({p[0], p[1], p[2]});
      }
      for (std::size_t a = 0; a < pts.size(); ++a)
        for (std::size_t b = a + 1; b < pts.size(); ++b)
          if (pts[a] == pts[b]) throw InputError("duplicate 3D vertex at index " + std::to_string(b));
      if (!j.contains("facets")) return hull_3d(pts);
      std::vector<std::vector<std::size_t>> fs;
      for (const auto& f : j.at("facets")) fs.push_back(f.get<std::vector<std::size_t>>());
      return ConvexPolytope3(std::move(pts), std::move(fs));
    }
    throw InputError("polytope dim must be 2 or 3");
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed polytope JSON: ") + e.what());
  }
}

inline json to_json(const std::vector<FarkasEntry>& cert) {
  json out = json::array();
  for (const auto& e : cert) out.push_back(json{{"cell", to_json(e.cell)}, {"y", to_json(e.y)}});
  return out;
}

inline std::vector<FarkasEntry> farkas_from(const json& j) {
  try {
    const json& arr = j.is_object() ? j.at("farkas") : j;
    std::vector<FarkasEntry> out;
    for (const auto& e : arr) out.push_back({box_from(e.at("cell")), rational_from(e.at("y"))});
    return out;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed certificate JSON: ") + e.what());
  }
}

inline json to_json(const LpOutcome& o) {
  json out{{"status", to_string(o.status)}, {"rows", o.rows}, {"columns", o.columns}, {"pivots", o.pivots}};
  if (o.status == LpStatus::Feasible)
    out["measure"] = to_json(o.measure);
  else
    out["farkas"] = to_json(o.farkas);
  return out;
}

// {"delta": 1.0, "tau": [0.0], "v": ["1"], "eps": "1/4", "R": 2, "N": 4, "w": "1/16"}
inline WitnessParams witness_params_from(const json& j) {
  try {
    WitnessParams p;
    p.delta = j.at("delta").get<double>();
    p.tau = j.at("tau").get<std::vector<double>>();
    p.v = point_from(j.at("v"));
    p.eps = rational_from(j.at("eps"));
    p.R = j.at("R").get<long>();
    p.N = j.value("N", 1L);
    p.w = rational_from(j.at("w"));
    return p;
  } catch (const json::exception& e) {
    throw InputError(std::string("malformed witness parameters: ") + e.what());
  }
}

inline json to_json(const WitnessParams& p) {
  return json{{"delta", p.delta}, {"tau", p.tau}, {"v", to_json(p.v)}, {"eps", to_json(p.eps)},
              {"R", p.R},         {"N", p.N},     {"w", to_json(p.w)}};
}

}  // namespace tilingobs::io
