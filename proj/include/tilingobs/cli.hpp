#pragma once

// Command-line front end. Every subcommand prints one deterministic JSON
// report (or CSV with --emit-csv). Exit codes: 0 computed verdict, 2 invalid
// input, 3 internal invariant violation.

#include "tilingobs/json_io.hpp"

#include <CLI11.hpp>

#include <cstdint>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace tilingobs::cli {

using io::json;

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 2;
inline constexpr int kExitInvariant = 3;

namespace detail {

class Digest {
 public:
  void add(std::string_view bytes) {
    for (unsigned char c : bytes) {
      h_ ^= c;
      h_ *= 1099511628211ULL;
    }
    h_ ^= 0xff;  // field separator
    h_ *= 1099511628211ULL;
  }
  std::string hex() const {
    std::ostringstream os;
    os << "fnv1a64:" << std::hex << std::setw(16) << std::setfill('0') << h_;
    return os.str();
  }

 private:
  std::uint64_t h_ = 14695981039346656037ULL;
};

inline std::string read_file(const std::string& path, Digest& digest) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  digest.add(ss.str());
  return ss.str();
}

inline json read_json(const std::string& path, Digest& digest) {
  std::string text = read_file(path, digest);
  try {
    return json::parse(text);
  } catch (const json::exception& e) {
    throw InputError("'" + path + "' is not valid JSON: " + e.what());
  }
}

inline Box window_from(const std::vector<std::string>& values, int dim) {
  if (values.size() != static_cast<std::size_t>(2 * dim))
    throw InputError("--window expects " + std::to_string(2 * dim) + " values (lo hi per axis)");
  auto r = parse_rationals(values);
  if (dim == 1) return Box::interval(r[0], r[1]);
  return Box::rect(r[0], r[2], r[1], r[3]);
}

inline json report(const std::string& command, const Digest& digest) {
  return json{{"command", command}, {"inputs_digest", digest.hex()}};
}

inline json verdict_json(const Verdict& v) {
  return json{{"verdict", to_string(v.tag)},
              {"citation", v.citation},
              {"is_packing_region", v.packing_region},
              {"measure_A", to_string(v.measure_a)},
              {"measure_D", to_string(v.measure_region)},
              {"packing_region", io::to_json(v.witness)}};
}

inline json decision_json(const TilingDecision& d) {
  json out{{"tiles", d.tiles}, {"failed_condition", to_string(d.failed)}};
  if (d.failed == FailedCondition::BadBelt) {
    out["belt_id"] = d.belt_id;
    out["belt_facets"] = d.belt_count;
  }
  if (d.facet) out["facet"] = *d.facet;
  return out;
}

inline json vec2_json(const Vec2& v) { return io::vertex_json(v); }

}  // namespace detail

/// Runs one command line; output goes to `out`, diagnostics to `err`.
inline int cli_dispatch(const std::vector<std::string>& argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"tilingobs: exact obstructions to tiling and spectrality"};
  app.require_subcommand(1);
  app.set_help_flag("--help", "print this help and exit");
  detail::Digest digest;
  for (std::size_t i = 1; i < argv.size(); ++i) digest.add(argv[i]);
  json rep;
  std::string csv;
  bool emit_csv = false;

  std::string set_path, region_path, seq_path, poly_path, measure_path, farkas_path, cert_out;
  std::string nu1_path, nu2_path, params_path, h_text = "1", ma_text = "1", shrink_text = "1/2", tol_text = "1/1000000";
  std::vector<std::string> window, t_values;
  std::vector<long> m_values;
  std::size_t n_stage = 1, levels = 1, stages = 3, samples = 200, beyond = 2;
  long n_max_order = 1L << 20;
  double ft_tol = 1e-3;
  bool orthogonal = false;

  auto* delta = app.add_subcommand("delta", "essential difference set of a box union");
  delta->add_option("--set", set_path, "set JSON")->required();

  auto* packing = app.add_subcommand("packing-check", "packing-region obstruction verdict");
  packing->add_option("--set", set_path, "set A")->required();
  packing->add_option("--region", region_path, "candidate packing region D")->required();
  packing->add_flag("--orthogonal", orthogonal, "also run the sampled orthogonal-packing check");
  packing->add_option("--samples", samples, "samples per axis for --orthogonal");
  packing->add_option("--tol", ft_tol, "zero tolerance for --orthogonal");

  auto* cdelta = app.add_subcommand("cantor-delta", "exact essential difference set of a Cantor set");
  cdelta->add_option("--seq", seq_path, "ratio sequence JSON")->required();
  cdelta->add_option("--beyond", beyond, "stage offset of the finite surrogate for E");

  auto* cbounds = app.add_subcommand("cantor-bounds", "measure enclosure and overlap bounds");
  cbounds->add_option("--seq", seq_path, "ratio sequence JSON")->required();
  cbounds->add_option("--n", n_stage, "report stages 1..n");
  cbounds->add_option("--t", t_values, "translations for the crucial inequality");
  cbounds->add_option("--tol", tol_text, "width of the measure enclosure");

  auto* pcheck = app.add_subcommand("polytope-check", "symmetry, facets, belts and tiling decision");
  pcheck->add_option("--poly", poly_path, "polytope JSON")->required();

  auto* dbody = app.add_subcommand("diff-body", "difference body of a convex polygon");
  dbody->add_option("--poly", poly_path, "polygon JSON")->required();

  auto* wverify = app.add_subcommand("weaktile-verify", "verify a weak tiling or replay a certificate");
  wverify->add_option("--set", set_path, "set A")->required();
  wverify->add_option("--window", window, "window lo hi per axis")->required();
  wverify->add_option("--h", h_text, "grid step");
  auto* measure_opt = wverify->add_option("--measure", measure_path, "atomic measure JSON");
  auto* farkas_opt = wverify->add_option("--farkas", farkas_path, "certificate JSON");
  measure_opt->excludes(farkas_opt);

  auto* wlp = app.add_subcommand("weaktile-lp", "grid LP for weak tilings of the complement");
  wlp->add_option("--set", set_path, "set A")->required();
  wlp->add_option("--window", window, "window lo hi per axis")->required();
  wlp->add_option("--h", h_text, "grid step");
  wlp->add_option("--cert-out", cert_out, "write the outcome (with certificate) here");

  auto* pcompose = app.add_subcommand("product-compose", "nu1 x d0 + d0 x nu2 + nu1 x nu2");
  pcompose->add_option("--nu1", nu1_path, "first measure")->required();
  pcompose->add_option("--nu2", nu2_path, "second measure")->required();
  pcompose->add_option("--set", set_path, "product set to verify against (optional)");
  pcompose->add_option("--window", window, "verification window");
  pcompose->add_option("--h", h_text, "grid step");

  auto* fwitness = app.add_subcommand("fejer-witness", "witness functions g_N and the doubling sweep");
  fwitness->add_option("--params", params_path, "witness parameter JSON")->required();
  fwitness->add_option("--mA", ma_text, "m(A)");
  fwitness->add_option("--max-order", n_max_order, "largest N in the sweep");
  fwitness->add_flag("--emit-csv", emit_csv, "CSV rows N,integral,scaled_origin");

  auto* ftiler = app.add_subcommand("fatcantor-tiler", "finite-stage fat-Cantor Z-tiler");
  ftiler->add_option("--levels", levels, "levels")->required();
  ftiler->add_option("--shrink", shrink_text, "residual factor per level");
  ftiler->add_option("--stages", stages, "Cantor stages per piece");
  ftiler->add_option("--window", window, "window for the lattice cover check");

  auto* c2d = app.add_subcommand("cantor2d", "planar Cantor stage");
  c2d->add_option("--M", m_values, "subdivision factors M_1..M_n")->required();
  c2d->add_option("--n", n_stage, "stage")->required();

  for (auto* sub : app.get_subcommands({})) sub->set_help_flag("--help", "print this help and exit");

  std::vector<std::string> rev(argv.rbegin(), argv.rend() - (argv.empty() ? 0 : 1));
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n" << app.help();
    return kExitInput;
  }

  try {
    const Rational h = parse_rational(h_text);
    if (delta->parsed()) {
      BoxSet s = io::boxset_from(detail::read_json(set_path, digest));
      BoxSet d = essential_difference(s);
      rep = detail::report("delta", digest);
      rep["set"] = io::to_json(normalize(s));
      rep["delta"] = io::to_json(d);
      rep["display"] = display(d);
      rep["measure_delta"] = to_string(d.raw_volume());
    } else if (packing->parsed()) {
      BoxSet a = io::boxset_from(detail::read_json(set_path, digest));
      BoxSet d = io::boxset_from(detail::read_json(region_path, digest));
      Verdict v = obstruction_verdict(a, d);
      rep = detail::report("packing-check", digest);
      rep["delta_A"] = display(essential_difference(a));
      rep["delta_D"] = display(essential_difference(d));
      rep.update(detail::verdict_json(v));
      if (orthogonal) {
        auto o = orthogonal_packing_check(d, a, samples, ft_tol);
        rep["orthogonal"] = json{{"label", "HEURISTIC"},
                                 {"samples", o.samples},
                                 {"min_abs_ft", o.min_abs_ft},
                                 {"witness", o.witness},
                                 {"tol", ft_tol},
                                 {"heuristic_pass", o.heuristic_pass},
                                 {"measure_D", to_string(o.measure_region)},
                                 {"inverse_measure_A", to_string(o.inverse_measure_a)},
                                 {"criterion_strict", o.criterion_strict},
                                 {"verdict", o.verdict}};
      }
    } else if (cdelta->parsed()) {
      RatioSequence xi = io::ratio_sequence_from(detail::read_json(seq_path, digest));
      DeltaExact dx = delta_exact(xi);
      CantorStage surrogate = stage(xi, dx.k + beyond);
      Verdict v = obstruction_verdict(surrogate.set, dx.region);
      rep = detail::report("cantor-delta", digest);
      rep["tail_index"] = dx.k;
      rep["certified_tail_measure"] = to_string(certified_tail_measure(xi, dx.k));
      rep["delta"] = io::to_json(dx.delta);
      rep["display"] = display(dx.delta);
      rep["packing_region_stage"] = io::to_json(dx.region);
      rep["surrogate_stage"] = dx.k + beyond;
      rep.update(detail::verdict_json(v));
      rep.erase("packing_region");
    } else if (cbounds->parsed()) {
      RatioSequence xi = io::ratio_sequence_from(detail::read_json(seq_path, digest));
      rep = detail::report("cantor-bounds", digest);
      if (xi.tail() || xi.prefix_length() > 0) {
        Enclosure e = measure_limit(xi, parse_rational(tol_text));
        rep["measure_enclosure"] = json{{"lo", to_string(e.lo)}, {"hi", to_string(e.hi)}, {"exact", e.exact}};
      }
      json stages_json = json::array();
      for (std::size_t n = 1; n <= n_stage; ++n) {
        OverlapReport r = overlap_report(xi, n);
        json row{{"n", n},
                 {"ell", to_string(r.ell)},
                 {"d", to_string(r.gap)},
                 {"m_A", to_string(r.measure_removed)},
                 {"m_E", to_string(r.measure_stage)},
                 {"lower_bound", to_string(r.lower_bound)}};
        if (!t_values.empty() && r.gap < r.ell) {
          json checks = json::array();
          for (const auto& t : t_values) {
            auto c = crucial_inequality_check(xi, n, parse_rational(t));
            checks.push_back(json{{"t", t}, {"lhs", to_string(c.lhs)}, {"rhs", to_string(c.rhs)}, {"holds", c.holds}});
            if (!c.holds) throw InvariantError("crucial inequality failed at t = " + t);
          }
          row["crucial_inequality"] = checks;
        }
        stages_json.push_back(row);
      }
      rep["stages"] = stages_json;
    } else if (pcheck->parsed()) {
      io::Polytope p = io::polytope_from(detail::read_json(poly_path, digest));
      rep = detail::report("polytope-check", digest);
      if (auto* poly = std::get_if<ConvexPolygon>(&p)) {
        auto c = is_centrally_symmetric(*poly);
        rep["dim"] = 2;
        rep["vertices"] = poly->size();
        rep["area"] = to_string(poly->area());
        rep["centrally_symmetric"] = c.has_value();
        if (c) rep["center"] = detail::vec2_json(*c);
        rep["decision"] = detail::decision_json(venkov_mcmullen(*poly));
      } else {
        const auto& poly3 = std::get<ConvexPolytope3>(p);
        auto c = is_centrally_symmetric(poly3);
        rep["dim"] = 3;
        rep["vertices"] = poly3.vertices().size();
        rep["centrally_symmetric"] = c.has_value();
        if (c) rep["center"] = io::vertex_json(*c);
        json fs = json::array();
        bool all_sym = true;
        for (const auto& f : facets(poly3)) {
          bool sym = is_centrally_symmetric(f.polygon).has_value();
          all_sym = all_sym && sym;
          fs.push_back(json{{"cycle", f.cycle}, {"vertices", f.cycle.size()}, {"centrally_symmetric", sym}});
        }
        rep["facets"] = fs;
        if (c && all_sym) {
          json bs = json::array();
          for (const auto& b : belts(poly3))
            bs.push_back(json{{"direction", {b.direction[0].get_str(), b.direction[1].get_str(), b.direction[2].get_str()}},
                              {"facets", b.count()}});
          rep["belts"] = bs;
        }
        rep["decision"] = detail::decision_json(venkov_mcmullen(poly3));
      }
    } else if (dbody->parsed()) {
      io::Polytope p = io::polytope_from(detail::read_json(poly_path, digest));
      auto* poly = std::get_if<ConvexPolygon>(&p);
      if (!poly) throw InputError("diff-body handles 2D polygons only");
      ConvexPolygon d = difference_body_2d(*poly);
      rep = detail::report("diff-body", digest);
      rep["difference_body"] = io::to_json(d);
      rep["area_P"] = to_string(poly->area());
      rep["area_D"] = to_string(d.area());
      rep["area_ratio"] = to_string(d.area() / poly->area());
      rep["packing_region_with_larger_measure"] = d.area() > poly->area();
    } else if (wverify->parsed()) {
      WeakTileInstance inst;
      inst.a = io::boxset_from(detail::read_json(set_path, digest));
      inst.window = detail::window_from(window, inst.a.dim());
      inst.h = h;
      rep = detail::report("weaktile-verify", digest);
      if (!farkas_path.empty()) {
        auto cert = io::farkas_from(detail::read_json(farkas_path, digest));
        rep["farkas_valid"] = farkas_verify(inst, cert);
      } else if (!measure_path.empty()) {
        AtomicMeasure nu = io::measure_from(detail::read_json(measure_path, digest));
        auto r = verify_weak_tiling(inst, nu);
        rep["cells_checked"] = r.cells_checked;
        rep["max_defect"] = to_string(r.max_defect);
        json cells = json::array();
        for (const auto& c : r.defect_cells)
          cells.push_back(json{{"cell", io::to_json(c.cell)}, {"value", to_string(c.value)},
                               {"target", to_string(c.target)}, {"defect", to_string(c.defect)}});
        rep["defect_cells"] = cells;
      } else {
        throw InputError("weaktile-verify needs --measure or --farkas");
      }
    } else if (wlp->parsed()) {
      WeakTileInstance inst;
      inst.a = io::boxset_from(detail::read_json(set_path, digest));
      inst.window = detail::window_from(window, inst.a.dim());
      inst.h = h;
      LpOutcome o = lp_feasibility(inst);
      if (o.status == LpStatus::Infeasible && !farkas_verify(inst, o.farkas))
        throw InvariantError("solver emitted a certificate that does not replay");
      if (o.status == LpStatus::Feasible && verify_weak_tiling(inst, o.measure).max_defect != 0)
        throw InvariantError("solver emitted a measure with nonzero defect");
      rep = detail::report("weaktile-lp", digest);
      rep.update(io::to_json(o));
      rep["interpretation"] = o.status == LpStatus::Infeasible
                                  ? "no weak tiling of the complement exists (certificate replayable)"
                                  : "no obstruction at this scale";
      if (!cert_out.empty()) {
        std::ofstream f(cert_out);
        if (!f) throw InputError("cannot write '" + cert_out + "'");
        f << io::to_json(o).dump(2) << "\n";
      }
    } else if (pcompose->parsed()) {
      AtomicMeasure nu1 = io::measure_from(detail::read_json(nu1_path, digest));
      AtomicMeasure nu2 = io::measure_from(detail::read_json(nu2_path, digest));
      AtomicMeasure nu = compose_product_measure(nu1, nu2);
      rep = detail::report("product-compose", digest);
      rep["atoms"] = nu.size();
      rep["measure"] = io::to_json(nu);
      if (!set_path.empty()) {
        WeakTileInstance inst;
        inst.a = io::boxset_from(detail::read_json(set_path, digest));
        inst.window = detail::window_from(window, inst.a.dim());
        inst.h = h;
        rep["max_defect"] = to_string(verify_weak_tiling(inst, nu).max_defect);
      }
    } else if (fwitness->parsed()) {
      WitnessParams params = io::witness_params_from(detail::read_json(params_path, digest));
      Rational ma = parse_rational(ma_text);
      auto demo = witness_contradiction_demo(params, ma, n_max_order);
      if (emit_csv) {
        std::ostringstream os;
        os << std::setprecision(17) << "N,integral,scaled_origin\n";
        for (const auto& r : demo.rows) os << r.n_order << "," << r.integral << "," << r.scaled_origin << "\n";
        csv = os.str();
      } else {
        WitnessFunction g(params);
        json terms = json::array();
        for (const auto& t : g.active_terms()) terms.push_back(json{{"n", t.n}, {"coeff", t.coeff}});
        auto ft0 = witness_ft(g, std::vector<double>(params.dim(), 0.0));
        rep = detail::report("fejer-witness", digest);
        rep["params"] = io::to_json(params);
        rep["active_terms"] = terms;
        rep["g_at_origin"] = witness_eval(g, std::vector<double>(params.dim(), 0.0));
        rep["ft_at_origin"] = json{{"value", ft0.value}, {"truncation_bound", ft0.truncation_bound}, {"cutoff", ft0.cutoff}};
        json rows = json::array();
        for (const auto& r : demo.rows)
          rows.push_back(json{{"N", r.n_order}, {"integral", r.integral}, {"scaled_origin", r.scaled_origin}});
        rep["sweep"] = rows;
        rep["crossing_N"] = demo.crossing;
      }
    } else if (ftiler->parsed()) {
      Rational shrink = parse_rational(shrink_text);
      auto t = fat_cantor_tiler(levels, shrink, stages);
      rep = detail::report("fatcantor-tiler", digest);
      json pieces = json::array();
      BoxSet surrogate(1);
      for (std::size_t i = 0; i < t.pieces.size(); ++i) {
        pieces.push_back(json{{"index", i}, {"intervals", t.pieces[i].size()}, {"measure", to_string(t.pieces[i].raw_volume())}});
        surrogate = set_union(surrogate, translate(t.pieces[i], {Rational(static_cast<long>(i))}));
      }
      rep["pieces"] = pieces;
      rep["residual"] = to_string(t.residual);
      if (!window.empty()) {
        Box w = detail::window_from(window, 1);
        Rational worst = 0;
        json cells = json::array();
        for (const auto& c : lattice_cover_defects(surrogate, 1, w, 1)) {
          if (worst < c.defect) worst = c.defect;
          cells.push_back(json{{"cell", io::to_json(c.cell)}, {"defect", to_string(c.defect)}});
        }
        rep["cells"] = cells;
        rep["max_cell_defect"] = to_string(worst);
      }
    } else if (c2d->parsed()) {
      auto cells = cantor2d_cells(m_values, n_stage);
      BoxSet s = normalize(BoxSet(2, cells));
      rep = detail::report("cantor2d", digest);
      rep["cells"] = cells.size();
      rep["measure"] = to_string(s.raw_volume());
      rep["set"] = io::to_json(s);
    }
  } catch (const InputError& e) {
    err << "input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const InvariantError& e) {
    err << "invariant violation: " << e.what() << "\n";
    return kExitInvariant;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitInvariant;
  }
  if (!csv.empty())
    out << csv;
  else
    out << rep.dump(2) << "\n";
  return kExitOk;
}

}  // namespace tilingobs::cli
