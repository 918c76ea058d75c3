#include "filling/cli.hpp"

#include <fstream>
#include <functional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "filling/bounds.hpp"
#include "filling/error.hpp"
#include "filling/flat3.hpp"
#include "filling/flat3_json.hpp"
#include "filling/gmeasure.hpp"
#include "filling/h2xr.hpp"
#include "filling/hyp3.hpp"
#include "filling/solgrp.hpp"

namespace filling::cli {

namespace {

using nlohmann::json;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::vector<double> parse_numbers(const std::string& text, std::size_t count, const char* what) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size())
        throw UsageError("");
    } catch (const std::exception&) {
      throw UsageError(std::string("malformed ") + what + ": '" + text + "'");
    }
  }
  if (out.size() != count)
    throw UsageError(std::string(what) + " needs " + std::to_string(count) + " comma-separated numbers");
  return out;
}

hyp3::BoundaryPoint parse_boundary(const std::string& text) {
  if (text == "inf")
    return hyp3::BoundaryPoint::infinity();
  auto v = parse_numbers(text, 2, "boundary point");
  return hyp3::BoundaryPoint::finite({v[0], v[1]});
}

hyp3::UhsPoint parse_interior(const std::string& text) {
  auto v = parse_numbers(text, 3, "interior point");
  return hyp3::make_uhs_point({v[0], v[1]}, v[2]);
}

hyp3::GeodesicPlane parse_plane(const std::string& circle, const std::string& line) {
  if (circle.empty() == line.empty())
    throw UsageError("give exactly one of --circle and --line");
  if (!circle.empty()) {
    auto v = parse_numbers(circle, 3, "circle");
    return hyp3::GeodesicPlane::circle({v[0], v[1]}, v[2]);
  }
  auto v = parse_numbers(line, 4, "line");
  return hyp3::GeodesicPlane::line({v[0], v[1]}, {v[2], v[3]});
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

json plane_json(const hyp3::GeodesicPlane& p) {
  if (p.is_line())
    return {{"kind", "line"}, {"point", complex_json(p.as_line().point)},
            {"direction", complex_json(p.as_line().direction)}};
  return {{"kind", "circle"}, {"center", complex_json(p.as_circle().center)},
          {"radius", p.as_circle().radius}};
}

json read_json(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    fail(ErrorCode::InvalidArgument, "cannot open '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    fail(ErrorCode::ParseError, path + ": " + e.what());
  }
}

void write_csv(const std::string& path, const std::string& header,
               const std::function<void(std::ostream&)>& rows) {
  if (path.empty())
    return;
  std::ofstream out(path);
  if (!out)
    fail(ErrorCode::InvalidArgument, "cannot write '" + path + "'");
  out.precision(17);
  out << header << '\n';
  rows(out);
}

json element_json(const solgrp::SolElement& e) { return {{"v", {e.v[0], e.v[1]}}, {"s", e.s}}; }

solgrp::AnosovMatrix parse_phi(const std::string& text) {
  auto v = parse_numbers(text, 4, "--phi");
  for (double x : v)
    if (x != std::floor(x))
      throw UsageError("--phi entries must be integers");
  return solgrp::AnosovMatrix(static_cast<std::int64_t>(v[0]), static_cast<std::int64_t>(v[1]),
                              static_cast<std::int64_t>(v[2]), static_cast<std::int64_t>(v[3]));
}

gmeasure::FiberSet fibers_from_json(const json& j) {
  std::string kind = j.value("kind", "all");
  auto vec = [](const json& a) { return gmeasure::Vec3{a.at(0).get<double>(), a.at(1).get<double>(), a.at(2).get<double>()}; };
  if (kind == "all")
    return gmeasure::FiberSet::all();
  if (kind == "cap")
    return gmeasure::FiberSet::cap(vec(j.at("axis")), j.at("angle").get<double>());
  if (kind == "normals") {
    std::vector<gmeasure::Vec3> dirs;
    for (const auto& d : j.at("directions"))
      dirs.push_back(vec(d));
    return gmeasure::FiberSet::normals(dirs);
  }
  fail(ErrorCode::ParseError, "unknown fiber set kind '" + kind + "'");
}

gmeasure::Box box_from_json(const json& j) {
  gmeasure::Box b = gmeasure::kUnitBox;
  if (j.contains("lo"))
    for (int k = 0; k < 3; ++k)
      b.lo[k] = j.at("lo").at(k).get<double>();
  if (j.contains("hi"))
    for (int k = 0; k < 3; ++k)
      b.hi[k] = j.at("hi").at(k).get<double>();
  return b;
}

std::vector<gmeasure::TestSet> default_tests() {
  std::vector<gmeasure::TestSet> tests;
  for (int axis = 0; axis < 3; ++axis) {
    gmeasure::Vec3 a{0, 0, 0};
    a[axis] = 1;
    tests.push_back({gmeasure::kUnitBox, gmeasure::FiberSet::cap(a, 0.5)});
  }
  return tests;
}

std::vector<h2xr::AnnulusFamily> cover_families(const json& spec, const h2xr::HypPolygon& poly) {
  if (spec.contains("families")) {
    std::vector<h2xr::AnnulusFamily> fams;
    for (const auto& f : spec.at("families"))
      fams.push_back(h2xr::annulus_from_json(f));
    return fams;
  }
  h2xr::AnnulusFamily seed = h2xr::standard_seed(poly);
  if (spec.contains("seed") && spec.at("seed").is_object())
    seed = h2xr::annulus_from_json(spec.at("seed"));
  return h2xr::annulus_orbit(poly, seed);
}

using Action = std::function<json()>;

struct Commands {
  std::vector<std::pair<CLI::App*, Action>> leaves;

  CLI::App* add(CLI::App* parent, const std::string& name, const std::string& help, Action act) {
    CLI::App* sub = parent->add_subcommand(name, help);
    leaves.emplace_back(sub, std::move(act));
    return sub;
  }
};

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Filling-surface computations for flat, H2xR, Sol and hyperbolic 3-manifolds", "filling"};
  app.require_subcommand(1);
  Commands cmds;

  std::string path, csv, word, phi_text = "2,1,1,1", circle, line, p_text, q_text, name;
  int resolution = 0, bound = 3, genus = 2;
  std::int64_t samples = 100000, trials = 10000;
  std::uint64_t seed = 0;
  double r = 0, volume = 0, epsilon = bounds::kMeyerhoffEpsilon, lambda0 = 0, constant = 0,
         length = 0, inj = 0, bundle_volume = 0, scale = gmeasure::kUnitFiberScale, from = 0.1,
         to = 5.0;
  int steps = 50;
  std::vector<std::string> normal_texts;
  std::string lo_text = "0,0,0", hi_text = "1,1,1";

  // flat
  CLI::App* flat = app.add_subcommand("flat", "Flat 3-manifolds and plane families");
  flat->require_subcommand(1);
  cmds.add(flat, "check-filling", "Decide whether a plane-family surface fills", [&] {
        auto surface = flat3::surface_from_json(read_json(path));
        auto m = flat3::make_manifold(surface.manifold);
        bool invariant = flat3::is_invariant(m, surface.families);
        auto escape = flat3::find_escaping_geodesic(surface.families);
        json j{{"manifold", flat3::manifold_name(surface.manifold)},
               {"invariant", invariant},
               {"normal_rank", flat3::normal_rank(surface.families)},
               {"filling", invariant && flat3::filling_flat(surface.families) && !escape}};
        if (escape)
          j["escaping_geodesic"] = {{"direction", flat3::vec_to_json(escape->direction)},
                                    {"basepoint", flat3::vec_to_json(escape->basepoint)},
                                    {"clearance", escape->clearance}};
        return j;
      })->add_option("spec", path, "surface JSON")->required();
  cmds.add(flat, "construct", "Filling surface from the standard seed, or null", [&] {
        auto id = flat3::parse_manifold_id(name);
        auto surface = flat3::construct_filling(id);
        return json{{"manifold", flat3::manifold_name(id)},
                    {"surface", surface ? flat3::to_json(*surface) : json(nullptr)}};
      })->add_option("manifold", name, "M1..M6 or HexTorus")->required();
  auto* cells = cmds.add(flat, "cells", "Complement cells on a grid", [&] {
    auto surface = flat3::surface_from_json(read_json(path));
    auto m = flat3::make_manifold(surface.manifold);
    auto rep = resolution > 0 ? flat3::complement_cells(m, surface.families, resolution)
                              : flat3::complement_cells_auto(m, surface.families);
    return json{{"resolution", rep.resolution},
                {"cells", rep.cell_count},
                {"wrapping_cells", rep.wrapping_cells},
                {"all_contractible", rep.all_contractible}};
  });
  cells->add_option("spec", path, "surface JSON")->required();
  cells->add_option("--resolution", resolution, "grid points per side (default: 64, doubled as needed)");
  cmds.add(flat, "manifold", "Group presentation", [&] {
        auto m = flat3::make_manifold(flat3::parse_manifold_id(name));
        json j = flat3::to_json(m);
        j["point_group_order"] = flat3::point_group_order(m);
        return j;
      })->add_option("manifold", name, "M1..M6 or HexTorus")->required();

  // sol
  CLI::App* sol = app.add_subcommand("sol", "Anosov torus bundle groups");
  sol->require_subcommand(1);
  auto* reduce = cmds.add(sol, "reduce", "Normal form of a word in a, b, t", [&] {
    auto e = solgrp::reduce(solgrp::parse_word(word), parse_phi(phi_text));
    return element_json(e);
  });
  reduce->add_option("word", word, "letters a b t, capitals or ^-1 for inverses")->required();
  reduce->add_option("--phi", phi_text, "monodromy a,b,c,d");
  auto* scan = cmds.add(sol, "scan", "Search a box for Z^2 subgroups", [&] {
    if (bound < 1)
      throw UsageError("--bound must be at least 1");
    auto pairs = solgrp::z2_scan(parse_phi(phi_text), bound);
    bool fiber_only = true;
    for (const auto& [x, y] : pairs)
      fiber_only = fiber_only && x.s == 0 && y.s == 0;
    write_csv(csv, "x_v1,x_v2,x_s,y_v1,y_v2,y_s", [&](std::ostream& os) {
      for (const auto& [x, y] : pairs)
        os << x.v[0] << ',' << x.v[1] << ',' << x.s << ',' << y.v[0] << ',' << y.v[1] << ',' << y.s << '\n';
    });
    return json{{"bound", bound}, {"pairs", pairs.size()}, {"all_in_fiber", fiber_only}};
  });
  scan->add_option("--bound", bound, "coordinate bound");
  scan->add_option("--phi", phi_text, "monodromy a,b,c,d");
  scan->add_option("--csv", csv, "write the pairs");

  // hyp
  CLI::App* hyp = app.add_subcommand("hyp", "Planes and geodesics in upper half-space");
  hyp->require_subcommand(1);
  auto plane_options = [&](CLI::App* sub) {
    sub->add_option("--circle", circle, "boundary circle cx,cy,r");
    sub->add_option("--line", line, "boundary line px,py,dx,dy");
  };
  auto* sep = cmds.add(hyp, "separate", "Whether a plane separates two boundary points", [&] {
    auto plane = parse_plane(circle, line);
    return json{{"separates", hyp3::separates(plane, parse_boundary(p_text), parse_boundary(q_text))}};
  });
  plane_options(sep);
  sep->add_option("--p", p_text, "x,y or inf")->required();
  sep->add_option("--q", q_text, "x,y or inf")->required();
  auto* cls = cmds.add(hyp, "classify", "Position of a geodesic relative to a plane", [&] {
    auto plane = parse_plane(circle, line);
    hyp3::GeodesicLine g(parse_boundary(p_text), parse_boundary(q_text));
    auto c = hyp3::classify_plane_geodesic(plane, g);
    json j{{"classification", hyp3::classification_name(c)}};
    if (const auto* t = std::get_if<hyp3::Transverse>(&c))
      j["intersection"] = {{"z", complex_json(t->intersection.z)}, {"t", t->intersection.t}};
    return j;
  });
  plane_options(cls);
  cls->add_option("--u", p_text, "first endpoint, x,y or inf")->required();
  cls->add_option("--v", q_text, "second endpoint, x,y or inf")->required();
  auto* bis = cmds.add(hyp, "bisector", "Perpendicular bisector of two interior points", [&] {
    auto p = parse_interior(p_text), q = parse_interior(q_text);
    return json{{"plane", plane_json(hyp3::bisector_plane(p, q))}, {"distance", hyp3::hyp_distance(p, q)}};
  });
  bis->add_option("--p", p_text, "x,y,t")->required();
  bis->add_option("--q", q_text, "x,y,t")->required();

  // h2xr
  CLI::App* hx = app.add_subcommand("h2xr", "Surface-times-line prisms and slanted annuli");
  hx->require_subcommand(1);
  cmds.add(hx, "build", "Regular 4g-gon and the standard annulus orbit", [&] {
        auto poly = h2xr::build_polygon(genus);
        json j = h2xr::to_json(poly, genus);
        json fams = json::array();
        for (const auto& f : h2xr::annulus_orbit(poly, h2xr::standard_seed(poly)))
          fams.push_back(h2xr::to_json(f));
        j["families"] = fams;
        return j;
      })->add_option("--genus", genus, "genus g >= 2");
  auto* cover = cmds.add(hx, "cover-check", "Sample the polygon for vertical fibers missing every annulus", [&] {
    json spec = read_json(path);
    int g = spec.value("genus", 2);
    auto poly = h2xr::build_polygon(g);
    auto fams = cover_families(spec, poly);
    auto rep = h2xr::fiber_obstruction_check(poly, fams, samples, seed, !csv.empty());
    write_csv(csv, "x,y,covered,family", [&](std::ostream& os) {
      for (const auto& s : rep.records)
        os << s.z.real() << ',' << s.z.imag() << ',' << (s.covered ? 1 : 0) << ',' << s.family << '\n';
    });
    return json{{"genus", g},
                {"families", fams.size()},
                {"covered", rep.covered},
                {"samples", rep.samples},
                {"uncovered", rep.uncovered},
                {"uncovered_fraction", rep.uncovered_fraction}};
  });
  cover->add_option("spec", path, "cover JSON")->required();
  cover->add_option("--samples", samples, "number of samples (>= 10000)");
  cover->add_option("--seed", seed, "sampling seed");
  cover->add_option("--csv", csv, "write the samples");

  // measure
  CLI::App* meas = app.add_subcommand("measure", "Grassmann bundle measures");
  meas->require_subcommand(1);
  auto* trans = cmds.add(meas, "transversal", "Measure of planes crossing a geodesic segment", [&] {
    auto m = gmeasure::transversal_measure({length, inj});
    json j{{"lower_bound", m.lower_bound}, {"proof_value", m.proof_value}};
    if (bundle_volume > 0)
      j["normalized"] = gmeasure::normalize_measure(m.lower_bound, bundle_volume);
    return j;
  });
  trans->add_option("--length", length, "segment length")->required();
  trans->add_option("--inj", inj, "injectivity radius")->required();
  trans->add_option("--bundle-volume", bundle_volume, "divide by this total bundle volume");
  cmds.add(meas, "fiber-volume", "Volume of a projective-plane fiber", [&] {
        return json{{"scale", scale}, {"volume", gmeasure::fiber_volume(scale)}};
      })->add_option("--scale", scale, "metric scale (default 1/(2 pi))");
  auto* tsample = cmds.add(meas, "transversality", "Monte Carlo transversality of planes through a segment", [&] {
    auto a = parse_interior(p_text), b = parse_interior(q_text);
    return json{{"trials", trials}, {"fraction", gmeasure::transversality_sample(a, b, trials, seed)}};
  });
  tsample->add_option("--a", p_text, "x,y,t")->required();
  tsample->add_option("--b", q_text, "x,y,t")->required();
  tsample->add_option("--trials", trials, "number of trials (>= 10000)");
  tsample->add_option("--seed", seed, "sampling seed");
  auto* mubox = cmds.add(meas, "mu-box", "Induced measure of a box times a fiber set", [&] {
    auto mu = gmeasure::InducedMeasure::from_surface(flat3::surface_from_json(read_json(path)));
    auto lo = parse_numbers(lo_text, 3, "--lo"), hi = parse_numbers(hi_text, 3, "--hi");
    gmeasure::Box box{{lo[0], lo[1], lo[2]}, {hi[0], hi[1], hi[2]}};
    auto fibers = gmeasure::FiberSet::all();
    if (!normal_texts.empty()) {
      std::vector<gmeasure::Vec3> dirs;
      for (const auto& t : normal_texts) {
        auto v = parse_numbers(t, 3, "--normal");
        dirs.push_back({v[0], v[1], v[2]});
      }
      fibers = gmeasure::FiberSet::normals(dirs);
    }
    return json{{"total_area", mu.total_area}, {"measure", gmeasure::mu_S_box(mu, box, fibers)}};
  });
  mubox->add_option("spec", path, "surface JSON on the cubic torus")->required();
  mubox->add_option("--lo", lo_text, "box corner x,y,z");
  mubox->add_option("--hi", hi_text, "box corner x,y,z");
  mubox->add_option("--normal", normal_texts, "restrict to these plane normals (repeatable)");
  auto* demo = cmds.add(meas, "demo", "Discrepancy of averaged torus measures per prefix", [&] {
    json spec = read_json(path);
    std::vector<flat3::RVec3> normals;
    for (const auto& n : spec.at("normals"))
      normals.push_back(flat3::vec_from_json(n));
    std::vector<gmeasure::TestSet> tests;
    if (spec.contains("tests"))
      for (const auto& t : spec.at("tests"))
        tests.push_back({box_from_json(t), fibers_from_json(t.value("fibers", json::object()))});
    else
      tests = default_tests();
    auto rows = gmeasure::equidistribution_demo(normals, tests);
    write_csv(csv, "prefix,discrepancy", [&](std::ostream& os) {
      for (const auto& row : rows)
        os << row.prefix << ',' << row.discrepancy << '\n';
    });
    json d = json::array();
    for (const auto& row : rows)
      d.push_back(row.discrepancy);
    return json{{"discrepancy", d}};
  });
  demo->add_option("normals", path, "normals JSON")->required();
  demo->add_option("--csv", csv, "write prefix,discrepancy");

  // bounds
  CLI::App* bnd = app.add_subcommand("bounds", "Closed-form volume, area and rank bounds");
  bnd->require_subcommand(1);
  cmds.add(bnd, "ball-volume", "Volume of a hyperbolic ball", [&] {
        return json{{"r", r}, {"value", bounds::ball_volume(r)}};
      })->add_option("--r", r, "radius")->required();
  cmds.add(bnd, "sphere-area", "Area of a hyperbolic sphere", [&] {
        return json{{"r", r}, {"value", bounds::sphere_area(r)}};
      })->add_option("--r", r, "radius")->required();
  cmds.add(bnd, "radius-for-volume", "Radius of the ball with given volume", [&] {
        return json{{"volume", volume}, {"value", bounds::radius_for_volume(volume)}};
      })->add_option("--volume", volume, "ball volume")->required();
  cmds.add(bnd, "filling-area", "Area lower bound for filling surfaces", [&] {
        auto b = bounds::filling_area_bound(volume);
        return json{{"volume", volume}, {"value", b.bound}, {"radius", b.radius},
                    {"sphere_area", b.sphere_area}, {"twice_ball_volume", b.twice_ball_volume}};
      })->add_option("--volume", volume, "manifold volume")->required();
  cmds.add(bnd, "rank-constant", "Rank per unit volume bound", [&] {
        return json{{"epsilon", epsilon}, {"value", bounds::rank_constant(epsilon)}};
      })->add_option("--epsilon", epsilon, "Margulis constant (default 0.0104)");
  cmds.add(bnd, "plane-ball-area", "Area bound for a plane inside a ball", [&] {
        return json{{"d", r}, {"value", bounds::plane_ball_area(r)}};
      })->add_option("--d", r, "ball radius")->required();
  cmds.add(bnd, "qf-from-curvature", "Quasi-Fuchsian constant from a curvature bound", [&] {
        return json{{"lambda0", lambda0}, {"value", bounds::qf_from_curvature(lambda0)}};
      })->add_option("--lambda", lambda0, "principal curvature bound in [0, 1)")->required();
  auto* curv = cmds.add(bnd, "curvature-bound", "Curvature bound from a quasi-Fuchsian constant", [&] {
    return json{{"epsilon", epsilon}, {"constant", constant}, {"value", bounds::curvature_bound(epsilon, constant)}};
  });
  curv->add_option("--epsilon", epsilon, "quasi-Fuchsian excess")->required();
  curv->add_option("--constant", constant, "universal constant C")->required();
  cmds.add(bnd, "surface-formulas", "Area and filling length of a closed hyperbolic surface", [&] {
        auto s = bounds::surface_formulas(genus);
        return json{{"genus", genus}, {"area", s.area}, {"filling_length", s.filling_length}};
      })->add_option("--genus", genus, "genus g >= 2")->required();
  cmds.add(bnd, "disk2d", "Area and perimeter of a hyperbolic disk", [&] {
        auto d = bounds::disk2d(r);
        return json{{"r", r}, {"area", d.area}, {"perimeter", d.perimeter}};
      })->add_option("--r", r, "radius")->required();
  auto* sweep = cmds.add(bnd, "sweep", "Tabulate the ball and disk formulas over a radius grid", [&] {
    if (steps < 1 || !(to > from) || from < 0)
      throw UsageError("sweep needs 0 <= from < to and steps >= 1");
    double min_gap = std::numeric_limits<double>::infinity();
    std::vector<std::array<double, 6>> rows;
    for (int i = 0; i <= steps; ++i) {
      double x = from + (to - from) * i / steps;
      auto d = bounds::disk2d(x);
      rows.push_back({x, bounds::ball_volume(x), bounds::sphere_area(x), bounds::plane_ball_area(x), d.area, d.perimeter});
      if (x > 0)
        min_gap = std::min(min_gap, rows.back()[2] - 2.0 * rows.back()[1]);
    }
    write_csv(csv, "r,ball_volume,sphere_area,plane_ball_area,disk_area,disk_perimeter", [&](std::ostream& os) {
      for (const auto& row : rows)
        os << row[0] << ',' << row[1] << ',' << row[2] << ',' << row[3] << ',' << row[4] << ',' << row[5] << '\n';
    });
    return json{{"rows", rows.size()}, {"min_isoperimetric_gap", min_gap}};
  });
  sweep->add_option("--from", from, "smallest radius");
  sweep->add_option("--to", to, "largest radius");
  sweep->add_option("--steps", steps, "grid intervals");
  sweep->add_option("--csv", csv, "write the table");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 2;
  }

  for (const auto& [sub, action] : cmds.leaves) {
    if (!sub->parsed())
      continue;
    try {
      json result = action();
      result["schema"] = 1;
      out << result.dump() << '\n';
      return 0;
    } catch (const UsageError& e) {
      err << "usage error: " << e.what() << '\n';
      return 2;
    } catch (const Error& e) {
      out << json{{"schema", 1}, {"error", e.name()}, {"message", e.what()}}.dump() << '\n';
      return 1;
    } catch (const json::exception& e) {
      out << json{{"schema", 1}, {"error", error_name(ErrorCode::ParseError)}, {"message", e.what()}}.dump()
          << '\n';
      return 1;
    }
  }
  err << app.help();
  return 2;
}

} // namespace filling::cli
