#include <CLI11.hpp>

#include <iostream>

#include "expobs/report.hpp"
#include "expobs/svg.hpp"

using namespace expobs;
using io::Json;

namespace {

// Inline JSON when the argument looks like a document, otherwise a path.
Json load(const std::string& arg) {
  const auto first = arg.find_first_not_of(" \t\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return io::parse_json(arg);
  return io::read_json_file(arg);
}

void emit(const std::string& text, const std::string& out) {
  if (out.empty())
    std::cout << text;
  else
    io::write_text_file(out, text);
}

symbolic::Side side_of(const std::string& s) {
  if (s == "s") return symbolic::Side::Stable;
  if (s == "u") return symbolic::Side::Unstable;
  throw Error(ErrorCode::InvalidArgument, "side must be s or u");
}

Json ball_json(const symbolic::BallInclusionReport& r) {
  Json j;
  j["kind"] = "ball_inclusion";
  j["center"] = io::to_json(r.center);
  j["side"] = r.side == symbolic::Side::Stable ? "s" : "u";
  j["requested_eps"] = r.requested_eps.str();
  j["effective_eps"] = r.effective_eps.str();
  j["k"] = r.k;
  j["enumerated"] = r.enumerated;
  j["in_ball"] = r.in_ball;
  j["counterexamples"] = Json::array();
  for (const auto& x : r.counterexamples) j["counterexamples"].push_back(io::to_json(x));
  j["passed"] = r.passed();
  return j;
}

Json rotation_json(const circle::RotationNumber& r) {
  return {{"p", r.p}, {"q", r.q}, {"value", r.value().str()}};
}

Json intervals_json(const std::vector<circle::Interval>& ivs) {
  Json a = Json::array();
  for (const auto& iv : ivs) a.push_back({iv.lo.str(), iv.hi.str()});
  return a;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact analysis of expansive observables"};
  app.require_subcommand(1);
  app.set_version_flag("--version", tool_version());

  int status = 0;
  std::string out;

  // analyze
  std::string system_path, observables_path, resolution;
  std::vector<std::string> thresholds;
  bool no_generators = false;
  std::uint64_t seed = 0;
  unsigned workers = 1;
  long max_period = 6;
  auto* analyze = app.add_subcommand("analyze", "Full report for a finite system");
  analyze->add_option("--system", system_path, "System document")->required();
  analyze->add_option("--observables", observables_path, "Observable document(s)");
  analyze->add_option("--resolution", resolution, "Resolution h (default: mesh)");
  analyze->add_option("--threshold", thresholds, "Extra quotient thresholds");
  analyze->add_flag("--no-generators", no_generators, "Skip the quotient block indicators");
  analyze->add_option("--max-period", max_period, "Largest k for periodic level sets");
  analyze->add_option("--seed", seed, "Recorded in the provenance");
  analyze->add_option("--workers", workers, "Worker threads");
  analyze->add_option("--out", out, "Output path (default stdout)");
  analyze->callback([&] {
    const auto s = io::system_from_json(load(system_path));
    std::vector<Observable> obs;
    if (!observables_path.empty()) obs = io::observables_from_json(load(observables_path), s);
    AnalyzeOptions opt;
    if (!resolution.empty()) opt.resolution = Rational::parse(resolution);
    for (const auto& t : thresholds) opt.thresholds.push_back(Rational::parse(t));
    opt.generators = !no_generators;
    opt.max_period = max_period;
    opt.seed = seed;
    opt.workers = workers;
    const Json r = analyze_report(s, obs, opt);
    emit(io::dump(r), out);
    for (const auto& lv : r["periodic_levels"])
      if (!lv["holds"].get<bool>()) status = 2;
  });

  // dstar
  auto* dstar = app.add_subcommand("dstar", "delta* of observables");
  dstar->add_option("--system", system_path)->required();
  dstar->add_option("--observables", observables_path)->required();
  dstar->add_option("--out", out);
  dstar->callback([&] {
    const auto s = io::system_from_json(load(system_path));
    const OrbitDistanceTable table(s);
    Json r = Json::array();
    for (const auto& phi : io::observables_from_json(load(observables_path), s))
      r.push_back({{"delta_star", delta_star(table, phi).str()}, {"sigma_star_squared", sigma_star_squared(s, phi).str()}});
    emit(io::dump(r), out);
  });

  // quotient
  std::string delta;
  auto* quotient = app.add_subcommand("quotient", "Indistinguishability quotient at delta");
  quotient->add_option("--system", system_path)->required();
  quotient->add_option("--delta", delta)->required();
  quotient->add_option("--out", out);
  quotient->callback([&] {
    const auto s = io::system_from_json(load(system_path));
    const auto q = indistinguishability_quotient(s, Rational::parse(delta));
    Json blocks = Json::array();
    for (const auto& b : q.partition.blocks) {
      Json ids = Json::array();
      for (PointIndex p : b) ids.push_back(s.points()[p]);
      blocks.push_back(std::move(ids));
    }
    emit(io::dump({{"threshold", q.threshold.str()}, {"blocks", std::move(blocks)}}), out);
  });

  // laws
  std::size_t trials = 100;
  auto* laws = app.add_subcommand("laws", "Seeded subalgebra law suite");
  laws->add_option("--system", system_path)->required();
  laws->add_option("--trials", trials);
  laws->add_option("--seed", seed)->required();
  laws->add_option("--workers", workers);
  laws->add_option("--out", out);
  laws->callback([&] {
    const auto s = io::system_from_json(load(system_path));
    const auto rep = law_suite(s, seed, trials, workers);
    emit(io::dump(law_report_json(rep)), out);
    if (!rep.passed()) status = 2;
  });

  // conjugacy
  std::string source_path, target_path, map_path;
  std::size_t samples = 20;
  auto* conj = app.add_subcommand("conjugacy", "Invariance of delta* under a conjugacy h: source -> target");
  conj->add_option("--source", source_path)->required();
  conj->add_option("--target", target_path)->required();
  conj->add_option("--map", map_path, "{ source id: target id }")->required();
  conj->add_option("--seed", seed)->required();
  conj->add_option("--samples", samples);
  conj->add_option("--out", out);
  conj->callback([&] {
    auto src = io::system_from_json(load(source_path));
    auto dst = io::system_from_json(load(target_path));
    const Json m = load(map_path);
    if (!m.is_object() || m.size() != src.size())
      throw Error(ErrorCode::MalformedDocument, "conjugacy map must assign every source point");
    std::vector<PointIndex> h(src.size());
    for (const auto& [y, x] : m.items()) h[src.points().index_of(y)] = dst.points().index_of(x.get<std::string>());
    const Conjugacy c(std::move(src), std::move(dst), std::move(h));
    const auto rep = conjugacy_invariance_report(c, seed, samples);
    Json r;
    r["kind"] = "conjugacy";
    r["provenance"] = {{"tool", "expobs"}, {"version", tool_version()}, {"seed", seed}};
    r["isometry"] = rep.isometry;
    Json mod = Json::array();
    for (const auto& [t, w] : rep.modulus) mod.push_back({{"t", t.str()}, {"omega_h", w.str()}});
    r["modulus"] = std::move(mod);
    Json obs = Json::array();
    for (const auto& o : rep.observations)
      obs.push_back({{"target_delta_star", o.target_delta_star.str()}, {"source_delta_star", o.source_delta_star.str()}});
    r["observations"] = std::move(obs);
    r["violations"] = rep.violations;
    r["passed"] = rep.passed();
    emit(io::dump(r), out);
    if (!rep.passed()) status = 2;
  });

  // symbolic
  auto* sym = app.add_subcommand("symbolic", "Eventually periodic points of shift spaces");
  sym->require_subcommand(1);
  std::string x_arg, y_arg, side = "s", eps, observable_path, subshift_path;
  long n_shift = 1;
  std::size_t bound = 8;

  auto* sshift = sym->add_subcommand("shift", "shift(x, n)");
  sshift->add_option("--x", x_arg, "Point document")->required();
  sshift->add_option("--n", n_shift);
  sshift->callback([&] { emit(io::dump(io::to_json(symbolic::shift(io::point_from_json(load(x_arg)), n_shift))), out); });

  auto* sdist = sym->add_subcommand("distance", "d(x, y) and the orbit sup");
  sdist->add_option("--x", x_arg)->required();
  sdist->add_option("--y", y_arg)->required();
  sdist->callback([&] {
    const auto x = io::point_from_json(load(x_arg));
    const auto y = io::point_from_json(load(y_arg));
    emit(io::dump({{"distance", symbolic::sym_distance(x, y).str()}, {"orbit_sup", symbolic::sym_orbit_sup(x, y).str()}}),
         out);
  });

  auto* sstable = sym->add_subcommand("stable", "Is y in W^s(x) (or W^u(x))");
  sstable->add_option("--x", x_arg)->required();
  sstable->add_option("--y", y_arg)->required();
  sstable->add_option("--side", side, "s or u");
  sstable->add_option("--observable", observable_path, "Cylinder observable: also test phi-asymptoticity");
  sstable->callback([&] {
    const auto x = io::point_from_json(load(x_arg));
    const auto y = io::point_from_json(load(y_arg));
    Json r{{"asymptotic", symbolic::stable_equiv(x, y, side_of(side))}};
    if (!observable_path.empty())
      r["phi_asymptotic"] = symbolic::obs_stable_equiv(x, y, io::cylinder_from_json(load(observable_path)), side_of(side));
    emit(io::dump(r), out);
  });

  auto* sball = sym->add_subcommand("ball-check", "Dynamical ball inside the phi-stable set");
  sball->add_option("--x", x_arg)->required();
  sball->add_option("--observable", observable_path)->required();
  sball->add_option("--eps", eps)->required();
  sball->add_option("--side", side);
  sball->add_option("--bound", bound);
  sball->add_option("--out", out);
  sball->callback([&] {
    const auto rep = symbolic::check_ball_inclusion(io::point_from_json(load(x_arg)),
                                                    io::cylinder_from_json(load(observable_path)),
                                                    Rational::parse(eps), side_of(side), bound);
    emit(io::dump(ball_json(rep)), out);
    if (!rep.passed()) status = 2;
  });

  auto* sasym = sym->add_subcommand("asymptotic", "Smallest asymptotic pair in a subshift of finite type");
  sasym->add_option("--subshift", subshift_path)->required();
  sasym->add_option("--bound", bound);
  sasym->callback([&] {
    const auto [x, y] = symbolic::find_asymptotic_pair(io::subshift_from_json(load(subshift_path)), bound);
    emit(io::dump({{"x", io::to_json(x)}, {"y", io::to_json(y)}, {"x_text", x.str()}, {"y_text", y.str()}}), out);
  });

  // circle
  auto* circ = app.add_subcommand("circle", "Piecewise-linear circle homeomorphisms");
  circ->require_subcommand(1);
  std::string cert_path, map_id = "map";
  long q_max = 64, n_max = 100000;
  std::size_t grid = 8;

  auto* crot = circ->add_subcommand("rotnum", "Rotation number and periodic points");
  crot->add_option("--map", map_path)->required();
  crot->add_option("--q-max", q_max);
  crot->callback([&] {
    const auto f = io::circle_map_from_json(load(map_path));
    const auto rot = circle::rotation_number(f, q_max);
    Json r;
    if (!rot) {
      r["found"] = false;
      r["reason"] = "no periodic orbit of period <= " + std::to_string(q_max);
    } else {
      const auto w = circle::wandering_intervals(f, q_max);
      r["found"] = true;
      r["rotation_number"] = rotation_json(*rot);
      r["periodic_points"] = intervals_json(w.fixed);
      Json comps = Json::array();
      for (const auto& c : w.components) comps.push_back({{"lo", c.lo.str()}, {"hi", c.hi.str()}, {"direction", c.direction}});
      r["wandering_components"] = std::move(comps);
    }
    emit(io::dump(r), out);
  });

  auto* ccert = circ->add_subcommand("certify", "Certificate that delta-expansive observables are constant on U");
  ccert->add_option("--map", map_path)->required();
  ccert->add_option("--delta", delta)->required();
  ccert->add_option("--id", map_id);
  ccert->add_option("--q-max", q_max);
  ccert->add_option("--n-max", n_max);
  ccert->add_option("--out", out);
  ccert->callback([&] {
    const auto cert = circle::certify(io::circle_map_from_json(load(map_path)), Rational::parse(delta),
                                      {map_id, q_max, n_max});
    emit(io::dump(io::to_json(cert)), out);
  });

  auto* cverify = circ->add_subcommand("verify", "Replay a certificate");
  cverify->add_option("--cert", cert_path)->required();
  cverify->callback([&] {
    const auto rep = circle::verify_certificate(io::certificate_from_json(load(cert_path)));
    emit(io::dump({{"checks", rep.checks}, {"violations", rep.violations}, {"passed", rep.passed()}}), out);
    if (!rep.passed()) status = 2;
  });

  auto* cgap = circ->add_subcommand("gap", "Distance bound from a PL target to the delta-expansive observables");
  cgap->add_option("--cert", cert_path)->required();
  cgap->add_option("--observable", observable_path)->required();
  cgap->callback([&] {
    const auto cert = io::certificate_from_json(load(cert_path));
    const auto gap = circle::separation_gap(cert, io::pl_observable_from_json(load(observable_path)));
    emit(io::dump({{"separation_gap", gap.str()}}), out);
  });

  auto* crigid = circ->add_subcommand("rotation-case", "Finite pipeline for a rigid rotation");
  crigid->add_option("--map", map_path)->required();
  crigid->add_option("--grid", grid, "Minimum grid size");
  crigid->add_option("--out", out);
  crigid->callback([&] {
    const auto r = circle::analyze_rotation_case(io::circle_map_from_json(load(map_path)), grid);
    Json blocks = Json::array();
    for (const auto& b : r.quotient.partition.blocks) {
      Json ids = Json::array();
      for (PointIndex p : b) ids.push_back(r.grid.points()[p]);
      blocks.push_back(std::move(ids));
    }
    emit(io::dump({{"rotation_number", rotation_json(r.rotation)},
                   {"grid_size", r.grid_size},
                   {"isometry", r.isometry},
                   {"resolution", r.resolution.str()},
                   {"blocks", std::move(blocks)},
                   {"single_block", r.single_block},
                   {"quotient_equals_chain", r.quotient_equals_chain}}),
         out);
  });

  auto* interval = app.add_subcommand("interval", "Piecewise-linear interval homeomorphisms");
  interval->require_subcommand(1);
  auto* icert = interval->add_subcommand("certify", "Certificate for a homeomorphism of [0,1]");
  icert->add_option("--map", map_path)->required();
  icert->add_option("--delta", delta)->required();
  icert->add_option("--id", map_id);
  icert->add_option("--n-max", n_max);
  icert->add_option("--out", out);
  icert->callback([&] {
    const auto cert = circle::interval_pipeline(io::interval_map_from_json(load(map_path)), Rational::parse(delta),
                                                {map_id, q_max, n_max});
    emit(io::dump(io::to_json(cert)), out);
  });

  std::string report_path;
  auto* plot = app.add_subcommand("plot", "SVG figure from an analysis report");
  plot->add_option("--report", report_path)->required();
  plot->add_option("--out", out);
  plot->callback([&] { emit(render_svg(load(report_path)), out); });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return status;
}
