#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "expobs/algebra.hpp"
#include "expobs/circle.hpp"
#include "expobs/io.hpp"
#include "expobs/report.hpp"
#include "expobs/svg.hpp"
#include "expobs/symbolic.hpp"

namespace py = pybind11;
using namespace expobs;

namespace {

py::object fraction(const Rational& r) {
  return py::module_::import("fractions").attr("Fraction")(r.str());
}

py::object fraction(const ExtRational& r) {
  if (!r.is_finite()) return py::module_::import("math").attr("inf");
  return fraction(r.value());
}

// Accepts int, str ("p/q") or fractions.Fraction; floats are rejected.
Rational rational(const py::handle& h) {
  if (py::isinstance<py::float_>(h)) throw Error(ErrorCode::MalformedRational, "floats are not exact; use Fraction or \"p/q\"");
  return Rational::parse(py::str(h).cast<std::string>());
}

io::Json to_json(const py::handle& obj) {
  const auto dumps = py::module_::import("json").attr("dumps");
  if (py::isinstance<py::str>(obj)) return io::parse_json(obj.cast<std::string>());
  return io::parse_json(dumps(obj, py::arg("default") = py::module_::import("builtins").attr("str")).cast<std::string>());
}

py::object from_json(const io::Json& j) {
  return py::module_::import("json").attr("loads")(j.dump());
}

// An observable is a mapping point id -> value; complex values are (re, im) pairs.
Observable observable(const FiniteSystem& s, const py::dict& values) {
  io::Json j;
  j["values"] = io::Json::object();
  for (const auto& [k, v] : values) {
    const auto id = py::str(k).cast<std::string>();
    if (py::isinstance<py::tuple>(v) || py::isinstance<py::list>(v)) {
      const auto seq = v.cast<py::sequence>();
      if (seq.size() != 2) throw Error(ErrorCode::MalformedDocument, "complex value must be (re, im)");
      j["values"][id] = io::Json::array({rational(seq[0]).str(), rational(seq[1]).str()});
    } else {
      j["values"][id] = rational(v).str();
    }
  }
  return io::observable_from_json(j, s);
}

std::vector<Observable> observables(const FiniteSystem& s, const std::vector<py::dict>& list) {
  std::vector<Observable> out;
  for (const auto& d : list) out.push_back(observable(s, d));
  return out;
}

py::list blocks(const FiniteSystem& s, const Partition& p) {
  py::list out;
  for (const auto& b : p.blocks) {
    py::list ids;
    for (PointIndex i : b) ids.append(s.points()[i]);
    out.append(ids);
  }
  return out;
}

circle::Interval interval(const py::sequence& seq) {
  if (seq.size() != 2) throw Error(ErrorCode::InvalidArgument, "interval must be (lo, hi)");
  return {rational(seq[0]), rational(seq[1])};
}

std::vector<Rational> rationals(const py::sequence& seq) {
  std::vector<Rational> out;
  for (const auto& v : seq) out.push_back(rational(v));
  return out;
}

symbolic::Side side(const std::string& s) {
  if (s == "s") return symbolic::Side::Stable;
  if (s == "u") return symbolic::Side::Unstable;
  throw Error(ErrorCode::InvalidArgument, "side must be \"s\" or \"u\"");
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Exact expansive-observable analysis";
  m.attr("__version__") = tool_version();

  // The module attribute keeps the type alive; a raw pointer has no exit-time destructor.
  static PyObject* error_type = py::exception<Error>(m, "Error", PyExc_ValueError).ptr();
  py::register_exception_translator([](std::exception_ptr p) {
    try {
      if (p) std::rethrow_exception(p);
    } catch (const Error& e) {
      py::object exc = py::handle(error_type)(e.what());
      exc.attr("code") = std::string(to_string(e.code()));
      PyErr_SetObject(error_type, exc.ptr());
    }
  });

  py::class_<FiniteSystem>(m, "System")
      .def(py::init([](const py::object& doc) { return io::system_from_json(to_json(doc)); }), py::arg("document"),
           "From a system document (dict or JSON text) with points, metric and map.")
      .def_property_readonly("points", [](const FiniteSystem& s) { return s.points().ids(); })
      .def("__len__", &FiniteSystem::size)
      .def("d", [](const FiniteSystem& s, const std::string& x, const std::string& y) {
        return fraction(s.d(s.points().index_of(x), s.points().index_of(y)));
      })
      .def("f", [](const FiniteSystem& s, const std::string& x, long k) {
        return s.points()[s.f_pow(s.points().index_of(x), k)];
      }, py::arg("x"), py::arg("k") = 1)
      .def("to_dict", [](const FiniteSystem& s) { return from_json(io::to_json(s)); })
      .def("__eq__", [](const FiniteSystem& a, const FiniteSystem& b) { return a == b; });

  m.def("orbit_distance", [](const FiniteSystem& s, const std::string& x, const std::string& y) {
    return fraction(pair_orbit_sup(s, x, y));
  }, "sup over all times of d(f^i x, f^i y).");
  m.def("e_star", [](const FiniteSystem& s) { return fraction(e_star(s)); });
  m.def("mesh", [](const FiniteSystem& s) { return fraction(mesh(s)); });
  m.def("delta_star", [](const FiniteSystem& s, const py::dict& phi) { return fraction(delta_star(s, observable(s, phi))); });
  m.def("sigma_star_squared",
        [](const FiniteSystem& s, const py::dict& phi) { return fraction(sigma_star_squared(s, observable(s, phi))); });
  m.def("quotient", [](const FiniteSystem& s, const py::object& delta) {
    return blocks(s, indistinguishability_quotient(s, rational(delta)).partition);
  }, "Blocks of the indistinguishability quotient at delta.");
  m.def("omega", [](const FiniteSystem& s, const py::object& t) { return fraction(omega_map(s, rational(t))); });

  m.def("analyze", [](const FiniteSystem& s, const std::vector<py::dict>& obs, const py::object& resolution,
                      bool generators, long max_period, std::uint64_t seed, unsigned workers) {
    AnalyzeOptions opts;
    if (!resolution.is_none()) opts.resolution = rational(resolution);
    opts.generators = generators;
    opts.max_period = max_period;
    opts.seed = seed;
    opts.workers = workers;
    return from_json(analyze_report(s, observables(s, obs), opts));
  }, py::arg("system"), py::arg("observables") = std::vector<py::dict>{}, py::arg("resolution") = py::none(),
        py::arg("generators") = true, py::arg("max_period") = 6, py::arg("seed") = 0, py::arg("workers") = 1);
  m.def("render_svg", [](const py::object& report) { return render_svg(to_json(report)); });
  m.def("law_suite", [](const FiniteSystem& s, std::uint64_t seed, std::size_t trials, unsigned workers) {
    return from_json(law_report_json(law_suite(s, seed, trials, workers)));
  }, py::arg("system"), py::arg("seed"), py::arg("trials") = 100, py::arg("workers") = 1);

  auto sym = m.def_submodule("symbolic", "Eventually periodic points of shift spaces");
  py::class_<symbolic::EPPoint>(sym, "Point")
      .def(py::init<std::string, std::string, std::string, long>(), py::arg("left"), py::arg("core") = "",
           py::arg("right"), py::arg("offset") = 0)
      .def_static("periodic", &symbolic::EPPoint::periodic)
      .def_property_readonly("left", &symbolic::EPPoint::left)
      .def_property_readonly("core", &symbolic::EPPoint::core)
      .def_property_readonly("right", &symbolic::EPPoint::right)
      .def_property_readonly("offset", &symbolic::EPPoint::offset)
      .def("at", &symbolic::EPPoint::at)
      .def("shift", [](const symbolic::EPPoint& x, long n) { return symbolic::shift(x, n); })
      .def("__eq__", [](const symbolic::EPPoint& a, const symbolic::EPPoint& b) { return a == b; })
      .def("__repr__", &symbolic::EPPoint::str);
  sym.def("distance", [](const symbolic::EPPoint& x, const symbolic::EPPoint& y) { return fraction(symbolic::sym_distance(x, y)); });
  sym.def("stable_equiv", [](const symbolic::EPPoint& x, const symbolic::EPPoint& y, const std::string& s) {
    return symbolic::stable_equiv(x, y, side(s));
  }, py::arg("x"), py::arg("y"), py::arg("side") = "s");
  sym.def("in_ball", [](const symbolic::EPPoint& x, const symbolic::EPPoint& y, const py::object& eps, const std::string& s) {
    return symbolic::in_dynamical_ball(x, y, rational(eps), side(s));
  }, py::arg("x"), py::arg("y"), py::arg("eps"), py::arg("side") = "s");
  sym.def("find_asymptotic_pair", [](const std::string& alphabet, const std::vector<std::string>& forbidden, std::size_t bound) {
    return symbolic::find_asymptotic_pair(symbolic::Subshift{alphabet, forbidden}, bound);
  }, py::arg("alphabet"), py::arg("forbidden") = std::vector<std::string>{}, py::arg("bound") = 8);

  auto circ = m.def_submodule("circle", "Piecewise-linear circle and interval homeomorphisms");
  py::class_<circle::PLCircleMap>(circ, "CircleMap")
      .def(py::init([](const py::sequence& bp, const py::sequence& values) {
        return circle::PLCircleMap(rationals(bp), rationals(values));
      }), py::arg("breakpoints"), py::arg("lift_values"))
      .def_static("rotation", [](const py::object& rho) { return circle::PLCircleMap::rotation(rational(rho)); })
      .def("__call__", [](const circle::PLCircleMap& f, const py::object& x) { return fraction(f(rational(x))); })
      .def("inverse", [](const circle::PLCircleMap& f, const py::object& x) { return fraction(f.inverse(rational(x))); })
      .def("power", &circle::PLCircleMap::power);
  py::class_<circle::PLIntervalMap>(circ, "IntervalMap")
      .def(py::init([](const py::sequence& bp, const py::sequence& values) {
        return circle::PLIntervalMap(rationals(bp), rationals(values));
      }), py::arg("breakpoints"), py::arg("values"))
      .def("__call__", [](const circle::PLIntervalMap& f, const py::object& x) { return fraction(f(rational(x))); });

  circ.def("rotation_number", [](const circle::PLCircleMap& f, long q_max) -> py::object {
    const auto r = circle::rotation_number(f, q_max);
    if (!r) return py::none();
    return fraction(r->value());
  }, py::arg("map"), py::arg("q_max") = 64);
  circ.def("periodic_points", [](const circle::PLCircleMap& f, long p, long q) {
    py::list out;
    for (const auto& iv : circle::periodic_points(f, p, q)) out.append(py::make_tuple(fraction(iv.lo), fraction(iv.hi)));
    return out;
  });
  circ.def("certify", [](const circle::PLCircleMap& f, const py::object& delta, const std::string& map_id, long q_max, long n_max) {
    return from_json(io::to_json(circle::certify(f, rational(delta), {map_id, q_max, n_max})));
  }, py::arg("map"), py::arg("delta"), py::arg("map_id") = "map", py::arg("q_max") = 64, py::arg("n_max") = 100000);
  circ.def("certify_interval", [](const circle::PLIntervalMap& f, const py::object& delta, const std::string& map_id) {
    return from_json(io::to_json(circle::interval_pipeline(f, rational(delta), {map_id, 64, 100000})));
  }, py::arg("map"), py::arg("delta"), py::arg("map_id") = "map");
  circ.def("verify", [](const py::object& cert) {
    const auto rep = circle::verify_certificate(io::certificate_from_json(to_json(cert)));
    py::dict out;
    out["checks"] = rep.checks;
    out["violations"] = rep.violations;
    out["passed"] = rep.passed();
    return out;
  });
  circ.def("separation_gap", [](const py::object& cert, const py::object& observable) {
    return fraction(circle::separation_gap(io::certificate_from_json(to_json(cert)),
                                           io::pl_observable_from_json(to_json(observable))));
  });
  circ.def("property_p", [](const circle::PLCircleMap& f, const py::sequence& component, const py::sequence& probe, long n_max) {
    const auto r = circle::property_P_check(f, interval(component), interval(probe), n_max);
    py::dict out;
    out["disjoint"] = r.disjoint;
    out["total_length"] = fraction(r.total_length);
    out["passed"] = r.passed();
    return out;
  }, py::arg("map"), py::arg("component"), py::arg("probe"), py::arg("n_max") = 100);
}
