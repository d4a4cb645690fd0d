#include "expobs/io.hpp"

#include <fstream>
#include <sstream>

namespace expobs::io {
namespace {

template <class F>
auto guarded(const char* what, F&& body) -> decltype(body()) {
  try {
    return body();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::MalformedDocument, std::string(what) + ": " + e.what());
  }
}

const Json& field(const Json& j, const char* key) {
  if (!j.is_object()) throw Error(ErrorCode::MalformedDocument, std::string("expected an object with \"") + key + "\"");
  const auto it = j.find(key);
  if (it == j.end()) throw Error(ErrorCode::MalformedDocument, std::string("missing field \"") + key + "\"");
  return *it;
}

std::vector<Rational> rationals(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::MalformedDocument, "expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& v : j) out.push_back(rational_from_json(v));
  return out;
}

Json rational_array(const std::vector<Rational>& xs) {
  Json a = Json::array();
  for (const auto& x : xs) a.push_back(x.str());
  return a;
}

std::string symbols_from_json(const Json& j) {
  if (!j.is_array()) throw Error(ErrorCode::MalformedDocument, "alphabet must be an array of symbols");
  std::string out;
  for (const auto& s : j) {
    const auto sym = s.get<std::string>();
    if (sym.size() != 1) throw Error(ErrorCode::MalformedDocument, "symbols must be single characters: \"" + sym + "\"");
    out += sym;
  }
  return out;
}

Json symbols_to_json(const std::string& alphabet) {
  Json a = Json::array();
  for (char c : alphabet) a.push_back(std::string(1, c));
  return a;
}

}  // namespace

Json parse_json(std::string_view text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw Error(ErrorCode::MalformedDocument, e.what());
  }
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::InvalidArgument, "cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_json(ss.str());
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorCode::InvalidArgument, "cannot write " + path);
  out << text;
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

Rational rational_from_json(const Json& j) {
  if (j.is_string()) return Rational::parse(j.get<std::string>());
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw Error(ErrorCode::MalformedRational, "expected a rational string, got " + j.dump());
}

Json to_json(const Rational& r) { return r.str(); }
Json to_json(const ExtRational& r) { return r.str(); }

Gaussian gaussian_from_json(const Json& j) {
  if (j.is_array()) {
    if (j.size() != 2) throw Error(ErrorCode::MalformedDocument, "complex value must be [re, im]");
    return {rational_from_json(j[0]), rational_from_json(j[1])};
  }
  return Gaussian(rational_from_json(j));
}

Json to_json(const Gaussian& g) { return Json::array({g.re.str(), g.im.str()}); }

FiniteSystem system_from_json(const Json& j) {
  return guarded("system", [&] {
    auto ids = field(j, "points").get<std::vector<std::string>>();
    const Json& metric = field(j, "metric");
    if (!metric.is_array()) throw Error(ErrorCode::MalformedDocument, "metric must be an array of rows");
    std::vector<std::vector<Rational>> rows;
    for (const auto& row : metric) rows.push_back(rationals(row));
    const Json& map = field(j, "map");
    if (!map.is_object()) throw Error(ErrorCode::MalformedDocument, "map must be an object id -> id");
    const PointSet index(ids);
    if (map.size() != ids.size())
      throw Error(ErrorCode::MalformedDocument, "map must assign every point exactly once");
    std::vector<PointIndex> images(ids.size());
    for (const auto& [from, to] : map.items()) images[index.index_of(from)] = index.index_of(to.get<std::string>());
    return FiniteSystem(std::move(ids), std::move(rows), std::move(images));
  });
}

Json to_json(const FiniteSystem& s) {
  Json j;
  j["points"] = s.points().ids();
  Json metric = Json::array();
  for (const auto& row : s.metric_rows()) metric.push_back(rational_array(row));
  j["metric"] = std::move(metric);
  Json map = Json::object();
  for (PointIndex i = 0; i < s.size(); ++i) map[s.points()[i]] = s.points()[s.f(i)];
  j["map"] = std::move(map);
  return j;
}

FiniteSystem parse_system(std::string_view text) { return system_from_json(parse_json(text)); }
std::string serialize_system(const FiniteSystem& s) { return dump(to_json(s)); }

Observable observable_from_json(const Json& j, const FiniteSystem& s) {
  return guarded("observable", [&] {
    const Json& values = field(j, "values");
    if (!values.is_object()) throw Error(ErrorCode::MalformedDocument, "values must be an object id -> value");
    std::vector<std::optional<Gaussian>> slots(s.size());
    for (const auto& [id, v] : values.items()) slots[s.points().index_of(id)] = gaussian_from_json(v);
    std::vector<Gaussian> out;
    for (PointIndex i = 0; i < s.size(); ++i) {
      if (!slots[i]) throw Error(ErrorCode::DomainMismatch, "observable has no value at point " + s.points()[i]);
      out.push_back(*slots[i]);
    }
    return Observable(s.point_set(), std::move(out));
  });
}

Json to_json(const Observable& phi, const std::string& system_id) {
  Json j;
  if (!system_id.empty()) j["system"] = system_id;
  Json values = Json::object();
  for (PointIndex i = 0; i < phi.size(); ++i) values[phi.domain()[i]] = to_json(phi[i]);
  j["values"] = std::move(values);
  return j;
}

std::vector<Observable> observables_from_json(const Json& j, const FiniteSystem& s) {
  std::vector<Observable> out;
  const Json* list = &j;
  if (j.is_object() && j.contains("observables")) list = &j["observables"];
  if (list->is_array()) {
    for (const auto& o : *list) out.push_back(observable_from_json(o, s));
  } else {
    out.push_back(observable_from_json(*list, s));
  }
  return out;
}

symbolic::EPPoint point_from_json(const Json& j) {
  return guarded("point", [&] {
    const long offset = j.contains("offset") ? j["offset"].get<long>() : 0;
    return symbolic::EPPoint(field(j, "left").get<std::string>(), j.value("core", std::string()),
                             field(j, "right").get<std::string>(), offset);
  });
}

Json to_json(const symbolic::EPPoint& x) {
  Json j;
  j["left"] = x.left();
  j["core"] = x.core();
  j["right"] = x.right();
  j["offset"] = x.offset();
  return j;
}

symbolic::Subshift subshift_from_json(const Json& j) {
  return guarded("subshift", [&] {
    symbolic::Subshift s{symbols_from_json(field(j, "alphabet")), {}};
    if (j.contains("forbidden")) s.forbidden = j["forbidden"].get<std::vector<std::string>>();
    for (const auto& w : s.forbidden) {
      if (w.empty()) throw Error(ErrorCode::MalformedDocument, "forbidden words must be nonempty");
      for (char c : w)
        if (s.alphabet.find(c) == std::string::npos)
          throw Error(ErrorCode::AlphabetMismatch, "forbidden word \"" + w + "\" leaves the alphabet");
    }
    return s;
  });
}

Json to_json(const symbolic::Subshift& s) {
  Json j;
  j["alphabet"] = symbols_to_json(s.alphabet);
  j["forbidden"] = s.forbidden;
  return j;
}

symbolic::CylinderObservable cylinder_from_json(const Json& j) {
  return guarded("cylinder observable", [&] {
    std::map<symbolic::Word, Gaussian> table;
    const Json& t = field(j, "table");
    if (!t.is_object()) throw Error(ErrorCode::MalformedDocument, "table must be an object word -> value");
    for (const auto& [w, v] : t.items()) table.emplace(w, gaussian_from_json(v));
    return symbolic::CylinderObservable(symbols_from_json(field(j, "alphabet")), field(j, "window").get<long>(),
                                        std::move(table));
  });
}

Json to_json(const symbolic::CylinderObservable& phi) {
  Json j;
  j["alphabet"] = symbols_to_json(phi.alphabet());
  j["window"] = phi.window();
  Json t = Json::object();
  for (const auto& [w, v] : phi.table()) t[w] = to_json(v);
  j["table"] = std::move(t);
  return j;
}

circle::PLCircleMap circle_map_from_json(const Json& j) {
  return guarded("circle map", [&] {
    return circle::PLCircleMap(rationals(field(j, "breakpoints")), rationals(field(j, "lift_values")));
  });
}

Json to_json(const circle::PLCircleMap& f) {
  Json j;
  j["breakpoints"] = rational_array(f.breakpoints());
  j["lift_values"] = rational_array(f.lift_values());
  return j;
}

circle::PLIntervalMap interval_map_from_json(const Json& j) {
  return guarded("interval map", [&] {
    return circle::PLIntervalMap(rationals(field(j, "breakpoints")), rationals(field(j, "values")));
  });
}

Json to_json(const circle::PLIntervalMap& f) {
  Json j;
  j["breakpoints"] = rational_array(f.breakpoints());
  j["values"] = rational_array(f.values());
  return j;
}

circle::PLObservable pl_observable_from_json(const Json& j) {
  return guarded("PL observable", [&] {
    circle::PLObservable o{rationals(field(j, "breakpoints")), rationals(field(j, "values")), {}};
    if (j.contains("imag_values")) o.imag_values = rationals(j["imag_values"]);
    return o;
  });
}

namespace {

Json interval_json(const circle::Interval& iv) { return Json::array({iv.lo.str(), iv.hi.str()}); }

circle::Interval interval_from(const Json& j) {
  if (!j.is_array() || j.size() != 2) throw Error(ErrorCode::MalformedDocument, "interval must be [lo, hi]");
  return {rational_from_json(j[0]), rational_from_json(j[1])};
}

}  // namespace

Json to_json(const circle::Certificate& c) {
  Json j;
  j["kind"] = "certificate";
  j["map_id"] = c.map_id;
  j["space"] = circle::to_string(c.space);
  if (c.circle_map) j["map"] = to_json(*c.circle_map);
  if (c.interval_map) j["map"] = to_json(*c.interval_map);
  j["power_q"] = c.rotation.q;
  j["shift_p"] = c.rotation.p;
  j["component"] = {{"lo", c.component.lo.str()}, {"hi", c.component.hi.str()}, {"direction", c.component.direction}};
  j["probe"] = interval_json(c.probe);
  j["delta"] = c.delta.str();
  j["horizon"] = c.horizon;
  j["tail"] = circle::to_string(c.tail);
  Json trace = Json::array();
  for (const auto& e : c.trace) {
    Json t;
    t["n"] = e.n;
    t["image"] = interval_json(e.image);
    t["diameter"] = e.image.length().str();
    trace.push_back(std::move(t));
  }
  j["trace"] = std::move(trace);
  j["map_threshold"] = c.map_threshold.str();
  return j;
}

circle::Certificate certificate_from_json(const Json& j) {
  return guarded("certificate", [&] {
    circle::Certificate c;
    c.map_id = j.value("map_id", std::string());
    const auto space = field(j, "space").get<std::string>();
    if (space == "circle") {
      c.space = circle::Space::Circle;
      c.circle_map = circle_map_from_json(field(j, "map"));
    } else if (space == "interval") {
      c.space = circle::Space::Interval;
      c.interval_map = interval_map_from_json(field(j, "map"));
    } else {
      throw Error(ErrorCode::MalformedDocument, "space must be \"circle\" or \"interval\"");
    }
    c.rotation = {field(j, "shift_p").get<long>(), field(j, "power_q").get<long>()};
    const Json& comp = field(j, "component");
    c.component = {rational_from_json(field(comp, "lo")), rational_from_json(field(comp, "hi")),
                   field(comp, "direction").get<int>()};
    c.probe = interval_from(field(j, "probe"));
    c.delta = rational_from_json(field(j, "delta"));
    c.horizon = field(j, "horizon").get<long>();
    const auto tail = field(j, "tail").get<std::string>();
    if (tail == circle::to_string(circle::TailKind::ContainedInComponent))
      c.tail = circle::TailKind::ContainedInComponent;
    else if (tail == circle::to_string(circle::TailKind::AffineContraction))
      c.tail = circle::TailKind::AffineContraction;
    else
      throw Error(ErrorCode::MalformedDocument, "unknown tail kind \"" + tail + "\"");
    for (const auto& t : field(j, "trace")) {
      circle::TraceEntry e{field(t, "n").get<long>(), interval_from(field(t, "image"))};
      if (t.contains("diameter") && rational_from_json(t["diameter"]) != e.image.length())
        throw Error(ErrorCode::MalformedDocument, "trace n=" + std::to_string(e.n) + ": diameter does not match image");
      c.trace.push_back(std::move(e));
    }
    c.map_threshold = rational_from_json(field(j, "map_threshold"));
    return c;
  });
}

}  // namespace expobs::io
