#pragma once

#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "expobs/circle.hpp"
#include "expobs/symbolic.hpp"
#include "expobs/system.hpp"

namespace expobs::io {

/// Insertion-ordered JSON, so emitted documents follow construction order.
using Json = nlohmann::ordered_json;

/// MalformedDocument on syntax errors.
Json parse_json(std::string_view text);
Json read_json_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);
/// Two-space indentation and a trailing newline.
std::string dump(const Json& j);

/// Accepts "p/q" strings and JSON integers.
Rational rational_from_json(const Json& j);
Json to_json(const Rational& r);
Json to_json(const ExtRational& r);
/// ["re", "im"], or a single rational for real values.
Gaussian gaussian_from_json(const Json& j);
Json to_json(const Gaussian& g);

/// { "points": [...], "metric": [["p/q", ...], ...], "map": { id: id } }.
FiniteSystem system_from_json(const Json& j);
Json to_json(const FiniteSystem& s);
FiniteSystem parse_system(std::string_view text);
std::string serialize_system(const FiniteSystem& s);

/// { "system": optional id, "values": { id: ["re", "im"] } }. Every point of
/// the system must be assigned (DomainMismatch), no other ids (UnknownPoint).
Observable observable_from_json(const Json& j, const FiniteSystem& s);
Json to_json(const Observable& phi, const std::string& system_id = "");
/// A single observable, an array of observables, or { "observables": [...] }.
std::vector<Observable> observables_from_json(const Json& j, const FiniteSystem& s);

symbolic::EPPoint point_from_json(const Json& j);
Json to_json(const symbolic::EPPoint& x);
/// { "alphabet": [symbols], "forbidden": [words] }.
symbolic::Subshift subshift_from_json(const Json& j);
Json to_json(const symbolic::Subshift& s);
/// { "alphabet": [symbols], "window": w, "table": { word: value } }.
symbolic::CylinderObservable cylinder_from_json(const Json& j);
Json to_json(const symbolic::CylinderObservable& phi);

/// { "breakpoints": [...], "lift_values": [...] }.
circle::PLCircleMap circle_map_from_json(const Json& j);
Json to_json(const circle::PLCircleMap& f);
/// { "breakpoints": [...], "values": [...] }.
circle::PLIntervalMap interval_map_from_json(const Json& j);
Json to_json(const circle::PLIntervalMap& f);
/// { "breakpoints": [...], "values": [...], "imag_values": optional }.
circle::PLObservable pl_observable_from_json(const Json& j);

circle::Certificate certificate_from_json(const Json& j);
Json to_json(const circle::Certificate& c);

}  // namespace expobs::io
