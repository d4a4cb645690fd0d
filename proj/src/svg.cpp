#include "expobs/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace expobs {
namespace {

using io::Json;

constexpr int kWidth = 720;
constexpr int kSpectrumHeight = 260;
constexpr int kDiagramHeight = 380;
const char* const kPalette[] = {"#4e79a7", "#f28e2b", "#e15759", "#76b7b2", "#59a14f",
                                "#edc948", "#b07aa1", "#ff9da7", "#9c755f", "#bab0ac"};

[[noreturn]] void bad(const std::string& what) { throw Error(ErrorCode::MalformedReport, what); }

std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '&': out += "&amp;"; break;
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

struct Bar {
  std::string name;
  ExtRational value;
};

std::vector<Bar> spectrum(const Json& report) {
  const auto it = report.find("observables");
  if (it == report.end() || !it->is_array()) bad("report has no observables array");
  std::vector<Bar> bars;
  for (const auto& o : *it) {
    if (!o.is_object() || !o.contains("delta_star") || !o["delta_star"].is_string()) bad("observable without delta_star");
    try {
      bars.push_back({o.value("name", std::string()), ExtRational::parse(o["delta_star"].get<std::string>())});
    } catch (const Error& e) {
      bad(std::string("bad delta_star: ") + e.what());
    }
  }
  std::stable_sort(bars.begin(), bars.end(), [](const Bar& a, const Bar& b) { return a.value < b.value; });
  return bars;
}

std::vector<std::vector<std::string>> blocks_of(const Json& report, std::string& threshold) {
  const auto it = report.find("quotients");
  if (it == report.end() || !it->is_array() || it->empty()) bad("report has no quotients");
  const Json& q = it->front();
  if (!q.is_object() || !q.contains("blocks") || !q["blocks"].is_array() || !q.contains("threshold"))
    bad("quotient without blocks");
  if (!q["threshold"].is_string()) bad("threshold must be a string");
  threshold = q["threshold"].get<std::string>();
  std::vector<std::vector<std::string>> out;
  for (const auto& b : q["blocks"]) {
    if (!b.is_array()) bad("block must be an array of ids");
    std::vector<std::string> ids;
    for (const auto& id : b) {
      if (!id.is_string()) bad("block member must be a string id");
      ids.push_back(id.get<std::string>());
    }
    out.push_back(std::move(ids));
  }
  return out;
}

void draw_spectrum(std::ostringstream& svg, const std::vector<Bar>& bars, int top) {
  svg << "  <g id=\"spectrum\">\n";
  svg << "    <text x=\"20\" y=\"" << top + 20 << "\" font-size=\"14\">delta* spectrum (sorted)</text>\n";
  Rational largest(0);
  for (const auto& b : bars)
    if (b.value.is_finite()) largest = max(largest, b.value.value());
  const double plot_h = kSpectrumHeight - 80;
  const double base = top + 40 + plot_h;
  const double slot = (kWidth - 40.0) / static_cast<double>(bars.size());
  const double bar_w = std::min(60.0, slot * 0.7);
  for (std::size_t i = 0; i < bars.size(); ++i) {
    const auto& b = bars[i];
    double h = plot_h;
    if (b.value.is_finite()) {
      const double frac = largest.is_zero() ? 0.0 : (b.value.value() / largest).to_double();
      h = plot_h * 0.9 * frac;
    }
    const double x = 20 + slot * static_cast<double>(i) + (slot - bar_w) / 2;
    svg << "    <rect x=\"" << fmt(x) << "\" y=\"" << fmt(base - h) << "\" width=\"" << fmt(bar_w) << "\" height=\""
        << fmt(h) << "\" fill=\"" << (b.value.is_finite() ? "#4e79a7" : "#bab0ac") << "\"><title>" << escape(b.name)
        << "</title></rect>\n";
    svg << "    <text x=\"" << fmt(x + bar_w / 2) << "\" y=\"" << fmt(base - h - 4)
        << "\" font-size=\"11\" text-anchor=\"middle\">" << (b.value.is_finite() ? b.value.str() : "+inf") << "</text>\n";
  }
  svg << "    <line x1=\"20\" y1=\"" << fmt(base) << "\" x2=\"" << kWidth - 20 << "\" y2=\"" << fmt(base)
      << "\" stroke=\"#333\"/>\n";
  svg << "  </g>\n";
}

void draw_blocks(std::ostringstream& svg, const std::vector<std::vector<std::string>>& blocks,
                 const std::string& threshold, const Json& report, int top) {
  svg << "  <g id=\"quotient\">\n";
  svg << "    <text x=\"20\" y=\"" << top + 20 << "\" font-size=\"14\">quotient at " << escape(threshold) << ": "
      << blocks.size() << (blocks.size() == 1 ? " block" : " blocks") << "</text>\n";
  std::vector<std::string> order;
  std::vector<std::size_t> color;
  for (std::size_t b = 0; b < blocks.size(); ++b)
    for (const auto& id : blocks[b]) {
      order.push_back(id);
      color.push_back(b);
    }
  const double cx = kWidth / 2.0, cy = top + 40 + (kDiagramHeight - 60) / 2.0;
  const double radius = (kDiagramHeight - 100) / 2.0;
  auto position = [&](std::size_t i) {
    const double a = 2 * std::numbers::pi * static_cast<double>(i) / static_cast<double>(order.size()) - std::numbers::pi / 2;
    return std::pair{cx + radius * std::cos(a), cy + radius * std::sin(a)};
  };
  auto index_of = [&](const std::string& id) -> std::size_t {
    const auto it = std::find(order.begin(), order.end(), id);
    if (it == order.end()) bad("edge mentions a point outside the blocks: " + id);
    return static_cast<std::size_t>(it - order.begin());
  };
  const Json& q = report["quotients"].front();
  if (q.contains("edges") && q["edges"].is_array()) {
    for (const auto& e : q["edges"]) {
      if (!e.is_array() || e.size() < 2 || !e[0].is_string() || !e[1].is_string()) bad("malformed edge");
      const auto [x1, y1] = position(index_of(e[0].get<std::string>()));
      const auto [x2, y2] = position(index_of(e[1].get<std::string>()));
      svg << "    <line x1=\"" << fmt(x1) << "\" y1=\"" << fmt(y1) << "\" x2=\"" << fmt(x2) << "\" y2=\"" << fmt(y2)
          << "\" stroke=\"#999\" stroke-width=\"1\"/>\n";
    }
  }
  for (std::size_t i = 0; i < order.size(); ++i) {
    const auto [x, y] = position(i);
    svg << "    <circle cx=\"" << fmt(x) << "\" cy=\"" << fmt(y) << "\" r=\"9\" fill=\"" << kPalette[color[i] % 10]
        << "\"/>\n";
    svg << "    <text x=\"" << fmt(x) << "\" y=\"" << fmt(y - 13) << "\" font-size=\"11\" text-anchor=\"middle\">"
        << escape(order[i]) << "</text>\n";
  }
  svg << "  </g>\n";
}

}  // namespace

std::string render_svg(const Json& report) {
  if (!report.is_object() || report.value("kind", std::string()) != "analysis") bad("not an analysis report");
  const auto bars = spectrum(report);
  std::string threshold;
  const auto blocks = blocks_of(report, threshold);
  const int spectrum_h = bars.empty() ? 0 : kSpectrumHeight;
  const int height = spectrum_h + kDiagramHeight;

  std::ostringstream svg;
  svg << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << kWidth << "\" height=\"" << height
      << "\" viewBox=\"0 0 " << kWidth << " " << height << "\" font-family=\"sans-serif\">\n";
  svg << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  if (!bars.empty()) draw_spectrum(svg, bars, 0);
  draw_blocks(svg, blocks, threshold, report, spectrum_h);
  svg << "</svg>\n";
  return svg.str();
}

}  // namespace expobs
