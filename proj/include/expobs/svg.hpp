#pragma once

#include <string>

#include "expobs/io.hpp"

namespace expobs {

/// SVG 1.1 figure for an analysis report: the sorted delta* spectrum as a
/// bar chart (+inf drawn as a full-height sentinel bar) and the quotient at
/// the resolution as a block diagram. The spectrum is omitted when the report
/// has no observables. MalformedReport if the document is not an analysis
/// report.
std::string render_svg(const io::Json& report);

}  // namespace expobs
