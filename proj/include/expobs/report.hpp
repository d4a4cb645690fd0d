#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "expobs/algebra.hpp"
#include "expobs/io.hpp"

namespace expobs {

struct AnalyzeOptions {
  /// Defaults to the mesh.
  std::optional<Rational> resolution;
  /// Extra quotient thresholds; the resolution is always included first.
  std::vector<Rational> thresholds;
  /// Add the block indicators of the quotient at the resolution as observables.
  bool generators = true;
  long max_period = 6;
  std::uint64_t seed = 0;
  unsigned workers = 1;
};

/// Full analysis of a system and its observables. Every number is exact
/// rational text and the inputs are embedded, so the report can be replayed.
/// Byte-identical for identical inputs regardless of `workers`.
io::Json analyze_report(const FiniteSystem& s, const std::vector<Observable>& observables,
                        const AnalyzeOptions& options = {});

/// Law-suite results as a report document.
io::Json law_report_json(const LawReport& r);

std::string tool_version();

}  // namespace expobs
