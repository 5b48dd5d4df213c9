// Copyright 2026 The iontrace Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef IONTRACE_TOOLS_SVG_HPP
#define IONTRACE_TOOLS_SVG_HPP

#include <string>
#include <vector>

#include "iontrace/tomography.hpp"

namespace iontrace::tools {

struct BenchPlotRow {
  std::string label;    // e.g. "s1 pi/3"
  double value;         // plotted estimate (calibrated when available)
  double half_width;    // 1.96 * stderr
  double theory;
};

/// Grouped bars with black theory ticks and error whiskers.
std::string bench_svg(const std::vector<BenchPlotRow>& rows);

/// 8x8 disk grid (area proportional to probability) with phase arrows on the
/// major elements and a unit reference disk.
std::string truth_table_svg(const TruthTable& table);

}  // namespace iontrace::tools

#endif  // IONTRACE_TOOLS_SVG_HPP
