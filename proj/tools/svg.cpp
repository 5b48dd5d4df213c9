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

#include "svg.hpp"

#include <cmath>
#include <sstream>

namespace iontrace::tools {

namespace {

std::string num(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

std::string bench_svg(const std::vector<BenchPlotRow>& rows) {
  const double bar_w = 34.0, gap = 10.0, left = 60.0, top = 20.0;
  const double plot_h = 280.0, bottom = top + plot_h;
  const double width = left + rows.size() * (bar_w + gap) + 30.0;
  const double height = bottom + 60.0;

  std::ostringstream s;
  s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << num(width) << "' height='"
    << num(height) << "'>\n";
  s << "<rect width='100%' height='100%' fill='white'/>\n";
  // axis and gridlines at 0, 0.5, 1
  for (double g : {0.0, 0.25, 0.5, 0.75, 1.0}) {
    double y = bottom - g * plot_h;
    s << "<line x1='" << num(left - 6) << "' y1='" << num(y) << "' x2='"
      << num(width - 20) << "' y2='" << num(y)
      << "' stroke='#dddddd' stroke-width='1'/>\n";
    s << "<text x='" << num(left - 10) << "' y='" << num(y + 4)
      << "' font-size='11' text-anchor='end' font-family='sans-serif'>" << num(g)
      << "</text>\n";
  }
  double x = left;
  for (const auto& r : rows) {
    double clipped = std::min(std::max(r.value, 0.0), 1.15);
    double h = clipped * plot_h;
    s << "<rect x='" << num(x) << "' y='" << num(bottom - h) << "' width='" << num(bar_w)
      << "' height='" << num(h) << "' fill='#7aa6d7'/>\n";
    // error whisker
    double e0 = bottom - std::min(std::max(r.value - r.half_width, 0.0), 1.15) * plot_h;
    double e1 = bottom - std::min(std::max(r.value + r.half_width, 0.0), 1.15) * plot_h;
    double cx = x + bar_w / 2.0;
    s << "<line x1='" << num(cx) << "' y1='" << num(e0) << "' x2='" << num(cx) << "' y2='"
      << num(e1) << "' stroke='#333333' stroke-width='1.5'/>\n";
    // theory tick
    double ty = bottom - r.theory * plot_h;
    s << "<line x1='" << num(x - 3) << "' y1='" << num(ty) << "' x2='" << num(x + bar_w + 3)
      << "' y2='" << num(ty) << "' stroke='black' stroke-width='2'/>\n";
    s << "<text x='" << num(cx) << "' y='" << num(bottom + 14)
      << "' font-size='10' text-anchor='middle' font-family='sans-serif' "
         "transform='rotate(45 "
      << num(cx) << " " << num(bottom + 14) << ")'>" << r.label << "</text>\n";
    x += bar_w + gap;
  }
  s << "</svg>\n";
  return s.str();
}

std::string truth_table_svg(const TruthTable& table) {
  const double cell = 46.0, left = 70.0, top = 70.0;
  const double width = left + 8 * cell + 30.0, height = top + 8 * cell + 30.0;
  const char* labels[8] = {"000", "001", "010", "011", "100", "101", "110", "111"};

  std::ostringstream s;
  s << "<svg xmlns='http://www.w3.org/2000/svg' width='" << num(width) << "' height='"
    << num(height) << "'>\n";
  s << "<rect width='100%' height='100%' fill='white'/>\n";
  // reference disk: amplitude one, phase zero
  s << "<circle cx='" << num(left - 40) << "' cy='" << num(top - 40) << "' r='"
    << num(cell * 0.45) << "' fill='#9db8e8'/>\n";
  s << "<line x1='" << num(left - 40) << "' y1='" << num(top - 40) << "' x2='"
    << num(left - 40 + cell * 0.45) << "' y2='" << num(top - 40)
    << "' stroke='black' stroke-width='2'/>\n";

  for (int i = 0; i < 8; ++i) {
    s << "<text x='" << num(left + i * cell + cell / 2) << "' y='" << num(top - 8)
      << "' font-size='11' text-anchor='middle' font-family='sans-serif'>" << labels[i]
      << "</text>\n";
    s << "<text x='" << num(left - 8) << "' y='" << num(top + i * cell + cell / 2 + 4)
      << "' font-size='11' text-anchor='end' font-family='sans-serif'>" << labels[i]
      << "</text>\n";
  }

  // Phase arrows exist for the measured major elements.
  const auto& pairs = major_phase_pairs();
  for (int out = 0; out < 8; ++out) {
    for (int in = 0; in < 8; ++in) {
      double a = table.amplitudes(out, in);
      if (a < 1e-3) continue;
      double cx = left + in * cell + cell / 2.0;
      double cy = top + out * cell + cell / 2.0;
      double r = 0.45 * cell * a;
      s << "<circle cx='" << num(cx) << "' cy='" << num(cy) << "' r='" << num(r)
        << "' fill='#e8a04c'/>\n";
      for (std::size_t p = 0; p < pairs.size(); ++p) {
        if (pairs[p].k.code() == out && pairs[p].q.code() == in) {
          double ph = table.phases[p];
          s << "<line x1='" << num(cx) << "' y1='" << num(cy) << "' x2='"
            << num(cx + r * std::cos(ph)) << "' y2='" << num(cy - r * std::sin(ph))
            << "' stroke='black' stroke-width='2'/>\n";
        }
      }
      if (out == 0 && in == 0) {  // reference element, phase zero by definition
        s << "<line x1='" << num(cx) << "' y1='" << num(cy) << "' x2='" << num(cx + r)
          << "' y2='" << num(cy) << "' stroke='black' stroke-width='2'/>\n";
      }
    }
  }
  s << "</svg>\n";
  return s.str();
}

}  // namespace iontrace::tools
