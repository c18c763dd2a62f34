#include <algorithm>
#include <cmath>
#include <cstdio>
#include <set>
#include <string>

#include "persist/io.hpp"

namespace persist {

namespace {

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", x);
  return buf;
}

std::string label(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.4g", x);
  return buf;
}

}  // namespace

std::string barcode_svg(const Barcode& B) {
  const Barcode S = B.sorted();
  const double width = 640, left = 70, right = 30, top = 20, row = 14, axis = 40;
  std::set<double> ends;
  for (const auto& b : S.bars)
    for (double e : {b.birth, b.death})
      if (std::isfinite(e)) ends.insert(e);
  double lo = ends.empty() ? 0 : *ends.begin();
  double hi = ends.empty() ? 1 : *ends.rbegin();
  if (hi - lo < 1e-12) { lo -= 0.5; hi += 0.5; }
  const double x0 = left + 10, x1 = width - right - 10;
  auto X = [&](double v) {
    if (v == -kInf) return left;
    if (v == kInf) return width - right;
    return x0 + (v - lo) / (hi - lo) * (x1 - x0);
  };
  const double height = top + row * std::max<std::size_t>(S.size(), 1) + axis;
  std::string s = "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(width) + "\" height=\"" + num(height) +
                  "\" font-family=\"monospace\" font-size=\"10\">\n";
  s += "<defs><marker id=\"arrow\" viewBox=\"0 0 10 10\" refX=\"9\" refY=\"5\" markerWidth=\"6\" markerHeight=\"6\" "
       "orient=\"auto-start-reverse\"><path d=\"M0,0 L10,5 L0,10 z\" fill=\"black\"/></marker></defs>\n";
  s += "<rect x=\"" + num(left) + "\" y=\"" + num(top - 6) + "\" width=\"" + num(width - right - left) + "\" height=\"" +
       num(row * std::max<std::size_t>(S.size(), 1) + 6) + "\" fill=\"none\" stroke=\"#999\"/>\n";
  std::optional<int> last_deg;
  for (std::size_t i = 0; i < S.size(); ++i) {
    const Bar& b = S[i];
    double y = top + row * i + row / 2;
    if (i == 0 || b.degree != last_deg) {
      s += "<text x=\"4\" y=\"" + num(y + 3) + "\">" + (b.degree ? "H" + std::to_string(*b.degree) : std::string("-")) +
           "</text>\n";
      last_deg = b.degree;
    }
    s += "<line x1=\"" + num(X(b.birth)) + "\" y1=\"" + num(y) + "\" x2=\"" + num(X(b.death)) + "\" y2=\"" + num(y) +
         "\" stroke=\"black\" stroke-width=\"3\"";
    if (b.birth == -kInf) s += " marker-start=\"url(#arrow)\"";
    if (b.death == kInf) s += " marker-end=\"url(#arrow)\"";
    s += "/>\n";
  }
  const double ya = top + row * std::max<std::size_t>(S.size(), 1) + 4;
  s += "<line x1=\"" + num(left) + "\" y1=\"" + num(ya) + "\" x2=\"" + num(width - right) + "\" y2=\"" + num(ya) +
       "\" stroke=\"black\"/>\n";
  std::vector<double> ticks(ends.begin(), ends.end());
  if (ticks.empty()) ticks = {lo, hi};
  if (ticks.size() > 12) {
    std::vector<double> t;
    for (std::size_t k = 0; k < 12; ++k) t.push_back(ticks[k * (ticks.size() - 1) / 11]);
    ticks = t;
  }
  for (std::size_t k = 0; k < ticks.size(); ++k) {
    double x = X(ticks[k]);
    double ly = ya + 14 + (k % 2) * 10;
    s += "<line x1=\"" + num(x) + "\" y1=\"" + num(ya) + "\" x2=\"" + num(x) + "\" y2=\"" + num(ya + 4) +
         "\" stroke=\"black\"/>\n";
    s += "<text x=\"" + num(x) + "\" y=\"" + num(ly) + "\" text-anchor=\"middle\">" + label(ticks[k]) + "</text>\n";
  }
  s += "</svg>\n";
  return s;
}

}  // namespace persist
