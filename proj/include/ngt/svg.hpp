#ifndef NGT_SVG_HPP
#define NGT_SVG_HPP

#include <string>
#include <utility>
#include <vector>

namespace ngt {

// Minimal polyline chart: axes, tick labels, a title, one series.
// Non-finite points are dropped.
std::string svg_chart(const std::string& title, const std::string& x_label,
                      const std::string& y_label,
                      const std::vector<std::pair<double, double>>& points);

} // namespace ngt

#endif
