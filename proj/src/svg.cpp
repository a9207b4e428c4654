#include "ngt/svg.hpp"

#include <algorithm>
#include <cmath>

#include "ngt/growth.hpp"  // format_double

namespace ngt {

namespace {

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

std::string num(double v) { return format_double(std::round(v * 100.0) / 100.0); }

} // namespace

std::string svg_chart(const std::string& title, const std::string& x_label,
                      const std::string& y_label,
                      const std::vector<std::pair<double, double>>& points) {
    const double W = 640, H = 420, L = 70, R = 20, T = 40, B = 50;
    std::vector<std::pair<double, double>> pts;
    for (const auto& p : points)
        if (std::isfinite(p.first) && std::isfinite(p.second)) pts.push_back(p);

    double x0 = 0, x1 = 1, y0 = 0, y1 = 1;
    if (!pts.empty()) {
        x0 = x1 = pts[0].first;
        y0 = y1 = pts[0].second;
        for (const auto& p : pts) {
            x0 = std::min(x0, p.first);
            x1 = std::max(x1, p.first);
            y0 = std::min(y0, p.second);
            y1 = std::max(y1, p.second);
        }
    }
    if (x1 - x0 < 1e-12) x1 = x0 + 1.0;
    if (y1 - y0 < 1e-12) y1 = y0 + 1.0;
    auto px = [&](double x) { return L + (x - x0) / (x1 - x0) * (W - L - R); };
    auto py = [&](double y) { return H - B - (y - y0) / (y1 - y0) * (H - T - B); };

    std::string s;
    s += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + num(W) + "\" height=\"" +
         num(H) + "\" viewBox=\"0 0 " + num(W) + " " + num(H) + "\">\n";
    s += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    s += "<text x=\"" + num(W / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
         escape(title) + "</text>\n";
    // axes
    s += "<line x1=\"" + num(L) + "\" y1=\"" + num(H - B) + "\" x2=\"" + num(W - R) +
         "\" y2=\"" + num(H - B) + "\" stroke=\"black\"/>\n";
    s += "<line x1=\"" + num(L) + "\" y1=\"" + num(T) + "\" x2=\"" + num(L) + "\" y2=\"" +
         num(H - B) + "\" stroke=\"black\"/>\n";
    // ticks: ends plus midpoints
    for (int i = 0; i <= 4; ++i) {
        double x = x0 + (x1 - x0) * i / 4.0;
        double y = y0 + (y1 - y0) * i / 4.0;
        s += "<line x1=\"" + num(px(x)) + "\" y1=\"" + num(H - B) + "\" x2=\"" + num(px(x)) +
             "\" y2=\"" + num(H - B + 5) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(px(x)) + "\" y=\"" + num(H - B + 18) +
             "\" text-anchor=\"middle\" font-size=\"11\">" + num(x) + "</text>\n";
        s += "<line x1=\"" + num(L - 5) + "\" y1=\"" + num(py(y)) + "\" x2=\"" + num(L) +
             "\" y2=\"" + num(py(y)) + "\" stroke=\"black\"/>\n";
        s += "<text x=\"" + num(L - 8) + "\" y=\"" + num(py(y) + 4) +
             "\" text-anchor=\"end\" font-size=\"11\">" + num(y) + "</text>\n";
    }
    s += "<text x=\"" + num((L + W - R) / 2) + "\" y=\"" + num(H - 12) +
         "\" text-anchor=\"middle\" font-size=\"12\">" + escape(x_label) + "</text>\n";
    s += "<text x=\"16\" y=\"" + num((T + H - B) / 2) +
         "\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 16 " +
         num((T + H - B) / 2) + ")\">" + escape(y_label) + "</text>\n";

    if (!pts.empty()) {
        s += "<polyline fill=\"none\" stroke=\"#1f6fb2\" stroke-width=\"1.5\" points=\"";
        for (std::size_t i = 0; i < pts.size(); ++i) {
            if (i) s += " ";
            s += num(px(pts[i].first)) + "," + num(py(pts[i].second));
        }
        s += "\"/>\n";
    }
    s += "</svg>\n";
    return s;
}

} // namespace ngt
