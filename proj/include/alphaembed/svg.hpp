#pragma once

// Minimal SVG 1.1 writer. World coordinates are flipped so that y points up.

#include <cmath>
#include <cstdio>
#include <sstream>
#include <string>
#include <vector>

#include "alphaembed/curves.hpp"
#include "alphaembed/errors.hpp"
#include "alphaembed/geometry.hpp"

namespace alphaembed {

class SvgDocument {
 public:
  SvgDocument(const Rect& view, double pixels = 800.0) : view_(view), pixels_(pixels) {
    if (!(view.width() > 0) || !(view.height() > 0) || !std::isfinite(view.width()) || !std::isfinite(view.height()))
      throw DomainError("svg: view box must have positive finite size");
    stroke_ = 1.5 * std::max(view.width(), view.height()) / pixels;
  }

  void polyline(const std::vector<Point>& pts, const std::string& color, bool closed = false, double width = 1.0) {
    if (pts.size() < 2) return;
    std::ostringstream os;
    os << "<" << (closed ? "polygon" : "polyline") << " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << xy(pts[i]);
    os << "\" fill=\"none\" stroke=\"" << escape(color) << "\" stroke-width=\"" << num(width * stroke_)
       << "\" stroke-linejoin=\"round\"/>";
    body_.push_back(os.str());
  }

  void polygon_fill(const std::vector<Point>& pts, const std::string& fill, double opacity = 0.25) {
    std::ostringstream os;
    os << "<polygon points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) os << (i ? " " : "") << xy(pts[i]);
    os << "\" fill=\"" << escape(fill) << "\" fill-opacity=\"" << num(opacity) << "\" stroke=\"none\"/>";
    body_.push_back(os.str());
  }

  void dot(Point p, const std::string& color, double radius = 3.0) {
    std::ostringstream os;
    os << "<circle cx=\"" << num(p.x) << "\" cy=\"" << num(-p.y) << "\" r=\"" << num(radius * stroke_)
       << "\" fill=\"" << escape(color) << "\"/>";
    body_.push_back(os.str());
  }

  void label(Point p, const std::string& text, const std::string& color = "black") {
    std::ostringstream os;
    os << "<text x=\"" << num(p.x) << "\" y=\"" << num(-p.y) << "\" font-size=\"" << num(9 * stroke_)
       << "\" font-family=\"sans-serif\" fill=\"" << escape(color) << "\">" << escape(text) << "</text>";
    body_.push_back(os.str());
  }

  std::string str() const {
    std::ostringstream os;
    const double aspect = view_.height() / view_.width();
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\" standalone=\"no\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(pixels_) << "\" height=\""
       << num(pixels_ * aspect) << "\" viewBox=\"" << num(view_.xmin) << " " << num(-view_.ymax) << " "
       << num(view_.width()) << " " << num(view_.height()) << "\">\n";
    for (const std::string& s : body_) os << "  " << s << "\n";
    os << "</svg>\n";
    return os.str();
  }

  static std::string escape(const std::string& s) {
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

 private:
  static std::string num(double v) {
    if (!std::isfinite(v)) throw NumericRangeError("svg: non-finite coordinate");
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
  }
  std::string xy(Point p) const { return num(p.x) + "," + num(-p.y); }

  Rect view_;
  double pixels_;
  double stroke_;
  std::vector<std::string> body_;
};

}  // namespace alphaembed
