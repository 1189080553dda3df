// Minimal SVG writer (y axis pointing up in user coordinates).
#pragma once

#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace gyralab {

class Svg {
 public:
  // Drawing box [x0,x1] x [y0,y1] in user units, scaled by `scale` pixels per unit.
  Svg(double x0, double y0, double x1, double y1, double scale = 40.0);

  void polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                double width, const std::string& dash = "");
  void line(double xa, double ya, double xb, double yb, const std::string& stroke, double width) {
    polyline({{xa, ya}, {xb, yb}}, stroke, width);
  }
  void circle(double x, double y, double r, const std::string& fill);
  void text(double x, double y, const std::string& s, double size = 0.35,
            const std::string& anchor = "middle");
  std::string str() const;

 private:
  double X(double x) const { return (x - x0_) * scale_; }
  double Y(double y) const { return (y1_ - y) * scale_; }
  double x0_, y0_, x1_, y1_, scale_;
  std::ostringstream body_;
};

}  // namespace gyralab
