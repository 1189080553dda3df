#include "gyralab/svg.hpp"

#include <iomanip>

namespace gyralab {

Svg::Svg(double x0, double y0, double x1, double y1, double scale)
    : x0_(x0), y0_(y0), x1_(x1), y1_(y1), scale_(scale) {
  body_ << std::fixed << std::setprecision(2);
}

void Svg::polyline(const std::vector<std::pair<double, double>>& pts, const std::string& stroke,
                   double width, const std::string& dash) {
  body_ << "<polyline fill=\"none\" stroke=\"" << stroke << "\" stroke-width=\"" << width * scale_
        << "\" stroke-linecap=\"round\" stroke-linejoin=\"round\"";
  if (!dash.empty()) body_ << " stroke-dasharray=\"" << dash << "\"";
  body_ << " points=\"";
  for (const auto& [x, y] : pts) body_ << X(x) << "," << Y(y) << " ";
  body_ << "\"/>\n";
}

void Svg::circle(double x, double y, double r, const std::string& fill) {
  body_ << "<circle cx=\"" << X(x) << "\" cy=\"" << Y(y) << "\" r=\"" << r * scale_ << "\" fill=\""
        << fill << "\"/>\n";
}

void Svg::text(double x, double y, const std::string& s, double size, const std::string& anchor) {
  body_ << "<text x=\"" << X(x) << "\" y=\"" << Y(y) << "\" font-size=\"" << size * scale_
        << "\" font-family=\"sans-serif\" text-anchor=\"" << anchor << "\">" << s << "</text>\n";
}

std::string Svg::str() const {
  std::ostringstream o;
  o << std::fixed << std::setprecision(2);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << (x1_ - x0_) * scale_ << "\" height=\""
    << (y1_ - y0_) * scale_ << "\">\n"
    << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
    << body_.str() << "</svg>\n";
  return o.str();
}

}  // namespace gyralab
