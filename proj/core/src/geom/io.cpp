#include "srgkit/geom/io.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace srg::geom {

namespace {

nlohmann::json point_list(const std::vector<Complex>& pts) {
  auto arr = nlohmann::json::array();
  for (const Complex& z : pts) arr.push_back({z.real(), z.imag()});
  return arr;
}

}  // namespace

std::string region_to_json(const Region& a, int indent) {
  nlohmann::json j;
  auto curves = nlohmann::json::array();
  for (const auto& c : a.curves()) curves.push_back({{"closed", c.closed}, {"points", point_list(c.points)}});
  j["curves"] = curves;
  j["interior"] = point_list(a.interior_samples());
  j["contains_infinity"] = a.contains_infinity();
  j["structure"] = to_string(a.structure());
  if (a.is_disk()) j["disk"] = {a.disk_alpha(), a.disk_beta()};
  j["flags"] = {{"chord", to_string(a.chord_flag())},
                {"left_arc", to_string(a.left_arc_flag())},
                {"right_arc", to_string(a.right_arc_flag())},
                {"zero_area", a.zero_area()}};
  const double r = region_radius(a);
  j["radius"] = std::isfinite(r) ? nlohmann::json(r) : nlohmann::json("inf");
  if (!a.notes().empty()) j["notes"] = a.notes();
  return j.dump(indent);
}

void SvgPlot::add_region(const Region& a, const std::string& fill, const std::string& stroke,
                         const std::string& label) {
  Item it{Item::Fill, {}, fill, stroke, label};
  for (const auto& c : a.curves()) it.paths.push_back(c.points);
  items_.push_back(std::move(it));
}

void SvgPlot::add_polyline(const std::vector<Complex>& pts, const std::string& stroke,
                           const std::string& label) {
  items_.push_back({Item::Line, {pts}, "none", stroke, label});
}

void SvgPlot::add_marker(Complex z, const std::string& color, const std::string& label) {
  items_.push_back({Item::Marker, {{z}}, color, color, label});
}

std::string SvgPlot::render(int pixels) const {
  double R = view_radius_;
  if (R <= 0.0) {
    for (const auto& it : items_)
      for (const auto& p : it.paths)
        for (const Complex& z : p)
          if (std::abs(z) < 1e3) R = std::max(R, std::abs(z));
    R = R > 0.0 ? 1.15 * R : 1.0;
  }
  const double scale = pixels / (2.0 * R);
  auto px = [&](Complex z) {
    const double x = std::clamp(z.real(), -4 * R, 4 * R);
    const double y = std::clamp(z.imag(), -4 * R, 4 * R);
    return std::pair<double, double>{(x + R) * scale, (R - y) * scale};
  };
  std::ostringstream o;
  o.precision(6);
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << pixels << "\" height=\"" << pixels
    << "\" viewBox=\"0 0 " << pixels << ' ' << pixels << "\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  const auto [ox, oy] = px({0.0, 0.0});
  o << "<line x1=\"0\" y1=\"" << oy << "\" x2=\"" << pixels << "\" y2=\"" << oy
    << "\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";
  o << "<line x1=\"" << ox << "\" y1=\"0\" x2=\"" << ox << "\" y2=\"" << pixels
    << "\" stroke=\"#999\" stroke-width=\"0.5\"/>\n";
  for (const auto& it : items_) {
    if (it.kind == Item::Marker) {
      const auto [x, y] = px(it.paths[0][0]);
      o << "<circle cx=\"" << x << "\" cy=\"" << y << "\" r=\"3\" fill=\"" << it.fill << "\"/>\n";
      continue;
    }
    o << "<path fill-rule=\"evenodd\" fill=\"" << it.fill << "\" fill-opacity=\"0.45\" stroke=\""
      << it.stroke << "\" stroke-width=\"1\" d=\"";
    for (const auto& p : it.paths) {
      if (p.empty()) continue;
      for (std::size_t k = 0; k < p.size(); ++k) {
        const auto [x, y] = px(p[k]);
        o << (k == 0 ? 'M' : 'L') << x << ',' << y << ' ';
      }
      if (it.kind == Item::Fill) o << "Z ";
    }
    o << "\"/>\n";
  }
  int row = 0;
  for (const auto& it : items_) {
    if (it.label.empty()) continue;
    o << "<text x=\"8\" y=\"" << 16 + 14 * row++ << "\" font-size=\"12\" fill=\"" << it.stroke << "\">"
      << it.label << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

}  // namespace srg::geom
