#include "dropflow/svg.hpp"

#include <fstream>

#include "dropflow/geometry.hpp"

namespace dropflow::svg {

void export_svg(const std::filesystem::path& path, const Boundary& boundary,
                const SvgOptions& opts) {
  double xmin = 1e300, xmax = -1e300, ymin = 1e300, ymax = -1e300;
  for (const auto& c : boundary.components) {
    xmin = std::min(xmin, c.nodes.col(0).minCoeff());
    xmax = std::max(xmax, c.nodes.col(0).maxCoeff());
    ymin = std::min(ymin, c.nodes.col(1).minCoeff());
    ymax = std::max(ymax, c.nodes.col(1).maxCoeff());
  }
  const double pad = 0.05 * std::max(xmax - xmin, ymax - ymin);
  xmin -= pad;
  xmax += pad;
  ymin -= pad;
  ymax += pad;

  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write svg: " + path.string());
  out.precision(10);
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << opts.canvas_px
      << "\" height=\"" << opts.canvas_px << "\" viewBox=\"" << xmin << " " << -ymax << " "
      << (xmax - xmin) << " " << (ymax - ymin) << "\">\n";

  for (const auto& c : boundary.components) {
    out << "  <path d=\"";
    for (int i = 0; i < c.size(); ++i)
      out << (i == 0 ? "M" : "L") << c.nodes(i, 0) << " " << -c.nodes(i, 1) << " ";
    out << "Z\" fill=\"none\" stroke=\"" << (c.is_hole ? "#aa3333" : "#222222")
        << "\" stroke-width=\"" << opts.stroke_width << "\""
        << (c.is_hole ? " stroke-dasharray=\"0.05 0.03\"" : "") << "/>\n";
  }

  if (opts.draw_normals) {
    for (const auto& c : boundary.components) {
      const CurveFrame f = curve_frame(c);
      const double len = 0.25 * f.length / c.size();
      for (int i = 0; i < c.size(); i += 4) {
        out << "  <line x1=\"" << c.nodes(i, 0) << "\" y1=\"" << -c.nodes(i, 1)
            << "\" x2=\"" << c.nodes(i, 0) + len * f.nu(i, 0) << "\" y2=\""
            << -(c.nodes(i, 1) + len * f.nu(i, 1)) << "\" stroke=\"#3366cc\""
            << " stroke-width=\"" << 0.5 * opts.stroke_width << "\"/>\n";
      }
    }
  }

  if (opts.draw_ubc_disk) {
    const DomainGeometry g = ubc_radius(boundary);
    Vec2 center;
    if (g.curvature_limited) {
      // osculating disk at a point of maximal |kappa|, on the side the
      // curvature bends toward
      int imax = 0;
      std::size_t kcomp = 0;
      double kmax = 0;
      for (std::size_t k = 0; k < boundary.components.size(); ++k) {
        const CurveFrame fk = curve_frame(boundary.components[k]);
        for (int i = 0; i < boundary.components[k].size(); ++i)
          if (std::abs(fk.kappa(i)) > kmax) {
            kmax = std::abs(fk.kappa(i));
            imax = i;
            kcomp = k;
          }
      }
      const CurveFrame f = curve_frame(boundary.components[kcomp]);
      const double side = f.kappa(imax) > 0 ? 1.0 : -1.0;
      center = boundary.components[kcomp].node(imax) -
               side * g.r_omega * Vec2(f.nu(imax, 0), f.nu(imax, 1));
    } else if (g.neck) {
      center = 0.5 * (g.neck->x + g.neck->y);
    }
    out << "  <circle cx=\"" << center.x() << "\" cy=\"" << -center.y() << "\" r=\""
        << g.r_omega << "\" fill=\"none\" stroke=\"#33aa55\" stroke-width=\""
        << 0.75 * opts.stroke_width << "\"/>\n";
  }
  out << "</svg>\n";
}

}  // namespace dropflow::svg
