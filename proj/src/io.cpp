// SPDX-License-Identifier: Apache-2.0
#include "geoplan/io.hpp"

#include "json.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

namespace geoplan {

using nlohmann::json;

std::string fmt_g12(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", x);
  return buf;
}

namespace {

json vec_json(const Vec& v) {
  json a = json::array();
  for (int i = 0; i < v.size(); ++i) a.push_back(v[i]);
  return a;
}

}  // namespace

std::string plan_json(int domain, const GeodesicSegment& g, int polyline) {
  json j;
  j["domain"] = domain;
  j["manifold"] = g.manifold;
  j["start"] = vec_json(g.start.coords);
  j["velocity"] = vec_json(g.velocity);
  j["length"] = g.length;
  j["end"] = vec_json(g.curve(1.0).coords);
  if (polyline > 0) {
    j["polyline"] = json::array();
    for (int k = 0; k <= polyline; ++k)
      j["polyline"].push_back(
          vec_json(g.curve(static_cast<double>(k) / polyline).coords));
  }
  return j.dump(2);
}

std::string polyline_csv(const GeodesicSegment& g, int samples) {
  std::ostringstream os;
  os << "t";
  for (int i = 0; i < g.start.coords.size(); ++i) os << ",c" << i;
  os << "\n";
  for (int k = 0; k <= samples; ++k) {
    const double t = static_cast<double>(k) / samples;
    const Point p = g.curve(t);
    os << fmt_g12(t);
    for (int i = 0; i < p.coords.size(); ++i) os << "," << fmt_g12(p.coords[i]);
    os << "\n";
  }
  return os.str();
}

std::string certificate_json(const PlannerAtlas& atlas, int expected,
                              bool suite_passed,
                              const std::string& report_path) {
  json j;
  j["manifold"] = atlas.manifold;
  j["certificate"] = atlas.certificate();
  j["expected"] = expected;
  j["suite_passed"] = suite_passed;
  j["match"] = atlas.certificate() == expected && suite_passed;
  if (!report_path.empty()) j["report"] = report_path;
  return j.dump(2);
}

std::string suite_json(const SuiteReport& rep) {
  json j;
  j["manifold"] = rep.manifold;
  j["all_passed"] = rep.all_passed();
  j["checks"] = json::array();
  for (const auto& c : rep.checks)
    j["checks"].push_back(
        {{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  return j.dump(2);
}

namespace {

json strata_json(const Stratification& s) {
  json a = json::array();
  for (std::size_t k = 0; k < s.strata.size(); ++k) {
    json st;
    st["index"] = k + 1;
    st["components"] = json::array();
    for (const auto& c : s.strata[k].components) {
      json cj;
      cj["label"] = c.label;
      cj["dim"] = c.dim;
      cj["sheets"] = json::array();
      for (const auto& sh : c.sheets) cj["sheets"].push_back(sh.label);
      cj["canonical"] = c.sheets[c.canonical].label;
      st["components"].push_back(cj);
    }
    a.push_back(st);
  }
  return a;
}

// class label of each vertex: the class containing the lexicographically
// largest vertex is "p", the other "q"; a single class is "c"
std::vector<std::string> vertex_class_labels(const VoronoiCell2D& cell) {
  int best = 0;
  for (std::size_t i = 1; i < cell.vertices.size(); ++i) {
    const Vec& a = cell.vertices[best];
    const Vec& b = cell.vertices[i];
    if (b[0] > a[0] + 1e-12 ||
        (std::abs(b[0] - a[0]) <= 1e-12 && b[1] > a[1] + 1e-12))
      best = static_cast<int>(i);
  }
  std::vector<std::string> labels(cell.vertices.size());
  for (std::size_t c = 0; c < cell.vertex_classes.size(); ++c) {
    bool has_best = false;
    for (int idx : cell.vertex_classes[c]) has_best |= idx == best;
    std::string name = cell.vertex_classes.size() == 1 ? "c"
                       : has_best                      ? "p"
                                                       : "q";
    int counter = 1;
    for (int idx : cell.vertex_classes[c])
      labels[idx] = name + std::to_string(counter++);
  }
  return labels;
}

}  // namespace

std::string cutlocus_json(const FlatTorus& T) {
  json j;
  j["manifold"] = T.id;
  if (T.cell2d) {
    const auto& cell = *T.cell2d;
    j["shape"] = cell.shape == VoronoiCell2D::Shape::hexagon ? "hexagon"
                                                             : "rectangle";
    j["vertices"] = json::array();
    for (const auto& v : cell.vertices) j["vertices"].push_back(vec_json(v));
    j["edge_normals"] = json::array();
    for (const auto& nv : cell.edge_normals)
      j["edge_normals"].push_back(vec_json(nv));
    j["edge_partner"] = cell.edge_partner;
    const auto labels = vertex_class_labels(cell);
    j["vertex_labels"] = labels;
  } else {
    j["cell"] = "cube";
    j["halfwidth"] = 1.0;
    j["n"] = T.cube->n;
  }
  j["strata"] = strata_json(T.strata);
  return j.dump(2);
}

std::string cutlocus_svg(const FlatTorus& T) {
  if (!T.cell2d)
    throw std::invalid_argument("cutlocus_svg: only 2-D cells can be drawn");
  const auto& cell = *T.cell2d;
  double ext = 0.0;
  for (const auto& v : cell.vertices)
    ext = std::max({ext, std::abs(v[0]), std::abs(v[1])});
  const double s = 180.0 / ext;
  auto X = [&](double x) { return fmt_g12(220.0 + s * x); };
  auto Y = [&](double y) { return fmt_g12(220.0 - s * y); };

  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" "
        "height=\"440\" viewBox=\"0 0 440 440\">\n";
  os << "<rect width=\"440\" height=\"440\" fill=\"white\"/>\n";
  os << "<polygon points=\"";
  for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
    if (i) os << " ";
    os << X(cell.vertices[i][0]) << "," << Y(cell.vertices[i][1]);
  }
  os << "\" fill=\"#eef3fb\" stroke=\"#29527a\" stroke-width=\"2\"/>\n";
  os << "<circle cx=\"" << X(0) << "\" cy=\"" << Y(0)
     << "\" r=\"3\" fill=\"#29527a\"/>\n";
  const auto labels = vertex_class_labels(cell);
  for (std::size_t i = 0; i < cell.vertices.size(); ++i) {
    os << "<circle cx=\"" << X(cell.vertices[i][0]) << "\" cy=\""
       << Y(cell.vertices[i][1]) << "\" r=\"4\" fill=\"#b3382f\"/>\n";
    os << "<text x=\"" << fmt_g12(220.0 + s * cell.vertices[i][0] * 1.12)
       << "\" y=\"" << fmt_g12(220.0 - s * cell.vertices[i][1] * 1.12)
       << "\" font-family=\"monospace\" font-size=\"14\" fill=\"#333\" "
          "text-anchor=\"middle\">"
       << labels[i] << "</text>\n";
  }
  os << "</svg>\n";
  return os.str();
}

std::string berger_cutlocus_csv(const BergerModel& model) {
  std::ostringstream os;
  os << "beta,t_cut,w,x1,x2,x3\n";
  for (std::size_t i = 0; i < model.cut.betas.size(); ++i) {
    const double beta = model.cut.betas[i];
    const double t = model.cut.tcuts[i];
    const Eigen::Vector3d v(std::sin(beta), std::cos(beta), 0.0);
    const Quat q = berger_exp(model.alpha, v, t);
    os << fmt_g12(beta) << "," << fmt_g12(t) << "," << fmt_g12(q[0]) << ","
       << fmt_g12(q[1]) << "," << fmt_g12(q[2]) << "," << fmt_g12(q[3])
       << "\n";
  }
  return os.str();
}

std::string berger_cutlocus_svg(const BergerModel& model) {
  auto X = [](double w) { return fmt_g12(220.0 + 180.0 * w); };
  auto Y = [](double rho) { return fmt_g12(220.0 - 180.0 * rho); };
  std::ostringstream os;
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"440\" "
        "height=\"440\" viewBox=\"0 0 440 440\">\n";
  os << "<rect width=\"440\" height=\"440\" fill=\"white\"/>\n";
  // unit circle of the (w, rho) half-plane slice, both half-planes drawn
  os << "<circle cx=\"" << X(0) << "\" cy=\"" << Y(0)
     << "\" r=\"180\" fill=\"none\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  os << "<line x1=\"" << X(-1.1) << "\" y1=\"" << Y(0) << "\" x2=\"" << X(1.1)
     << "\" y2=\"" << Y(0) << "\" stroke=\"#cccccc\" stroke-width=\"1\"/>\n";
  for (int sign = +1; sign >= -1; sign -= 2) {
    os << "<polyline points=\"";
    for (std::size_t i = 0; i < model.cut.betas.size(); ++i) {
      const double beta = model.cut.betas[i];
      const Eigen::Vector3d v(std::sin(beta), std::cos(beta), 0.0);
      const Quat q = berger_exp(model.alpha, v, model.cut.tcuts[i]);
      const double rho = std::hypot(q[2], q[3]);
      if (i) os << " ";
      os << X(q[0]) << "," << Y(sign * rho);
    }
    os << "\" fill=\"none\" stroke=\"#b3382f\" stroke-width=\"2\"/>\n";
  }
  os << "<circle cx=\"" << X(1) << "\" cy=\"" << Y(0)
     << "\" r=\"4\" fill=\"#29527a\"/>\n";
  os << "</svg>\n";
  return os.str();
}

std::string oracle_json(const std::string& manifold, double distance,
                        double resolution) {
  json j;
  j["manifold"] = manifold;
  j["distance"] = distance;
  if (resolution >= 0.0) j["resolution"] = resolution;
  return j.dump(2);
}

}  // namespace geoplan
