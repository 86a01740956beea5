// This file is part of geoplan, a library of explicit minimal-geodesic
// motion planners on flat tori and Berger spheres.
//
// Command-line front end. Manifolds are named by spec strings:
//   torus:basis=2,0;0,2     flat torus R^2 / lattice (columns a1; a2)
//   torus:std:n=3           standard torus R^n / (2Z)^n
//   berger:alpha=0.7        Berger sphere M_alpha, alpha in (0, pi/2]
//
// Exit codes: 0 success, 1 parse/runtime error, 2 planner coverage
// violation, 3 failed verification or certificate mismatch. Malformed
// option usage (e.g. a missing required --from) exits with CLI11's own
// nonzero usage codes before any of this runs.
//
// SPDX-License-Identifier: Apache-2.0
#include "CLI11.hpp"

#include "geoplan/berger.hpp"
#include "geoplan/core.hpp"
#include "geoplan/flat_torus.hpp"
#include "geoplan/io.hpp"
#include "geoplan/oracle.hpp"
#include "geoplan/verify.hpp"

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace {

using namespace geoplan;

Vec parse_vec(const std::string& s) {
  std::vector<double> vals;
  std::stringstream ss(s);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) throw std::invalid_argument("empty component in '" + s + "'");
    vals.push_back(std::stod(item));
  }
  if (vals.empty()) throw std::invalid_argument("no components in '" + s + "'");
  Vec v(static_cast<int>(vals.size()));
  for (std::size_t i = 0; i < vals.size(); ++i) v[static_cast<int>(i)] = vals[i];
  return v;
}

struct Manifold {
  std::optional<FlatTorus> torus;
  std::optional<BergerModel> berger;
  std::string id() const { return torus ? torus->id : berger->id; }
};

Manifold parse_manifold(const std::string& spec, int grid_dir, int grid_t) {
  Manifold m;
  const std::string std_prefix = "torus:std:n=";
  const std::string basis_prefix = "torus:basis=";
  const std::string berger_prefix = "berger:alpha=";
  if (spec.rfind(std_prefix, 0) == 0) {
    m.torus = make_standard_torus(std::stoi(spec.substr(std_prefix.size())));
  } else if (spec.rfind(basis_prefix, 0) == 0) {
    const std::string body = spec.substr(basis_prefix.size());
    std::vector<Vec> cols;
    std::stringstream ss(body);
    std::string col;
    while (std::getline(ss, col, ';')) cols.push_back(parse_vec(col));
    if (cols.size() != 2 || cols[0].size() != 2 || cols[1].size() != 2)
      throw std::invalid_argument(
          "basis spec needs two 2-D vectors, e.g. torus:basis=2,0;0,2");
    Eigen::MatrixXd B(2, 2);
    B.col(0) = cols[0];
    B.col(1) = cols[1];
    m.torus = make_flat_torus(LatticeBasis{B});
  } else if (spec.rfind(berger_prefix, 0) == 0) {
    m.berger = make_berger_model(std::stod(spec.substr(berger_prefix.size())),
                                 grid_dir, grid_t);
  } else {
    throw std::invalid_argument("unrecognized manifold spec '" + spec + "'");
  }
  return m;
}

Point parse_point(const Manifold& m, const std::string& s) {
  Vec v = parse_vec(s);
  if (m.torus) {
    if (v.size() != m.torus->dim())
      throw std::invalid_argument("point dimension mismatch");
    return Point{v};
  }
  if (v.size() != 4)
    throw std::invalid_argument("Berger points are unit quaternions w,x1,x2,x3");
  if (std::abs(v.norm() - 1.0) > 1e-6)
    throw std::invalid_argument("Berger point is not a unit quaternion");
  return Point{Vec(v / v.norm())};
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path);
  f << content;
}

std::string join_vec(const Vec& v) {
  std::string s;
  for (int i = 0; i < v.size(); ++i) {
    if (i) s += ",";
    s += fmt_g12(v[i]);
  }
  return s;
}

int expected_certificate(const Manifold& m) {
  if (m.berger) return 2;
  return m.torus->cube ? m.torus->cube->n + 1 : 3;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"explicit minimal-geodesic motion planners on flat tori and "
               "Berger spheres"};
  app.require_subcommand(1);
  app.fallthrough();

  std::uint64_t seed = 12345;
  double tol = 1e-6;
  bool as_json = false;
  std::string svg_path, csv_path;
  int grid_dir = 200, grid_t = 400;
  app.add_option("--seed", seed, "random seed for sampled checks");
  app.add_option("--tol", tol, "self-check tolerance for planned endpoints");
  app.add_flag("--json", as_json, "emit JSON instead of plain text");
  app.add_option("--svg", svg_path, "also write an SVG rendering to this path");
  app.add_option("--csv", csv_path, "also write CSV data to this path");
  app.add_option("--grid-dir", grid_dir, "Berger oracle direction count");
  app.add_option("--grid-t", grid_t, "Berger oracle time-sample count");

  std::string spec, from_s, to_s;
  int samples = -1;
  int polyline = 0;

  auto* cmd_plan = app.add_subcommand("plan", "plan a minimal geodesic");
  cmd_plan->add_option("manifold", spec, "manifold spec")->required();
  cmd_plan->add_option("--from", from_s, "start point")->required();
  cmd_plan->add_option("--to", to_s, "goal point")->required();
  cmd_plan->add_option("--polyline", polyline,
                       "add N+1 sampled curve points to the JSON output");

  auto* cmd_cut = app.add_subcommand("cutlocus", "emit cut locus geometry");
  cmd_cut->add_option("manifold", spec, "manifold spec")->required();

  auto* cmd_cert = app.add_subcommand(
      "certify", "upper-bound certificate = number of planner domains");
  cmd_cert->add_option("manifold", spec, "manifold spec")->required();
  cmd_cert->add_option("--samples", samples, "sample count for the checks");

  auto* cmd_verify =
      app.add_subcommand("verify", "run the structural check suite");
  cmd_verify->add_option("manifold", spec, "manifold spec")->required();
  cmd_verify->add_option("--samples", samples, "sample count for the checks");

  auto* cmd_oracle =
      app.add_subcommand("oracle", "independent reference distance");
  cmd_oracle->add_option("manifold", spec, "manifold spec")->required();
  cmd_oracle->add_option("--from", from_s, "start point")->required();
  cmd_oracle->add_option("--to", to_s, "goal point")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    const Manifold m = parse_manifold(spec, grid_dir, grid_t);

    if (cmd_plan->parsed()) {
      const Point p = parse_point(m, from_s);
      const Point q = parse_point(m, to_s);
      const PlannerAtlas atlas =
          m.torus ? build_atlas(*m.torus) : berger_atlas(*m.berger);
      const auto got = plan(atlas, p, q);
      const double end_err =
          m.torus ? torus_distance(*m.torus, got.second.curve(1.0), q)
                  : (got.second.curve(1.0).coords - q.coords).norm();
      if (end_err > tol)
        throw std::runtime_error("planned endpoint off by " + fmt_g12(end_err));
      if (!csv_path.empty()) write_file(csv_path, polyline_csv(got.second));
      if (as_json) {
        std::cout << plan_json(got.first, got.second, polyline) << "\n";
      } else {
        std::cout << "domain " << got.first << "\n"
                  << "length " << fmt_g12(got.second.length) << "\n"
                  << "velocity " << join_vec(got.second.velocity) << "\n";
      }
      return 0;
    }

    if (cmd_cut->parsed()) {
      if (m.torus) {
        if (!svg_path.empty()) write_file(svg_path, cutlocus_svg(*m.torus));
        std::cout << cutlocus_json(*m.torus) << "\n";
      } else {
        if (!svg_path.empty())
          write_file(svg_path, berger_cutlocus_svg(*m.berger));
        if (!csv_path.empty())
          write_file(csv_path, berger_cutlocus_csv(*m.berger));
        if (as_json) {
          std::ostringstream os;
          os << "{\n  \"manifold\": \"" << m.berger->id
             << "\",\n  \"beta\": [";
          for (std::size_t i = 0; i < m.berger->cut.betas.size(); ++i)
            os << (i ? "," : "") << fmt_g12(m.berger->cut.betas[i]);
          os << "],\n  \"t_cut\": [";
          for (std::size_t i = 0; i < m.berger->cut.tcuts.size(); ++i)
            os << (i ? "," : "") << fmt_g12(m.berger->cut.tcuts[i]);
          os << "]\n}";
          std::cout << os.str() << "\n";
        } else {
          std::cout << berger_cutlocus_csv(*m.berger);
        }
      }
      return 0;
    }

    if (cmd_cert->parsed()) {
      const PlannerAtlas atlas =
          m.torus ? build_atlas(*m.torus) : berger_atlas(*m.berger);
      const int expected = expected_certificate(m);
      // the count alone is not a certificate; the structural suite has to
      // confirm the atlas actually is a planner atlas
      const SuiteReport rep =
          m.torus ? run_torus_suite(*m.torus, samples > 0 ? samples : 300, seed)
                  : run_berger_suite(*m.berger, samples > 0 ? samples : 120,
                                     seed);
      std::string report_path;
      if (!rep.all_passed()) {
        report_path = "geoplan-certify-report.json";
        write_file(report_path, suite_json(rep));
      }
      const bool match = atlas.certificate() == expected && rep.all_passed();
      if (as_json) {
        std::cout << certificate_json(atlas, expected, rep.all_passed(),
                                      report_path)
                  << "\n";
      } else {
        std::cout << "certificate " << atlas.certificate() << " expected "
                  << expected << " suite "
                  << (rep.all_passed() ? "passed" : "FAILED") << " match "
                  << (match ? "true" : "false") << "\n";
        if (!report_path.empty())
          std::cout << "report " << report_path << "\n";
      }
      return match ? 0 : 3;
    }

    if (cmd_verify->parsed()) {
      const SuiteReport rep =
          m.torus ? run_torus_suite(*m.torus, samples > 0 ? samples : 300, seed)
                  : run_berger_suite(*m.berger, samples > 0 ? samples : 120,
                                     seed);
      if (as_json) {
        std::cout << suite_json(rep) << "\n";
      } else {
        for (const auto& c : rep.checks)
          std::cout << (c.passed ? "[ok]   " : "[FAIL] ") << c.name << ": "
                    << c.detail << "\n";
        std::cout << (rep.all_passed() ? "all checks passed"
                                       : "CHECKS FAILED")
                  << "\n";
      }
      return rep.all_passed() ? 0 : 3;
    }

    if (cmd_oracle->parsed()) {
      const Point p = parse_point(m, from_s);
      const Point q = parse_point(m, to_s);
      if (m.torus) {
        const double d =
            torus_distance_bruteforce(m.torus->basis, q.coords - p.coords);
        if (as_json)
          std::cout << oracle_json(m.torus->id, d, -1.0) << "\n";
        else
          std::cout << "distance " << fmt_g12(d) << "\n";
      } else {
        const auto [d, res] = berger_distance_grid(
            m.berger->alpha, Quat(p.coords), Quat(q.coords), grid_dir, grid_t);
        if (as_json)
          std::cout << oracle_json(m.berger->id, d, res) << "\n";
        else
          std::cout << "distance " << fmt_g12(d) << " resolution "
                    << fmt_g12(res) << "\n";
      }
      return 0;
    }
  } catch (const CoverageError& e) {
    std::cerr << "coverage violation: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
