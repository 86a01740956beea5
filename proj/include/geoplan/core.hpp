// This file is part of geoplan, a library of explicit minimal-geodesic
// motion planners on flat tori and Berger spheres.
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <Eigen/Dense>

#include <functional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace geoplan {

using Vec = Eigen::VectorXd;

// A point of the model manifold. Flat torus: a representative in R^n,
// compared mod the lattice. Berger sphere: the unit quaternion (w,x1,x2,x3)
// of the SU(2) matrix [[w+i*x1, x2+i*x3], [-x2+i*x3, w-i*x1]].
struct Point {
  Vec coords;
};

struct TangentVector {
  Point base;
  Vec components;  // coordinates in the model frame at the base point
};

// Constant-speed geodesic segment on [0,1]: curve(t) = exp_start(t*velocity).
// length is the metric norm of the velocity, so length(g) equals the
// Riemannian length of the segment.
struct GeodesicSegment {
  std::string manifold;
  Point start;
  Vec velocity;
  double length = 0.0;
  std::function<Point(double)> curve;
};

std::pair<Point, Point> endpoints(const GeodesicSegment& g);

// t outside [0,1] throws std::domain_error.
Point evaluate(const GeodesicSegment& g, double t);

struct PlannerDomain {
  std::string label;
  std::function<bool(const Point&, const Point&)> membership;
  std::function<GeodesicSegment(const Point&, const Point&)> plan;
};

// Ordered list of pairwise disjoint planner domains covering M x M.
// The domain count is the constructive upper-bound certificate.
struct PlannerAtlas {
  std::string manifold;
  std::vector<PlannerDomain> domains;
  int certificate() const { return static_cast<int>(domains.size()); }
};

// No domain of the atlas accepted the pair. Must never happen for the
// shipped atlases; surfaced as a distinct CLI exit code.
struct CoverageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A numerical solve failed; best_residual carries how close it got.
struct ConvergenceError : std::runtime_error {
  double best_residual;
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), best_residual(residual) {}
};

// Dispatch: returns the first (and, by the disjointness invariant, only)
// domain whose membership holds, together with its planner output.
std::pair<int, GeodesicSegment> plan(const PlannerAtlas& atlas, const Point& p,
                                     const Point& q);

}  // namespace geoplan
