// This file is part of geoplan, a library of explicit minimal-geodesic
// motion planners on flat tori and Berger spheres.
//
// Slow-but-sure reference evaluators. Everything here is deliberately
// independent of the planner code paths it is used to test: lattice
// distances by direct box enumeration, Berger-sphere distances by dense
// geodesic shooting plus local refinement.
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "geoplan/lattice.hpp"

#include <Eigen/Dense>

#include <utility>
#include <vector>

namespace geoplan {

// min_{gamma in Gamma} |x - gamma| by enumerating every lattice point in a
// coefficient box large enough to contain all candidates of norm <= radius.
// radius < 0 selects the always-sufficient default 2*sum|a_i| + |x|.
double torus_distance_bruteforce(const LatticeBasis& basis, const Vec& x,
                                 double radius = -1.0);

// Coefficient vectors of every minimizer of |x - gamma| within tie_tol of
// the brute-force minimum, sorted lexicographically.
std::vector<Eigen::VectorXi> torus_minimizers_bruteforce(
    const LatticeBasis& basis, const Vec& x, double tie_tol = 1e-12,
    double radius = -1.0);

// Dense table of geodesics from the identity of the Berger sphere M_alpha:
// n_dir unit directions (Fibonacci sphere) times n_t times in (0, t_max].
// A distance query scans the table and polishes the best basins with a
// damped Gauss-Newton solve, so its cost is independent of the target.
class BergerOracle {
 public:
  struct Minimizer {
    Eigen::Vector3d xi;  // unit initial velocity, frame components (r,a,b)
    double t = 0.0;      // geodesic length
    double residual = 0.0;
  };

  BergerOracle(double alpha, int n_dir, int n_t);

  double alpha() const { return alpha_; }
  int n_dir() const { return n_dir_; }
  int n_t() const { return n_t_; }

  // Expected worst-case distance error of this grid. Refined queries are
  // usually far better; this bound covers a missed scan basin.
  double resolution() const { return resolution_; }

  double distance(const Eigen::Vector4d& p, const Eigen::Vector4d& q) const;

  // All near-minimal geodesics from p to q: length within window of the
  // minimum, deduplicated by initial direction, sorted by length.
  std::vector<Minimizer> minimizers(const Eigen::Vector4d& p,
                                    const Eigen::Vector4d& q,
                                    double window = 2e-5) const;

 private:
  std::vector<Minimizer> refine_candidates(const Eigen::Vector4d& q) const;

  double alpha_;
  int n_dir_;
  int n_t_;
  double resolution_;
  std::vector<Eigen::Vector3d> dirs_;
  std::vector<double> times_;
  std::vector<Eigen::Vector4d> table_;  // row (i*n_t + j) = exp(dirs[i]*times[j])
};

// Process-wide cached oracle lookup keyed by (alpha, n_dir, n_t); returns
// (distance, resolution). Thread-safe.
std::pair<double, double> berger_distance_grid(double alpha,
                                               const Eigen::Vector4d& p,
                                               const Eigen::Vector4d& q,
                                               int n_dir = 200, int n_t = 400);

}  // namespace geoplan
