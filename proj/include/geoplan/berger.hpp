// This file is part of geoplan, a library of explicit minimal-geodesic
// motion planners on flat tori and Berger spheres.
//
// Berger sphere M_alpha: SU(2) = S^3 (unit quaternions) with the
// left-invariant metric diag(sin^2 alpha, 1, 1) in the frame (X1, X2, X3)
// corresponding to (i, j, k), alpha in (0, pi/2]. alpha = pi/2 is the round
// sphere of radius 1. Tangent vectors are written by their components
// (r, a, b) in the metric-orthonormal frame (X1/sin alpha, X2, X3), so
// |(r,a,b)|^2 = r^2 + a^2 + b^2.
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "geoplan/core.hpp"
#include "geoplan/oracle.hpp"

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace geoplan {

using Quat = Eigen::Vector4d;  // (w, x1, x2, x3), w + x1*i + x2*j + x3*k

Quat quat_identity();
Quat quat_mul(const Quat& a, const Quat& b);
Quat quat_conj(const Quat& a);

// Geodesic exponential at the identity: the point at arclength t along the
// unit-speed geodesic with initial velocity (r, a, b). Non-unit velocities
// are supported; the geodesic then has speed |(r,a,b)|.
Quat berger_exp(double alpha, const Eigen::Vector3d& xi, double t);

// First time the geodesic t -> exp(t*xi) stops minimizing, located by
// bisection against the oracle distance. Requires tol >= 3*resolution;
// throws std::invalid_argument naming a sufficient grid otherwise.
double cut_time(const BergerOracle& oracle, const Eigen::Vector3d& xi,
                double tol = 1e-6);

// Cut time as a function of the polar angle beta = asin(|r|) of the initial
// direction (rotations in the (a,b)-plane and r -> -r preserve it).
// Tabulated on a uniform beta grid, interpolated linearly; the beta = pi/2
// fiber row is the closed form pi*sin(alpha).
struct CutModel {
  double alpha = 0.0;
  std::vector<double> betas;
  std::vector<double> tcuts;
  double t_cut_of(const Eigen::Vector3d& xi) const;
};

CutModel make_cut_model(const BergerOracle& oracle, int n_beta = 65);

struct BergerModel {
  double alpha = 0.0;
  BergerOracle oracle;
  CutModel cut;
  double delta = 0.0;  // classification gap threshold, 10 * resolution
  std::string id;
};

BergerModel make_berger_model(double alpha, int n_dir = 200, int n_t = 400,
                              int n_beta = 65);

// How the cut point of a direction v = (r, a, b), r != 0, is reached twice.
// The second minimizer is the mirrored direction
//   rho(v) = (-r, rot_{-2*phi_c}(a, b)),   phi_c = t_c * r * cos^2(alpha)/sin(alpha),
// whose endpoint matches exp(t_c v) exactly. Flipping r alone matches only
// up to the fiber-conjugation gauge c_psi (rotation of (x2, x3) fixing
// (w, x1)), which is what gauge_residual measures.
struct ReflectionCheck {
  Eigen::Vector3d v;
  Eigen::Vector3d mirrored;
  double t_cut = 0.0;
  double literal_residual = 0.0;  // |exp(t_c v) - exp(t_c (-r,a,b))|
  double gauge_residual = 0.0;    // min_psi |exp(t_c v) - c_psi(exp(t_c (-r,a,b)))|
  double mirror_residual = 0.0;   // |exp(t_c v) - exp(t_c rho(v))|
};

ReflectionCheck reflection_identity_check(const BergerModel& model,
                                          const Eigen::Vector3d& v);

enum class PointClass { unique, ocut, flagged };

// Classification of q relative to p: ocut when two distinct minimizers with
// opposite r signs tie within delta; flagged in the ambiguity band where the
// gap is in [delta, 10*delta) or a tie has equal r signs; unique otherwise.
struct BergerClassification {
  PointClass cls = PointClass::unique;
  double gap = 0.0;
  std::vector<BergerOracle::Minimizer> minimizers;
};

BergerClassification berger_classify(const BergerModel& model, const Quat& p,
                                     const Quat& q);

// Planner for the two-minimizer locus: returns the r > 0 branch, found by a
// Gauss-Newton solve in the chart (beta, phi, t),
// v = (sin beta, cos beta cos phi, cos beta sin phi), seeded from the cut
// model. Throws ConvergenceError if no seed reaches residual 1e-9.
GeodesicSegment ocut_planner(const BergerModel& model, const Quat& p,
                             const Quat& q);

// Two-domain planner atlas: domain 0 takes the unique/flagged pairs with the
// shortest refined geodesic, domain 1 the two-minimizer locus via
// ocut_planner; both are transported from p = identity by left translation.
PlannerAtlas berger_atlas(const BergerModel& model);

}  // namespace geoplan
