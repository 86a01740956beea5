// This file is part of geoplan, a library of explicit minimal-geodesic
// motion planners on flat tori and Berger spheres.
//
// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "geoplan/lattice.hpp"

#include <optional>

namespace geoplan {

// Flat torus R^n / Gamma with the quotient metric. 2-D supports arbitrary
// lattices (the cell is a hexagon or a rectangle); n >= 1 supports the
// standard lattice (2Z)^n with the cube cell [-1,1]^n.
struct FlatTorus {
  LatticeBasis basis;  // reduced (2-D) or diagonal (standard family)
  std::optional<VoronoiCell2D> cell2d;
  std::optional<CubeCellND> cube;
  Stratification strata;
  std::string id;
  int dim() const { return basis.dim(); }
};

FlatTorus make_flat_torus(const LatticeBasis& basis);
FlatTorus make_standard_torus(int n);

Point torus_origin(const FlatTorus& T);

// representative in the half-open fundamental parallelepiped B*[0,1)^n
Vec torus_reduce_rep(const FlatTorus& T, const Vec& x);
// representative in the (closed) Voronoi cell: x minus its closest lattice
// vector; on the cell boundary the choice is the lexicographically least
// minimizer's, which keeps reduction deterministic
Vec torus_reduce_cell(const FlatTorus& T, const Vec& x);

// equality mod Gamma: the difference reduces to within 1e-12 of a lattice
// vector
bool torus_equal(const FlatTorus& T, const Point& p, const Point& q);

Point torus_exp(const FlatTorus& T, const Point& p, const TangentVector& v);

double torus_distance(const FlatTorus& T, const Point& p, const Point& q);

// one geodesic per minimizing lift of q-p, ordered by descending
// lexicographic velocity (the first entry is the planner's canonical choice)
std::vector<GeodesicSegment> minimal_geodesics(const FlatTorus& T,
                                               const Point& p, const Point& q);

// Where a difference vector sits relative to the cut structure:
// index 0 means a unique minimizing lift (off the cut locus); index k >= 1
// means the image of stratum k, with the component resolved.
struct StratumLocation {
  int index = 0;
  int component = -1;
  std::vector<LatticeVector> minimizers;
};
StratumLocation locate(const FlatTorus& T, const Vec& diff);

// The (1 + depth)-domain planner atlas: domain 0 plans unique-lift pairs,
// domain k plans pairs whose difference lands in stratum k via the
// component's canonical sheet, all globalized by the translation section.
PlannerAtlas build_atlas(const FlatTorus& T);

// Local verdict of the stratification's inconsistency condition at a cut
// point x. Lifts are labeled by the integer coordinates of the lattice
// minimizer they correspond to, so all set computations are exact.
struct InconsistencyReport {
  std::string mode;  // "definition" | "base-case" | "vacuous"
  int stratum_index = 0;  // 1-based depth of the stratum containing x
  double eps = 0.0;
  std::vector<std::string> component_labels;
  std::vector<std::vector<Eigen::VectorXi>> closure_sets;
  std::vector<Eigen::VectorXi> lift_labels;
  bool total_intersection_empty = false;
};

// eps < 0 selects the default: a quarter of the cell's minimal
// vertex-to-nonincident-edge distance. A larger eps than the safe bound
// throws with an instruction to shrink it.
InconsistencyReport check_inconsistency_at(const FlatTorus& T, const Point& x,
                                           double eps = -1.0);

}  // namespace geoplan
